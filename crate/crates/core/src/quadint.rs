//! Exact arithmetic in the golden integers `Z[phi]`, `phi = (1 + sqrt 5) / 2`.

use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Real value of `phi` used by the floating-point embedding.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

/// An element `x + y*phi` of `Z[phi]`.
///
/// Arithmetic is checked: overflow panics instead of wrapping, since a
/// silently wrapped dimension would corrupt every later verification.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuadInt {
    /// Rational part.
    pub x: i64,
    /// Coefficient of `phi`.
    pub y: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { x: 0, y: 0 };
    pub const ONE: QuadInt = QuadInt { x: 1, y: 0 };
    pub const PHI: QuadInt = QuadInt { x: 0, y: 1 };

    pub const fn new(x: i64, y: i64) -> Self {
        QuadInt { x, y }
    }

    pub const fn from_int(x: i64) -> Self {
        QuadInt { x, y: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(QuadInt {
            x: self.x.checked_add(rhs.x)?,
            y: self.y.checked_add(rhs.y)?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(QuadInt {
            x: self.x.checked_sub(rhs.x)?,
            y: self.y.checked_sub(rhs.y)?,
        })
    }

    /// `(a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi`, using `phi^2 = phi + 1`.
    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let ac = self.x.checked_mul(rhs.x)?;
        let bd = self.y.checked_mul(rhs.y)?;
        let ad = self.x.checked_mul(rhs.y)?;
        let bc = self.y.checked_mul(rhs.x)?;
        Some(QuadInt {
            x: ac.checked_add(bd)?,
            y: ad.checked_add(bc)?.checked_add(bd)?,
        })
    }

    pub fn checked_scale(self, k: i64) -> Option<Self> {
        Some(QuadInt {
            x: self.x.checked_mul(k)?,
            y: self.y.checked_mul(k)?,
        })
    }

    /// Multiplication by an integer; panics on overflow.
    pub fn scale(self, k: i64) -> Self {
        self.checked_scale(k).expect("QuadInt overflow in scale")
    }

    /// Exact division by a nonzero integer, if the quotient lies in `Z[phi]`.
    pub fn div_exact(self, k: i64) -> Option<Self> {
        if k == 0 || self.x % k != 0 || self.y % k != 0 {
            return None;
        }
        Some(QuadInt {
            x: self.x / k,
            y: self.y / k,
        })
    }

    pub fn pow(self, mut exp: u32) -> Self {
        let mut base = self;
        let mut acc = QuadInt::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Galois conjugation `phi -> 1 - phi`, i.e. `sqrt 5 -> -sqrt 5`.
    pub fn conjugate(self) -> Self {
        QuadInt {
            x: self.x.checked_add(self.y).expect("QuadInt conjugation overflow"),
            y: self.y.checked_neg().expect("QuadInt conjugation overflow"),
        }
    }

    /// Field norm `(x + y phi)(x + y (1 - phi)) = x^2 + xy - y^2`.
    pub fn norm(self) -> i128 {
        let (x, y) = (self.x as i128, self.y as i128);
        x * x + x * y - y * y
    }

    /// Exact sign of the real value.
    pub fn signum(self) -> Ordering {
        sign_of(self.x as i128, self.y as i128)
    }

    pub fn is_positive(self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Real value under `phi -> (1 + sqrt 5) / 2`.
    pub fn to_f64(self) -> f64 {
        self.x as f64 + self.y as f64 * PHI_F64
    }

    /// Exact square root in `Z[phi]`, if one exists.
    ///
    /// Solves `x^2 + y^2 = s` and `2xy + y^2 = t` for `self = s + t phi` by
    /// scanning `|y| <= isqrt(s)`.
    pub fn sqrt(self) -> Option<Self> {
        if self.signum() == Ordering::Less || self.conjugate().signum() == Ordering::Less {
            return None;
        }
        let s = self.x;
        if s < 0 {
            return None;
        }
        let bound = isqrt(s as u64) as i64;
        let mut best: Option<QuadInt> = None;
        for y in -bound..=bound {
            let rem = s - y * y;
            let xr = isqrt(rem as u64) as i64;
            if xr * xr != rem {
                continue;
            }
            for x in [xr, -xr] {
                let cand = QuadInt::new(x, y);
                if cand.is_positive() && cand.checked_mul(cand) == Some(self) {
                    best = Some(cand);
                }
            }
        }
        if self.is_zero() {
            return Some(QuadInt::ZERO);
        }
        best
    }
}

/// Sign of `x + y phi`.
///
/// `2(x + y phi) = (2x + y) + y sqrt 5`; with mixed signs the comparison is
/// settled by squaring against the minimal polynomial, so no float is involved.
fn sign_of(x: i128, y: i128) -> Ordering {
    let a = 2 * x + y;
    let b = y;
    let cmp_sq = || {
        let lhs = square_wide(a.unsigned_abs());
        let five_b2 = mul_wide_small(square_wide(b.unsigned_abs()), 5);
        lhs.cmp(&five_b2)
    };
    match (a.cmp(&0), b.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => cmp_sq(),
        (Ordering::Less, Ordering::Greater) => cmp_sq().reverse(),
    }
}

/// 256-bit square as `(hi, lo)`.
fn square_wide(v: u128) -> (u128, u128) {
    let (h, l) = (v >> 64, v & u64::MAX as u128);
    let ll = l * l;
    let hl = h * l;
    let hh = h * h;
    let (mid_lo, mid_hi) = (hl << 65, hl >> 63);
    let (lo, carry) = ll.overflowing_add(mid_lo);
    (hh + mid_hi + carry as u128, lo)
}

fn mul_wide_small((hi, lo): (u128, u128), k: u128) -> (u128, u128) {
    let (l, h) = (lo & u64::MAX as u128, lo >> 64);
    let pl = l * k;
    let ph = h * k + (pl >> 64);
    let new_lo = (pl & u64::MAX as u128) | (ph << 64);
    (hi * k + (ph >> 64), new_lo)
}

fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("QuadInt addition overflow")
    }
}

impl AddAssign for QuadInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("QuadInt subtraction overflow")
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("QuadInt multiplication overflow")
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> Self {
        QuadInt {
            x: self.x.checked_neg().expect("QuadInt negation overflow"),
            y: self.y.checked_neg().expect("QuadInt negation overflow"),
        }
    }
}

impl Sum for QuadInt {
    fn sum<I: Iterator<Item = QuadInt>>(iter: I) -> Self {
        iter.fold(QuadInt::ZERO, |a, b| a + b)
    }
}

impl From<i64> for QuadInt {
    fn from(x: i64) -> Self {
        QuadInt::from_int(x)
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order of the real embedding.
impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_of(
            self.x as i128 - other.x as i128,
            self.y as i128 - other.y as i128,
        )
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (x, 0) => write!(f, "{x}"),
            (0, y) => write!(f, "{y}phi"),
            (x, y) if y < 0 => write!(f, "{x}-{}phi", -y),
            (x, y) => write!(f, "{x}+{y}phi"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_squared_is_phi_plus_one() {
        assert_eq!(QuadInt::PHI * QuadInt::PHI, QuadInt::new(1, 1));
        assert_eq!(QuadInt::new(1, 1) * QuadInt::PHI, QuadInt::new(1, 2));
        assert_eq!(QuadInt::new(2, 1) * QuadInt::new(2, 1), QuadInt::new(5, 5));
        let v = QuadInt::new(5, 5).to_f64();
        assert!((v - 3.618_034_f64 * 3.618_034).abs() < 1e-4);
    }

    #[test]
    fn embedding_and_sign() {
        assert_eq!(QuadInt::ZERO.to_f64(), 0.0);
        assert_eq!(QuadInt::ZERO.signum(), Ordering::Equal);
        assert!((QuadInt::new(2, 1).to_f64() - 3.6180).abs() < 1e-4);
        assert_eq!(QuadInt::new(2, 1).signum(), Ordering::Greater);
        assert!((QuadInt::new(1, -1).to_f64() + 0.6180).abs() < 1e-4);
        assert_eq!(QuadInt::new(1, -1).signum(), Ordering::Less);
        // F(n+1) - F(n) phi alternates sign and shrinks towards zero.
        assert_eq!(QuadInt::new(89, -55).signum(), Ordering::Greater);
        assert_eq!(QuadInt::new(-89, 55).signum(), Ordering::Less);
        assert_eq!(QuadInt::new(144, -89).signum(), Ordering::Less);
        let big = QuadInt::new(i64::MAX, i64::MIN);
        assert_eq!(big.signum(), Ordering::Less);
        assert_eq!(QuadInt::new(i64::MAX, -1).cmp(&QuadInt::new(i64::MIN, 1)), Ordering::Greater);
    }

    #[test]
    fn conjugation() {
        assert_eq!(QuadInt::PHI.conjugate(), QuadInt::new(1, -1));
        assert_eq!(QuadInt::new(2, 1).conjugate(), QuadInt::new(3, -1));
        assert_eq!(QuadInt::ZERO.conjugate(), QuadInt::ZERO);
        let c = QuadInt::new(3, -1).to_f64();
        assert!((c - (5.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ordering_matches_embedding() {
        let a = QuadInt::new(12, 16);
        let b = QuadInt::new(20, 8);
        assert!(a > b);
        assert!(QuadInt::PHI > QuadInt::ONE);
    }

    #[test]
    fn powers_and_roots() {
        assert_eq!(QuadInt::PHI.pow(3), QuadInt::new(1, 2));
        assert_eq!(QuadInt::new(2, 1).pow(2), QuadInt::new(5, 5));
        assert_eq!(QuadInt::new(1, 1).sqrt(), Some(QuadInt::PHI));
        assert_eq!(QuadInt::new(5, 5).sqrt(), Some(QuadInt::new(2, 1)));
        assert_eq!(QuadInt::new(2, 0).sqrt(), None);
        assert_eq!(QuadInt::ONE.sqrt(), Some(QuadInt::ONE));
    }

    #[test]
    fn exact_division() {
        assert_eq!(QuadInt::new(4, 6).div_exact(2), Some(QuadInt::new(2, 3)));
        assert_eq!(QuadInt::new(4, 5).div_exact(2), None);
        assert_eq!(QuadInt::new(4, 6).div_exact(0), None);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_a_hard_failure() {
        let big = QuadInt::new(i64::MAX / 2, i64::MAX / 2);
        let _ = big * big;
    }
}
