//! The rings of the golden-dimension catalog: Fib, TT3, Deligne powers and
//! semidirect products by cyclic actions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::{FusionRing, RingAutomorphism};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `{1, tau}` with `tau tau = 1 + tau`.
pub fn make_fib() -> FusionRing {
    FusionRing::from_triples(
        labels(&["1", "tau"]),
        0,
        vec![0, 1],
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
    )
    .expect("Fib table is well formed")
}

pub const TT3_LABELS: [&str; 6] = ["1", "f2", "rho", "sigma", "sigmabar", "mu"];

/// The rank-6 noncommutative ring with basis `1, f2, rho, sigma, sigmabar, mu`.
///
/// Rows of the table are left factors.
pub fn make_tt3() -> FusionRing {
    const ONE: usize = 0;
    const F: usize = 1;
    const R: usize = 2;
    const S: usize = 3;
    const SB: usize = 4;
    const M: usize = 5;
    let table: [[&[(usize, u32)]; 6]; 6] = [
        [&[(ONE, 1)], &[(F, 1)], &[(R, 1)], &[(S, 1)], &[(SB, 1)], &[(M, 1)]],
        [
            &[(F, 1)],
            &[(ONE, 1), (F, 2), (R, 1), (S, 1), (SB, 1), (M, 1)],
            &[(F, 1), (SB, 1)],
            &[(F, 1), (S, 1), (SB, 1), (M, 1)],
            &[(F, 1), (R, 1), (S, 1), (SB, 1)],
            &[(F, 1), (S, 1)],
        ],
        [
            &[(R, 1)],
            &[(F, 1), (S, 1)],
            &[(ONE, 1), (R, 1)],
            &[(F, 1)],
            &[(SB, 1), (M, 1)],
            &[(SB, 1)],
        ],
        [
            &[(S, 1)],
            &[(F, 1), (R, 1), (S, 1), (SB, 1)],
            &[(S, 1), (M, 1)],
            &[(F, 1), (SB, 1)],
            &[(ONE, 1), (F, 1), (M, 1)],
            &[(F, 1)],
        ],
        [
            &[(SB, 1)],
            &[(F, 1), (S, 1), (SB, 1), (M, 1)],
            &[(F, 1)],
            &[(ONE, 1), (F, 1), (R, 1)],
            &[(F, 1), (S, 1)],
            &[(R, 1), (SB, 1)],
        ],
        [
            &[(M, 1)],
            &[(F, 1), (SB, 1)],
            &[(S, 1)],
            &[(R, 1), (S, 1)],
            &[(F, 1)],
            &[(ONE, 1), (M, 1)],
        ],
    ];
    FusionRing::from_fn(labels(&TT3_LABELS), ONE, vec![0, 1, 2, 4, 3, 5], |a, b| table[a][b].to_vec())
        .expect("TT3 table is well formed")
}

/// The swap `rho <-> mu`, `sigma <-> sigmabar` of TT3.
pub fn tt3_swap() -> Vec<usize> {
    vec![0, 1, 5, 4, 3, 2]
}

fn split_label(label: &str) -> Vec<&str> {
    match label.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
        Some(inner) => inner.split('|').collect(),
        None => vec![label],
    }
}

/// Factorwise product on pairs; `(a, b)` has index `a * rank(B) + b` and
/// label `[a|b]`, with bracketed factor labels flattened.
pub fn deligne_product(a: &FusionRing, b: &FusionRing) -> FusionRing {
    let rb = b.rank();
    let mut names = Vec::with_capacity(a.rank() * rb);
    for x in 0..a.rank() {
        for y in 0..rb {
            let mut parts = split_label(a.label(x));
            parts.extend(split_label(b.label(y)));
            names.push(format!("[{}]", parts.join("|")));
        }
    }
    let dual = (0..a.rank() * rb).map(|i| a.dual(i / rb) * rb + b.dual(i % rb)).collect();
    FusionRing::from_fn(names, a.unit() * rb + b.unit(), dual, |i, j| {
        let (x1, y1) = (i / rb, i % rb);
        let (x2, y2) = (j / rb, j % rb);
        let mut out = Vec::new();
        for (x, m) in a.fusion(x1, x2) {
            for (y, n) in b.fusion(y1, y2) {
                out.push((x * rb + y, m * n));
            }
        }
        out
    })
    .expect("Deligne product of well-formed rings is well formed")
}

/// `ring^{⊠n}`; basis tuples in lexicographic order, first factor most significant.
pub fn deligne_power(ring: &FusionRing, n: usize) -> FusionRing {
    assert!(n >= 1, "Deligne power needs n >= 1");
    let mut acc = ring.clone();
    for _ in 1..n {
        acc = deligne_product(&acc, ring);
    }
    acc
}

/// Digits of a basis index of `ring^{⊠n}` in base `r`, first factor first.
pub fn power_digits(index: usize, r: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    let mut i = index;
    for k in (0..n).rev() {
        digits[k] = i % r;
        i /= r;
    }
    digits
}

pub fn power_index(digits: &[usize], r: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * r + d)
}

/// A cyclic group `Z_order` acting on `base` through the automorphism `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicActionSpec {
    pub base: FusionRing,
    pub order: usize,
    pub alpha: RingAutomorphism,
}

impl CyclicActionSpec {
    /// Checks that `alpha` is an automorphism with `alpha^order = id`.
    pub fn new(base: FusionRing, order: usize, alpha: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ActionOrder { order });
        }
        let alpha = RingAutomorphism::new(&base, alpha)?;
        if !alpha.pow(order).is_identity() {
            return Err(Error::ActionOrder { order });
        }
        Ok(CyclicActionSpec { base, order, alpha })
    }

    /// `alpha^g`.
    pub fn power(&self, g: usize) -> RingAutomorphism {
        self.alpha.pow(g % self.order)
    }
}

pub fn group_label(g: usize) -> String {
    match g {
        0 => "e".into(),
        1 => "g".into(),
        _ => format!("g^{g}"),
    }
}

/// `base x| Z_k`: `(a,g)(b,h) = sum_c N_{a, alpha^g(b)}^c (c, g+h)`.
///
/// Basis `(a, g)` has index `g * rank(base) + a` and label `(a,g^k)`.
pub fn semidirect_product(spec: &CyclicActionSpec) -> FusionRing {
    let base = &spec.base;
    let r = base.rank();
    let mut names = Vec::with_capacity(r * spec.order);
    for g in 0..spec.order {
        for a in 0..r {
            names.push(format!("({},{})", base.label(a), group_label(g)));
        }
    }
    FusionRing::graded(base, spec.order, spec.alpha.as_slice(), names)
}

/// Cyclic shift of the factors of `Fib^{⊠n}`: factor `i` moves to factor `i+1`.
pub fn cyclic_action_fib_power(n: usize) -> CyclicActionSpec {
    assert!(n >= 1, "need at least one factor");
    let base = deligne_power(&make_fib(), n);
    let alpha = shift_factors(2, n, |_, d| d);
    CyclicActionSpec::new(base, n, alpha).expect("factor shift is an automorphism of order n")
}

/// Shift of the factors of `TT3^{⊠m}` with the swap applied when the last
/// factor wraps around to the first; `alpha^m` is the swap on every factor.
pub fn cyclic_action_tt3_power(m: usize) -> CyclicActionSpec {
    assert!(m >= 1, "need at least one factor");
    let base = deligne_power(&make_tt3(), m);
    let swap = tt3_swap();
    let alpha = shift_factors(6, m, |to, d| if to == 0 { swap[d] } else { d });
    CyclicActionSpec::new(base, 2 * m, alpha).expect("twisted shift is an automorphism of order 2m")
}

/// Permutation of `r^n` tuples sending the digit in position `i` to position
/// `i+1 mod n`, transformed by `f(new_position, digit)`.
fn shift_factors(r: usize, n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..r.pow(n as u32))
        .map(|i| {
            let d = power_digits(i, r, n);
            let shifted: Vec<usize> = (0..n).map(|to| f(to, d[(to + n - 1) % n])).collect();
            power_index(&shifted, r)
        })
        .collect()
}

/// The swap applied on every factor of `TT3^{⊠m}`.
pub fn tt3_power_swap(m: usize) -> Vec<usize> {
    let swap = tt3_swap();
    (0..6usize.pow(m as u32))
        .map(|i| {
            let d: Vec<usize> = power_digits(i, 6, m).into_iter().map(|x| swap[x]).collect();
            power_index(&d, 6)
        })
        .collect()
}
