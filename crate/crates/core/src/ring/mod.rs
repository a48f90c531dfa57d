//! Finite fusion rings with sparse, possibly noncommutative structure
//! constants `N_ab^c`.

mod dims;
mod grading;
mod iso;
mod object;
mod verify;

pub use dims::{fp_dims, global_dim, perron_vector};
pub use grading::{adjoint_and_grading, Grading};
pub use iso::{find_automorphisms, find_isomorphism, find_isomorphisms, RingAutomorphism};
pub use object::ObjectVec;
pub use verify::{
    plan_associativity, verify_axioms, verify_axioms_with, verify_rows, AssocPlan, AssocStrategy, Axiom, AxiomCheck,
    AxiomReport, Violation, EXHAUSTIVE_RANK_LIMIT,
};

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dense row-major table of sparse products: `entries[offsets[a*rank+b]..]`
/// lists `(c, N_ab^c)` with `c` strictly increasing and every multiplicity positive.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Table {
    offsets: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl Table {
    fn row(&self, rank: usize, a: usize, b: usize) -> &[(u32, u32)] {
        let i = a * rank + b;
        &self.entries[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// A ring `base x Z_k` whose products are read off the base table:
/// `(a,g)(b,h) = (a alpha^g(b), g+h)`. Index of `(a,g)` is `g*base_rank + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Graded {
    base: Box<FusionRing>,
    order: usize,
    /// `powers[g][a] = alpha^g(a)`.
    powers: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Table(Table),
    Graded(Graded),
}

/// A based ring with unit, duality involution and nonnegative structure constants.
///
/// Immutable after construction. Products are stored sparsely; semidirect
/// products by cyclic groups keep only the base table and the action, which
/// keeps rank-thousands catalog rings cheap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    repr: Repr,
}

/// Iterator over the summands `(c, N_ab^c)` of a basis product.
#[derive(Clone, Debug)]
pub struct Fusion<'a> {
    iter: core::slice::Iter<'a, (u32, u32)>,
    offset: usize,
}

impl Iterator for Fusion<'_> {
    type Item = (usize, u32);

    fn next(&mut self) -> Option<(usize, u32)> {
        self.iter.next().map(|&(c, m)| (c as usize + self.offset, m))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.iter.size_hint()
    }
}

impl ExactSizeIterator for Fusion<'_> {}

impl FusionRing {
    /// Builds a ring from explicit nonzero structure constants `(a, b, c, N_ab^c)`.
    ///
    /// Checks index ranges, that `dual` is an involutive permutation, and
    /// that no triple is repeated. The fusion axioms themselves are checked
    /// separately by [`verify_axioms`].
    pub fn from_triples<I>(labels: Vec<String>, unit: usize, dual: Vec<usize>, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, u32)>,
    {
        let rank = labels.len();
        check_basic(rank, unit, &dual)?;
        let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); rank * rank];
        for (a, b, c, m) in triples {
            for index in [a, b, c] {
                if index >= rank {
                    return Err(Error::IndexOutOfRange { index, rank });
                }
            }
            if m == 0 {
                continue;
            }
            rows[a * rank + b].push((c as u32, m));
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::DuplicateTriple {
                    a: i / rank,
                    b: i % rank,
                    c: w[0].0 as usize,
                });
            }
        }
        Ok(Self::from_rows(labels, unit, dual, rows))
    }

    /// Builds a ring from a product rule `f(a, b) -> [(c, N_ab^c)]`.
    pub(crate) fn from_fn<F>(labels: Vec<String>, unit: usize, dual: Vec<usize>, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<(usize, u32)>,
    {
        let rank = labels.len();
        check_basic(rank, unit, &dual)?;
        let mut offsets = Vec::with_capacity(rank * rank + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for a in 0..rank {
            for b in 0..rank {
                let mut row = f(a, b);
                row.retain(|&(_, m)| m > 0);
                row.sort_unstable();
                for w in row.windows(2) {
                    if w[0].0 == w[1].0 {
                        return Err(Error::DuplicateTriple { a, b, c: w[0].0 });
                    }
                }
                for &(c, m) in &row {
                    if c >= rank {
                        return Err(Error::IndexOutOfRange { index: c, rank });
                    }
                    entries.push((c as u32, m));
                }
                offsets.push(entries.len());
            }
        }
        Ok(FusionRing {
            labels,
            unit,
            dual,
            repr: Repr::Table(Table { offsets, entries }),
        })
    }

    fn from_rows(labels: Vec<String>, unit: usize, dual: Vec<usize>, rows: Vec<Vec<(u32, u32)>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for row in rows {
            entries.extend(row);
            offsets.push(entries.len());
        }
        FusionRing {
            labels,
            unit,
            dual,
            repr: Repr::Table(Table { offsets, entries }),
        }
    }

    /// Semidirect product `base x| Z_order` for the action `alpha` (as a
    /// permutation of base indices); `alpha^order = id` must already hold.
    pub(crate) fn graded(base: &FusionRing, order: usize, alpha: &[usize], labels: Vec<String>) -> Self {
        let base = Box::new(base.to_table());
        let r = base.rank();
        let mut powers: Vec<Vec<u32>> = Vec::with_capacity(order);
        powers.push((0..r as u32).collect());
        for g in 1..order {
            let prev = &powers[g - 1];
            powers.push(prev.iter().map(|&a| alpha[a as usize] as u32).collect());
        }
        let unit = base.unit;
        let mut dual = vec![0; r * order];
        for g in 0..order {
            let inv = (order - g) % order;
            for a in 0..r {
                // (a,g)* = (alpha^{-g}(a*), -g)
                let d = powers[inv][base.dual[a]] as usize;
                dual[g * r + a] = inv * r + d;
            }
        }
        FusionRing {
            labels,
            unit,
            dual,
            repr: Repr::Graded(Graded { base, order, powers }),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Like [`index_of`](Self::index_of) but reports a readable error.
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::BadWord(format!("no basis element labelled {label:?}")))
    }

    /// Summands of the basis product `a x b`, in increasing basis order.
    pub fn fusion(&self, a: usize, b: usize) -> Fusion<'_> {
        match &self.repr {
            Repr::Table(t) => Fusion {
                iter: t.row(self.rank(), a, b).iter(),
                offset: 0,
            },
            Repr::Graded(g) => {
                let r = g.base.rank();
                let (ga, a0) = (a / r, a % r);
                let (gb, b0) = (b / r, b % r);
                let b1 = g.powers[ga][b0] as usize;
                let grade = (ga + gb) % g.order;
                let Repr::Table(t) = &g.base.repr else {
                    unreachable!("graded base is always materialized")
                };
                Fusion {
                    iter: t.row(r, a0, b1).iter(),
                    offset: grade * r,
                }
            }
        }
    }

    /// `N_ab^c`.
    pub fn multiplicity(&self, a: usize, b: usize, c: usize) -> u32 {
        // rows are sorted, so a short linear scan or binary search both work
        let f = self.fusion(a, b);
        let offset = f.offset;
        let row = f.iter.as_slice();
        if c < offset {
            return 0;
        }
        match row.binary_search_by_key(&((c - offset) as u32), |&(x, _)| x) {
            Ok(i) => row[i].1,
            Err(_) => 0,
        }
    }

    /// All nonzero structure constants in lexicographic `(a, b, c)` order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let rank = self.rank();
        (0..rank).flat_map(move |a| {
            (0..rank).flat_map(move |b| self.fusion(a, b).map(move |(c, m)| (a, b, c, m)))
        })
    }

    /// Number of nonzero structure constants.
    pub fn nonzero_count(&self) -> usize {
        match &self.repr {
            Repr::Table(t) => t.entries.len(),
            Repr::Graded(g) => g.base.nonzero_count() * g.order * g.order,
        }
    }

    /// The grading order and action, when the ring was built as a semidirect product.
    pub fn semidirect_order(&self) -> Option<usize> {
        match &self.repr {
            Repr::Graded(g) => Some(g.order),
            Repr::Table(_) => None,
        }
    }

    /// A copy with an explicit product table.
    pub fn to_table(&self) -> FusionRing {
        match &self.repr {
            Repr::Table(_) => self.clone(),
            Repr::Graded(_) => {
                let rank = self.rank();
                let rows = (0..rank * rank)
                    .map(|i| {
                        let f = self.fusion(i / rank, i % rank);
                        f.map(|(c, m)| (c as u32, m)).collect()
                    })
                    .collect();
                Self::from_rows(self.labels.clone(), self.unit, self.dual.clone(), rows)
            }
        }
    }

    /// A copy with `N_ab^c` replaced by `m`; the dual map is left unchanged.
    pub fn with_multiplicity(&self, a: usize, b: usize, c: usize, m: u32) -> FusionRing {
        let rank = self.rank();
        let rows = (0..rank * rank)
            .map(|i| {
                let (x, y) = (i / rank, i % rank);
                let mut row: Vec<(u32, u32)> = self
                    .fusion(x, y)
                    .filter(|&(z, _)| !(x == a && y == b && z == c))
                    .map(|(z, k)| (z as u32, k))
                    .collect();
                if x == a && y == b && m > 0 {
                    row.push((c as u32, m));
                    row.sort_unstable();
                }
                row
            })
            .collect();
        Self::from_rows(self.labels.clone(), self.unit, self.dual.clone(), rows)
    }

    /// Relabels the basis so that old index `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<FusionRing> {
        let rank = self.rank();
        check_permutation(perm, rank).map_err(Error::BadDual)?;
        let mut inv = vec![0; rank];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let labels = (0..rank).map(|p| self.labels[inv[p]].clone()).collect();
        let dual = (0..rank).map(|p| perm[self.dual[inv[p]]]).collect();
        FusionRing::from_fn(labels, perm[self.unit], dual, |a, b| {
            self.fusion(inv[a], inv[b]).map(|(c, m)| (perm[c], m)).collect()
        })
    }

    /// The based subring on a fusion-closed, dual-closed subset containing the unit.
    ///
    /// Basis order follows the order of `subset` after sorting.
    pub fn subring(&self, subset: &[usize]) -> Result<FusionRing> {
        let mut members: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if !members.contains(&self.unit) {
            members.push(self.unit);
            members.sort_unstable();
        }
        let rank = self.rank();
        let mut pos = vec![usize::MAX; rank];
        for (i, &m) in members.iter().enumerate() {
            if m >= rank {
                return Err(Error::IndexOutOfRange { index: m, rank });
            }
            pos[m] = i;
        }
        for &a in &members {
            if pos[self.dual[a]] == usize::MAX {
                return Err(Error::BadDual(format!("subset not closed under duality at {a}")));
            }
            for &b in &members {
                if let Some((c, _)) = self.fusion(a, b).find(|&(c, _)| pos[c] == usize::MAX) {
                    return Err(Error::NotClosed { a, b, c });
                }
            }
        }
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        let dual = members.iter().map(|&m| pos[self.dual[m]]).collect();
        FusionRing::from_fn(labels, pos[self.unit], dual, |a, b| {
            self.fusion(members[a], members[b]).map(|(c, m)| (pos[c], m)).collect()
        })
    }

    // ----- objects -----

    pub fn zero_object(&self) -> ObjectVec {
        ObjectVec::zero(self.rank())
    }

    pub fn basis_object(&self, a: usize) -> ObjectVec {
        ObjectVec::basis(self.rank(), a)
    }

    pub fn unit_object(&self) -> ObjectVec {
        self.basis_object(self.unit)
    }

    /// Bilinear extension of the structure constants; `X x Y` in that order.
    pub fn tensor(&self, x: &ObjectVec, y: &ObjectVec) -> ObjectVec {
        let mut out = vec![0u64; self.rank()];
        for (a, xa) in x.nonzero() {
            for (b, yb) in y.nonzero() {
                let k = xa.checked_mul(yb).expect("object multiplicity overflow");
                for (c, m) in self.fusion(a, b) {
                    out[c] = out[c]
                        .checked_add(k.checked_mul(m as u64).expect("object multiplicity overflow"))
                        .expect("object multiplicity overflow");
                }
            }
        }
        ObjectVec::from_vec(out)
    }

    /// `X x b` for a basis element `b`.
    pub fn tensor_basis_right(&self, x: &ObjectVec, b: usize) -> ObjectVec {
        self.tensor(x, &self.basis_object(b))
    }

    pub fn dual_object(&self, x: &ObjectVec) -> ObjectVec {
        let mut out = vec![0u64; self.rank()];
        for (a, xa) in x.nonzero() {
            out[self.dual[a]] = xa;
        }
        ObjectVec::from_vec(out)
    }

    /// `dim Hom(X, Y)`, the coordinate pairing of a semisimple category.
    pub fn hom_dim(&self, x: &ObjectVec, y: &ObjectVec) -> u64 {
        x.pairing(y)
    }

    /// Whether `t` is self-dual with `t x t = 1 + t`.
    pub fn is_fib_like(&self, t: usize) -> bool {
        if t >= self.rank() || t == self.unit || self.dual[t] != t {
            return false;
        }
        let mut expect = [(self.unit, 1u32), (t, 1u32)];
        expect.sort_unstable();
        self.fusion(t, t).eq(expect.iter().copied())
    }

    /// Whether `a x a* = 1`.
    pub fn is_invertible(&self, a: usize) -> bool {
        self.fusion(a, self.dual[a]).eq(core::iter::once((self.unit, 1)))
    }

    /// Whether the summands of `X^n`, `n >= 0`, exhaust the basis.
    pub fn tensor_generates(&self, x: &ObjectVec) -> bool {
        self.generated_support(x).len() == self.rank()
    }

    /// Union of the supports of `X^n` over `n >= 0`, sorted.
    pub fn generated_support(&self, x: &ObjectVec) -> Vec<usize> {
        let rank = self.rank();
        let gens: Vec<usize> = x.support().collect();
        let mut seen = vec![false; rank];
        seen[self.unit] = true;
        let mut stack = vec![self.unit];
        while let Some(c) = stack.pop() {
            for &g in &gens {
                for (d, _) in self.fusion(c, g) {
                    if !seen[d] {
                        seen[d] = true;
                        stack.push(d);
                    }
                }
            }
        }
        (0..rank).filter(|&i| seen[i]).collect()
    }

    /// Solves `t x X = Z` for a Fibonacci element `t`.
    ///
    /// Left multiplication by `t` satisfies `L_t^2 = 1 + L_t`, so its inverse
    /// is `L_t - 1` and `X = t Z - Z` exactly; the candidate is accepted only
    /// if it is nonnegative and reproduces `Z`.
    pub fn divide_by_fib(&self, t: usize, z: &ObjectVec) -> Result<ObjectVec> {
        if !self.is_fib_like(t) {
            return Err(Error::NotFibLike(format!("{} does not satisfy t t = 1 + t", self.labels[t])));
        }
        let tz = self.tensor(&self.basis_object(t), z);
        let mut out = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let v = tz.get(i) as i128 - z.get(i) as i128;
            if v < 0 {
                return Err(Error::NoSolution);
            }
            out.push(v as u64);
        }
        let x = ObjectVec::from_vec(out);
        if &self.tensor(&self.basis_object(t), &x) != z {
            return Err(Error::NoSolution);
        }
        Ok(x)
    }

    /// Left multiplication matrix `M[c][b] = N_tb^c` of a basis element.
    pub fn left_matrix(&self, t: usize) -> Vec<Vec<i64>> {
        let rank = self.rank();
        let mut m = vec![vec![0i64; rank]; rank];
        for b in 0..rank {
            for (c, k) in self.fusion(t, b) {
                m[c][b] = k as i64;
            }
        }
        m
    }
}

fn check_basic(rank: usize, unit: usize, dual: &[usize]) -> Result<()> {
    if rank == 0 {
        return Err(Error::BadDual("empty basis".into()));
    }
    if unit >= rank {
        return Err(Error::IndexOutOfRange { index: unit, rank });
    }
    if dual.len() != rank {
        return Err(Error::BadDual(format!("dual has length {} for rank {rank}", dual.len())));
    }
    check_permutation(dual, rank).map_err(Error::BadDual)?;
    for (a, &d) in dual.iter().enumerate() {
        if dual[d] != a {
            return Err(Error::BadDual(format!("dual is not an involution at {a}")));
        }
    }
    if dual[unit] != unit {
        return Err(Error::BadDual("unit is not self-dual".into()));
    }
    Ok(())
}

fn check_permutation(perm: &[usize], rank: usize) -> core::result::Result<(), String> {
    if perm.len() != rank {
        return Err(format!("permutation has length {} for rank {rank}", perm.len()));
    }
    let mut seen = vec![false; rank];
    for &p in perm {
        if p >= rank || seen[p] {
            return Err(format!("not a permutation of 0..{rank}"));
        }
        seen[p] = true;
    }
    Ok(())
}
