//! Basis-permutation isomorphisms by pruned backtracking.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{fp_dims, FusionRing};
use crate::error::{Error, Result};
use crate::quadint::QuadInt;

/// A permutation of basis indices preserving unit, duality and every `N_ab^c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingAutomorphism {
    perm: Vec<usize>,
}

impl RingAutomorphism {
    /// Validates `perm` against `ring`.
    pub fn new(ring: &FusionRing, perm: Vec<usize>) -> Result<Self> {
        is_isomorphism(ring, ring, &perm).map_err(Error::NotAnAutomorphism)?;
        Ok(RingAutomorphism { perm })
    }

    pub fn identity(rank: usize) -> Self {
        RingAutomorphism {
            perm: (0..rank).collect(),
        }
    }

    /// Wraps a permutation already known to be an automorphism.
    pub(crate) fn from_perm_unchecked(perm: Vec<usize>) -> Self {
        RingAutomorphism { perm }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.perm[a]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` after `other`: `a -> self(other(a))`.
    pub fn compose(&self, other: &RingAutomorphism) -> RingAutomorphism {
        RingAutomorphism {
            perm: other.perm.iter().map(|&a| self.perm[a]).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> RingAutomorphism {
        let mut acc = RingAutomorphism::identity(self.perm.len());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }
}

/// Checks that `perm` maps `a` isomorphically onto `b`.
pub(crate) fn is_isomorphism(a: &FusionRing, b: &FusionRing, perm: &[usize]) -> core::result::Result<(), alloc::string::String> {
    let rank = a.rank();
    if b.rank() != rank || perm.len() != rank {
        return Err(format!("rank mismatch: {} vs {}", rank, b.rank()));
    }
    let mut seen = vec![false; rank];
    for &p in perm {
        if p >= rank || seen[p] {
            return Err("not a permutation".into());
        }
        seen[p] = true;
    }
    if perm[a.unit()] != b.unit() {
        return Err("unit is not fixed".into());
    }
    for x in 0..rank {
        if perm[a.dual(x)] != b.dual(perm[x]) {
            return Err(format!("does not commute with duality at {}", a.label(x)));
        }
    }
    for x in 0..rank {
        for y in 0..rank {
            let mut image: Vec<(usize, u32)> = a.fusion(x, y).map(|(c, m)| (perm[c], m)).collect();
            image.sort_unstable();
            if !b.fusion(perm[x], perm[y]).eq(image.iter().copied()) {
                return Err(format!("product {} x {} is not preserved", a.label(x), a.label(y)));
            }
        }
    }
    Ok(())
}

/// Invariants of a basis element that any isomorphism preserves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Fingerprint {
    unit: bool,
    self_dual: bool,
    dim: Option<(i64, i64)>,
    /// Sorted multiplicities of `x x*`, `x x` and `x* x`.
    shapes: [Vec<u32>; 3],
}

fn fingerprints(ring: &FusionRing) -> Vec<Fingerprint> {
    let dims: Option<Vec<QuadInt>> = fp_dims(ring).ok();
    (0..ring.rank())
        .map(|x| {
            let shape = |p: usize, q: usize| {
                let mut v: Vec<u32> = ring.fusion(p, q).map(|(_, m)| m).collect();
                v.sort_unstable();
                v
            };
            Fingerprint {
                unit: x == ring.unit(),
                self_dual: ring.dual(x) == x,
                dim: dims.as_ref().map(|d| (d[x].x, d[x].y)),
                shapes: [shape(x, ring.dual(x)), shape(x, x), shape(ring.dual(x), x)],
            }
        })
        .collect()
}

/// All isomorphisms `a -> b` as basis permutations, in lexicographic order,
/// stopping after `limit` of them.
pub fn find_isomorphisms(a: &FusionRing, b: &FusionRing, limit: usize) -> Vec<Vec<usize>> {
    let rank = a.rank();
    if b.rank() != rank || limit == 0 {
        return Vec::new();
    }
    let fa = fingerprints(a);
    let fb = fingerprints(b);
    let mut sa = fa.clone();
    let mut sb = fb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Vec::new();
    }
    let candidates: Vec<Vec<usize>> = (0..rank).map(|x| (0..rank).filter(|&y| fa[x] == fb[y]).collect()).collect();
    // most constrained first
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));

    let mut search = Search {
        a,
        b,
        candidates,
        order,
        perm: vec![usize::MAX; rank],
        used: vec![false; rank],
        assigned: Vec::with_capacity(rank),
        found: Vec::new(),
        limit,
    };
    search.run(0);
    search.found.sort();
    search.found
}

/// Some isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &FusionRing, b: &FusionRing) -> Option<Vec<usize>> {
    find_isomorphisms(a, b, 1).into_iter().next()
}

/// The full automorphism group, sorted, identity first.
pub fn find_automorphisms(ring: &FusionRing) -> Vec<RingAutomorphism> {
    find_isomorphisms(ring, ring, usize::MAX)
        .into_iter()
        .map(RingAutomorphism::from_perm_unchecked)
        .collect()
}

struct Search<'a> {
    a: &'a FusionRing,
    b: &'a FusionRing,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            self.found.push(self.perm.clone());
            return;
        }
        let x = self.order[depth];
        if self.perm[x] != usize::MAX {
            // fixed earlier as the dual of another element
            self.run(depth + 1);
            return;
        }
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.used[y] {
                continue;
            }
            let xd = self.a.dual(x);
            let yd = self.b.dual(y);
            if xd != x && (self.used[yd] || yd == y) {
                continue;
            }
            let mut pushed = 1;
            self.assign(x, y);
            let mut ok = self.consistent(x);
            if ok && xd != x {
                if self.candidates[xd].contains(&yd) {
                    self.assign(xd, yd);
                    pushed = 2;
                    ok = self.consistent(xd);
                } else {
                    ok = false;
                }
            }
            if ok {
                self.run(depth + 1);
            }
            for _ in 0..pushed {
                let z = self.assigned.pop().expect("assigned");
                self.used[self.perm[z]] = false;
                self.perm[z] = usize::MAX;
            }
            if self.found.len() >= self.limit {
                return;
            }
        }
    }

    fn assign(&mut self, x: usize, y: usize) {
        self.perm[x] = y;
        self.used[y] = true;
        self.assigned.push(x);
    }

    /// Compares every structure constant among assigned elements that involves `x`.
    fn consistent(&self, x: usize) -> bool {
        let (a, b, p) = (self.a, self.b, &self.perm);
        for &u in &self.assigned {
            for (s, t) in [(x, u), (u, x)] {
                for &c in &self.assigned {
                    if a.multiplicity(s, t, c) != b.multiplicity(p[s], p[t], p[c]) {
                        return false;
                    }
                }
            }
            for &v in &self.assigned {
                if a.multiplicity(u, v, x) != b.multiplicity(p[u], p[v], p[x]) {
                    return false;
                }
            }
        }
        true
    }
}
