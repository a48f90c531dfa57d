//! Adjoint subring and universal grading.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::FusionRing;
use crate::error::{Error, Result};

/// The universal grading of a fusion ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    /// Basis elements of the adjoint subring, sorted.
    pub ad: Vec<usize>,
    /// Graded components; component 0 contains the unit and equals `ad`.
    pub components: Vec<Vec<usize>>,
    /// Component of each basis element.
    pub degree: Vec<usize>,
    /// Group law on component indices.
    pub table: Vec<Vec<usize>>,
}

impl Grading {
    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity() {
            x = self.table[x][g];
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.order();
        (0..k).all(|g| (0..k).all(|h| self.table[g][h] == self.table[h][g]))
    }

    /// A generator of the grading group, if it is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&g| self.element_order(g) == self.order())
    }
}

/// Computes `ad` as the fusion closure of all `x x*`, then the finest
/// partition compatible with it: `a ~ b` whenever `b` occurs in `e a` for
/// some `e` in `ad`. The component products must form a group.
pub fn adjoint_and_grading(ring: &FusionRing) -> Result<Grading> {
    let rank = ring.rank();
    let mut seeds = vec![false; rank];
    for x in 0..rank {
        for (c, _) in ring.fusion(x, ring.dual(x)) {
            seeds[c] = true;
        }
    }
    let seed_obj = crate::ring::ObjectVec::from_vec(seeds.iter().map(|&s| u64::from(s)).collect());
    let ad = ring.generated_support(&seed_obj);

    let mut uf = UnionFind::new(rank);
    for &e in &ad {
        for a in 0..rank {
            for (b, _) in ring.fusion(e, a) {
                uf.union(a, b);
            }
        }
    }
    // number components by first appearance, starting from the unit
    let mut comp_of_root = vec![usize::MAX; rank];
    let mut degree = vec![0; rank];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let order_of_visit = core::iter::once(ring.unit()).chain((0..rank).filter(|&a| a != ring.unit()));
    for a in order_of_visit {
        let r = uf.find(a);
        if comp_of_root[r] == usize::MAX {
            comp_of_root[r] = components.len();
            components.push(Vec::new());
        }
        degree[a] = comp_of_root[r];
        components[degree[a]].push(a);
    }
    for c in &mut components {
        c.sort_unstable();
    }
    if components[0] != ad {
        return Err(Error::NotAGroup("unit component differs from the adjoint subring".into()));
    }

    let k = components.len();
    let mut table = vec![vec![usize::MAX; k]; k];
    for a in 0..rank {
        for b in 0..rank {
            for (c, _) in ring.fusion(a, b) {
                let slot = &mut table[degree[a]][degree[b]];
                if *slot == usize::MAX {
                    *slot = degree[c];
                } else if *slot != degree[c] {
                    return Err(Error::NotAGroup(format!(
                        "{} x {} meets two components",
                        ring.label(a),
                        ring.label(b)
                    )));
                }
            }
        }
    }
    check_group(&table)?;
    Ok(Grading {
        ad,
        components,
        degree,
        table,
    })
}

fn check_group(table: &[Vec<usize>]) -> Result<()> {
    let k = table.len();
    for g in 0..k {
        if table[0][g] != g || table[g][0] != g {
            return Err(Error::NotAGroup("unit component is not an identity".into()));
        }
        if !(0..k).any(|h| table[g][h] == 0 && table[h][g] == 0) {
            return Err(Error::NotAGroup(format!("component {g} has no inverse")));
        }
        for h in 0..k {
            if table[g][h] >= k {
                return Err(Error::NotAGroup(format!("components {g} and {h} have empty product")));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup("component product is not associative".into()));
                }
            }
        }
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
