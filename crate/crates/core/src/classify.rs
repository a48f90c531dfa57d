//! The catalog of golden-dimension generated fusion rings and recognition
//! of small rings up to isomorphism.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::constructors::{
    cyclic_action_fib_power, cyclic_action_tt3_power, deligne_power, make_fib, make_tt3, semidirect_product,
    CyclicActionSpec,
};
use crate::error::{Error, Result};
use crate::quadint::QuadInt;
use crate::ring::{adjoint_and_grading, find_isomorphism, fp_dims, global_dim, verify_axioms, AxiomReport, FusionRing};

/// Largest rank `identify_ring` compares.
pub const IDENTIFY_RANK_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `Fib^{⊠N} ⋊ Z_{NM}`, the generator shifting the factors.
    FibWreath,
    /// `TT3^{⊠N} ⋊ Z_{2NM}`, the generator shifting the factors and swapping on wrap-around.
    TT3Wreath,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::FibWreath, Family::TT3Wreath];

    pub fn name(self) -> &'static str {
        match self {
            Family::FibWreath => "FibWreath",
            Family::TT3Wreath => "TT3Wreath",
        }
    }

    /// Accepts `FibWreath`, `fib-wreath`, `fib` and the same for TT3, in any case.
    pub fn parse(s: &str) -> Option<Family> {
        let t: String = s.chars().filter(|c| *c != '-' && *c != '_').flat_map(char::to_lowercase).collect();
        match t.as_str() {
            "fibwreath" | "fib" => Some(Family::FibWreath),
            "tt3wreath" | "tt3" => Some(Family::TT3Wreath),
            _ => None,
        }
    }

    pub fn base(self) -> FusionRing {
        match self {
            Family::FibWreath => make_fib(),
            Family::TT3Wreath => make_tt3(),
        }
    }

    /// Order of the cyclic group for parameters `(n, m)`.
    pub fn group_order(self, n: usize, m: usize) -> usize {
        match self {
            Family::FibWreath => n * m,
            Family::TT3Wreath => 2 * n * m,
        }
    }

    pub fn rank(self, n: usize, m: usize) -> usize {
        self.base().rank().pow(n as u32) * self.group_order(n, m)
    }

    pub fn action(self, n: usize, m: usize) -> Result<CyclicActionSpec> {
        if n == 0 || m == 0 {
            return Err(Error::Catalog(format!("{}: parameters must be positive, got ({n},{m})", self.name())));
        }
        let shift = match self {
            Family::FibWreath => cyclic_action_fib_power(n),
            Family::TT3Wreath => cyclic_action_tt3_power(n),
        };
        CyclicActionSpec::new(shift.base, self.group_order(n, m), shift.alpha.as_slice().to_vec())
    }

    pub fn ring(self, n: usize, m: usize) -> Result<FusionRing> {
        Ok(semidirect_product(&self.action(n, m)?))
    }

    pub fn entry_name(self, n: usize, m: usize) -> String {
        format!("{}({n},{m})", self.name())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis element `X` of dimension `phi` that generates, with
/// `X X* = 1 + t` and `t X = X + g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiGenerator {
    pub x: usize,
    /// Fibonacci element with `t t = 1 + t`.
    pub t: usize,
    /// Invertible element with `X = t g` up to the `X` summand.
    pub g: usize,
}

/// One verified catalog ring.
#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub ring: FusionRing,
    pub generator_witness: PhiGenerator,
    pub generator_count: usize,
    pub grading_order: usize,
    /// Number of associator twists, the group order; metadata only.
    pub twist_count: usize,
    pub global_dim: QuadInt,
    pub report: AxiomReport,
}

impl ClassEntry {
    pub fn name(&self) -> String {
        self.family.entry_name(self.n, self.m)
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }
}

/// Every `(family, n, m)` with `1 <= n <= n_max`, `1 <= m <= m_max`.
pub fn catalog_parameters(n_max: usize, m_max: usize) -> Vec<(Family, usize, usize)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for n in 1..=n_max {
            for m in 1..=m_max {
                out.push((family, n, m));
            }
        }
    }
    out
}

/// Builds and checks every entry in range, in the order of [`catalog_parameters`].
pub fn enumerate_catalog(n_max: usize, m_max: usize) -> Result<Vec<ClassEntry>> {
    if n_max == 0 || m_max == 0 {
        return Err(Error::Catalog(format!("bounds must be positive, got ({n_max},{m_max})")));
    }
    catalog_parameters(n_max, m_max)
        .into_iter()
        .map(|(f, n, m)| build_entry(f, n, m))
        .collect()
}

pub fn build_entry(family: Family, n: usize, m: usize) -> Result<ClassEntry> {
    build_entry_with(family, n, m, verify_axioms)
}

/// As [`build_entry`] with a caller-supplied axiom check, e.g. a parallel one.
pub fn build_entry_with(
    family: Family,
    n: usize,
    m: usize,
    verify: impl FnOnce(&FusionRing) -> AxiomReport,
) -> Result<ClassEntry> {
    let name = family.entry_name(n, m);
    let fail = |what: String| Error::Catalog(format!("{name}: {what}"));
    let ring = family.ring(n, m)?;
    let order = family.group_order(n, m);

    let report = verify(&ring);
    if let Some(check) = report.checks.iter().find(|c| !c.passed()) {
        return Err(fail(format!("{} fails {} times", check.axiom, check.failures)));
    }

    let grading = adjoint_and_grading(&ring).map_err(|e| fail(format!("{e}")))?;
    if grading.order() != order || grading.cyclic_generator().is_none() {
        return Err(fail(format!(
            "universal grading has order {}, expected cyclic of order {order}",
            grading.order()
        )));
    }

    let gens = find_phi_generators(&ring).map_err(|e| fail(format!("{e}")))?;
    let Some(&witness) = gens.first() else {
        return Err(fail("no generating object of dimension phi".into()));
    };

    let dim = global_dim(&ring).map_err(|e| fail(format!("{e}")))?;
    let expected = global_dim(&family.base())?.pow(n as u32).scale(order as i64);
    if dim != expected {
        return Err(fail(format!("global dimension {dim}, expected {expected}")));
    }

    Ok(ClassEntry {
        family,
        n,
        m,
        ring,
        generator_witness: witness,
        generator_count: gens.len(),
        grading_order: grading.order(),
        twist_count: order,
        global_dim: dim,
        report,
    })
}

/// All basis elements of dimension `phi` that generate the ring, each with
/// its `t` and `g`.
///
/// A generating element of dimension `phi` without that structure is an error
/// naming the element.
pub fn find_phi_generators(ring: &FusionRing) -> Result<Vec<PhiGenerator>> {
    let dims = fp_dims(ring)?;
    let mut out = Vec::new();
    for x in 0..ring.rank() {
        if dims[x] != QuadInt::PHI || !ring.tensor_generates(&ring.basis_object(x)) {
            continue;
        }
        out.push(phi_structure(ring, x).map_err(|msg| Error::Catalog(format!("{}: {msg}", ring.label(x))))?);
    }
    Ok(out)
}

fn phi_structure(ring: &FusionRing, x: usize) -> core::result::Result<PhiGenerator, String> {
    let xx: Vec<(usize, u32)> = ring.fusion(x, ring.dual(x)).collect();
    let unit = ring.unit();
    let t = match xx.as_slice() {
        [(a, 1), (b, 1)] if *a == unit => *b,
        [(a, 1), (b, 1)] if *b == unit => *a,
        _ => return Err(format!("X X* is not 1 + t: {xx:?}")),
    };
    if !ring.is_fib_like(t) {
        return Err(format!("{} in X X* is not Fibonacci", ring.label(t)));
    }
    let tx: Vec<(usize, u32)> = ring.fusion(t, x).collect();
    let g = match tx.as_slice() {
        [(a, 1), (b, 1)] if *a == x => *b,
        [(a, 1), (b, 1)] if *b == x => *a,
        _ => return Err(format!("t X is not X + g: {tx:?}")),
    };
    if !ring.is_invertible(g) {
        return Err(format!("{} in t X is not invertible", ring.label(g)));
    }
    Ok(PhiGenerator { x, t, g })
}

/// Reference rings of a given rank, in the order names are preferred.
fn references(rank: usize) -> Vec<(String, FusionRing)> {
    let mut out = Vec::new();
    let mut push = |name: String, ring: FusionRing| {
        if ring.rank() == rank {
            out.push((name, ring));
        }
    };
    push("Fib".into(), make_fib());
    push("TT3".into(), make_tt3());
    for n in 2.. {
        if 2usize.pow(n as u32) > rank {
            break;
        }
        push(format!("Fib^{n}"), deligne_power(&make_fib(), n));
    }
    for family in Family::ALL {
        for n in 1.. {
            if family.rank(n, 1) > rank {
                break;
            }
            for m in 1.. {
                if family.rank(n, m) > rank {
                    break;
                }
                if family.rank(n, m) == rank {
                    push(family.entry_name(n, m), family.ring(n, m).expect("valid parameters"));
                }
            }
        }
    }
    out
}

/// Name of a known ring isomorphic to `ring`: `Fib`, `TT3`, `Fib^n` or a
/// catalog entry such as `FibWreath(2,1)`; `None` if there is no match or
/// the rank is above [`IDENTIFY_RANK_LIMIT`].
pub fn identify_ring(ring: &FusionRing) -> Option<String> {
    if ring.rank() > IDENTIFY_RANK_LIMIT {
        return None;
    }
    let dims = sorted_dims(ring);
    let grading = adjoint_and_grading(ring).map(|g| g.order()).ok();
    let duals = self_dual_count(ring);
    for (name, reference) in references(ring.rank()) {
        if sorted_dims(&reference) != dims
            || adjoint_and_grading(&reference).map(|g| g.order()).ok() != grading
            || self_dual_count(&reference) != duals
        {
            continue;
        }
        if find_isomorphism(ring, &reference).is_some() {
            return Some(name);
        }
    }
    None
}

fn sorted_dims(ring: &FusionRing) -> Option<Vec<QuadInt>> {
    let mut d = fp_dims(ring).ok()?;
    d.sort();
    Some(d)
}

fn self_dual_count(ring: &FusionRing) -> usize {
    (0..ring.rank()).filter(|&a| ring.dual(a) == a).count()
}
