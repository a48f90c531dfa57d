//! Exact checks of the fusion-ring axioms.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use super::FusionRing;

/// Rings up to this rank get the literal all-triples associativity check
/// under [`AssocStrategy::Auto`].
pub const EXHAUSTIVE_RANK_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `N_1a^b = N_a1^b = delta_ab`.
    Unit,
    /// `N_ab^1 = delta_{b,a*}`.
    Duality,
    /// `(ab)c = a(bc)` on basis triples.
    Associativity,
    /// `N_ab^c = N_{a*c}^b = N_{cb*}^a = N_{b*a*}^{c*}`.
    Frobenius,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::Unit, Axiom::Duality, Axiom::Associativity, Axiom::Frobenius];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Unit => "unit",
            Axiom::Duality => "duality",
            Axiom::Associativity => "associativity",
            Axiom::Frobenius => "frobenius",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the associativity family is checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AssocStrategy {
    /// Exhaustive up to [`EXHAUSTIVE_RANK_LIMIT`], generator-reduced above.
    #[default]
    Auto,
    /// Every triple `(a, b, c)`.
    Exhaustive,
    /// Every `(a, b, s)` with `s` in a generating set, then exact peeling.
    ///
    /// The set of `c` with `(ab)c = a(bc)` for all `a, b` is a subalgebra, so
    /// once it contains the generators, any basis element appearing as the
    /// only unverified summand of a product of verified elements joins it.
    /// Elements the peeling cannot reach are checked directly.
    GeneratorReduced,
}

/// One violated axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Basis indices locating the failure; for reciprocity the triple whose
    /// multiplicity disagrees with the first one found nonzero.
    pub witness: Vec<usize>,
    pub message: String,
}

/// Outcome of one axiom family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// Number of instances examined.
    pub checked: u64,
    /// Number of instances violated.
    pub failures: u64,
    /// First violation in lexicographic order of the examined instances.
    pub first: Option<Violation>,
}

impl AxiomCheck {
    fn new(axiom: Axiom) -> Self {
        AxiomCheck {
            axiom,
            checked: 0,
            failures: 0,
            first: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, witness: Vec<usize>, message: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some(Violation {
                witness,
                message: message(),
            });
        }
    }

    fn absorb(&mut self, later: AxiomCheck) {
        self.checked += later.checked;
        self.failures += later.failures;
        if self.first.is_none() {
            self.first = later.first;
        }
    }
}

/// Pass/fail per axiom family, in the order of [`Axiom::ALL`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// Third arguments used by the associativity check.
    pub assoc_targets: usize,
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("all axioms are reported")
    }

    /// Combines reports over consecutive row ranges, earlier ranges first.
    pub fn merge(mut self, later: AxiomReport) -> AxiomReport {
        for (mine, theirs) in self.checks.iter_mut().zip(later.checks) {
            mine.absorb(theirs);
        }
        self
    }
}

/// Third arguments for which associativity must be checked directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocPlan {
    pub targets: Vec<usize>,
    pub exhaustive: bool,
}

/// Checks all axioms on the whole ring with the default strategy.
pub fn verify_axioms(ring: &FusionRing) -> AxiomReport {
    verify_axioms_with(ring, AssocStrategy::Auto)
}

pub fn verify_axioms_with(ring: &FusionRing, strategy: AssocStrategy) -> AxiomReport {
    let plan = plan_associativity(ring, strategy);
    verify_rows(ring, &plan, 0..ring.rank())
}

/// Resolves a strategy into the list of third arguments to check.
pub fn plan_associativity(ring: &FusionRing, strategy: AssocStrategy) -> AssocPlan {
    let rank = ring.rank();
    let exhaustive = match strategy {
        AssocStrategy::Exhaustive => true,
        AssocStrategy::GeneratorReduced => false,
        AssocStrategy::Auto => rank <= EXHAUSTIVE_RANK_LIMIT,
    };
    if exhaustive {
        return AssocPlan {
            targets: (0..rank).collect(),
            exhaustive,
        };
    }
    AssocPlan {
        targets: peeling_generators(ring),
        exhaustive,
    }
}

/// Picks generators greedily until peeling covers the basis.
///
/// The next generator is the uncovered element with the fewest summands in
/// `x x*`, which favours invertible and Fibonacci elements.
fn peeling_generators(ring: &FusionRing) -> Vec<usize> {
    let rank = ring.rank();
    let cost: Vec<usize> = (0..rank).map(|x| ring.fusion(x, ring.dual(x)).len()).collect();
    let mut good = vec![false; rank];
    good[ring.unit()] = true;
    let mut good_list = vec![ring.unit()];
    let mut gens: Vec<usize> = Vec::new();
    loop {
        // new generators must be combined with everything already good
        let mut queue: Vec<usize> = good_list.clone();
        while let Some(x) = queue.pop() {
            for &s in &gens {
                for (p, q) in [(x, s), (s, x)] {
                    if let Some(c) = single_unknown(ring, p, q, &good) {
                        good[c] = true;
                        good_list.push(c);
                        queue.push(c);
                    }
                }
            }
        }
        if good_list.len() == rank {
            return gens;
        }
        let next = (0..rank)
            .filter(|&x| !good[x])
            .min_by_key(|&x| (cost[x], x))
            .expect("some element is uncovered");
        gens.push(next);
        good[next] = true;
        good_list.push(next);
    }
}

fn single_unknown(ring: &FusionRing, p: usize, q: usize, good: &[bool]) -> Option<usize> {
    let mut unknown = None;
    for (c, _) in ring.fusion(p, q) {
        if !good[c] {
            if unknown.is_some() {
                return None;
            }
            unknown = Some(c);
        }
    }
    unknown
}

/// Checks every axiom instance whose first index lies in `rows`.
///
/// Reports for a partition of `0..rank` merged in order equal the report
/// for the whole range.
pub fn verify_rows(ring: &FusionRing, plan: &AssocPlan, rows: Range<usize>) -> AxiomReport {
    let checks = vec![
        check_unit(ring, rows.clone()),
        check_duality(ring, rows.clone()),
        check_associativity(ring, &plan.targets, rows.clone()),
        check_frobenius(ring, rows),
    ];
    AxiomReport {
        checks,
        assoc_targets: plan.targets.len(),
        exhaustive: plan.exhaustive,
    }
}

fn check_unit(ring: &FusionRing, rows: Range<usize>) -> AxiomCheck {
    let mut check = AxiomCheck::new(Axiom::Unit);
    let one = ring.unit();
    for a in rows {
        for (p, q) in [(one, a), (a, one)] {
            check.checked += 1;
            let mut f = ring.fusion(p, q);
            if !(f.len() == 1 && f.next() == Some((a, 1))) {
                check.fail(vec![p, q], || {
                    format!("{} x {} is not {}", ring.label(p), ring.label(q), ring.label(a))
                });
            }
        }
    }
    check
}

fn check_duality(ring: &FusionRing, rows: Range<usize>) -> AxiomCheck {
    let mut check = AxiomCheck::new(Axiom::Duality);
    let one = ring.unit();
    let rank = ring.rank();
    for a in rows {
        for b in 0..rank {
            check.checked += 1;
            let expected = u32::from(b == ring.dual(a));
            let got = ring.multiplicity(a, b, one);
            if got != expected {
                check.fail(vec![a, b, one], || {
                    format!(
                        "N({},{};1) = {got}, expected {expected}",
                        ring.label(a),
                        ring.label(b)
                    )
                });
            }
        }
    }
    check
}

/// Dense accumulator that remembers which coordinates it touched.
struct Scratch {
    values: Vec<u64>,
    touched: Vec<usize>,
}

impl Scratch {
    fn new(rank: usize) -> Self {
        Scratch {
            values: vec![0; rank],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, c: usize, m: u64) {
        if self.values[c] == 0 {
            self.touched.push(c);
        }
        self.values[c] += m;
    }

    fn clear(&mut self) {
        for &c in &self.touched {
            self.values[c] = 0;
        }
        self.touched.clear();
    }
}

fn check_associativity(ring: &FusionRing, targets: &[usize], rows: Range<usize>) -> AxiomCheck {
    let mut check = AxiomCheck::new(Axiom::Associativity);
    let rank = ring.rank();
    let mut left = Scratch::new(rank);
    let mut right = Scratch::new(rank);
    let mut ab: Vec<(usize, u32)> = Vec::new();
    for a in rows {
        for b in 0..rank {
            ab.clear();
            ab.extend(ring.fusion(a, b));
            for &c in targets {
                check.checked += 1;
                for &(e, m) in &ab {
                    for (d, n) in ring.fusion(e, c) {
                        left.add(d, m as u64 * n as u64);
                    }
                }
                for (f, m) in ring.fusion(b, c) {
                    for (d, n) in ring.fusion(a, f) {
                        right.add(d, m as u64 * n as u64);
                    }
                }
                let differs = left.touched.len() != right.touched.len()
                    || left.touched.iter().any(|&d| left.values[d] != right.values[d]);
                if differs {
                    check.fail(vec![a, b, c], || {
                        let d = left
                            .touched
                            .iter()
                            .chain(&right.touched)
                            .copied()
                            .find(|&d| left.values[d] != right.values[d])
                            .unwrap_or(0);
                        format!(
                            "({a} {b}) {c} and {a} ({b} {c}) differ at {}: {} vs {}",
                            ring.label(d),
                            left.values[d],
                            right.values[d],
                            a = ring.label(a),
                            b = ring.label(b),
                            c = ring.label(c),
                        )
                    });
                }
                left.clear();
                right.clear();
            }
        }
    }
    check
}

fn check_frobenius(ring: &FusionRing, rows: Range<usize>) -> AxiomCheck {
    // The three moves below are involutions on triples, so comparing each
    // nonzero triple with its images also catches nonzero images of zeros.
    let mut check = AxiomCheck::new(Axiom::Frobenius);
    let d = |x: usize| ring.dual(x);
    for a in rows {
        for b in 0..ring.rank() {
            for (c, m) in ring.fusion(a, b) {
                for (p, q, r) in [(d(a), c, b), (c, d(b), a), (d(b), d(a), d(c))] {
                    check.checked += 1;
                    let n = ring.multiplicity(p, q, r);
                    if n != m {
                        check.fail(vec![p, q, r], || {
                            format!(
                                "N({},{};{}) = {m} but N({},{};{}) = {n}",
                                ring.label(a),
                                ring.label(b),
                                ring.label(c),
                                ring.label(p),
                                ring.label(q),
                                ring.label(r),
                            )
                        });
                    }
                }
            }
        }
    }
    check
}
