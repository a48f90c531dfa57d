//! Thread-parallel drivers over the core crate.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use goldfusion_core::classify::{build_entry_with, catalog_parameters, ClassEntry};
use goldfusion_core::ring::{plan_associativity, verify_rows, AssocStrategy, AxiomReport};
use goldfusion_core::FusionRing;

pub const THREADS_ENV: &str = "GOLDFUSION_THREADS";

/// The flag if given, else `GOLDFUSION_THREADS`, else the available parallelism.
pub fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(THREADS_ENV).ok()?.trim().parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

/// Splits the left factor of every instance into contiguous row blocks,
/// one scoped thread per block. Reports merge in row order, so the result
/// does not depend on `threads`.
pub fn verify_parallel(ring: &FusionRing, strategy: AssocStrategy, threads: usize) -> AxiomReport {
    let plan = plan_associativity(ring, strategy);
    let rank = ring.rank();
    let threads = threads.clamp(1, rank.max(1));
    if threads == 1 {
        return verify_rows(ring, &plan, 0..rank);
    }
    let chunk = rank.div_ceil(threads);
    let reports: Vec<AxiomReport> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..rank)
            .step_by(chunk)
            .map(|start| {
                let plan = &plan;
                s.spawn(move || verify_rows(ring, plan, start..(start + chunk).min(rank)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread")).collect()
    });
    let mut it = reports.into_iter();
    let first = it.next().expect("at least one block");
    it.fold(first, AxiomReport::merge)
}

/// The catalog with entries built concurrently, in the order of
/// [`catalog_parameters`]; the first failing entry in that order is returned.
pub fn classify_parallel(n_max: usize, m_max: usize, threads: usize) -> goldfusion_core::Result<Vec<ClassEntry>> {
    if n_max == 0 || m_max == 0 {
        return goldfusion_core::classify::enumerate_catalog(n_max, m_max);
    }
    let params = catalog_parameters(n_max, m_max);
    // largest rings first so that they do not start last
    let mut order: Vec<usize> = (0..params.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(params[i].0.rank(params[i].1, params[i].2)));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<goldfusion_core::Result<ClassEntry>>>> =
        Mutex::new((0..params.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, params.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&i) = order.get(k) else { break };
                let (family, n, m) = params[i];
                let entry = build_entry_with(family, n, m, |r| verify_parallel(r, AssocStrategy::Auto, 1));
                results.lock().expect("result lock")[i] = Some(entry);
            });
        }
    });
    results
        .into_inner()
        .expect("result lock")
        .into_iter()
        .map(|r| r.expect("every entry built"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use goldfusion_core::constructors::{deligne_power, make_tt3};
    use goldfusion_core::ring::verify_axioms_with;

    #[test]
    fn parallel_report_matches_sequential() {
        let ring = deligne_power(&make_tt3(), 2);
        let broken = make_tt3().with_multiplicity(2, 5, 4, 0);
        for r in [ring, broken] {
            let seq = verify_axioms_with(&r, AssocStrategy::Auto);
            for t in [1, 3, 8] {
                assert_eq!(verify_parallel(&r, AssocStrategy::Auto, t), seq, "threads = {t}");
            }
        }
    }

    #[test]
    fn parallel_catalog_keeps_order() {
        let entries = classify_parallel(2, 1, 4).unwrap();
        let names: Vec<String> = entries.iter().map(ClassEntry::name).collect();
        assert_eq!(names, ["FibWreath(1,1)", "FibWreath(2,1)", "TT3Wreath(1,1)", "TT3Wreath(2,1)"]);
    }
}
