//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every comparison is exact; the only tolerance is the wall-clock bound on
//! the catalog build. Expected values are computed independently here
//! (brute-force reciprocity, closed-form ranks, direct tensor products)
//! rather than read back from the routines under test.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use goldfusion_core::classify::{enumerate_catalog, find_phi_generators, ClassEntry, Family};
use goldfusion_core::constructors::{
    cyclic_action_tt3_power, deligne_power, make_fib, make_tt3, tt3_power_swap, TT3_LABELS,
};
use goldfusion_core::ring::{
    adjoint_and_grading, find_automorphisms, fp_dims, global_dim, verify_axioms, verify_axioms_with, AssocStrategy,
    Axiom,
};
use goldfusion_core::words::{
    check_presentation_consistency, derive_collapse, evaluate, evaluate_word, normalize, replay_derivation,
    source_simple_fib, source_simple_tt3, word_end_dim, Assignment, Conclusion, DeriveBudget, DeriveOutcome,
    Presentation, Word, WordSum,
};
use goldfusion_core::{FusionRing, ObjectVec, QuadInt};

const CATALOG_TIME_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_TRIALS: usize = 1000;
const SEED: u64 = 0x601d_f051;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(x: i64, y: i64) -> QuadInt {
    QuadInt::new(x, y)
}

fn criterion_1() -> Outcome {
    let fib = make_fib();
    ensure(verify_axioms(&fib).passed(), || "axioms fail".into())?;
    let dims = fp_dims(&fib).map_err(|e| e.to_string())?;
    ensure(dims == [QuadInt::ONE, QuadInt::PHI], || format!("dims {dims:?}"))?;
    // (5 + sqrt5)/2 = 2 + phi
    let g = global_dim(&fib).map_err(|e| e.to_string())?;
    ensure(g == q(2, 1), || format!("global dim {g}"))?;
    Ok(format!("dims (1, phi), global dim {g}"))
}

fn criterion_2() -> Outcome {
    let tt3 = make_tt3();
    let report = verify_axioms_with(&tt3, AssocStrategy::Exhaustive);
    ensure(report.passed(), || format!("{report:?}"))?;
    let assoc = report.get(Axiom::Associativity).checked;
    ensure(assoc == 216, || format!("{assoc} associativity triples"))?;
    // reciprocity on every one of the 216 entries, by brute force
    let r = tt3.rank();
    let d = |a: usize| tt3.dual(a);
    let mut entries = 0;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let n = tt3.multiplicity(a, b, c);
                for (x, y, z) in [(d(a), c, b), (c, d(b), a), (d(b), d(a), d(c))] {
                    ensure(tt3.multiplicity(x, y, z) == n, || format!("reciprocity at ({a},{b},{c})"))?;
                }
                entries += 1;
            }
        }
    }
    let dims = fp_dims(&tt3).map_err(|e| e.to_string())?;
    let phi = QuadInt::PHI;
    let expected = [QuadInt::ONE, phi.pow(3), phi, phi.pow(2), phi.pow(2), phi];
    ensure(dims == expected, || format!("dims {dims:?}"))?;
    // 20 + 8 sqrt5 = 12 + 16 phi
    let g = global_dim(&tt3).map_err(|e| e.to_string())?;
    ensure(g == q(12, 16), || format!("global dim {g}"))?;
    Ok(format!(
        "{assoc} associativity triples, {entries} reciprocity entries, global dim {g}"
    ))
}

fn criterion_3() -> Outcome {
    let tt3 = make_tt3();
    let idx = |l: &str| TT3_LABELS.iter().position(|x| *x == l).unwrap();
    let mut swap: Vec<usize> = (0..6).collect();
    for (x, y) in [("rho", "mu"), ("sigma", "sigmabar")] {
        swap[idx(x)] = idx(y);
        swap[idx(y)] = idx(x);
    }
    let autos = find_automorphisms(&tt3);
    ensure(autos.iter().any(|a| a.as_slice() == swap.as_slice()), || {
        "swap rho<->mu, sigma<->sigmabar missing".into()
    })?;
    for m in 1..=3 {
        let spec = cyclic_action_tt3_power(m);
        ensure(spec.alpha.pow(2 * m).is_identity(), || format!("alpha^{} != id for M={m}", 2 * m))?;
        // factorwise swap, built digit by digit here
        let r = 6usize;
        let expect: Vec<usize> = (0..r.pow(m as u32))
            .map(|i| {
                let mut x = i;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..m {
                    out += swap[x % r] * place;
                    x /= r;
                    place *= r;
                }
                out
            })
            .collect();
        ensure(spec.alpha.pow(m).as_slice() == expect.as_slice(), || format!("alpha^M is not the swap, M={m}"))?;
        ensure(tt3_power_swap(m) == expect, || format!("tt3_power_swap({m})"))?;
    }
    Ok(format!("{} automorphisms of TT3 include the swap; M <= 3 checked", autos.len()))
}

fn criterion_4() -> Outcome {
    let fib = make_fib();
    for n in 1..=4 {
        let p = deligne_power(&fib, n);
        ensure(p.rank() == 1 << n, || format!("rank {} for N={n}", p.rank()))?;
        let g = global_dim(&p).map_err(|e| e.to_string())?;
        ensure(g == q(2, 1).pow(n as u32), || format!("global dim {g} for N={n}"))?;
        ensure(verify_axioms(&p).passed(), || format!("axioms fail for N={n}"))?;
    }
    Ok("N = 1..4".into())
}

fn check_entry(e: &ClassEntry) -> Result<(), String> {
    let name = e.name();
    let (n, m) = (e.n, e.m);
    let (base_rank, order) = match e.family {
        Family::FibWreath => (2usize, n * m),
        Family::TT3Wreath => (6usize, 2 * n * m),
    };
    ensure(e.report.passed(), || format!("{name}: axioms"))?;
    ensure(e.rank() == base_rank.pow(n as u32) * order, || format!("{name}: rank {}", e.rank()))?;
    let grading = adjoint_and_grading(&e.ring).map_err(|err| format!("{name}: {err}"))?;
    ensure(grading.order() == order && grading.cyclic_generator().is_some(), || {
        format!("{name}: grading of order {}", grading.order())
    })?;
    let gens = find_phi_generators(&e.ring).map_err(|err| err.to_string())?;
    ensure(!gens.is_empty(), || format!("{name}: no phi generator"))?;
    let ring = &e.ring;
    let dims = fp_dims(ring).map_err(|err| err.to_string())?;
    for g in gens {
        let x = ring.basis_object(g.x);
        let xx = ring.tensor(&x, &ring.dual_object(&x));
        let expect = ring.unit_object().add(&ring.basis_object(g.t));
        ensure(xx == expect && g.t != ring.unit(), || format!("{name}: X X* at {}", ring.label(g.x)))?;
        let t = ring.basis_object(g.t);
        let tt = ring.tensor(&t, &t);
        ensure(tt == ring.unit_object().add(&t), || format!("{name}: t not Fibonacci"))?;
        let tx = ring.tensor(&t, &x);
        ensure(tx == x.add(&ring.basis_object(g.g)), || format!("{name}: t X at {}", ring.label(g.x)))?;
        let gg = ring.basis_object(g.g);
        ensure(
            dims[g.g] == QuadInt::ONE && ring.tensor(&gg, &ring.dual_object(&gg)) == ring.unit_object(),
            || format!("{name}: g not invertible"),
        )?;
        ensure(dims[g.x] == QuadInt::PHI, || format!("{name}: d(X) != phi"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let entries = enumerate_catalog(3, 2).map_err(|e| e.to_string())?;
    for e in &entries {
        check_entry(e)?;
    }
    let elapsed = start.elapsed();
    ensure(entries.len() == 12, || format!("{} entries", entries.len()))?;
    ensure(elapsed < CATALOG_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    let largest = entries.iter().map(ClassEntry::rank).max().unwrap_or(0);
    Ok(format!("{} entries up to rank {largest} in {:.1?}", entries.len(), elapsed))
}

fn derivation_case(n: usize, rels: &[(&str, &str)], expect: (u8, u8)) -> Result<usize, String> {
    let p = Presentation::parse(n, rels).map_err(|e| e.to_string())?;
    let outcome = derive_collapse(&p, &DeriveBudget::default());
    let DeriveOutcome::Derived { derivation, .. } = &outcome else {
        return Err(format!("{rels:?}: exhausted {:?}", outcome.stats()));
    };
    let (a, b) = expect;
    ensure(derivation.conclusion == Conclusion::Collapse { a, b }, || {
        format!("{rels:?}: concluded {}", derivation.conclusion)
    })?;
    // every generator to tau satisfies all relations, so every step must hold there
    let fib = make_fib();
    let all_tau = Assignment::new(&fib, vec![1; n]).map_err(|e| e.to_string())?;
    if let Some(i) = replay_derivation(derivation, &fib, &all_tau).map_err(|e| e.to_string())? {
        return Err(format!("{rels:?}: step {i} fails to replay"));
    }
    for (i, s) in derivation.steps.iter().enumerate() {
        ensure(s.premises.iter().all(|&j| j < i), || format!("{rels:?}: step {i} cites a later step"))?;
    }
    Ok(derivation.steps.len())
}

fn criterion_6() -> Outcome {
    let a = derivation_case(2, &[("ab", "ba"), ("aba", "bab")], (0, 1))?;
    let b = derivation_case(3, &[("ab", "ba"), ("bcb", "cbc"), ("aca", "cac"), ("abcab", "bcaba")], (0, 2))?;
    let c = derivation_case(3, &[("ac", "ca"), ("aba", "bab"), ("bcb", "cbc"), ("ab", "bc")], (0, 2))?;
    Ok(format!("(a) a=b in {a} steps, (b) a=c in {b} steps, (c) a=c in {c} steps"))
}

fn criterion_7() -> Outcome {
    let tt3 = make_tt3();
    let rm = Assignment::from_labels(&tt3, &["rho", "mu"]).map_err(|e| e.to_string())?;
    let braid = Presentation::parse(2, &[("aba", "bab")]).map_err(|e| e.to_string())?;
    ensure(check_presentation_consistency(&braid, &tt3, &rm).unwrap().consistent, || {
        "aba = bab inconsistent".into()
    })?;
    let f2 = tt3.basis_object(tt3.index_of("f2").unwrap());
    for w in ["aba", "bab"] {
        let x = evaluate_word(&Word::parse(w, 2).unwrap(), &tt3, &rm).unwrap();
        ensure(x == f2, || format!("{w} is not f2"))?;
    }
    let start = Instant::now();
    let outcome = derive_collapse(&braid, &DeriveBudget::default());
    ensure(outcome.derivation().is_none(), || "collapse derived from aba = bab".into())?;
    let comm = Presentation::parse(2, &[("ab", "ba")]).map_err(|e| e.to_string())?;
    let c = check_presentation_consistency(&comm, &tt3, &rm).unwrap();
    let (_, l, r) = c.first_failure.clone().ok_or("ab = ba not flagged")?;
    let sb = tt3.basis_object(tt3.index_of("sigmabar").unwrap());
    let s = tt3.basis_object(tt3.index_of("sigma").unwrap());
    ensure(!c.consistent && l == sb && r == s, || format!("ab = ba gives {l:?}, {r:?}"))?;
    let stats = outcome.stats();
    Ok(format!(
        "braid consistent via f2; search exhausted after {} equalities in {:.1?}; ab = ba gives sigmabar != sigma",
        stats.equalities,
        start.elapsed()
    ))
}

fn distinct_simple(ring: &FusionRing, words: &[Word], assign: &Assignment) -> Result<usize, String> {
    let mut seen = BTreeSet::new();
    for w in words {
        let x = evaluate_word(w, ring, assign).map_err(|e| e.to_string())?;
        let b = x.as_simple().ok_or_else(|| format!("{w} is not a basis element"))?;
        ensure(seen.insert(b), || format!("{w} repeats {}", ring.label(b)))?;
        let d = word_end_dim(w, ring, assign).map_err(|e| e.to_string())?;
        ensure(d == 1, || format!("{w} has end dim {d}"))?;
    }
    Ok(seen.len())
}

fn criterion_8() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=4 {
        let ring = deligne_power(&make_fib(), n);
        // generator i is tau in factor i: digit 1 at position i
        let targets: Vec<usize> = (0..n).map(|i| power_of(2, n - 1 - i)).collect();
        let assign = Assignment::new(&ring, targets).map_err(|e| e.to_string())?;
        let words = source_simple_fib(n);
        ensure(words.len() == 1 << n, || format!("{} words for N={n}", words.len()))?;
        counts.push(distinct_simple(&ring, &words, &assign)?);
    }
    let ring = deligne_power(&make_tt3(), 2);
    let label = |a: &str, b: &str| format!("[{a}|{b}]");
    let assign = Assignment::from_labels(
        &ring,
        &[label("rho", "1"), label("mu", "1"), label("1", "rho"), label("1", "mu")],
    )
    .map_err(|e| e.to_string())?;
    let words = source_simple_tt3(2);
    let tt = distinct_simple(&ring, &words, &assign)?;
    ensure(tt == ring.rank(), || format!("{tt} of {} basis elements", ring.rank()))?;
    Ok(format!("Fib powers {counts:?} distinct simples; TT3^2 {tt} distinct simples"))
}

fn power_of(base: usize, k: usize) -> usize {
    base.pow(k as u32)
}

fn random_object(rng: &mut StdRng, rank: usize) -> ObjectVec {
    let mut v = vec![0u64; rank];
    for _ in 0..rng.gen_range(1..=3) {
        v[rng.gen_range(0..rank)] += rng.gen_range(1..=3);
    }
    ObjectVec::from_vec(v)
}

/// Applies `x x -> 1 + x` at a random position until no repeat is left.
fn random_order_normal_form(w: &Word, rng: &mut StdRng) -> WordSum {
    let mut todo = vec![(w.letters().to_vec(), 1u64)];
    let mut out = WordSum::zero();
    while let Some((v, m)) = todo.pop() {
        let repeats: Vec<usize> = (1..v.len()).filter(|&i| v[i] == v[i - 1]).collect();
        if repeats.is_empty() {
            out.add_word(Word::from_letters(v), m);
            continue;
        }
        let i = repeats[rng.gen_range(0..repeats.len())];
        let mut short = v[..i - 1].to_vec();
        short.extend_from_slice(&v[i + 1..]);
        let mut keep = v[..i].to_vec();
        keep.extend_from_slice(&v[i + 1..]);
        todo.push((short, m));
        todo.push((keep, m));
    }
    out
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let entries = enumerate_catalog(3, 2).map_err(|e| e.to_string())?;
    for e in &entries {
        let ring = &e.ring;
        for _ in 0..RANDOM_TRIALS {
            let (x, y, z) = (
                random_object(&mut rng, ring.rank()),
                random_object(&mut rng, ring.rank()),
                random_object(&mut rng, ring.rank()),
            );
            let h1 = ring.hom_dim(&ring.tensor(&x, &y), &z);
            let h2 = ring.hom_dim(&x, &ring.tensor(&z, &ring.dual_object(&y)));
            let h3 = ring.hom_dim(&y, &ring.tensor(&ring.dual_object(&x), &z));
            ensure(h1 == h2 && h2 == h3, || format!("{}: hom dims {h1}, {h2}, {h3}", e.name()))?;
        }
    }

    let tt3 = make_tt3();
    let fib_like: Vec<usize> = (0..tt3.rank()).filter(|&t| tt3.is_fib_like(t)).collect();
    for _ in 0..RANDOM_TRIALS {
        let t = fib_like[rng.gen_range(0..fib_like.len())];
        let x = ObjectVec::from_vec((0..tt3.rank()).map(|_| rng.gen_range(0..6)).collect());
        let z = tt3.tensor(&tt3.basis_object(t), &x);
        let back = tt3.divide_by_fib(t, &z).map_err(|e| e.to_string())?;
        ensure(back == x, || format!("divide_by_fib({t}) gives {back:?}, expected {x:?}"))?;
    }

    let tt_assign = Assignment::from_labels(&tt3, &["rho", "mu"]).unwrap();
    for _ in 0..RANDOM_TRIALS {
        let len = rng.gen_range(0..=12);
        let letters: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        let w = Word::from_letters(letters);
        let nf = normalize(&w);
        let other = random_order_normal_form(&w, &mut rng);
        ensure(nf == other, || format!("{w}: {nf} vs {other}"))?;
        ensure(nf.is_reduced(), || format!("{w}: {nf} not reduced"))?;
        if w.max_letter().is_none_or(|x| x < 2) {
            let raw = evaluate_word(&w, &tt3, &tt_assign).unwrap();
            ensure(evaluate(&nf, &tt3, &tt_assign).unwrap() == raw, || format!("{w}: value changed"))?;
        }
    }
    Ok(format!(
        "{RANDOM_TRIALS} trials each: hom identities on {} catalog rings, divide_by_fib, normalize",
        entries.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 Fib ring", criterion_1),
        ("2 TT3 ring", criterion_2),
        ("3 automorphisms", criterion_3),
        ("4 Deligne powers", criterion_4),
        ("5 wreath catalog", criterion_5),
        ("6 derivations", criterion_6),
        ("7 consistency oracle", criterion_7),
        ("8 source-simple words", criterion_8),
        ("9 property suites", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                println!("criterion {name}: FAIL ({why})");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
