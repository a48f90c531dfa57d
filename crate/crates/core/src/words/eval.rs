use alloc::format;
use alloc::vec::Vec;

use super::{Derivation, Presentation, Word, WordSum};
use crate::error::{Error, Result};
use crate::ring::{FusionRing, ObjectVec};

/// Images of the generators: generator `i` goes to basis element `targets[i]`,
/// each of which must satisfy `t t = 1 + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    targets: Vec<usize>,
}

impl Assignment {
    pub fn new(ring: &FusionRing, targets: Vec<usize>) -> Result<Self> {
        for &t in &targets {
            if t >= ring.rank() {
                return Err(Error::IndexOutOfRange { index: t, rank: ring.rank() });
            }
            if !ring.is_fib_like(t) {
                return Err(Error::NotFibLike(format!("{} cannot be the image of a generator", ring.label(t))));
            }
        }
        Ok(Assignment { targets })
    }

    /// Resolves basis labels, one per generator.
    pub fn from_labels<S: AsRef<str>>(ring: &FusionRing, labels: &[S]) -> Result<Self> {
        let targets = labels.iter().map(|l| ring.require(l.as_ref())).collect::<Result<Vec<_>>>()?;
        Assignment::new(ring, targets)
    }

    pub fn generators(&self) -> usize {
        self.targets.len()
    }

    pub fn target(&self, generator: u8) -> usize {
        self.targets[generator as usize]
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Distinct generators go to distinct basis elements.
    pub fn is_rank_preserving(&self) -> bool {
        let mut t = self.targets.clone();
        t.sort_unstable();
        t.windows(2).all(|w| w[0] != w[1])
    }
}

fn check_letters(w: &Word, assign: &Assignment) -> Result<()> {
    match w.max_letter() {
        Some(x) if x as usize >= assign.generators() => {
            Err(Error::BadWord(format!("{w} uses a generator with no assigned image")))
        }
        _ => Ok(()),
    }
}

/// Image of a single word, reduced or not, as an ordered product.
pub fn evaluate_word(w: &Word, ring: &FusionRing, assign: &Assignment) -> Result<ObjectVec> {
    check_letters(w, assign)?;
    let mut x = ring.unit_object();
    for &letter in w.letters() {
        x = ring.tensor_basis_right(&x, assign.target(letter));
    }
    Ok(x)
}

/// Image of a formal sum; letters go to their targets, concatenation to the
/// fusion product and sums to direct sums.
pub fn evaluate(s: &WordSum, ring: &FusionRing, assign: &Assignment) -> Result<ObjectVec> {
    let mut out = ring.zero_object();
    for (w, m) in s.terms() {
        let x = evaluate_word(w, ring, assign)?;
        for _ in 0..m {
            out = out.add(&x);
        }
    }
    Ok(out)
}

/// `dim End(w)` of the image; 1 exactly when the image is simple.
pub fn word_end_dim(w: &Word, ring: &FusionRing, assign: &Assignment) -> Result<u64> {
    let x = evaluate_word(w, ring, assign)?;
    Ok(ring.hom_dim(&x, &x))
}

/// Result of evaluating every relation of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consistency {
    pub consistent: bool,
    /// Index of the first relation whose sides differ, with both images.
    pub first_failure: Option<(usize, ObjectVec, ObjectVec)>,
}

pub fn check_presentation_consistency(p: &Presentation, ring: &FusionRing, assign: &Assignment) -> Result<Consistency> {
    if assign.generators() < p.generators {
        return Err(Error::BadWord(format!(
            "{} generators but only {} images",
            p.generators,
            assign.generators()
        )));
    }
    for (i, (u, v)) in p.relations.iter().enumerate() {
        let x = evaluate_word(u, ring, assign)?;
        let y = evaluate_word(v, ring, assign)?;
        if x != y {
            return Ok(Consistency {
                consistent: false,
                first_failure: Some((i, x, y)),
            });
        }
    }
    Ok(Consistency {
        consistent: true,
        first_failure: None,
    })
}

/// Evaluates both sides of every step; the index of the first step whose
/// sides differ, if any. Under an assignment satisfying the relations a sound
/// derivation has none.
pub fn replay_derivation(d: &Derivation, ring: &FusionRing, assign: &Assignment) -> Result<Option<usize>> {
    for (i, step) in d.steps.iter().enumerate() {
        if evaluate(&step.lhs, ring, assign)? != evaluate(&step.rhs, ring, assign)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{deligne_product, make_fib, make_tt3};
    use crate::words::normalize;

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let tt3 = make_tt3();
        let rm = Assignment::from_labels(&tt3, &["rho", "mu"]).unwrap();
        let sb = tt3.basis_object(tt3.index_of("sigmabar").unwrap());
        assert_eq!(evaluate_word(&w("ab"), &tt3, &rm).unwrap(), sb);
        assert_eq!(evaluate_word(&Word::empty(), &tt3, &rm).unwrap(), tt3.unit_object());

        let ff = deligne_product(&make_fib(), &make_fib());
        let tt = Assignment::from_labels(&ff, &["[tau|1]", "[1|tau]"]).unwrap();
        let expect = ff
            .basis_object(ff.index_of("[1|tau]").unwrap())
            .add(&ff.basis_object(ff.index_of("[tau|tau]").unwrap()));
        assert_eq!(evaluate_word(&w("aba"), &ff, &tt).unwrap(), expect);
    }

    #[test]
    fn rejects_non_fib_targets() {
        let tt3 = make_tt3();
        assert!(matches!(Assignment::from_labels(&tt3, &["rho", "sigma"]), Err(Error::NotFibLike(_))));
        assert!(Assignment::from_labels(&tt3, &["rho", "nu"]).is_err());
    }

    #[test]
    fn consistency_examples() {
        let tt3 = make_tt3();
        let rm = Assignment::from_labels(&tt3, &["rho", "mu"]).unwrap();
        let braid = Presentation::parse(2, &[("aba", "bab")]).unwrap();
        assert!(check_presentation_consistency(&braid, &tt3, &rm).unwrap().consistent);
        let comm = Presentation::parse(2, &[("ab", "ba")]).unwrap();
        let c = check_presentation_consistency(&comm, &tt3, &rm).unwrap();
        assert!(!c.consistent);
        assert_eq!(c.first_failure.unwrap().0, 0);
        let ff = deligne_product(&make_fib(), &make_fib());
        let tt = Assignment::from_labels(&ff, &["[tau|1]", "[1|tau]"]).unwrap();
        assert!(check_presentation_consistency(&comm, &ff, &tt).unwrap().consistent);
    }

    #[test]
    fn end_dims() {
        let tt3 = make_tt3();
        let rm = Assignment::from_labels(&tt3, &["rho", "mu"]).unwrap();
        assert_eq!(word_end_dim(&w("ab"), &tt3, &rm).unwrap(), 1);
        assert_eq!(word_end_dim(&w("abab"), &tt3, &rm).unwrap(), 2);
        assert_eq!(word_end_dim(&Word::empty(), &tt3, &rm).unwrap(), 1);
    }

    #[test]
    fn normalization_commutes_with_evaluation() {
        let tt3 = make_tt3();
        let rm = Assignment::from_labels(&tt3, &["rho", "mu"]).unwrap();
        for s in ["aabba", "abbbab", "aaaa", "babba"] {
            let raw = evaluate_word(&w(s), &tt3, &rm).unwrap();
            assert_eq!(evaluate(&normalize(&w(s)), &tt3, &rm).unwrap(), raw, "{s}");
        }
    }

    #[test]
    fn derivations_replay_in_fib() {
        use crate::words::{derive_collapse, DeriveBudget};
        let fib = make_fib();
        let p = Presentation::parse(2, &[("ab", "ba"), ("aba", "bab")]).unwrap();
        let d = derive_collapse(&p, &DeriveBudget::default());
        let d = d.derivation().unwrap();
        let same = Assignment::from_labels(&fib, &["tau", "tau"]).unwrap();
        assert_eq!(replay_derivation(d, &fib, &same).unwrap(), None);
        // the conclusion fails as soon as the generators are separated
        let ff = deligne_product(&fib, &fib);
        let apart = Assignment::from_labels(&ff, &["[tau|1]", "[1|tau]"]).unwrap();
        assert!(replay_derivation(d, &ff, &apart).unwrap().is_some());
    }
}
