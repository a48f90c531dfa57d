use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Word, MAX_GENERATORS};
use crate::error::{Error, Result};

/// Relations `u = v` imposed on the free product of `generators` copies of Fib.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<(Word, Word)>,
}

impl Presentation {
    /// Checks letter ranges, reducedness and nonempty sides.
    pub fn new(generators: usize, relations: Vec<(Word, Word)>) -> Result<Self> {
        if generators == 0 || generators > MAX_GENERATORS {
            return Err(Error::BadWord(format!("generator count {generators} outside 1..={MAX_GENERATORS}")));
        }
        for (u, v) in &relations {
            for w in [u, v] {
                if w.is_empty() {
                    return Err(Error::BadWord("relation sides must be nonempty".into()));
                }
                if !w.is_reduced() {
                    return Err(Error::BadWord(format!("relation side {w} is not reduced")));
                }
                if w.max_letter().is_some_and(|x| x as usize >= generators) {
                    return Err(Error::BadWord(format!("relation side {w} uses more than {generators} generators")));
                }
            }
        }
        Ok(Presentation { generators, relations })
    }

    /// Parses relation pairs written as letter strings.
    pub fn parse<S: AsRef<str>>(generators: usize, relations: &[(S, S)]) -> Result<Self> {
        let max = generators.min(MAX_GENERATORS);
        let rels = relations
            .iter()
            .map(|(u, v)| Ok((Word::parse(u.as_ref(), max)?, Word::parse(v.as_ref(), max)?)))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(generators, rels)
    }

    /// Longest relation side.
    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(|(u, v)| u.len().max(v.len())).max().unwrap_or(0)
    }

    /// Whether `x y x = y x y` holds as a relation, in either orientation.
    pub fn has_braid(&self, x: u8, y: u8) -> bool {
        let xyx = Word::from_letters([x, y, x].into());
        let yxy = Word::from_letters([y, x, y].into());
        self.relations
            .iter()
            .any(|(u, v)| (*u == xyx && *v == yxy) || (*u == yxy && *v == xyx))
    }

    pub fn relation_strings(&self) -> Vec<(String, String)> {
        self.relations.iter().map(|(u, v)| (format!("{u}"), format!("{v}"))).collect()
    }
}
