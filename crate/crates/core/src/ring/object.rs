use alloc::vec;
use alloc::vec::Vec;

/// Isomorphism class of a (not necessarily simple) object: a nonnegative
/// multiplicity for each basis element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectVec(Vec<u64>);

impl ObjectVec {
    pub fn zero(rank: usize) -> Self {
        ObjectVec(vec![0; rank])
    }

    pub fn basis(rank: usize, a: usize) -> Self {
        let mut v = vec![0; rank];
        v[a] = 1;
        ObjectVec(v)
    }

    pub fn from_vec(v: Vec<u64>) -> Self {
        ObjectVec(v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, a: usize) -> u64 {
        self.0[a]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    /// Total number of simple summands counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The basis element, if this object is simple.
    pub fn as_simple(&self) -> Option<usize> {
        let mut found = None;
        for (a, m) in self.nonzero() {
            if m != 1 || found.is_some() {
                return None;
            }
            found = Some(a);
        }
        found
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.nonzero().map(|(a, _)| a)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.0.iter().copied().enumerate().filter(|&(_, m)| m != 0)
    }

    /// Direct sum.
    pub fn add(&self, other: &ObjectVec) -> ObjectVec {
        assert_eq!(self.rank(), other.rank(), "objects over different bases");
        ObjectVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("object multiplicity overflow"))
                .collect(),
        )
    }

    /// Coordinate pairing `sum_i x_i y_i`.
    pub fn pairing(&self, other: &ObjectVec) -> u64 {
        assert_eq!(self.rank(), other.rank(), "objects over different bases");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}
