//! Truncated occupation-number basis of an n-fold tensor product.
//!
//! States are ordered graded-lexicographically: by total weight first, then
//! lexicographically on the occupation tuple. Every weight block is a
//! contiguous index range, which is what makes the Casimir operators visibly
//! block-diagonal.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

pub const MIN_LEGS: usize = 2;
pub const MAX_LEGS: usize = 4;

/// Occupation numbers `(n_1, ..., n_legs)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(occupations: Vec<u32>) -> Self {
        MultiIndex(occupations)
    }

    /// Rejects negative occupations.
    pub fn from_signed(occupations: &[i64]) -> Result<Self> {
        occupations
            .iter()
            .map(|&n| u32::try_from(n).map_err(|_| Error::OutOfRange(format!("{occupations:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }

    pub fn legs(&self) -> usize {
        self.0.len()
    }

    /// Occupation of the 1-based `leg`.
    pub fn get(&self, leg: usize) -> u32 {
        self.0[leg - 1]
    }

    /// Copy with the occupation of the 1-based `leg` shifted by `delta`;
    /// `None` if it would go negative.
    pub fn shifted(&self, leg: usize, delta: i32) -> Option<MultiIndex> {
        let n = self.0[leg - 1].checked_add_signed(delta)?;
        let mut out = self.0.clone();
        out[leg - 1] = n;
        Some(MultiIndex(out))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct TruncatedBasis {
    legs: usize,
    nmax: usize,
    states: Vec<MultiIndex>,
    weight_offsets: Vec<Range<usize>>,
    lookup: HashMap<MultiIndex, usize>,
}

impl TruncatedBasis {
    pub fn enumerate(legs: usize, nmax: usize) -> Result<Self> {
        if !(MIN_LEGS..=MAX_LEGS).contains(&legs) {
            return Err(Error::InvalidConfig(format!(
                "legs must be in 2..=4, got {legs}"
            )));
        }
        if nmax < 1 {
            return Err(Error::InvalidConfig("N_max must be at least 1".into()));
        }

        let mut states = Vec::new();
        let mut weight_offsets = Vec::with_capacity(nmax + 1);
        for w in 0..=nmax {
            let start = states.len();
            let mut current = vec![0u32; legs];
            compositions(w as u32, 0, &mut current, &mut states);
            weight_offsets.push(start..states.len());
        }
        let lookup = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        Ok(TruncatedBasis {
            legs,
            nmax,
            states,
            weight_offsets,
            lookup,
        })
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[MultiIndex] {
        &self.states
    }

    pub fn state(&self, index: usize) -> &MultiIndex {
        &self.states[index]
    }

    /// Index range of the weight-`w` block.
    pub fn block(&self, w: usize) -> Range<usize> {
        self.weight_offsets[w].clone()
    }

    pub fn weight_of(&self, index: usize) -> usize {
        self.states[index].weight()
    }

    pub fn index_of(&self, m: &MultiIndex) -> Result<usize> {
        if m.legs() != self.legs || m.weight() > self.nmax {
            return Err(Error::OutOfRange(m.to_string()));
        }
        Ok(self.lookup[m])
    }

    /// Like [`index_of`](Self::index_of) but `None` for states beyond the truncation.
    pub fn find(&self, m: &MultiIndex) -> Option<usize> {
        self.lookup.get(m).copied()
    }
}

/// Appends every tuple with entries summing to `remaining`, in lexicographic order.
fn compositions(remaining: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for n in 0..=remaining {
        current[pos] = n;
        compositions(remaining - n, pos + 1, current, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn two_legs_order() {
        let b = TruncatedBasis::enumerate(2, 1).unwrap();
        let got: Vec<_> = b
            .states()
            .iter()
            .map(|s| s.occupations().to_vec())
            .collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn sizes() {
        assert_eq!(TruncatedBasis::enumerate(4, 6).unwrap().len(), 210);
        let b = TruncatedBasis::enumerate(3, 2).unwrap();
        assert_eq!(b.block(2).len(), 6);
        for legs in 2..=4 {
            for nmax in 1..=6 {
                let b = TruncatedBasis::enumerate(legs, nmax).unwrap();
                assert_eq!(b.len(), binomial(nmax + legs, legs));
                let mut next = 0;
                for w in 0..=nmax {
                    let r = b.block(w);
                    assert_eq!(r.start, next);
                    assert_eq!(r.len(), binomial(w + legs - 1, legs - 1));
                    assert!(r.clone().all(|i| b.weight_of(i) == w));
                    next = r.end;
                }
                assert_eq!(next, b.len());
                assert!(b
                    .states()
                    .windows(2)
                    .all(|p| (p[0].weight(), &p[0]) < (p[1].weight(), &p[1])));
            }
        }
    }

    #[test]
    fn index_lookup() {
        let b = TruncatedBasis::enumerate(2, 1).unwrap();
        assert_eq!(b.index_of(&MultiIndex::new(vec![0, 0])).unwrap(), 0);
        assert_eq!(b.index_of(&MultiIndex::new(vec![1, 0])).unwrap(), 2);
        assert!(matches!(
            b.index_of(&MultiIndex::new(vec![2, 0])),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            b.index_of(&MultiIndex::new(vec![0, 0, 0])),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            MultiIndex::from_signed(&[-1, 0]),
            Err(Error::OutOfRange(_))
        ));

        let b = TruncatedBasis::enumerate(4, 4).unwrap();
        for (i, s) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(s).unwrap(), i);
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(TruncatedBasis::enumerate(1, 3).is_err());
        assert!(TruncatedBasis::enumerate(5, 3).is_err());
        assert!(TruncatedBasis::enumerate(3, 0).is_err());
    }
}
