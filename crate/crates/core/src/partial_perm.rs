//! Partial injective maps on `{1..n}` — the symmetric inverse monoid `I_n`
//! seen inside the partition monoid.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A partial permutation of `{1..n}`: an injective map from a subset of
/// `{1..n}` into `{1..n}`, stored as sorted `(input, output)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialPermutation {
    degree: usize,
    map: Vec<(usize, usize)>,
}

impl PartialPermutation {
    pub fn new(degree: usize, mut map: Vec<(usize, usize)>) -> Result<Self> {
        map.sort();
        for w in map.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Invalid(alloc::format!("{} mapped twice", w[0].0)));
            }
        }
        let mut images: Vec<usize> = map.iter().map(|&(_, b)| b).collect();
        images.sort();
        for w in images.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Invalid(alloc::format!("image {} hit twice", w[0])));
            }
        }
        for &(a, b) in &map {
            if a == 0 || a > degree || b == 0 || b > degree {
                return Err(Error::BadSubscript(alloc::format!(
                    "pair ({a},{b}) out of range for degree {degree}"
                )));
            }
        }
        Ok(PartialPermutation { degree, map })
    }

    /// The empty map of the given degree.
    pub fn empty(degree: usize) -> Self {
        PartialPermutation { degree, map: Vec::new() }
    }

    /// The identity restricted to `dom`.
    pub fn partial_identity(degree: usize, dom: &[usize]) -> Result<Self> {
        PartialPermutation::new(degree, dom.iter().map(|&x| (x, x)).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.map.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.map
    }

    pub fn dom(&self) -> Vec<usize> {
        self.map.iter().map(|&(a, _)| a).collect()
    }

    pub fn codom(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.map.iter().map(|&(_, b)| b).collect();
        out.sort();
        out
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.iter().find(|&&(a, _)| a == x).map(|&(_, b)| b)
    }

    pub fn preimage(&self, y: usize) -> Option<usize> {
        self.map.iter().find(|&&(_, b)| b == y).map(|&(a, _)| a)
    }

    /// Composition, `self` first then `rhs`.
    pub fn compose(&self, rhs: &PartialPermutation) -> Result<PartialPermutation> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: rhs.degree });
        }
        let map = self
            .map
            .iter()
            .filter_map(|&(a, b)| rhs.apply(b).map(|c| (a, c)))
            .collect();
        PartialPermutation::new(self.degree, map)
    }

    /// All partial permutations of the given degree.
    pub fn enumerate(degree: usize) -> Vec<PartialPermutation> {
        // Extend by deciding the image of each point in turn (or leaving it
        // undefined), keeping injectivity.
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn go(
            degree: usize,
            x: usize,
            stack: &mut Vec<(usize, usize)>,
            out: &mut Vec<PartialPermutation>,
        ) {
            if x > degree {
                out.push(
                    PartialPermutation::new(degree, stack.clone())
                        .expect("constructed injectively"),
                );
                return;
            }
            go(degree, x + 1, stack, out);
            for y in 1..=degree {
                if !stack.iter().any(|&(_, b)| b == y) {
                    stack.push((x, y));
                    go(degree, x + 1, stack, out);
                    stack.pop();
                }
            }
        }
        go(degree, 1, &mut stack, &mut out);
        out.sort();
        out
    }

    /// Text form `[2->1, 3->3]`.
    pub fn format(&self) -> alloc::string::String {
        let mut out = alloc::string::String::from("[");
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&alloc::format!("{a}->{b}"));
        }
        out.push(']');
        out
    }
}

impl fmt::Display for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_count_n3() {
        // sum_k C(3,k)^2 k! = 1 + 9 + 18 + 6
        assert_eq!(PartialPermutation::enumerate(3).len(), 34);
    }

    #[test]
    fn rejects_non_injective() {
        assert!(PartialPermutation::new(3, alloc::vec![(1, 2), (3, 2)]).is_err());
        assert!(PartialPermutation::new(3, alloc::vec![(1, 2), (1, 3)]).is_err());
    }

    #[test]
    fn composition() {
        let f = PartialPermutation::new(3, alloc::vec![(2, 1), (3, 3)]).unwrap();
        let g = PartialPermutation::new(3, alloc::vec![(1, 2), (3, 3)]).unwrap();
        assert_eq!(f.compose(&g).unwrap(), PartialPermutation::new(3, alloc::vec![(2, 2), (3, 3)]).unwrap());
    }
}
