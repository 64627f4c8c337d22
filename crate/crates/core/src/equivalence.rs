//! Equivalence relations on `{1..n}`, a semilattice under join.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An equivalence relation on `{1..n}`. Class ids are dense, 0-based, and
/// ordered by each class's minimum element, so equal relations are
/// structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equivalence {
    degree: usize,
    /// `class_of[x-1]` is the class id of `x`.
    class_of: Vec<usize>,
}

impl Equivalence {
    /// The trivial (identity) relation: every class a singleton.
    pub fn trivial(degree: usize) -> Self {
        Equivalence { degree, class_of: (0..degree).collect() }
    }

    /// Least equivalence containing the given pairs.
    pub fn from_pairs(degree: usize, pairs: &[(usize, usize)]) -> Self {
        let mut parent: Vec<usize> = (0..degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a - 1), find(&mut parent, b - 1));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
        let mut ids = vec![usize::MAX; degree];
        let mut next = 0;
        let mut class_of = vec![0; degree];
        for x in 0..degree {
            let r = find(&mut parent, x);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            class_of[x] = ids[r];
        }
        Equivalence { degree, class_of }
    }

    /// Builds from explicit classes; they must partition `{1..n}`.
    pub fn from_classes(degree: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut seen = vec![false; degree];
        let mut pairs = Vec::new();
        for class in classes {
            for &x in class {
                if x == 0 || x > degree {
                    return Err(Error::BadSubscript(alloc::format!("{x} out of 1..={degree}")));
                }
                if seen[x - 1] {
                    return Err(Error::Invalid(alloc::format!("{x} repeated")));
                }
                seen[x - 1] = true;
            }
            for w in class.windows(2) {
                pairs.push((w[0], w[1]));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid(String::from("classes do not cover 1..=n")));
        }
        Ok(Equivalence::from_pairs(degree, &pairs))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn are_related(&self, a: usize, b: usize) -> bool {
        self.class_of[a - 1] == self.class_of[b - 1]
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Classes in canonical order (by minimum element), each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.class_count()];
        for x in 1..=self.degree {
            out[self.class_of[x - 1]].push(x);
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.class_count() == self.degree
    }

    /// Least upper bound: smallest equivalence containing both.
    pub fn join(&self, other: &Equivalence) -> Result<Equivalence> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut pairs = self.related_pairs();
        pairs.extend(other.related_pairs());
        Ok(Equivalence::from_pairs(self.degree, &pairs))
    }

    /// Adjacent pairs within each class; enough to regenerate the relation.
    fn related_pairs(&self) -> Vec<(usize, usize)> {
        self.classes()
            .iter()
            .flat_map(|c| c.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
            .collect()
    }

    /// `self` refines `other`: every class of `self` lies inside a class of
    /// `other`.
    pub fn refines(&self, other: &Equivalence) -> bool {
        (1..=self.degree).all(|x| {
            (x..=self.degree)
                .all(|y| !self.are_related(x, y) || other.are_related(x, y))
        })
    }

    /// All equivalences on `{1..n}` via restricted growth strings, in
    /// lexicographic order.
    pub fn enumerate(degree: usize) -> Vec<Equivalence> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; degree];
        loop {
            out.push(Equivalence { degree, class_of: rgs.clone() });
            // Next restricted growth string.
            let mut i = degree;
            loop {
                if i == 1 {
                    return out;
                }
                i -= 1;
                let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
                if rgs[i] <= max_prefix {
                    rgs[i] += 1;
                    for tail in rgs[i + 1..].iter_mut() {
                        *tail = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Text form, e.g. `(1,4|2,3|5,6)`.
    pub fn format(&self) -> String {
        let mut out = String::from("(");
        for (ci, class) in self.classes().iter().enumerate() {
            if ci > 0 {
                out.push('|');
            }
            for (xi, x) in class.iter().enumerate() {
                if xi > 0 {
                    out.push(',');
                }
                out.push_str(&alloc::format!("{x}"));
            }
        }
        out.push(')');
        out
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_forces_transitive_closure() {
        let a = Equivalence::from_pairs(3, &[(1, 2)]);
        let b = Equivalence::from_pairs(3, &[(2, 3)]);
        assert_eq!(a.join(&b).unwrap().format(), "(1,2,3)");
        assert_eq!(a.join(&Equivalence::trivial(3)).unwrap(), a);
    }

    /// Brute-force join: grow the relation pointwise until it stabilises.
    fn join_oracle(a: &Equivalence, b: &Equivalence) -> Equivalence {
        let n = a.degree();
        let mut related = vec![vec![false; n + 1]; n + 1];
        for x in 1..=n {
            for y in 1..=n {
                related[x][y] = a.are_related(x, y) || b.are_related(x, y);
            }
        }
        loop {
            let mut changed = false;
            for x in 1..=n {
                for y in 1..=n {
                    for z in 1..=n {
                        if related[x][y] && related[y][z] && !related[x][z] {
                            related[x][z] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut pairs = Vec::new();
        for x in 1..=n {
            for y in 1..=n {
                if related[x][y] {
                    pairs.push((x, y));
                }
            }
        }
        Equivalence::from_pairs(n, &pairs)
    }

    #[test]
    fn join_matches_closure_oracle_exhaustively_n4() {
        let all = Equivalence::enumerate(4);
        assert_eq!(all.len(), 15); // Bell(4)
        for a in &all {
            for b in &all {
                assert_eq!(a.join(b).unwrap(), join_oracle(a, b));
            }
        }
    }

    #[test]
    fn semilattice_laws_n4() {
        let all = Equivalence::enumerate(4);
        for a in &all {
            assert_eq!(a.join(a).unwrap(), *a);
            for b in &all {
                let ab = a.join(b).unwrap();
                assert_eq!(ab, b.join(a).unwrap());
                for c in &all {
                    assert_eq!(
                        ab.join(c).unwrap(),
                        a.join(&b.join(c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let all = Equivalence::enumerate(5);
        assert_eq!(all.len(), 52); // Bell(5)
        let set: alloc::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }
}
