//! Canonical set partitions of `{1..n, 1'..n'}` and the stack-and-contract
//! product that makes them a monoid.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::equivalence::Equivalence;
use crate::error::{Error, Result};
use crate::partial_perm::PartialPermutation;

/// One of the `2n` points of a degree-`n` diagram: `index` in `1..=n`,
/// primed points are the lower row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub index: usize,
    pub primed: bool,
}

impl Point {
    pub fn upper(index: usize) -> Self {
        Point { index, primed: false }
    }

    pub fn lower(index: usize) -> Self {
        Point { index, primed: true }
    }

    /// Position in the canonical total order `1 < ... < n < 1' < ... < n'`.
    fn slot(&self, degree: usize) -> usize {
        usize::from(self.primed) * degree + self.index - 1
    }

    fn from_slot(slot: usize, degree: usize) -> Self {
        Point { index: slot % degree + 1, primed: slot >= degree }
    }
}

// The whole upper row precedes the lower row; this is the order the text
// format uses for blocks and for points within a block.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.primed, self.index).cmp(&(other.primed, other.index))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)?;
        if self.primed {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// A set partition of `{1..n, 1'..n'}` in canonical form: blocks sorted by
/// their minimum point, points within a block sorted, under the total order
/// `1 < 1' < 2 < 2' < ...`. Structural equality is monoid equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionDiagram {
    degree: usize,
    blocks: Vec<Vec<Point>>,
}

/// Minimal union-find; the diagram product only ever needs `3n` nodes.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        UnionFind { parent: (0..size).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }
}

impl PartitionDiagram {
    /// Builds a diagram from an arbitrary list of blocks, canonicalising the
    /// order. The blocks must partition the `2n` points exactly.
    pub fn new(degree: usize, blocks: Vec<Vec<Point>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid(String::from("degree must be at least 1")));
        }
        let mut seen = vec![false; 2 * degree];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Invalid(String::from("empty block")));
            }
            for p in block {
                if p.index == 0 || p.index > degree {
                    return Err(Error::BadSubscript(alloc::format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if seen[p.slot(degree)] {
                    return Err(Error::Invalid(alloc::format!("point {p} repeated")));
                }
                seen[p.slot(degree)] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid(String::from("blocks do not cover all points")));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort();
        }
        blocks.sort();
        Ok(PartitionDiagram { degree, blocks })
    }

    /// Builds the diagram whose blocks are the components of a union-find
    /// structure over the `2n` slots.
    pub(crate) fn from_union_find(degree: usize, uf: &mut UnionFind) -> Self {
        let mut by_root: Vec<Vec<Point>> = vec![Vec::new(); 2 * degree];
        for slot in 0..2 * degree {
            by_root[uf.find(slot)].push(Point::from_slot(slot, degree));
        }
        let blocks: Vec<Vec<Point>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        // Roots are minimal slots, so the blocks come out already canonical.
        PartitionDiagram { degree, blocks }
    }

    /// The identity of `P_n`: blocks `{i, i'}`.
    pub fn identity(degree: usize) -> Self {
        let blocks = (1..=degree)
            .map(|i| vec![Point::upper(i), Point::lower(i)])
            .collect();
        PartitionDiagram { degree, blocks }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    /// Stack `self` on top of `rhs`, take connected components, delete the
    /// middle row.
    pub fn product(&self, rhs: &PartitionDiagram) -> Result<PartitionDiagram> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: rhs.degree });
        }
        let n = self.degree;
        // Nodes 0..n: top row, n..2n: identified middle row, 2n..3n: bottom.
        let mut uf = UnionFind::new(3 * n);
        for block in &self.blocks {
            let first = node_of(&block[0], 0, n);
            for p in &block[1..] {
                uf.union(first, node_of(p, 0, n));
            }
        }
        for block in &rhs.blocks {
            let first = node_of(&block[0], n, n);
            for p in &block[1..] {
                uf.union(first, node_of(p, n, n));
            }
        }
        // Restrict to top and bottom rows.
        let mut result = UnionFind::new(2 * n);
        let mut rep: Vec<Option<usize>> = vec![None; 3 * n];
        for i in 0..n {
            for (node, slot) in [(i, i), (2 * n + i, n + i)] {
                let root = uf.find(node);
                match rep[root] {
                    Some(r) => result.union(r, slot),
                    None => rep[root] = Some(slot),
                }
            }
        }
        Ok(PartitionDiagram::from_union_find(n, &mut result))
    }

    /// Product of a sequence of diagrams; `factors` must be nonempty.
    pub fn product_all(factors: &[PartitionDiagram]) -> Result<PartitionDiagram> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Invalid(String::from("empty product")))?;
        let mut acc = first.clone();
        for d in rest {
            acc = acc.product(d)?;
        }
        Ok(acc)
    }

    fn block_of(&self, p: Point) -> &[Point] {
        self.blocks
            .iter()
            .find(|b| b.contains(&p))
            .expect("every point lies in a block")
    }

    /// Number of transversal blocks (blocks meeting both rows).
    pub fn rank(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.iter().any(|p| !p.primed) && b.iter().any(|p| p.primed))
            .count()
    }

    /// Upper points whose block meets the lower row.
    pub fn dom(&self) -> Vec<usize> {
        (1..=self.degree)
            .filter(|&i| self.block_of(Point::upper(i)).iter().any(|p| p.primed))
            .collect()
    }

    /// Lower indices whose block meets the upper row.
    pub fn codom(&self) -> Vec<usize> {
        (1..=self.degree)
            .filter(|&i| self.block_of(Point::lower(i)).iter().any(|p| !p.primed))
            .collect()
    }

    /// Equivalence on `{1..n}` induced by blocks through the upper row.
    pub fn ker(&self) -> Equivalence {
        let pairs = self.row_pairs(false);
        Equivalence::from_pairs(self.degree, &pairs)
    }

    /// Equivalence on `{1..n}` induced by blocks through the lower row.
    pub fn coker(&self) -> Equivalence {
        let pairs = self.row_pairs(true);
        Equivalence::from_pairs(self.degree, &pairs)
    }

    fn row_pairs(&self, primed: bool) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for block in &self.blocks {
            let row: Vec<usize> =
                block.iter().filter(|p| p.primed == primed).map(|p| p.index).collect();
            for w in row.windows(2) {
                pairs.push((w[0], w[1]));
            }
        }
        pairs
    }

    /// Units of `P_n` are exactly the rank-`n` (permutation) diagrams.
    pub fn is_unit(&self) -> bool {
        self.rank() == self.degree
    }

    /// Members of the singular ideal `P_n \ S_n`.
    pub fn is_singular(&self) -> bool {
        !self.is_unit()
    }

    /// A block bijection has only transversal blocks.
    pub fn is_block_bijection(&self) -> bool {
        self.rank() == self.blocks.len()
    }

    /// Extracts the partial permutation if every block meets each row in at
    /// most one point.
    pub fn as_partial_perm(&self) -> Option<PartialPermutation> {
        let mut map = Vec::new();
        for block in &self.blocks {
            let uppers: Vec<usize> =
                block.iter().filter(|p| !p.primed).map(|p| p.index).collect();
            let lowers: Vec<usize> =
                block.iter().filter(|p| p.primed).map(|p| p.index).collect();
            if uppers.len() > 1 || lowers.len() > 1 {
                return None;
            }
            if let (Some(&a), Some(&b)) = (uppers.first(), lowers.first()) {
                map.push((a, b));
            }
        }
        Some(PartialPermutation::new(self.degree, map).expect("blocks give an injective map"))
    }

    /// Canonical text form, e.g. `{1,4 | 2,3,4',5' | 5,6 | 1',3',6' | 2'}`.
    pub fn format(&self) -> String {
        let mut out = String::from("{");
        for (bi, block) in self.blocks.iter().enumerate() {
            if bi > 0 {
                out.push_str(" | ");
            }
            for (pi, p) in block.iter().enumerate() {
                if pi > 0 {
                    out.push(',');
                }
                out.push_str(&alloc::format!("{p}"));
            }
        }
        out.push('}');
        out
    }

    /// Parses the text form; arbitrary block/point order and whitespace are
    /// accepted, the result is canonical. Degree is the maximum index seen.
    pub fn parse(text: &str) -> Result<PartitionDiagram> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && (bytes[*i] as char).is_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i >= bytes.len() || bytes[i] != b'{' {
            return Err(Error::Parse { at: i, msg: String::from("expected '{'") });
        }
        i += 1;
        let mut blocks: Vec<Vec<Point>> = Vec::new();
        let mut block: Vec<Point> = Vec::new();
        let mut degree = 0;
        let mut pending_separator = false;
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                return Err(Error::Parse { at: i, msg: String::from("unterminated diagram") });
            }
            match bytes[i] {
                b'}' => {
                    if pending_separator && block.is_empty() {
                        return Err(Error::Parse { at: i, msg: String::from("empty block") });
                    }
                    i += 1;
                    if !block.is_empty() {
                        blocks.push(core::mem::take(&mut block));
                    }
                    break;
                }
                b'|' => {
                    if block.is_empty() {
                        return Err(Error::Parse { at: i, msg: String::from("empty block") });
                    }
                    blocks.push(core::mem::take(&mut block));
                    pending_separator = true;
                    i += 1;
                }
                b',' => {
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let index: usize = text[start..i]
                        .parse()
                        .map_err(|_| Error::Parse { at: start, msg: String::from("bad index") })?;
                    let primed = i < bytes.len() && bytes[i] == b'\'';
                    if primed {
                        i += 1;
                    }
                    if index == 0 {
                        return Err(Error::Parse { at: start, msg: String::from("index 0") });
                    }
                    degree = degree.max(index);
                    block.push(Point { index, primed });
                    pending_separator = false;
                }
                _ => {
                    return Err(Error::Parse {
                        at: i,
                        msg: alloc::format!("unexpected character '{}'", bytes[i] as char),
                    })
                }
            }
        }
        skip_ws(&mut i);
        if i != bytes.len() {
            return Err(Error::Parse { at: i, msg: String::from("trailing input") });
        }
        PartitionDiagram::new(degree, blocks)
    }
}

fn node_of(p: &Point, offset: usize, n: usize) -> usize {
    // offset 0: rows (top, middle); offset n: rows (middle, bottom).
    offset + if p.primed { n + p.index - 1 } else { p.index - 1 }
}

impl fmt::Display for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str) -> PartitionDiagram {
        PartitionDiagram::parse(text).unwrap()
    }

    // The worked product from the source calculus: alpha and beta in P_6.
    pub(crate) fn example_alpha() -> PartitionDiagram {
        d("{1,4 | 2,3,4',5' | 5,6 | 1',3',6' | 2'}")
    }

    pub(crate) fn example_beta() -> PartitionDiagram {
        d("{1,3 | 2,4,1' | 5,4',5',6' | 6 | 2' | 3'}")
    }

    #[test]
    fn worked_example_product() {
        let ab = example_alpha().product(&example_beta()).unwrap();
        assert_eq!(ab.format(), "{1,4 | 2,3,1',4',5',6' | 5,6 | 2' | 3'}");
    }

    #[test]
    fn worked_example_statistics() {
        let a = example_alpha();
        assert_eq!(a.rank(), 1);
        assert_eq!(a.dom(), vec![2, 3]);
        assert_eq!(a.codom(), vec![4, 5]);
        assert_eq!(a.ker().format(), "(1,4|2,3|5,6)");
        assert_eq!(a.coker().format(), "(1,3,6|2|4,5)");
        assert!(a.is_singular());
        assert!(a.as_partial_perm().is_none());
    }

    #[test]
    fn identity_laws() {
        let a = example_alpha();
        let id = PartitionDiagram::identity(6);
        assert_eq!(id.product(&a).unwrap(), a);
        assert_eq!(a.product(&id).unwrap(), a);
        assert_eq!(PartitionDiagram::identity(2).format(), "{1,1' | 2,2'}");
        assert_eq!(PartitionDiagram::identity(1).format(), "{1,1'}");
        assert_eq!(id.rank(), 6);
        assert!(id.is_unit());
        assert!(id.is_block_bijection());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(PartitionDiagram::parse("{1,2}").is_err()); // missing primes
        assert!(PartitionDiagram::parse("{1,1,1'}").is_err()); // repeated
        assert!(PartitionDiagram::parse("{1,1' | }").is_err());
        assert!(PartitionDiagram::parse("1,1'").is_err());
        assert!(PartitionDiagram::parse("{1,1'} x").is_err());
    }

    #[test]
    fn parse_accepts_any_order() {
        let a = d("{ 2' | 5,6 | 1', 3',6' | 4,1 | 3,2,5',4' }");
        assert_eq!(a, example_alpha());
        assert_eq!(a.format(), "{1,4 | 2,3,4',5' | 5,6 | 1',3',6' | 2'}");
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = PartitionDiagram::identity(3);
        let b = PartitionDiagram::identity(4);
        assert!(matches!(a.product(&b), Err(Error::DegreeMismatch { .. })));
    }
}
