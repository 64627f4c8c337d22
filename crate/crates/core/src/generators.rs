//! The named generator diagrams and the canonical families built from them.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{PartitionDiagram, Point};
use crate::equivalence::Equivalence;
use crate::error::{Error, Result};
use crate::partial_perm::PartialPermutation;

fn check_range(n: usize, x: usize, what: &str) -> Result<()> {
    if x == 0 || x > n {
        return Err(Error::BadSubscript(alloc::format!("{what} = {x} out of 1..={n}")));
    }
    Ok(())
}

/// The idempotent that cuts strand `r`: blocks `{r}`, `{r'}`, `{k,k'}` else.
pub fn e(n: usize, r: usize) -> Result<PartitionDiagram> {
    check_range(n, r, "r")?;
    let mut blocks = vec![vec![Point::upper(r)], vec![Point::lower(r)]];
    for k in (1..=n).filter(|&k| k != r) {
        blocks.push(vec![Point::upper(k), Point::lower(k)]);
    }
    PartitionDiagram::new(n, blocks)
}

/// The idempotent joining strands `i` and `j`: block `{i,j,i',j'}`.
/// Symmetric in its subscripts.
pub fn t(n: usize, i: usize, j: usize) -> Result<PartitionDiagram> {
    check_range(n, i, "i")?;
    check_range(n, j, "j")?;
    if i == j {
        return Err(Error::BadSubscript(alloc::format!("t requires i != j, got {i}")));
    }
    let mut blocks = vec![vec![
        Point::upper(i),
        Point::upper(j),
        Point::lower(i),
        Point::lower(j),
    ]];
    for k in (1..=n).filter(|&k| k != i && k != j) {
        blocks.push(vec![Point::upper(k), Point::lower(k)]);
    }
    PartitionDiagram::new(n, blocks)
}

/// `f_ij = e_i t_ij e_j`: the partial permutation sending `j` to `i` and
/// fixing everything else except `i`. Not symmetric in its subscripts.
pub fn f(n: usize, i: usize, j: usize) -> Result<PartitionDiagram> {
    let prod = e(n, i)?.product(&t(n, i, j)?)?;
    prod.product(&e(n, j)?)
}

/// The adjacent transposition diagram swapping `i` and `i+1`.
pub fn s(n: usize, i: usize) -> Result<PartitionDiagram> {
    if i == 0 || i + 1 > n {
        return Err(Error::BadSubscript(alloc::format!("s_{i} needs 1 <= i <= n-1")));
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.swap(i - 1, i);
    perm_diagram(n, &perm)
}

/// The distinguished idempotent `e = e_1`.
pub fn e1(n: usize) -> Result<PartitionDiagram> {
    e(n, 1)
}

/// The distinguished idempotent `t = t_12`.
pub fn tbar(n: usize) -> Result<PartitionDiagram> {
    t(n, 1, 2)
}

/// Block bijection with one block `A ∪ A'` and strands elsewhere; the
/// identity when `|A| <= 1`.
pub fn t_of_set(n: usize, a: &[usize]) -> Result<PartitionDiagram> {
    for &x in a {
        check_range(n, x, "set element")?;
    }
    let mut in_a = vec![false; n + 1];
    for &x in a {
        in_a[x] = true;
    }
    let members: Vec<usize> = (1..=n).filter(|&x| in_a[x]).collect();
    if members.len() <= 1 {
        return Ok(PartitionDiagram::identity(n));
    }
    let mut blocks = vec![members
        .iter()
        .flat_map(|&x| [Point::upper(x), Point::lower(x)])
        .collect::<Vec<_>>()];
    for k in (1..=n).filter(|&k| !in_a[k]) {
        blocks.push(vec![Point::upper(k), Point::lower(k)]);
    }
    PartitionDiagram::new(n, blocks)
}

/// The idempotent block bijection with blocks `A_m ∪ A_m'` for the classes
/// `A_m` of `eq`. This is the semilattice isomorphism `Eq_n -> E(J_n)`.
pub fn t_of_equivalence(eq: &Equivalence) -> PartitionDiagram {
    let n = eq.degree();
    let blocks = eq
        .classes()
        .iter()
        .map(|class| {
            class
                .iter()
                .flat_map(|&x| [Point::upper(x), Point::lower(x)])
                .collect()
        })
        .collect();
    PartitionDiagram::new(n, blocks).expect("classes partition 1..=n")
}

/// Identifies a permutation (`perm[i-1]` is the image of `i`) with its
/// diagram of transversal blocks `{i, (i pi)'}`.
pub fn perm_diagram(n: usize, perm: &[usize]) -> Result<PartitionDiagram> {
    if perm.len() != n {
        return Err(Error::Invalid(alloc::format!("permutation of length {} at degree {n}", perm.len())));
    }
    let mut seen = vec![false; n + 1];
    for &y in perm {
        check_range(n, y, "image")?;
        if seen[y] {
            return Err(Error::Invalid(alloc::format!("image {y} hit twice")));
        }
        seen[y] = true;
    }
    let blocks = (1..=n)
        .map(|i| vec![Point::upper(i), Point::lower(perm[i - 1])])
        .collect();
    PartitionDiagram::new(n, blocks)
}

/// Embeds a partial permutation as a diagram: transversal blocks
/// `{a, (a alpha)'}` and singletons elsewhere.
pub fn partial_perm_diagram(pp: &PartialPermutation) -> PartitionDiagram {
    let n = pp.degree();
    let mut blocks: Vec<Vec<Point>> = pp
        .pairs()
        .iter()
        .map(|&(a, b)| vec![Point::upper(a), Point::lower(b)])
        .collect();
    for x in 1..=n {
        if pp.apply(x).is_none() {
            blocks.push(vec![Point::upper(x)]);
        }
        if pp.preimage(x).is_none() {
            blocks.push(vec![Point::lower(x)]);
        }
    }
    PartitionDiagram::new(n, blocks).expect("partial permutation gives a partition")
}
