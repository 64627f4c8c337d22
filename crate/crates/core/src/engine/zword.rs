//! A fixed choice of word `z_alpha` in the generators `z_ij = e_i t_ij e_j`
//! for each singular partial permutation `alpha`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partial_perm::PartialPermutation;
use crate::words::{z_letters, Alphabet, Letter, Word};

/// The canonical `z`-pair sequence for `alpha` (rank < n required):
///
/// - each cycle of the functional digraph is routed through a fixed point
///   `o` outside the domain,
/// - each maximal chain `c_1 -> ... -> c_k` becomes
///   `z_{c_k c_{k-1}} ... z_{c_2 c_1}`,
/// - every remaining point outside the domain is killed by
///   `z_{d x} z_{x d}` with `x` the least point other than `d`.
///
/// Deterministic: cycles and chains are processed in order of their
/// minimum element, kills in ascending order.
pub fn z_pairs_for(alpha: &PartialPermutation) -> Result<Vec<(usize, usize)>> {
    let n = alpha.degree();
    if alpha.rank() >= n {
        return Err(Error::Invalid(alloc::string::String::from(
            "z words exist only for the singular ideal (rank < n)",
        )));
    }
    let outside = (1..=n)
        .find(|&x| alpha.apply(x).is_none())
        .expect("rank < n leaves a point outside the domain");

    let mut visited = alloc::vec![false; n + 1];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for start in 1..=n {
        if visited[start] || alpha.apply(start).is_none() {
            continue;
        }
        if alpha.preimage(start).is_some() {
            // Either inside a cycle or mid-chain; handle cycles here, let
            // chains be discovered from their true start.
            let mut x = start;
            let mut seen = alloc::vec![start];
            let is_cycle = loop {
                match alpha.apply(x) {
                    Some(y) if y == start => break true,
                    Some(y) => {
                        if seen.contains(&y) {
                            break false; // ran into a previously seen point, not a cycle through start
                        }
                        seen.push(y);
                        x = y;
                    }
                    None => break false,
                }
            };
            if !is_cycle {
                continue;
            }
            if seen.iter().any(|&x| visited[x]) {
                continue;
            }
            for &x in &seen {
                visited[x] = true;
            }
            // Fixed points need no factors: every f fixes them by default.
            if seen.len() > 1 {
                cycles.push(seen);
            }
            continue;
        }
        //

        // start is a chain head: start in dom, not in im.
        let mut chain = alloc::vec![start];
        let mut x = start;
        while let Some(y) = alpha.apply(x) {
            chain.push(y);
            x = y;
        }
        for &x in &chain {
            visited[x] = true;
        }
        chains.push(chain);
    }
    cycles.sort_by_key(|c| c.iter().min().copied());
    chains.sort_by_key(|c| c.iter().min().copied());

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut killed = alloc::vec![false; n + 1];
    for cycle in &cycles {
        // Rotate so the minimum leads, then route through `outside`.
        let min_pos = cycle
            .iter()
            .enumerate()
            .min_by_key(|(_, &x)| x)
            .map(|(p, _)| p)
            .unwrap();
        let mut c = cycle[min_pos..].to_vec();
        c.extend_from_slice(&cycle[..min_pos]);
        let k = c.len();
        pairs.push((outside, c[k - 1]));
        for m in (1..k).rev() {
            pairs.push((c[m], c[m - 1]));
        }
        pairs.push((c[0], outside));
        killed[outside] = true;
    }
    for chain in &chains {
        let k = chain.len();
        for m in (1..k).rev() {
            pairs.push((chain[m], chain[m - 1]));
        }
        killed[chain[k - 1]] = true;
    }
    for d in 1..=n {
        if alpha.apply(d).is_none() && !killed[d] {
            let x = if d == 1 { 2 } else { 1 };
            pairs.push((d, x));
            pairs.push((x, d));
        }
    }
    debug_assert!(!pairs.is_empty(), "a singular partial permutation needs at least one factor");
    Ok(pairs)
}

/// The word `z_alpha` over `E∪T`.
pub fn z_word_for(alpha: &PartialPermutation) -> Result<Word> {
    let pairs = z_pairs_for(alpha)?;
    let letters: Vec<Letter> =
        pairs.iter().flat_map(|&(i, j)| z_letters(i, j)).collect();
    Word::new(alpha.degree(), Alphabet::Et, letters)
}

/// Image of a `z`-pair sequence, computed in `I_n` directly.
pub fn eval_z_pairs(n: usize, pairs: &[(usize, usize)]) -> PartialPermutation {
    let mut acc = PartialPermutation::partial_identity(n, &(1..=n).collect::<Vec<_>>())
        .expect("identity is injective");
    for &(i, j) in pairs {
        let f = f_partial_perm(n, i, j);
        acc = acc.compose(&f).expect("same degree");
    }
    acc
}

/// `f_ij` as a partial permutation: `j -> i`, fixed off `{i,j}`, `i`
/// outside the domain.
pub fn f_partial_perm(n: usize, i: usize, j: usize) -> PartialPermutation {
    let mut map = alloc::vec![(j, i)];
    for x in (1..=n).filter(|&x| x != i && x != j) {
        map.push((x, x));
    }
    PartialPermutation::new(n, map).expect("f is injective")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_phi;

    #[test]
    fn named_examples() {
        // f_12's partial permutation at n=3 -> the single move z_12
        let alpha = PartialPermutation::new(3, alloc::vec![(2, 1), (3, 3)]).unwrap();
        assert_eq!(z_pairs_for(&alpha).unwrap(), alloc::vec![(1, 2)]);

        // the partial identity missing 1 -> z_12 z_21
        let alpha = PartialPermutation::partial_identity(3, &[2, 3]).unwrap();
        assert_eq!(z_pairs_for(&alpha).unwrap(), alloc::vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn rank_n_is_rejected() {
        let id = PartialPermutation::partial_identity(3, &[1, 2, 3]).unwrap();
        assert!(z_word_for(&id).is_err());
    }

    #[test]
    fn exhaustive_round_trip_small_degrees() {
        for n in 2..=4 {
            for alpha in PartialPermutation::enumerate(n) {
                if alpha.rank() == n {
                    continue;
                }
                let pairs = z_pairs_for(&alpha).unwrap();
                assert_eq!(eval_z_pairs(n, &pairs), alpha, "pairs wrong for {alpha}");
                let word = z_word_for(&alpha).unwrap();
                let image = eval_phi(&word).unwrap().as_partial_perm().unwrap();
                assert_eq!(image, alpha, "diagram image wrong for {alpha}");
            }
        }
    }

    #[test]
    fn determinism() {
        let alpha = PartialPermutation::new(4, alloc::vec![(1, 2), (2, 1)]).unwrap();
        assert_eq!(z_pairs_for(&alpha).unwrap(), z_pairs_for(&alpha).unwrap());
        // 1 -> 2 -> 1 is a cycle routed through the least outside point 3.
        assert_eq!(
            z_pairs_for(&alpha).unwrap(),
            alloc::vec![(3, 2), (2, 1), (1, 3), (4, 1), (1, 4)]
        );
    }
}
