//! Equal-image rewriting inside `⟨Z⟩`: find a path at the `F`-level by
//! bounded search (the `I_n \ S_n` presentation is quoted, not re-proved)
//! and transport it step by step through the certified Z-relations.
//!
//! Two ingredients keep the search bounded in practice. Queries are
//! decomposed letter by letter, so that the searcher only ever joins a
//! canonical word extended by one letter to the canonical word of the new
//! image — a finite family per degree, memoised. And the search itself
//! runs over words modulo the disjoint commutations (F3), which collapses
//! the otherwise factorial orbit of interleaved kill factors; the explicit
//! F3 steps are reconstructed when a path is found.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate};
use crate::error::{Error, Result};
use crate::relations::{instances_of, Dir, RelationId, Subs};
use crate::words::{z_letters, Alphabet, Letter, Word};

use super::gadgets::zrel;
use super::search::PathStep;
use super::zword::eval_z_pairs;
use super::RewriteEngine;

/// A word in the generators `z_ij` (equivalently `f_ij`), as its subscript
/// pairs.
pub type ZWord = Vec<(usize, usize)>;

pub(crate) type FStep = PathStep;

type FLetter = (usize, usize);

/// The `F`-alphabet word for a pair sequence.
pub fn f_word(n: usize, pairs: &[(usize, usize)]) -> Word {
    Word::new(n, Alphabet::F, pairs.iter().map(|&(i, j)| Letter::F(i, j)).collect())
        .expect("pairs are in range")
}

/// The `E∪T` expansion of a pair sequence.
pub fn et_expansion(n: usize, pairs: &[(usize, usize)]) -> Word {
    Word::new(
        n,
        Alphabet::Et,
        pairs.iter().flat_map(|&(i, j)| z_letters(i, j)).collect(),
    )
    .expect("pairs are in range")
}

/// Reads the `z`-structure off an `E∪T` word that is a product of the
/// triples `e_i t_ij e_j`.
pub fn zword_of_et(word: &Word) -> Result<ZWord> {
    if word.alphabet() != Alphabet::Et || word.len() % 3 != 0 {
        return Err(Error::Invalid(alloc::string::String::from(
            "not a product of z_ij factors",
        )));
    }
    let mut pairs = Vec::with_capacity(word.len() / 3);
    for chunk in word.letters().chunks(3) {
        match (chunk[0], chunk[1], chunk[2]) {
            (Letter::E(i), Letter::T(a, b), Letter::E(j))
                if Letter::t(i, j) == Letter::T(a, b) && i != j =>
            {
                pairs.push((i, j));
            }
            _ => {
                return Err(Error::Invalid(alloc::string::String::from(
                    "not a product of z_ij factors",
                )))
            }
        }
    }
    Ok(pairs)
}

fn disjoint(a: FLetter, b: FLetter) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

fn f3_swap(w: &mut Vec<FLetter>, r: usize) -> FStep {
    let (x, y) = (w[r], w[r + 1]);
    debug_assert!(disjoint(x, y));
    w.swap(r, r + 1);
    (RelationId::F(3), Subs::ijkl(x.0, x.1, y.0, y.1), r, Dir::Forward)
}

/// Lexicographically least linearisation of the commutation class, with the
/// F3 swap sequence that reaches it.
fn trace_normal(word: &[FLetter]) -> (Vec<FLetter>, Vec<FStep>) {
    let mut w = word.to_vec();
    let mut steps = Vec::new();
    for p in 0..w.len() {
        // Letters that can bubble to position p: every letter strictly
        // between commutes with them.
        let mut best: Option<usize> = None;
        for q in p..w.len() {
            let movable = (p..q).all(|r| disjoint(w[r], w[q]));
            if movable && best.map_or(true, |b| w[q] < w[b]) {
                best = Some(q);
            }
        }
        let q = best.expect("position p itself is always movable");
        for r in (p..q).rev() {
            // swap w[r] (non-chosen) past the chosen letter moving left
            steps.push(f3_swap(&mut w, r));
        }
    }
    (w, steps)
}

fn reverse_steps(steps: &[FStep]) -> Vec<FStep> {
    steps
        .iter()
        .rev()
        .map(|&(id, subs, pos, dir)| (id, subs, pos, dir.flip()))
        .collect()
}

/// One search edge: the full elementary step list from the source word to
/// the (trace-normal) neighbour.
struct Edge {
    steps: Vec<FStep>,
    next: Vec<FLetter>,
}

fn letters_of_side(side: &Word) -> Vec<FLetter> {
    side.letters()
        .iter()
        .map(|l| match l {
            Letter::F(i, j) => (*i, *j),
            _ => unreachable!("F instances have F letters"),
        })
        .collect()
}

/// All trace-normal neighbours of a trace-normal word under the non-F3
/// relations, gathering pattern letters across commuting separators.
fn neighbors(
    w: &[FLetter],
    instances: &[(Vec<FLetter>, Vec<FLetter>, RelationId, Subs, Dir)],
    max_len: usize,
    out: &mut Vec<Edge>,
) {
    out.clear();
    for (src, dst, id, subs, dir) in instances {
        let m = src.len();
        if m == 0 || m > w.len() || w.len() - m + dst.len() > max_len {
            continue;
        }
        // positions of each pattern letter, built up in order
        let mut tuple = alloc::vec![0usize; m];
        gather_tuples(w, src, 0, 0, &mut tuple, &mut |tuple: &[usize]| {
            // in-between non-pattern letters must commute with the whole
            // pattern
            let lo = tuple[0];
            let hi = tuple[m - 1];
            for q in lo..=hi {
                if tuple.contains(&q) {
                    continue;
                }
                if !src.iter().all(|&s| disjoint(w[q], s)) {
                    return;
                }
            }
            // gather the pattern to the left, apply, re-normalise
            let mut scratch = w.to_vec();
            let mut steps = Vec::new();
            let mut positions = tuple.to_vec();
            for t in 1..m {
                while positions[t] > positions[t - 1] + 1 {
                    steps.push(f3_swap(&mut scratch, positions[t] - 1));
                    positions[t] -= 1;
                }
            }
            let at = positions[0];
            scratch.splice(at..at + m, dst.iter().copied());
            steps.push((*id, *subs, at, *dir));
            let (normal, renorm) = trace_normal(&scratch);
            steps.extend(renorm);
            out.push(Edge { steps, next: normal });
        });
    }
}

/// Enumerates strictly increasing position tuples matching the pattern.
fn gather_tuples(
    w: &[FLetter],
    src: &[FLetter],
    t: usize,
    from: usize,
    tuple: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if t == src.len() {
        visit(tuple);
        return;
    }
    for q in from..w.len() {
        if w[q] == src[t] {
            tuple[t] = q;
            gather_tuples(w, src, t + 1, q + 1, tuple, visit);
        }
    }
}

impl RewriteEngine {
    fn non_f3_instances(&mut self) -> Vec<(Vec<FLetter>, Vec<FLetter>, RelationId, Subs, Dir)> {
        let mut out = Vec::new();
        for inst in self.f_instances() {
            if inst.id == RelationId::F(3) {
                continue;
            }
            for dir in [Dir::Forward, Dir::Backward] {
                let (src, dst) = match dir {
                    Dir::Forward => (&inst.lhs, &inst.rhs),
                    Dir::Backward => (&inst.rhs, &inst.lhs),
                };
                out.push((
                    letters_of_side(src),
                    letters_of_side(dst),
                    inst.id,
                    inst.subs,
                    dir,
                ));
            }
        }
        out
    }

    /// Bounded bidirectional search over trace-normal forms for an F1–F7
    /// path between two equal-image words.
    fn f_path_search(&mut self, from: &[FLetter], to: &[FLetter]) -> Result<Vec<FStep>> {
        let (nfrom, pfrom) = trace_normal(from);
        let (nto, pto) = trace_normal(to);
        if nfrom == nto {
            let mut path = pfrom;
            path.extend(reverse_steps(&pto));
            return Ok(path);
        }
        let instances = self.non_f3_instances();
        let max_len = from.len().max(to.len()) + self.opts.search_slack;
        let node_cap = self.opts.search_nodes;

        let mut fwd: BTreeMap<Vec<FLetter>, Vec<FStep>> = BTreeMap::new();
        let mut bwd: BTreeMap<Vec<FLetter>, Vec<FStep>> = BTreeMap::new();
        fwd.insert(nfrom.clone(), Vec::new());
        bwd.insert(nto.clone(), Vec::new());
        let mut fwd_frontier = alloc::vec![nfrom];
        let mut bwd_frontier = alloc::vec![nto];
        let mut explored = 0usize;
        let mut edges = Vec::new();

        let joined = loop {
            if fwd_frontier.is_empty() && bwd_frontier.is_empty() {
                break None;
            }
            let expand_fwd = !fwd_frontier.is_empty()
                && (bwd_frontier.is_empty() || fwd_frontier.len() <= bwd_frontier.len());
            let (frontier, this_side, other_side) = if expand_fwd {
                (&mut fwd_frontier, &mut fwd, &mut bwd)
            } else {
                (&mut bwd_frontier, &mut bwd, &mut fwd)
            };
            let mut next_frontier = Vec::new();
            let mut meet = None;
            'expand: for word in frontier.iter() {
                let base = this_side.get(word).expect("frontier recorded").clone();
                neighbors(word, &instances, max_len, &mut edges);
                for edge in &edges {
                    if this_side.contains_key(&edge.next) {
                        continue;
                    }
                    let mut path = base.clone();
                    path.extend(edge.steps.iter().copied());
                    if other_side.contains_key(&edge.next) {
                        meet = Some((path, edge.next.clone()));
                        break 'expand;
                    }
                    this_side.insert(edge.next.clone(), path);
                    next_frontier.push(edge.next.clone());
                }
                explored += 1;
                if explored > node_cap {
                    break 'expand;
                }
            }
            if let Some((path, bridge)) = meet {
                let (fwd_half, bwd_half) = if expand_fwd {
                    (path, bwd.get(&bridge).unwrap().clone())
                } else {
                    (fwd.get(&bridge).unwrap().clone(), path)
                };
                break Some((fwd_half, bwd_half));
            }
            if explored > node_cap {
                break None;
            }
            *frontier = next_frontier;
        };

        let Some((fwd_half, bwd_half)) = joined else {
            return Err(Error::SearchBound(alloc::format!(
                "no F1-F7 path from '{}' to '{}' within bounds",
                f_word(self.n, from),
                f_word(self.n, to)
            )));
        };
        let mut path = pfrom;
        path.extend(fwd_half);
        path.extend(reverse_steps(&bwd_half));
        path.extend(reverse_steps(&pto));
        Ok(path)
    }

    /// Elementary R1–R10 certificate between the expansions of two
    /// equal-image `z`-words: an F-path transported through `zrel`.
    pub(crate) fn insn_cert_pairs(&mut self, from: &ZWord, to: &ZWord) -> Result<Certificate> {
        let n = self.n;
        if from == to {
            return Ok(Certificate::identity(et_expansion(n, from)));
        }
        if from.is_empty() || to.is_empty() {
            return Err(Error::Invalid(alloc::string::String::from(
                "insn transport needs nonempty words",
            )));
        }
        if eval_z_pairs(n, from) != eval_z_pairs(n, to) {
            return Err(Error::Invalid(alloc::string::String::from(
                "insn transport needs equal images",
            )));
        }
        let key = (from.clone(), to.clone());
        let path = if let Some(hit) = self.f_path_memo.get(&key) {
            hit.clone()
        } else {
            let path = self.f_path_search(from, to)?;
            self.f_path_memo.insert(key, path.clone());
            path
        };

        let mut b = CertBuilder::new(et_expansion(n, from));
        for (id, subs, pos, dir) in path {
            let RelationId::F(k) = id else {
                return Err(Error::Invalid(alloc::string::String::from(
                    "F path contains a non-F step",
                )));
            };
            let cert = zrel(n, RelationId::Z(k), subs)?;
            let cert = match dir {
                Dir::Forward => cert,
                Dir::Backward => cert.reversed(),
            };
            b.embed(&cert, 3 * pos)?;
        }
        let cert = b.finish();
        debug_assert_eq!(cert.end, et_expansion(n, to));
        Ok(cert)
    }

    /// Public entry point: both words must be products of the triples
    /// `e_i t_ij e_j` with the same image.
    pub fn insn_transport(&mut self, u: &Word, v: &Word) -> Result<Certificate> {
        let from = zword_of_et(u)?;
        let to = zword_of_et(v)?;
        self.insn_cert_pairs(&from, &to)
    }

    /// Elementary certificate for a Z-relation instance (the printed
    /// derivations, compiled).
    pub fn zrel_rewrite(&self, id: RelationId, subs: Subs) -> Result<Certificate> {
        zrel(self.n, id, subs)
    }

    pub(crate) fn f_instances(&mut self) -> &[crate::relations::RelationInstance] {
        let n = self.n;
        self.f_instances
            .get_or_insert_with(|| {
                (1..=7).flat_map(|k| instances_of(RelationId::F(k), n)).collect()
            })
            .as_slice()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::zword::z_pairs_for;

    #[test]
    fn trace_normalisation_sorts_commuting_letters() {
        let (normal, steps) = trace_normal(&[(3, 4), (1, 2)]);
        assert_eq!(normal, alloc::vec![(1, 2), (3, 4)]);
        assert_eq!(steps.len(), 1);
        // non-commuting letters stay put
        let (normal, steps) = trace_normal(&[(2, 3), (1, 2)]);
        assert_eq!(normal, alloc::vec![(2, 3), (1, 2)]);
        assert!(steps.is_empty());
    }

    #[test]
    fn transport_f1_instance() {
        let mut engine = RewriteEngine::new(3).unwrap();
        // z_12 z_21 z_12 -> z_12 is F1 one step away.
        let u = et_expansion(3, &[(1, 2), (2, 1), (1, 2)]);
        let v = et_expansion(3, &[(1, 2)]);
        let cert = engine.insn_transport(&u, &v).unwrap();
        assert!(cert.is_elementary());
        cert.replay().unwrap();
    }

    #[test]
    fn empty_path_for_equal_words() {
        let mut engine = RewriteEngine::new(3).unwrap();
        let u = et_expansion(3, &[(1, 2), (2, 1)]);
        let cert = engine.insn_transport(&u, &u).unwrap();
        assert!(cert.steps.is_empty());
    }

    #[test]
    fn unequal_images_rejected() {
        let mut engine = RewriteEngine::new(3).unwrap();
        let u = et_expansion(3, &[(1, 2)]);
        let v = et_expansion(3, &[(1, 3)]);
        assert!(engine.insn_transport(&u, &v).is_err());
    }

    #[test]
    fn random_equal_image_pairs() {
        use rand::{Rng, SeedableRng};
        for n in [3usize, 4] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
            let mut engine = RewriteEngine::new(n).unwrap();
            for _ in 0..30 {
                let len = rng.gen_range(1..=5);
                let mut pairs = Vec::new();
                for _ in 0..len {
                    let i = rng.gen_range(1..=n);
                    let j = loop {
                        let j = rng.gen_range(1..=n);
                        if j != i {
                            break j;
                        }
                    };
                    pairs.push((i, j));
                }
                let image = eval_z_pairs(n, &pairs);
                let canonical = z_pairs_for(&image).unwrap();
                let cert = engine
                    .insn_cert_pairs(&pairs, &canonical)
                    .expect("path within bounds");
                cert.replay().unwrap();
            }
        }
    }
}
