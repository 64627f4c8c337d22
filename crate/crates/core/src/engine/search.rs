//! Deterministic bounded searches over relation applications. Used to
//! elaborate quoted macro steps and to pre-compile the handful of base
//! certificates that the written-out proofs leave to the reader.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::relations::{Dir, RelationInstance, RelationId, Subs};
use crate::words::Word;

use super::EngineOptions;

/// One elementary step of a searched path.
pub type PathStep = (RelationId, Subs, usize, Dir);

type Apply = fn(&Word, &RelationInstance, usize, Dir) -> Result<Word>;

fn neighbors(
    word: &Word,
    instances: &[RelationInstance],
    max_len: usize,
    apply: Apply,
    mut visit: impl FnMut(PathStep, Word),
) {
    for inst in instances {
        for dir in [Dir::Forward, Dir::Backward] {
            let (src, dst) = match dir {
                Dir::Forward => (&inst.lhs, &inst.rhs),
                Dir::Backward => (&inst.rhs, &inst.lhs),
            };
            if src.len() > word.len() || word.len() - src.len() + dst.len() > max_len {
                continue;
            }
            let positions = word.len() + 1 - src.len();
            for pos in 0..positions {
                if src.is_empty()
                    || word.letters()[pos..pos + src.len()] == *src.letters()
                {
                    if let Ok(next) = apply(word, inst, pos, dir) {
                        visit((inst.id, inst.subs, pos, dir), next);
                    }
                }
            }
        }
    }
}

fn reverse_path(path: &[PathStep]) -> Vec<PathStep> {
    path.iter()
        .rev()
        .map(|&(id, subs, pos, dir)| (id, subs, pos, dir.flip()))
        .collect()
}

/// Bidirectional breadth-first search for a rewrite path `from -> to`.
/// Intermediate words may exceed the longer endpoint by `opts.search_slack`
/// letters; at most `opts.search_nodes` words are explored. Deterministic.
pub fn bidirectional_path(
    from: &Word,
    to: &Word,
    instances: &[RelationInstance],
    opts: EngineOptions,
    apply: Apply,
) -> Option<Vec<PathStep>> {
    if from == to {
        return Some(Vec::new());
    }
    let max_len = from.len().max(to.len()) + opts.search_slack;
    let mut fwd: BTreeMap<Word, Vec<PathStep>> = BTreeMap::new();
    let mut bwd: BTreeMap<Word, Vec<PathStep>> = BTreeMap::new();
    fwd.insert(from.clone(), Vec::new());
    bwd.insert(to.clone(), Vec::new());
    let mut fwd_frontier = alloc::vec![from.clone()];
    let mut bwd_frontier = alloc::vec![to.clone()];
    let mut explored = 0usize;

    loop {
        if fwd_frontier.is_empty() && bwd_frontier.is_empty() {
            return None;
        }
        // Expand the smaller nonempty frontier.
        let expand_fwd = !fwd_frontier.is_empty()
            && (bwd_frontier.is_empty() || fwd_frontier.len() <= bwd_frontier.len());
        let (frontier, this_side, other_side) = if expand_fwd {
            (&mut fwd_frontier, &mut fwd, &mut bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &mut fwd)
        };
        let mut next_frontier = Vec::new();
        let mut meet: Option<(Word, PathStep, Word)> = None;
        'expand: for word in frontier.iter() {
            let base = this_side.get(word).expect("frontier words are recorded").clone();
            let mut found = None;
            neighbors(word, instances, max_len, apply, |step, next| {
                if found.is_some() || this_side.contains_key(&next) {
                    return;
                }
                if other_side.contains_key(&next) {
                    found = Some((word.clone(), step, next));
                    return;
                }
                let mut path = base.clone();
                path.push(step);
                this_side.insert(next.clone(), path);
                next_frontier.push(next);
            });
            if let Some(hit) = found {
                meet = Some(hit);
                break 'expand;
            }
            explored += 1;
            if explored > opts.search_nodes {
                return None;
            }
        }
        if let Some((word, step, bridge)) = meet {
            let (mut fwd_part, back) = if expand_fwd {
                let mut f = fwd.get(&word).unwrap().clone();
                f.push(step);
                (f, bwd.get(&bridge).unwrap().clone())
            } else {
                let mut b = bwd.get(&word).unwrap().clone();
                b.push(step);
                (fwd.get(&bridge).unwrap().clone(), b)
            };
            fwd_part.extend(reverse_path(&back));
            return Some(fwd_part);
        }
        *frontier = next_frontier;
    }
}

/// Greedy normalisation: apply length-reducing steps; when stuck, search
/// (bounded, length-preserving) for a nearby word where one applies.
/// Returns the normal word and the path to it.
pub fn normalize(
    word: &Word,
    instances: &[RelationInstance],
    _opts: EngineOptions,
    apply: Apply,
) -> (Word, Vec<PathStep>) {
    let mut current = word.clone();
    let mut path: Vec<PathStep> = Vec::new();
    loop {
        if let Some((step, next)) = first_reducing(&current, instances, apply) {
            path.push(step);
            current = next;
            continue;
        }
        // Bounded search through length-preserving moves for a word where a
        // reducing step applies.
        let mut visited: BTreeMap<Word, Vec<PathStep>> = BTreeMap::new();
        visited.insert(current.clone(), Vec::new());
        let mut frontier = alloc::vec![current.clone()];
        let mut found: Option<(Vec<PathStep>, PathStep, Word)> = None;
        'search: for _depth in 0..6 {
            let mut next_frontier = Vec::new();
            for w in &frontier {
                let base = visited.get(w).unwrap().clone();
                let mut candidates = Vec::new();
                neighbors(w, instances, w.len(), apply, |step, next| {
                    if next.len() == w.len() && !visited.contains_key(&next) {
                        candidates.push((step, next));
                    }
                });
                for (step, next) in candidates {
                    if visited.contains_key(&next) {
                        continue;
                    }
                    let mut p = base.clone();
                    p.push(step);
                    if let Some((rstep, rnext)) = first_reducing(&next, instances, apply)
                    {
                        found = Some((p, rstep, rnext));
                        break 'search;
                    }
                    visited.insert(next.clone(), p);
                    next_frontier.push(next);
                }
                if visited.len() > 30_000 {
                    break 'search;
                }
            }
            frontier = next_frontier;
            if frontier.is_empty() {
                break;
            }
        }
        match found {
            Some((p, rstep, rnext)) => {
                path.extend(p);
                path.push(rstep);
                current = rnext;
            }
            None => return (current, path),
        }
    }
}

fn first_reducing(
    word: &Word,
    instances: &[RelationInstance],
    apply: Apply,
) -> Option<(PathStep, Word)> {
    let mut best: Option<(PathStep, Word)> = None;
    neighbors(word, instances, word.len(), apply, |step, next| {
        if next.len() < word.len() && best.is_none() {
            best = Some((step, next));
        }
    });
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::instances_of;
    use crate::words::Alphabet;

    #[test]
    fn set_normalisation_reduces_simple_words() {
        let instances: Vec<_> =
            (11..=21).flat_map(|k| instances_of(RelationId::R(k), 3)).collect();
        let w = Word::parse(3, Alphabet::Set, "s1 s1 t s1 e e").unwrap();
        let (normal, path) = normalize(&w, &instances, EngineOptions::default(),
            crate::relations::apply_relation);
        assert!(normal.len() < w.len());
        // Replay the path.
        let mut current = w;
        for (id, subs, pos, dir) in path {
            let inst = crate::relations::materialize(id, subs, 3).unwrap();
            current = crate::relations::apply_relation(&current, &inst, pos, dir).unwrap();
        }
        assert_eq!(current, normal);
    }

    #[test]
    fn bidirectional_search_finds_one_step_paths() {
        let instances: Vec<_> =
            (3..=5).flat_map(|k| instances_of(RelationId::R(k), 3)).collect();
        let from = Word::parse(3, Alphabet::Et, "t1,3 t1,2").unwrap();
        let to = Word::parse(3, Alphabet::Et, "t1,2 t2,3").unwrap();
        let path = bidirectional_path(
            &from,
            &to,
            &instances,
            EngineOptions::default(),
            crate::relations::apply_relation,
        )
        .expect("path exists");
        assert_eq!(path.len(), 1);
    }
}
