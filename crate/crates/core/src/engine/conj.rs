//! Conjugation of the distinguished generator words by permutation words:
//! `w^{-1} eps_r w ≈ eps_{r w}` and `w^{-1} tau_ij w ≈ tau_{i w, j w}`.
//!
//! Both are built uniformly: pad with `s s` pairs, swap the padded
//! conjugator for a stabiliser word (an `S*`-equality, quoted), commute the
//! distinguished letter through the stabiliser letter by letter, and fold
//! the remaining prefix back.

use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate, MacroKind};
use crate::error::{Error, Result};
use crate::eval::{c_letters, eps_letters, tau_letters};
use crate::relations::{Dir, RelationId, Subs};
use crate::words::{Alphabet, Letter, Word};

use super::swords::{reversed, sword_for_perm, Perm};
use super::RewriteEngine;

fn s_word_letters(word: &Word) -> Result<Vec<Letter>> {
    if word.alphabet() != Alphabet::Set
        || !word.letters().iter().all(|l| matches!(l, Letter::S(_)))
    {
        return Err(Error::Invalid(alloc::string::String::from(
            "conjugation needs a word over S",
        )));
    }
    Ok(word.letters().to_vec())
}

/// Appends `rev(u') ++ u'` at `at` using backward R11 steps, outside-in.
fn pad_with_inverse_pair(b: &mut CertBuilder, at: usize, uprime: &[Letter]) -> Result<()> {
    let m = uprime.len();
    for t in 0..m {
        let Letter::S(a) = uprime[m - 1 - t] else { unreachable!() };
        b.rel(RelationId::R(11), Subs::only_i(a), at + t, Dir::Backward)?;
    }
    Ok(())
}

impl RewriteEngine {
    /// Certificate `w^{-1} eps_r w  ->  eps_{r w}`; returns it with the new
    /// subscript. Identity certificate when `w` is empty.
    pub fn conj_eps(&mut self, w: &Word, r: usize) -> Result<(Certificate, usize)> {
        let n = self.n;
        if r == 0 || r > n {
            return Err(Error::BadSubscript(alloc::format!("eps_{r} at degree {n}")));
        }
        let w_letters = s_word_letters(w)?;
        let wbar = Perm::of_word(n, &w_letters);
        let r2 = wbar.apply(r);

        let mut u = c_letters(r);
        u.extend(w_letters.iter().copied());
        let uprime = c_letters(r2);

        let mut start = reversed(&w_letters);
        start.extend(eps_letters(r));
        start.extend(w_letters.iter().copied());
        let start = Word::new(n, Alphabet::Set, start)?;
        let mut b = CertBuilder::new(start);
        if u == uprime {
            return Ok((b.finish(), r2));
        }

        // rev(u) e u  ->  rev(u) e u rev(u') u'
        pad_with_inverse_pair(&mut b, 2 * u.len() + 1, &uprime)?;

        // the subword u ++ rev(u') has image fixing 1: swap it for a word
        // over s_2..s_{n-1}
        let ubar = Perm::of_word(n, &u);
        let g = ubar.compose(&Perm::of_word(n, &uprime).inverse());
        debug_assert_eq!(g.apply(1), 1);
        let h = sword_for_perm(&g);
        debug_assert!(h.iter().all(|l| matches!(l, Letter::S(i) if *i >= 2)));
        let mut from = u.clone();
        from.extend(reversed(&uprime));
        b.macro_step(MacroKind::SymmGroup, u.len() + 1, from, h.clone())?;

        // commute e right through h (R16)
        for (q, letter) in h.iter().enumerate() {
            let Letter::S(i) = letter else { unreachable!() };
            b.rel(RelationId::R(16), Subs::only_i(*i), u.len() + q, Dir::Forward)?;
        }

        // fold the prefix rev(u) h back to rev(u')
        let mut from = reversed(&u);
        from.extend(h.iter().copied());
        b.macro_step(MacroKind::SymmGroup, 0, from, reversed(&uprime))?;

        let cert = b.finish();
        debug_assert_eq!(cert.end.letters(), eps_letters(r2).as_slice());
        Ok((cert, r2))
    }

    /// Certificate `w^{-1} tau_ij w  ->  tau_{i w, j w}`; returns it with
    /// the new subscripts (sorted).
    pub fn conj_tau(&mut self, w: &Word, i: usize, j: usize) -> Result<(Certificate, (usize, usize))> {
        let n = self.n;
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::BadSubscript(alloc::format!("tau_{i},{j} at degree {n}")));
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let w_letters = s_word_letters(w)?;
        let wbar = Perm::of_word(n, &w_letters);
        let (pi, pj) = (wbar.apply(i), wbar.apply(j));
        let (i2, j2) = if pi < pj { (pi, pj) } else { (pj, pi) };

        let mut u = c_letters(j);
        u.extend(c_letters(i));
        u.extend(w_letters.iter().copied());
        let mut uprime = c_letters(j2);
        uprime.extend(c_letters(i2));

        let mut start = reversed(&w_letters);
        start.extend(tau_letters(i, j));
        start.extend(w_letters.iter().copied());
        let start = Word::new(n, Alphabet::Set, start)?;
        let mut b = CertBuilder::new(start);
        if u == uprime {
            return Ok((b.finish(), (i2, j2)));
        }

        pad_with_inverse_pair(&mut b, 2 * u.len() + 1, &uprime)?;

        // the padded conjugator stabilises {1,2}: split off a possible s_1
        let ubar = Perm::of_word(n, &u);
        let g = ubar.compose(&Perm::of_word(n, &uprime).inverse());
        let delta = g.apply(1) == 2;
        debug_assert!(g.apply(1) <= 2 && g.apply(2) <= 2);
        let h_perm = if delta { g.compose(&Perm::swap(n, 1)) } else { g.clone() };
        debug_assert_eq!(h_perm.apply(1), 1);
        debug_assert_eq!(h_perm.apply(2), 2);
        let h = sword_for_perm(&h_perm);
        debug_assert!(h.iter().all(|l| matches!(l, Letter::S(i) if *i >= 3)));
        let mut replacement = h.clone();
        if delta {
            replacement.push(Letter::S(1));
        }
        let mut from = u.clone();
        from.extend(reversed(&uprime));
        b.macro_step(MacroKind::SymmGroup, u.len() + 1, from, replacement)?;

        // commute t right through h (R17), then absorb s_1 (R15)
        for (q, letter) in h.iter().enumerate() {
            let Letter::S(m) = letter else { unreachable!() };
            b.rel(RelationId::R(17), Subs::only_i(*m), u.len() + q, Dir::Forward)?;
        }
        if delta {
            b.rel(RelationId::R(15), Subs::variant(3), u.len() + h.len(), Dir::Forward)?;
        }

        // fold the prefix rev(u) h back to rev(u') s_1^delta
        let mut from = reversed(&u);
        from.extend(h.iter().copied());
        let mut to = reversed(&uprime);
        if delta {
            to.push(Letter::S(1));
        }
        b.macro_step(MacroKind::SymmGroup, 0, from, to)?;
        if delta {
            b.rel(RelationId::R(15), Subs::variant(4), uprime.len(), Dir::Forward)?;
        }

        let cert = b.finish();
        debug_assert_eq!(cert.end.letters(), tau_letters(i2, j2).as_slice());
        Ok((cert, (i2, j2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{build_eps, build_tau};

    #[test]
    fn conj_eps_single_letters() {
        let mut engine = RewriteEngine::new(4).unwrap();
        for r in 1..=4 {
            for k in 1..=3 {
                let w = Word::new(4, Alphabet::Set, alloc::vec![Letter::S(k)]).unwrap();
                let (cert, r2) = engine.conj_eps(&w, r).unwrap();
                cert.replay().unwrap();
                let expected = if k == r - 1 {
                    r - 1
                } else if k == r {
                    r + 1
                } else {
                    r
                };
                assert_eq!(r2, expected, "s_{k} eps_{r} s_{k}");
                assert_eq!(cert.end, build_eps(4, r2).unwrap());
            }
        }
    }

    #[test]
    fn conj_tau_single_letters() {
        let mut engine = RewriteEngine::new(4).unwrap();
        for i in 1..=4 {
            for j in i + 1..=4 {
                for k in 1..=3 {
                    let w = Word::new(4, Alphabet::Set, alloc::vec![Letter::S(k)]).unwrap();
                    let (cert, (i2, j2)) = engine.conj_tau(&w, i, j).unwrap();
                    cert.replay().unwrap();
                    let swap = |x: usize| {
                        if x == k {
                            k + 1
                        } else if x == k + 1 {
                            k
                        } else {
                            x
                        }
                    };
                    let (ei, ej) = (swap(i), swap(j));
                    let (ei, ej) = if ei < ej { (ei, ej) } else { (ej, ei) };
                    assert_eq!((i2, j2), (ei, ej));
                    assert_eq!(cert.end, build_tau(4, i2, j2).unwrap());
                }
            }
        }
    }

    #[test]
    fn conj_by_longer_words() {
        let mut engine = RewriteEngine::new(4).unwrap();
        let mut rng = crate::verify::seeded_rng(crate::DEFAULT_SEED);
        for _ in 0..50 {
            let w = crate::verify::random_word(4, Alphabet::Set, 0..=6, &mut rng);
            let w = Word::new(
                4,
                Alphabet::Set,
                w.letters()
                    .iter()
                    .filter(|l| matches!(l, Letter::S(_)))
                    .copied()
                    .collect(),
            )
            .unwrap();
            let (cert, r2) = engine.conj_eps(&w, 2).unwrap();
            cert.replay().unwrap();
            assert_eq!(cert.end, build_eps(4, r2).unwrap());
            let (cert, (i2, j2)) = engine.conj_tau(&w, 1, 3).unwrap();
            cert.replay().unwrap();
            assert_eq!(cert.end, build_tau(4, i2, j2).unwrap());
        }
    }

    #[test]
    fn empty_conjugator_gives_identity_certificate() {
        let mut engine = RewriteEngine::new(3).unwrap();
        let w = Word::empty(3, Alphabet::Set);
        let (cert, r2) = engine.conj_eps(&w, 2).unwrap();
        assert_eq!(r2, 2);
        assert!(cert.steps.is_empty());
    }
}
