//! Absorbing stray `S` letters into the image of ψ, and the word-problem
//! decision for the full presentation.

use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate, MacroKind};
use crate::error::{Error, Result};
use crate::eval::{eps_letters, eval_big_phi, psi, tau_letters};
use crate::relations::{Dir, RelationId, Subs};
use crate::words::{Alphabet, Letter, Word};

use super::psigad::{insert_vv, sigma_word, SigmaLetter};
use super::swords::{sword_for_perm, Perm};
use super::RewriteEngine;

/// Which side of the ψ-image letter the `s_k` sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl RewriteEngine {
    /// Certificate rewriting `eps_r s_k` (or `s_k eps_r`) into a word in
    /// the image of ψ; returns the rewritten word with the certificate.
    pub fn absorb_eps(&mut self, r: usize, k: usize, side: Side) -> Result<(Word, Certificate)> {
        let (sigma, cert) = self.absorb_sigma(SigmaLetter::Eps(r), k, side)?;
        Ok((sigma_word(self.n, &sigma), cert))
    }

    /// Certificate rewriting `tau_ij s_k` (or `s_k tau_ij`) into a word in
    /// the image of ψ.
    pub fn absorb_tau(
        &mut self,
        i: usize,
        j: usize,
        k: usize,
        side: Side,
    ) -> Result<(Word, Certificate)> {
        let (sigma, cert) = self.absorb_sigma(SigmaLetter::tau(i, j), k, side)?;
        Ok((sigma_word(self.n, &sigma), cert))
    }

    fn absorb_sigma(
        &mut self,
        x: SigmaLetter,
        k: usize,
        side: Side,
    ) -> Result<(Vec<SigmaLetter>, Certificate)> {
        match (x, side) {
            (SigmaLetter::Eps(r), Side::Right) => self.esse(r, k),
            (SigmaLetter::Tau(i, j), Side::Right) => self.tsst(i, j, k),
            (x, Side::Left) => {
                // s_k x ~ s_k x s_k s_k ~ x' s_k, then absorb on the right.
                let n = self.n;
                let mut start = alloc::vec![Letter::S(k)];
                start.extend(x.expansion());
                let mut b = CertBuilder::new(Word::new(n, Alphabet::Set, start)?);
                b.rel(RelationId::R(11), Subs::only_i(k), b.word().len(), Dir::Backward)?;
                let w = Word::new(n, Alphabet::Set, alloc::vec![Letter::S(k)])?;
                let x2 = match x {
                    SigmaLetter::Eps(r) => {
                        let (conj, r2) = self.conj_eps(&w, r)?;
                        b.embed(&conj, 0)?;
                        SigmaLetter::Eps(r2)
                    }
                    SigmaLetter::Tau(i, j) => {
                        let (conj, (i2, j2)) = self.conj_tau(&w, i, j)?;
                        b.embed(&conj, 0)?;
                        SigmaLetter::tau(i2, j2)
                    }
                };
                let (sigma, tail) = self.absorb_sigma(x2, k, Side::Right)?;
                b.embed(&tail, 0)?;
                Ok((sigma, b.finish()))
            }
        }
    }

    /// `eps_r s_k -> (word in im ψ)`: the three-case absorption.
    fn esse(&mut self, r: usize, k: usize) -> Result<(Vec<SigmaLetter>, Certificate)> {
        let n = self.n;
        if r == 0 || r > n || k == 0 || k + 1 > n {
            return Err(Error::BadSubscript(alloc::format!("eps_{r} s_{k} at degree {n}")));
        }
        // base id, base sigma result, conjugator targets for (1, 2, ...)
        let (base_id, base_r, base_sigma, targets): (u8, usize, Vec<SigmaLetter>, Vec<usize>) =
            if k == r {
                (
                    0,
                    1,
                    alloc::vec![
                        SigmaLetter::Eps(1),
                        SigmaLetter::tau(1, 2),
                        SigmaLetter::Eps(2)
                    ],
                    alloc::vec![r, r + 1],
                )
            } else if k == r - 1 {
                (
                    1,
                    2,
                    alloc::vec![
                        SigmaLetter::Eps(2),
                        SigmaLetter::tau(1, 2),
                        SigmaLetter::Eps(1)
                    ],
                    alloc::vec![k, r],
                )
            } else {
                (
                    2,
                    3,
                    alloc::vec![
                        SigmaLetter::Eps(3),
                        SigmaLetter::tau(1, 3),
                        SigmaLetter::Eps(1),
                        SigmaLetter::tau(1, 2),
                        SigmaLetter::Eps(2),
                        SigmaLetter::tau(2, 3),
                        SigmaLetter::Eps(3)
                    ],
                    alloc::vec![k, k + 1, r],
                )
            };
        let base = self.esse_base(base_id)?;

        // conjugator v: base subscripts to targets, order-preserving elsewhere
        let mut images = alloc::vec![0usize; n];
        let mut used = alloc::vec![false; n + 1];
        for (b0, &t) in targets.iter().enumerate() {
            images[b0] = t;
            used[t] = true;
        }
        let mut free = (1..=n).filter(|x| !used[*x]);
        for slot in images.iter_mut().skip(targets.len()) {
            *slot = free.next().expect("permutation fills up");
        }
        let vbar = Perm::from_images(images);
        debug_assert_eq!(vbar.apply(base_r), r);
        let v = sword_for_perm(&vbar);
        let vw = Word::new(n, Alphabet::Set, v.clone())?;

        let sigma: Vec<SigmaLetter> = base_sigma
            .iter()
            .map(|l| match l {
                SigmaLetter::Eps(r0) => SigmaLetter::Eps(vbar.apply(*r0)),
                SigmaLetter::Tau(i0, j0) => {
                    SigmaLetter::tau(vbar.apply(*i0), vbar.apply(*j0))
                }
            })
            .collect();

        let mut start = eps_letters(r);
        start.push(Letter::S(k));
        let mut b = CertBuilder::new(Word::new(n, Alphabet::Set, start)?);

        // eps_r -> rev(v) eps_{base_r} v
        let (conj, _) = self.conj_eps(&vw, base_r)?;
        b.embed(&conj.reversed(), 0)?;
        // v s_k -> s_1 v (an S*-equality)
        let base_eps_len = eps_letters(base_r).len();
        let mut from = v.clone();
        from.push(Letter::S(k));
        let mut to = alloc::vec![Letter::S(1)];
        to.extend(v.iter().copied());
        b.macro_step(MacroKind::SymmGroup, v.len() + base_eps_len, from, to)?;
        // run the base
        b.embed(&base, v.len())?;
        // reinsert junctions and fold each sigma letter up
        for m in (1..base_sigma.len()).rev() {
            let j: usize = v.len()
                + base_sigma[..m].iter().map(|l| l.expansion().len()).sum::<usize>();
            insert_vv(&mut b, j, &v)?;
        }
        let mut offset = 0;
        for (y0, ys) in base_sigma.iter().zip(&sigma) {
            let cert = match y0 {
                SigmaLetter::Eps(r0) => self.conj_eps(&vw, *r0)?.0,
                SigmaLetter::Tau(i0, j0) => self.conj_tau(&vw, *i0, *j0)?.0,
            };
            b.embed(&cert, offset)?;
            offset += ys.expansion().len();
        }
        let cert = b.finish();
        debug_assert_eq!(cert.end, sigma_word(n, &sigma));
        Ok((sigma, cert))
    }

    /// The three base absorption certificates, by bounded search.
    fn esse_base(&mut self, which: u8) -> Result<Certificate> {
        let key = (RelationId::R(0), which as usize);
        if let Some(cert) = self.psi_base_memo.get(&key) {
            return Ok(cert.clone());
        }
        let n = self.n;
        let (r, sigma): (usize, Vec<SigmaLetter>) = match which {
            0 => (
                1,
                alloc::vec![
                    SigmaLetter::Eps(1),
                    SigmaLetter::tau(1, 2),
                    SigmaLetter::Eps(2)
                ],
            ),
            1 => (
                2,
                alloc::vec![
                    SigmaLetter::Eps(2),
                    SigmaLetter::tau(1, 2),
                    SigmaLetter::Eps(1)
                ],
            ),
            _ => (
                3,
                alloc::vec![
                    SigmaLetter::Eps(3),
                    SigmaLetter::tau(1, 3),
                    SigmaLetter::Eps(1),
                    SigmaLetter::tau(1, 2),
                    SigmaLetter::Eps(2),
                    SigmaLetter::tau(2, 3),
                    SigmaLetter::Eps(3)
                ],
            ),
        };
        let mut from = eps_letters(r);
        from.push(Letter::S(1));
        let from = Word::new(n, Alphabet::Set, from)?;
        let to = sigma_word(n, &sigma);
        let cert = self.set_meet_certificate(&from, &to)?;
        self.psi_base_memo.insert(key, cert.clone());
        Ok(cert)
    }

    /// `tau_ij s_k -> (word in im ψ)` via `tau_ij ~ tau_ij eps_i tau_ij`.
    fn tsst(&mut self, i: usize, j: usize, k: usize) -> Result<(Vec<SigmaLetter>, Certificate)> {
        let n = self.n;
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let mut start = tau_letters(i, j);
        start.push(Letter::S(k));
        let mut b = CertBuilder::new(Word::new(n, Alphabet::Set, start)?);
        let tau_len = tau_letters(i, j).len();
        let eps_len = eps_letters(i).len();

        // tau_ij -> tau_ij eps_i tau_ij
        let r7 = self.psi_rel_cert(RelationId::R(7), Subs::ijk(i, j, i))?;
        b.embed(&r7.reversed(), 0)?;
        // insert s_k s_k between eps_i and tau_ij
        b.rel(RelationId::R(11), Subs::only_i(k), tau_len + eps_len, Dir::Backward)?;
        // s_k tau_ij s_k -> tau_{i',j'}
        let w = Word::new(n, Alphabet::Set, alloc::vec![Letter::S(k)])?;
        let (conj, (i2, j2)) = self.conj_tau(&w, i, j)?;
        b.embed(&conj, tau_len + eps_len + 1)?;
        // eps_i s_k -> im psi
        let (sigma_mid, esse) = self.esse(i, k)?;
        b.embed(&esse, tau_len)?;

        let mut sigma = alloc::vec![SigmaLetter::tau(i, j)];
        sigma.extend(sigma_mid);
        sigma.push(SigmaLetter::tau(i2, j2));
        let cert = b.finish();
        debug_assert_eq!(cert.end, sigma_word(n, &sigma));
        Ok((sigma, cert))
    }

    /// Rewrites any word containing `e` or `t` into the image of ψ,
    /// returning the preimage over `E∪T` and the certificate `w ≈ ψ(u)`.
    pub fn reduce_to_psi(&mut self, w: &Word) -> Result<(Word, Certificate)> {
        if w.alphabet() != Alphabet::Set {
            return Err(Error::Invalid(alloc::string::String::from(
                "reduce_to_psi needs an S∪{e,t} word",
            )));
        }
        if w.degree() != self.n {
            return Err(Error::DegreeMismatch { left: w.degree(), right: self.n });
        }
        if w.letters().iter().all(|l| matches!(l, Letter::S(_))) {
            return Err(Error::Invalid(alloc::string::String::from(
                "words over S alone stay in the group of units",
            )));
        }
        if let Some(hit) = self.reduce_memo.get(w) {
            return Ok(hit.clone());
        }

        #[derive(Clone, Copy)]
        enum Factor {
            Sig(SigmaLetter),
            S(usize),
        }
        let flen = |f: &Factor| match f {
            Factor::Sig(x) => x.expansion().len(),
            Factor::S(_) => 1,
        };

        let mut b = CertBuilder::new(w.clone());
        let mut factors: Vec<Factor> = Vec::new();
        let mut offset = 0;
        for &letter in w.letters() {
            match letter {
                Letter::S(i) => {
                    factors.push(Factor::S(i));
                    offset += 1;
                }
                Letter::Ee => {
                    factors.push(Factor::Sig(SigmaLetter::Eps(1)));
                    offset += 1;
                }
                Letter::Tt => {
                    // t ≈ s_1 t s_1 = tau_12
                    b.rel(RelationId::R(15), Subs::variant(4), offset, Dir::Backward)?;
                    b.rel(RelationId::R(15), Subs::variant(3), offset + 1, Dir::Backward)?;
                    factors.push(Factor::Sig(SigmaLetter::tau(1, 2)));
                    offset += 3;
                }
                _ => unreachable!(),
            }
        }

        loop {
            let mut pair = None;
            let mut at = 0;
            for q in 0..factors.len().saturating_sub(1) {
                match (factors[q], factors[q + 1]) {
                    (Factor::Sig(x), Factor::S(k)) => {
                        pair = Some((q, x, k, Side::Right));
                        break;
                    }
                    (Factor::S(k), Factor::Sig(x)) => {
                        pair = Some((q, x, k, Side::Left));
                        break;
                    }
                    _ => {}
                }
                at += flen(&factors[q]);
            }
            let Some((q, x, k, side)) = pair else { break };
            let (sigma, cert) = self.absorb_sigma(x, k, side)?;
            b.embed(&cert, at)?;
            factors.splice(q..q + 2, sigma.into_iter().map(Factor::Sig));
        }

        let sigma: Vec<SigmaLetter> = factors
            .iter()
            .map(|f| match f {
                Factor::Sig(x) => *x,
                Factor::S(_) => unreachable!("all S factors absorbed"),
            })
            .collect();
        let u = Word::new(
            self.n,
            Alphabet::Et,
            sigma.iter().map(|x| x.to_et()).collect(),
        )?;
        let cert = b.finish();
        debug_assert_eq!(cert.end, psi(&u)?);
        let result = (u, cert);
        self.reduce_memo.insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Word-problem decision for the full presentation: true with a
    /// replayable R11–R21 certificate iff the images agree.
    pub fn decide_approx(
        &mut self,
        w1: &Word,
        w2: &Word,
    ) -> Result<(bool, Option<Certificate>)> {
        for w in [w1, w2] {
            if w.alphabet() != Alphabet::Set {
                return Err(Error::Invalid(alloc::string::String::from(
                    "decide_approx needs S∪{e,t} words",
                )));
            }
        }
        if eval_big_phi(w1)? != eval_big_phi(w2)? {
            return Ok((false, None));
        }
        let in_s = |w: &Word| w.letters().iter().all(|l| matches!(l, Letter::S(_)));
        if in_s(w1) {
            // unit image: both words lie in S*, joined by the quoted
            // symmetric-group presentation
            debug_assert!(in_s(w2));
            let mut b = CertBuilder::new(w1.clone());
            b.macro_step(
                MacroKind::SymmGroup,
                0,
                w1.letters().to_vec(),
                w2.letters().to_vec(),
            )?;
            return Ok((true, Some(b.finish())));
        }
        let (u1, c1) = self.reduce_to_psi(w1)?;
        let (u2, c2) = self.reduce_to_psi(w2)?;
        let (ok, sim) = self.decide_sim(&u1, &u2)?;
        debug_assert!(ok, "equal images stay equal through the reduction");
        let sim = sim.expect("certificate accompanies a positive answer");
        let transported = self.psi_transport(&sim)?;
        let cert = c1.then(&transported)?.then(&c2.reversed())?;
        Ok((true, Some(cert)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absorb_examples() {
        let mut engine = RewriteEngine::new(4).unwrap();
        // eps_r s_{r-1} -> eps_r tau_{r,r-1} eps_{r-1}
        let (word, cert) = engine.absorb_eps(2, 1, Side::Right).unwrap();
        cert.replay().unwrap();
        assert_eq!(
            word,
            sigma_word(
                4,
                &[SigmaLetter::Eps(2), SigmaLetter::tau(1, 2), SigmaLetter::Eps(1)]
            )
        );
        // the seven-factor general case: eps_3 s_1
        let (word, cert) = engine.absorb_eps(3, 1, Side::Right).unwrap();
        cert.replay().unwrap();
        assert_eq!(
            word,
            sigma_word(
                4,
                &[
                    SigmaLetter::Eps(3),
                    SigmaLetter::tau(1, 3),
                    SigmaLetter::Eps(1),
                    SigmaLetter::tau(1, 2),
                    SigmaLetter::Eps(2),
                    SigmaLetter::tau(2, 3),
                    SigmaLetter::Eps(3)
                ]
            )
        );
    }

    #[test]
    fn absorb_preserves_evaluation_everywhere_at_n4() {
        let mut engine = RewriteEngine::new(4).unwrap();
        for r in 1..=4 {
            for k in 1..=3 {
                for side in [Side::Right, Side::Left] {
                    let (_, cert) = engine.absorb_eps(r, k, side).unwrap();
                    cert.replay().unwrap();
                }
            }
        }
        for i in 1..=4 {
            for j in i + 1..=4 {
                for k in 1..=3 {
                    for side in [Side::Right, Side::Left] {
                        let (_, cert) = engine.absorb_tau(i, j, k, side).unwrap();
                        cert.replay().unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_to_psi_examples() {
        let mut engine = RewriteEngine::new(3).unwrap();
        let w = Word::parse(3, Alphabet::Set, "e").unwrap();
        let (u, cert) = engine.reduce_to_psi(&w).unwrap();
        assert_eq!(u.format(), "e1");
        assert!(cert.steps.is_empty());

        let w = Word::parse(3, Alphabet::Set, "t").unwrap();
        let (u, cert) = engine.reduce_to_psi(&w).unwrap();
        assert_eq!(u.format(), "t1,2");
        cert.replay().unwrap();

        let w = Word::parse(3, Alphabet::Set, "s1 s2 t e s1").unwrap();
        let (u, cert) = engine.reduce_to_psi(&w).unwrap();
        cert.replay().unwrap();
        assert_eq!(
            eval_big_phi(&psi(&u).unwrap()).unwrap(),
            eval_big_phi(&w).unwrap()
        );
        assert!(engine
            .reduce_to_psi(&Word::parse(3, Alphabet::Set, "s1 s2").unwrap())
            .is_err());
    }

    #[test]
    fn decide_approx_basics() {
        let mut engine = RewriteEngine::new(3).unwrap();
        let u = Word::parse(3, Alphabet::Set, "s1 s1").unwrap();
        let v = Word::empty(3, Alphabet::Set);
        let (eq, cert) = engine.decide_approx(&u, &v).unwrap();
        assert!(eq);
        cert.unwrap().replay().unwrap();

        let u = Word::parse(3, Alphabet::Set, "e t e").unwrap();
        let v = Word::parse(3, Alphabet::Set, "e").unwrap();
        let (eq, cert) = engine.decide_approx(&u, &v).unwrap();
        assert!(eq);
        cert.unwrap().replay().unwrap();

        let u = Word::parse(3, Alphabet::Set, "e").unwrap();
        let v = Word::parse(3, Alphabet::Set, "t").unwrap();
        let (eq, cert) = engine.decide_approx(&u, &v).unwrap();
        assert!(!eq);
        assert!(cert.is_none());
    }
}
