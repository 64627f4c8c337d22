//! Transport of singular-ideal certificates into the full presentation:
//! for every relation R1–R10 a pre-compiled R11–R21 certificate between the
//! ψ-images of its sides, assembled for arbitrary subscripts by
//! conjugation-reduction to fixed base subscripts.

use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate, Step};
use crate::error::{Error, Result};
use crate::eval::{c_letters, eps_letters, psi, psi_letter, tau_letters};
use crate::relations::{apply_relation, materialize, Dir, RelationId, Subs};
use crate::words::{Alphabet, Letter, Word};

use super::search;
use super::swords::{sword_for_perm, Perm};
use super::RewriteEngine;

/// A letter of the image of ψ: a conjugated generator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SigmaLetter {
    Eps(usize),
    Tau(usize, usize),
}

impl SigmaLetter {
    pub fn tau(i: usize, j: usize) -> SigmaLetter {
        if i < j {
            SigmaLetter::Tau(i, j)
        } else {
            SigmaLetter::Tau(j, i)
        }
    }

    pub fn to_et(self) -> Letter {
        match self {
            SigmaLetter::Eps(r) => Letter::E(r),
            SigmaLetter::Tau(i, j) => Letter::t(i, j),
        }
    }

    pub fn expansion(self) -> Vec<Letter> {
        match self {
            SigmaLetter::Eps(r) => eps_letters(r),
            SigmaLetter::Tau(i, j) => tau_letters(i, j),
        }
    }

    fn rename(self, map: impl Fn(usize) -> usize) -> SigmaLetter {
        match self {
            SigmaLetter::Eps(r) => SigmaLetter::Eps(map(r)),
            SigmaLetter::Tau(i, j) => SigmaLetter::tau(map(i), map(j)),
        }
    }
}

pub fn sigma_word(n: usize, letters: &[SigmaLetter]) -> Word {
    Word::new(
        n,
        Alphabet::Set,
        letters.iter().flat_map(|l| l.expansion()).collect(),
    )
    .expect("sigma letters are in range")
}

/// Cancels `v ++ rev(v)` occupying `word[start .. start + 2|v|]`.
pub(crate) fn cancel_vv(b: &mut CertBuilder, start: usize, v: &[Letter]) -> Result<()> {
    for q in 0..v.len() {
        let Letter::S(a) = v[v.len() - 1 - q] else { unreachable!() };
        b.rel(RelationId::R(11), Subs::only_i(a), start + v.len() - 1 - q, Dir::Forward)?;
    }
    Ok(())
}

/// Inserts `v ++ rev(v)` at position `at`.
pub(crate) fn insert_vv(b: &mut CertBuilder, at: usize, v: &[Letter]) -> Result<()> {
    for (t, letter) in v.iter().enumerate() {
        let Letter::S(a) = letter else { unreachable!() };
        b.rel(RelationId::R(11), Subs::only_i(*a), at + t, Dir::Backward)?;
    }
    Ok(())
}

impl RewriteEngine {
    /// R11–R21 certificate from `ψ(lhs)` to `ψ(rhs)` for an R1–R10
    /// relation instance.
    pub fn psi_rel_cert(&mut self, id: RelationId, subs: Subs) -> Result<Certificate> {
        let n = self.n;
        let inst = materialize(id, subs, n)?;
        let get = |o: Option<usize>| o.expect("materialize validated the subscripts");
        match id {
            RelationId::R(1) => {
                let i = get(subs.i);
                let mut b = CertBuilder::new(psi(&inst.lhs)?);
                cancel_vv(&mut b, i, &c_letters(i))?;
                b.rel(RelationId::R(14), Subs::variant(1), i - 1, Dir::Forward)?;
                Ok(b.finish())
            }
            RelationId::R(3) => {
                let (i, j) = (get(subs.i), get(subs.j));
                let (i, j) = (i.min(j), i.max(j));
                let mut v = c_letters(j);
                v.extend(c_letters(i));
                let mut b = CertBuilder::new(psi(&inst.lhs)?);
                cancel_vv(&mut b, i + j - 1, &v)?;
                b.rel(RelationId::R(15), Subs::variant(1), i + j - 2, Dir::Forward)?;
                Ok(b.finish())
            }
            RelationId::R(2) => {
                let (i, j) = (get(subs.i), get(subs.j));
                let base = self.psi_base_r2()?;
                self.conj_wrap(
                    &[SigmaLetter::Eps(1), SigmaLetter::Eps(2)],
                    &[SigmaLetter::Eps(2), SigmaLetter::Eps(1)],
                    &base,
                    &[i, j],
                )
            }
            RelationId::R(4) => {
                let (i, j, k, l) = (get(subs.i), get(subs.j), get(subs.k), get(subs.l));
                let (pi, pj) = (i.min(j), i.max(j));
                let (pk, pl) = (k.min(l), k.max(l));
                if (pi, pj) == (pk, pl) {
                    return Ok(Certificate::identity(psi(&inst.lhs)?));
                }
                let shared: Vec<usize> =
                    [pi, pj].iter().copied().filter(|x| *x == pk || *x == pl).collect();
                match shared.first() {
                    Some(&m) => {
                        let a = if pi == m { pj } else { pi };
                        let c = if pk == m { pl } else { pk };
                        let base = self.psi_base_searched(RelationId::R(4), 1)?;
                        self.conj_wrap(
                            &[SigmaLetter::tau(1, 2), SigmaLetter::tau(2, 3)],
                            &[SigmaLetter::tau(2, 3), SigmaLetter::tau(1, 2)],
                            &base,
                            &[a, m, c],
                        )
                    }
                    None => {
                        let base = self.psi_base_searched(RelationId::R(4), 2)?;
                        self.conj_wrap(
                            &[SigmaLetter::tau(1, 2), SigmaLetter::tau(3, 4)],
                            &[SigmaLetter::tau(3, 4), SigmaLetter::tau(1, 2)],
                            &base,
                            &[pi, pj, pk, pl],
                        )
                    }
                }
            }
            RelationId::R(5) => {
                let (i, j, k) = (get(subs.i), get(subs.j), get(subs.k));
                let base = self.psi_base_searched(RelationId::R(5), 0)?;
                self.conj_wrap(
                    &[SigmaLetter::tau(1, 2), SigmaLetter::tau(2, 3)],
                    &[SigmaLetter::tau(2, 3), SigmaLetter::tau(1, 3)],
                    &base,
                    &[i, j, k],
                )
            }
            RelationId::R(6) => {
                let (i, j, k) = (get(subs.i), get(subs.j), get(subs.k));
                let base = self.psi_base_r6()?;
                self.conj_wrap(
                    &[SigmaLetter::tau(1, 2), SigmaLetter::Eps(3)],
                    &[SigmaLetter::Eps(3), SigmaLetter::tau(1, 2)],
                    &base,
                    &[i, j, k],
                )
            }
            RelationId::R(7) => {
                let (i, j, k) = (get(subs.i), get(subs.j), get(subs.k));
                let eps = if k == i { 1 } else { 2 };
                let base = self.psi_base_r7(eps)?;
                self.conj_wrap(
                    &[
                        SigmaLetter::tau(1, 2),
                        SigmaLetter::Eps(eps),
                        SigmaLetter::tau(1, 2),
                    ],
                    &[SigmaLetter::tau(1, 2)],
                    &base,
                    &[i, j],
                )
            }
            RelationId::R(8) => {
                let (i, j, k) = (get(subs.i), get(subs.j), get(subs.k));
                let eps = if k == i { 1 } else { 2 };
                let base = self.psi_base_r8(eps)?;
                self.conj_wrap(
                    &[
                        SigmaLetter::Eps(eps),
                        SigmaLetter::tau(1, 2),
                        SigmaLetter::Eps(eps),
                    ],
                    &[SigmaLetter::Eps(eps)],
                    &base,
                    &[i, j],
                )
            }
            RelationId::R(9) => {
                let (i, j, k) = (get(subs.i), get(subs.j), get(subs.k));
                let base = self.psi_base_searched(RelationId::R(9), 0)?;
                self.conj_wrap(&r9_sigma(1, 2, 3).0, &r9_sigma(1, 2, 3).1, &base, &[i, j, k])
            }
            RelationId::R(10) => {
                let (i, j, k, l) = (get(subs.i), get(subs.j), get(subs.k), get(subs.l));
                let base = self.psi_base_searched(RelationId::R(10), 0)?;
                self.conj_wrap(
                    &r10_sigma(1, 2, 3, 4).0,
                    &r10_sigma(1, 2, 3, 4).1,
                    &base,
                    &[i, j, k, l],
                )
            }
            _ => Err(Error::Invalid(alloc::format!("psi transport undefined for {id}"))),
        }
    }

    /// Assembles the certificate for arbitrary subscripts from the base
    /// certificate: conjugate every ψ-letter down to base subscripts,
    /// cancel the conjugator pairs, run the base, and fold back.
    fn conj_wrap(
        &mut self,
        base_lhs: &[SigmaLetter],
        base_rhs: &[SigmaLetter],
        base: &Certificate,
        targets: &[usize],
    ) -> Result<Certificate> {
        let n = self.n;
        let map = |x: usize| {
            if x <= targets.len() {
                targets[x - 1]
            } else {
                x
            }
        };
        let lhs_sigma: Vec<SigmaLetter> = base_lhs.iter().map(|l| l.rename(map)).collect();
        let rhs_sigma: Vec<SigmaLetter> = base_rhs.iter().map(|l| l.rename(map)).collect();
        // the conjugator: base subscripts to target subscripts, the rest
        // order-preserving
        let mut images = alloc::vec![0usize; n];
        let mut used = alloc::vec![false; n + 1];
        for (b0, &t) in targets.iter().enumerate() {
            images[b0] = t;
            used[t] = true;
        }
        let mut free = (1..=n).filter(|x| !used[*x]);
        for slot in images.iter_mut().skip(targets.len()) {
            *slot = free.next().expect("n values for n slots");
        }
        let v = sword_for_perm(&Perm::from_images(images));
        let vw = Word::new(n, Alphabet::Set, v.clone())?;

        let mut b = CertBuilder::new(sigma_word(n, &lhs_sigma));
        if v.is_empty() {
            b.embed(base, 0)?;
            return b.finish().then(&Certificate::identity(sigma_word(n, &rhs_sigma)));
        }

        // each target letter becomes rev(v) ψ(base letter) v
        let mut offset = 0;
        for (x0, xs) in base_lhs.iter().zip(&lhs_sigma) {
            let cert = match x0 {
                SigmaLetter::Eps(r) => {
                    let (cert, r2) = self.conj_eps(&vw, *r)?;
                    debug_assert_eq!(SigmaLetter::Eps(r2), *xs);
                    cert
                }
                SigmaLetter::Tau(i, j) => {
                    let (cert, (i2, j2)) = self.conj_tau(&vw, *i, *j)?;
                    debug_assert_eq!(SigmaLetter::tau(i2, j2), *xs);
                    cert
                }
            };
            b.embed(&cert.reversed(), offset)?;
            offset += 2 * v.len() + x0.expansion().len();
        }
        // cancel the junction pairs v rev(v)
        for m in (1..base_lhs.len()).rev() {
            let j: usize = v.len()
                + base_lhs[..m].iter().map(|l| l.expansion().len()).sum::<usize>()
                + 2 * v.len() * (m - 1);
            cancel_vv(&mut b, j, &v)?;
        }
        b.embed(base, v.len())?;
        // reinsert junction pairs between the rhs letters
        for m in (1..base_rhs.len()).rev() {
            let j: usize =
                v.len() + base_rhs[..m].iter().map(|l| l.expansion().len()).sum::<usize>();
            insert_vv(&mut b, j, &v)?;
        }
        // fold each letter back up
        let mut offset = 0;
        for (y0, ys) in base_rhs.iter().zip(&rhs_sigma) {
            let cert = match y0 {
                SigmaLetter::Eps(r) => self.conj_eps(&vw, *r)?.0,
                SigmaLetter::Tau(i, j) => self.conj_tau(&vw, *i, *j)?.0,
            };
            b.embed(&cert, offset)?;
            offset += ys.expansion().len();
        }
        Ok(b.finish())
    }

    // ----- base certificates ------------------------------------------------

    /// `eps_1 eps_2 -> eps_2 eps_1` (one R18 step).
    fn psi_base_r2(&mut self) -> Result<Certificate> {
        let n = self.n;
        let start = sigma_word(n, &[SigmaLetter::Eps(1), SigmaLetter::Eps(2)]);
        let mut b = CertBuilder::new(start);
        b.rel(RelationId::R(18), Subs::variant(1), 0, Dir::Backward)?;
        Ok(b.finish())
    }

    /// `s_1` commutes with `eps_3` (R13, R16, R13).
    fn little_s1_eps3(&mut self) -> Result<Certificate> {
        let n = self.n;
        let mut letters = alloc::vec![Letter::S(1)];
        letters.extend(eps_letters(3));
        let mut b = CertBuilder::new(Word::new(n, Alphabet::Set, letters)?);
        b.rel(RelationId::R(13), Subs::ij(1, 2), 0, Dir::Forward)?;
        b.rel(RelationId::R(16), Subs::only_i(2), 2, Dir::Backward)?;
        b.rel(RelationId::R(13), Subs::ij(2, 1), 3, Dir::Forward)?;
        Ok(b.finish())
    }

    /// `tau_12 eps_3 -> eps_3 tau_12` (little lemma + R21).
    fn psi_base_r6(&mut self) -> Result<Certificate> {
        let n = self.n;
        let start = sigma_word(n, &[SigmaLetter::tau(1, 2), SigmaLetter::Eps(3)]);
        let mut b = CertBuilder::new(start);
        let little = self.little_s1_eps3()?;
        b.embed(&little, 2)?;
        b.rel(RelationId::R(21), Subs::default(), 1, Dir::Forward)?;
        b.embed(&little, 0)?;
        Ok(b.finish())
    }

    /// `tau_12 eps_k tau_12 -> tau_12` for `k` in `{1,2}`.
    fn psi_base_r7(&mut self, k: usize) -> Result<Certificate> {
        let n = self.n;
        let start = sigma_word(
            n,
            &[SigmaLetter::tau(1, 2), SigmaLetter::Eps(k), SigmaLetter::tau(1, 2)],
        );
        let mut b = CertBuilder::new(start);
        if k == 1 {
            b.rel(RelationId::R(15), Subs::variant(3), 1, Dir::Forward)?;
            b.rel(RelationId::R(15), Subs::variant(4), 3, Dir::Forward)?;
            b.rel(RelationId::R(15), Subs::variant(2), 1, Dir::Forward)?;
        } else {
            b.rel(RelationId::R(11), Subs::only_i(1), 2, Dir::Forward)?;
            b.rel(RelationId::R(11), Subs::only_i(1), 3, Dir::Forward)?;
            b.rel(RelationId::R(15), Subs::variant(2), 1, Dir::Forward)?;
        }
        Ok(b.finish())
    }

    /// `eps_k tau_12 eps_k -> eps_k` for `k` in `{1,2}`.
    fn psi_base_r8(&mut self, k: usize) -> Result<Certificate> {
        let n = self.n;
        let start = sigma_word(
            n,
            &[SigmaLetter::Eps(k), SigmaLetter::tau(1, 2), SigmaLetter::Eps(k)],
        );
        let mut b = CertBuilder::new(start);
        if k == 1 {
            b.rel(RelationId::R(15), Subs::variant(3), 2, Dir::Backward)?;
            b.rel(RelationId::R(11), Subs::only_i(1), 3, Dir::Forward)?;
            b.rel(RelationId::R(15), Subs::variant(4), 1, Dir::Forward)?;
            b.rel(RelationId::R(14), Subs::variant(2), 0, Dir::Forward)?;
        } else {
            b.rel(RelationId::R(11), Subs::only_i(1), 2, Dir::Forward)?;
            b.rel(RelationId::R(11), Subs::only_i(1), 3, Dir::Forward)?;
            b.rel(RelationId::R(14), Subs::variant(2), 1, Dir::Forward)?;
        }
        Ok(b.finish())
    }

    /// Remaining bases, found by deterministic bounded search (normalise
    /// both sides, then meet in the middle).
    fn psi_base_searched(&mut self, id: RelationId, variant: usize) -> Result<Certificate> {
        if let Some(cert) = self.psi_base_memo.get(&(id, variant)) {
            return Ok(cert.clone());
        }
        let n = self.n;
        let (lhs, rhs): (Vec<SigmaLetter>, Vec<SigmaLetter>) = match (id, variant) {
            (RelationId::R(4), 1) => (
                alloc::vec![SigmaLetter::tau(1, 2), SigmaLetter::tau(2, 3)],
                alloc::vec![SigmaLetter::tau(2, 3), SigmaLetter::tau(1, 2)],
            ),
            (RelationId::R(4), 2) => (
                alloc::vec![SigmaLetter::tau(1, 2), SigmaLetter::tau(3, 4)],
                alloc::vec![SigmaLetter::tau(3, 4), SigmaLetter::tau(1, 2)],
            ),
            (RelationId::R(5), _) => (
                alloc::vec![SigmaLetter::tau(1, 2), SigmaLetter::tau(2, 3)],
                alloc::vec![SigmaLetter::tau(2, 3), SigmaLetter::tau(1, 3)],
            ),
            (RelationId::R(9), _) => {
                let (l, r) = r9_sigma(1, 2, 3);
                (l, r)
            }
            (RelationId::R(10), _) => {
                let (l, r) = r10_sigma(1, 2, 3, 4);
                (l, r)
            }
            _ => return Err(Error::Invalid(alloc::format!("no searched base for {id}"))),
        };
        let from = sigma_word(n, &lhs);
        let to = sigma_word(n, &rhs);
        let cert = self.set_meet_certificate(&from, &to)?;
        self.psi_base_memo.insert((id, variant), cert.clone());
        Ok(cert)
    }

    /// Elementary R11–R21 certificate between two equal-image words over
    /// `S ∪ {e,t}`, by normalisation plus bounded bidirectional search.
    pub(crate) fn set_meet_certificate(&mut self, from: &Word, to: &Word) -> Result<Certificate> {
        let opts = self.opts;
        let instances = self.set_instances().to_vec();
        let (nf_from, path_from) = search::normalize(from, &instances, opts, apply_relation);
        let (nf_to, path_to) = search::normalize(to, &instances, opts, apply_relation);
        let middle = if nf_from == nf_to {
            Vec::new()
        } else {
            search::bidirectional_path(&nf_from, &nf_to, &instances, opts, apply_relation)
                .ok_or_else(|| {
                    Error::SearchBound(alloc::format!(
                        "no R11-R21 path between '{nf_from}' and '{nf_to}' within bounds"
                    ))
                })?
        };
        let mut b = CertBuilder::new(from.clone());
        for (id, subs, pos, dir) in
            path_from.iter().chain(&middle).copied()
        {
            b.rel(id, subs, pos, dir)?;
        }
        for (id, subs, pos, dir) in path_to.iter().rev().copied() {
            b.rel(id, subs, pos, dir.flip())?;
        }
        let cert = b.finish();
        debug_assert_eq!(&cert.end, to);
        Ok(cert)
    }

    /// Translates an R1–R10 certificate step by step into an R11–R21
    /// certificate between the ψ-images. `LemmaT` macros are elaborated
    /// into elementary steps first.
    pub fn psi_transport(&mut self, cert: &Certificate) -> Result<Certificate> {
        if cert.start.alphabet() != Alphabet::Et {
            return Err(Error::Invalid(alloc::string::String::from(
                "psi transport needs an E∪T certificate",
            )));
        }
        let cert = self.elaborate_lemma_t(cert)?;
        let mut et_word = cert.start.clone();
        let mut b = CertBuilder::new(psi(&et_word)?);
        for step in &cert.steps {
            let Step::Rel { id, subs, pos, dir } = step else {
                return Err(Error::Invalid(alloc::string::String::from(
                    "unexpected macro in elaborated certificate",
                )));
            };
            let offset: usize = et_word.letters()[..*pos]
                .iter()
                .map(|&l| psi_letter(l).len())
                .sum();
            let gadget = self.psi_rel_cert(*id, *subs)?;
            match dir {
                Dir::Forward => b.embed(&gadget, offset)?,
                Dir::Backward => b.embed(&gadget.reversed(), offset)?,
            }
            let inst = materialize(*id, *subs, et_word.degree())?;
            et_word = apply_relation(&et_word, &inst, *pos, *dir)?;
        }
        debug_assert_eq!(b.word(), &psi(&et_word)?);
        Ok(b.finish())
    }
}

fn r9_sigma(
    i: usize,
    j: usize,
    k: usize,
) -> (Vec<SigmaLetter>, Vec<SigmaLetter>) {
    use SigmaLetter::Eps;
    let tau = SigmaLetter::tau;
    (
        alloc::vec![Eps(k), tau(k, i), Eps(i), tau(i, j), Eps(j), tau(j, k), Eps(k)],
        alloc::vec![Eps(k), tau(k, j), Eps(j), tau(j, i), Eps(i), tau(i, k), Eps(k)],
    )
}

fn r10_sigma(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> (Vec<SigmaLetter>, Vec<SigmaLetter>) {
    use SigmaLetter::Eps;
    let tau = SigmaLetter::tau;
    (
        alloc::vec![
            Eps(k),
            tau(k, i),
            Eps(i),
            tau(i, j),
            Eps(j),
            tau(j, l),
            Eps(l),
            tau(l, k),
            Eps(k)
        ],
        alloc::vec![
            Eps(k),
            tau(k, l),
            Eps(l),
            tau(l, i),
            Eps(i),
            tau(i, j),
            Eps(j),
            tau(j, k),
            Eps(k)
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::instances_of;

    #[test]
    fn direct_bases_replay() {
        let mut engine = RewriteEngine::new(4).unwrap();
        for cert in [
            engine.psi_base_r2().unwrap(),
            engine.psi_base_r6().unwrap(),
            engine.psi_base_r7(1).unwrap(),
            engine.psi_base_r7(2).unwrap(),
            engine.psi_base_r8(1).unwrap(),
            engine.psi_base_r8(2).unwrap(),
        ] {
            cert.replay().unwrap();
        }
    }

    #[test]
    fn searched_bases_replay() {
        let mut engine = RewriteEngine::new(4).unwrap();
        for (id, variant) in [
            (RelationId::R(4), 1),
            (RelationId::R(5), 0),
            (RelationId::R(9), 0),
        ] {
            let cert = engine.psi_base_searched(id, variant).unwrap();
            cert.replay().unwrap();
        }
    }

    #[test]
    fn all_psi_gadgets_replay_at_n3() {
        let mut engine = RewriteEngine::new(3).unwrap();
        for k in 1..=9u8 {
            for inst in instances_of(RelationId::R(k), 3) {
                let cert = engine.psi_rel_cert(inst.id, inst.subs).unwrap();
                assert_eq!(cert.start, psi(&inst.lhs).unwrap(), "{inst}");
                assert_eq!(cert.end, psi(&inst.rhs).unwrap(), "{inst}");
                cert.replay().unwrap();
            }
        }
    }
}
