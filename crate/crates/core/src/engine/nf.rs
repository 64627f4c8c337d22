//! Reduction of words over `E∪T` to the canonical form `t_eps z_alpha
//! t_eta`, by the constructive three-stage rewriting (separate the `T`
//! parts, sharpen them to kernel and cokernel, then align the middle
//! factor), and the resulting decision procedure.

use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate, MacroKind};
use crate::diagram::PartitionDiagram;
use crate::equivalence::Equivalence;
use crate::error::{Error, Result};
use crate::eval::eval_phi;
use crate::partial_perm::PartialPermutation;
use crate::relations::{apply_relation, Dir, RelationId, Subs};
use crate::words::{Alphabet, Letter, Word};

use super::eabsorb::{self, AbsorbMode};
use super::gadgets;
use super::insn::{et_expansion, ZWord};
use super::tword::{canonical_t_word, equivalence_of_t_letters, t_set_letters};
use super::zword::{eval_z_pairs, z_pairs_for};
use super::RewriteEngine;

/// The canonical data of a singular diagram: kernel, minimum-selected
/// partial permutation, cokernel. Two singular diagrams are equal iff
/// their triples are equal, and the assembled word evaluates back to the
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalForm {
    pub epsilon: Equivalence,
    pub alpha: PartialPermutation,
    pub eta: Equivalence,
}

impl NormalForm {
    /// Reads the triple off a singular diagram: for each transversal block
    /// `A ∪ B'`, the pair `(min A, min B)`.
    pub fn of_diagram(d: &PartitionDiagram) -> Result<NormalForm> {
        if d.is_unit() {
            return Err(Error::Invalid(alloc::string::String::from(
                "normal forms exist only for the singular ideal",
            )));
        }
        let mut pairs = Vec::new();
        for block in d.blocks() {
            let a = block.iter().filter(|p| !p.primed).map(|p| p.index).min();
            let b = block.iter().filter(|p| p.primed).map(|p| p.index).min();
            if let (Some(a), Some(b)) = (a, b) {
                pairs.push((a, b));
            }
        }
        Ok(NormalForm {
            epsilon: d.ker(),
            alpha: PartialPermutation::new(d.degree(), pairs)?,
            eta: d.coker(),
        })
    }

    /// The assembled word `t_eps z_alpha t_eta`.
    pub fn word(&self) -> Word {
        let eps = canonical_t_word(&self.epsilon);
        let mid = super::zword::z_word_for(&self.alpha).expect("alpha is singular");
        let eta = canonical_t_word(&self.eta);
        eps.concat(&mid).and_then(|w| w.concat(&eta)).expect("same degree")
    }

    /// The diagram the triple encodes.
    pub fn diagram(&self) -> PartitionDiagram {
        crate::eval::eval_word(&self.word()).expect("normal form words evaluate")
    }
}

/// Per-stage progress counters of one normal-form run. Each stage's
/// measure is strictly monotone; this is asserted during the run and
/// recorded here for inspection.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NfStats {
    /// `|n/lambda| + |n/rho|` before and after each sharpening round
    /// (strictly decreasing).
    pub tut1_k: Vec<usize>,
    /// Middle-factor rank before and after each rank-reduction round
    /// (strictly decreasing by exactly 1).
    pub tut2_rank: Vec<usize>,
    /// `|dom ∩ dom(alpha)| + |codom ∩ codom(alpha)|` before and after each
    /// alignment round (strictly increasing by exactly 1).
    pub tut3_k: Vec<usize>,
}

/// Working decomposition `w1 · u2 · w3` with `w1, w3` over `T` and `u2` a
/// `z`-word. The builder's word always equals
/// `w1 ++ expansion(u2) ++ w3 ++ (unprocessed tail)`.
struct Parts {
    w1: Vec<Letter>,
    u2: ZWord,
    w3: Vec<Letter>,
}

impl Parts {
    fn zoff(&self) -> usize {
        self.w1.len()
    }

    fn w3off(&self) -> usize {
        self.w1.len() + 3 * self.u2.len()
    }
}

impl RewriteEngine {
    /// Splits `w ~ w1 w2 w3` with `w1, w3 ∈ T*` and `w2 ∈ ⟨Z⟩`.
    pub fn decompose_w123(&mut self, w: &Word) -> Result<(Word, Word, Word, Certificate)> {
        let (parts, b) = self.stage_w123(w)?;
        let n = self.n;
        Ok((
            Word::new(n, Alphabet::Et, parts.w1.clone())?,
            et_expansion(n, &parts.u2),
            Word::new(n, Alphabet::Et, parts.w3.clone())?,
            b.finish(),
        ))
    }

    /// `w ~ t_eps u t_eta` with `eps = ker`, `eta = coker` of the image.
    pub fn to_tut1(&mut self, w: &Word) -> Result<(Word, Word, Word, Certificate)> {
        let mut stats = NfStats::default();
        let (parts, b) = self.stage_w123(w)?;
        let (parts, b) = self.stage_tut1(parts, b, &mut stats)?;
        let n = self.n;
        Ok((
            Word::new(n, Alphabet::Et, parts.w1.clone())?,
            et_expansion(n, &parts.u2),
            Word::new(n, Alphabet::Et, parts.w3.clone())?,
            b.finish(),
        ))
    }

    /// As [`to_tut1`](Self::to_tut1), with the middle factor's rank equal
    /// to the rank of the image.
    pub fn to_tut2(&mut self, w: &Word) -> Result<(Word, Word, Word, Certificate)> {
        let mut stats = NfStats::default();
        let (parts, b) = self.stage_w123(w)?;
        let (parts, b) = self.stage_tut1(parts, b, &mut stats)?;
        let (parts, b) = self.stage_tut2(parts, b, &mut stats)?;
        let n = self.n;
        Ok((
            Word::new(n, Alphabet::Et, parts.w1.clone())?,
            et_expansion(n, &parts.u2),
            Word::new(n, Alphabet::Et, parts.w3.clone())?,
            b.finish(),
        ))
    }

    /// Full reduction to `t_eps z_alpha t_eta`. The triple is read off the
    /// image diagram; the certificate is built by the constructive
    /// rewriting and always ends at the assembled word.
    pub fn normal_form(&mut self, w: &Word) -> Result<(NormalForm, Certificate)> {
        let (nf, cert, _) = self.normal_form_with_stats(w)?;
        Ok((nf, cert))
    }

    pub fn normal_form_with_stats(
        &mut self,
        w: &Word,
    ) -> Result<(NormalForm, Certificate, NfStats)> {
        if let Some(hit) = self.nf_memo.get(w) {
            return Ok(hit.clone());
        }
        let image = eval_phi(w)?;
        let nf = NormalForm::of_diagram(&image)?;
        let mut stats = NfStats::default();
        let (parts, b) = self.stage_w123(w)?;
        let (parts, b) = self.stage_tut1(parts, b, &mut stats)?;
        let (parts, b) = self.stage_tut2(parts, b, &mut stats)?;
        let (parts, b) = self.stage_tut3(&nf, parts, b, &mut stats)?;
        let cert = b.finish();
        debug_assert_eq!(cert.end, nf.word());
        let _ = parts;
        let result = (nf, cert, stats);
        self.nf_memo.insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Word-problem decision for the singular-ideal presentation: true
    /// with a replayable certificate iff the images agree.
    pub fn decide_sim(&mut self, u: &Word, v: &Word) -> Result<(bool, Option<Certificate>)> {
        if u.is_empty() || v.is_empty() {
            return Err(Error::Invalid(alloc::string::String::from(
                "decide_sim needs nonempty words",
            )));
        }
        if eval_phi(u)? != eval_phi(v)? {
            return Ok((false, None));
        }
        if u == v {
            return Ok((true, Some(Certificate::identity(u.clone()))));
        }
        if let Some(cert) = self.try_single_step(u, v) {
            return Ok((true, Some(cert)));
        }
        let (nfu, cu) = self.normal_form(u)?;
        let (_nfv, cv) = self.normal_form(v)?;
        debug_assert_eq!(nfu, _nfv);
        let cert = cu.then(&cv.reversed())?;
        Ok((true, Some(cert)))
    }

    /// One-relation shortcut: checks whether a single R1–R10 application
    /// turns `u` into `v`.
    fn try_single_step(&mut self, u: &Word, v: &Word) -> Option<Certificate> {
        let n = self.n;
        let instances: Vec<_> =
            (1..=10).flat_map(|k| crate::relations::instances_of(RelationId::R(k), n)).collect();
        for inst in &instances {
            for dir in [Dir::Forward, Dir::Backward] {
                let src = match dir {
                    Dir::Forward => &inst.lhs,
                    Dir::Backward => &inst.rhs,
                };
                if src.len() > u.len() {
                    continue;
                }
                for pos in 0..=u.len() - src.len() {
                    if u.letters()[pos..pos + src.len()] == *src.letters() {
                        if let Ok(next) = apply_relation(u, inst, pos, dir) {
                            if &next == v {
                                let mut b = CertBuilder::new(u.clone());
                                b.rel(inst.id, inst.subs, pos, dir).ok()?;
                                return Some(b.finish());
                            }
                        }
                    }
                }
            }
        }
        None
    }

    // ----- stage 1: separate into w1 u2 w3 ---------------------------------

    fn stage_w123(&mut self, w: &Word) -> Result<(Parts, CertBuilder)> {
        if w.alphabet() != Alphabet::Et {
            return Err(Error::Invalid(alloc::string::String::from(
                "the rewrite engine works on E∪T words",
            )));
        }
        if w.is_empty() {
            return Err(Error::Invalid(alloc::string::String::from(
                "the empty word has no normal form",
            )));
        }
        if w.degree() != self.n {
            return Err(Error::DegreeMismatch { left: w.degree(), right: self.n });
        }
        let n = self.n;
        let mut b = CertBuilder::new(w.clone());
        let mut parts = Parts { w1: Vec::new(), u2: Vec::new(), w3: Vec::new() };

        let first = w.letters()[0];
        match first {
            Letter::E(i) => {
                let j = kill_partner(i);
                b.embed(&gadgets::ez_iii(n, i, j)?.reversed(), 0)?;
                parts.u2 = alloc::vec![(i, j), (j, i)];
            }
            Letter::T(i, j) => {
                b.rel(RelationId::R(7), Subs::ijk(i, j, i), 0, Dir::Backward)?;
                b.embed(&gadgets::ez_iii(n, i, j)?.reversed(), 1)?;
                parts.w1 = alloc::vec![Letter::t(i, j)];
                parts.u2 = alloc::vec![(i, j), (j, i)];
                parts.w3 = alloc::vec![Letter::t(i, j)];
                self.canonicalize_u2(&mut parts, &mut b)?;
            }
            _ => unreachable!("Et words contain only E and T letters"),
        }

        for &letter in &w.letters()[1..] {
            match letter {
                Letter::T(i, j) => {
                    parts.w3.push(Letter::t(i, j));
                }
                Letter::E(i) => self.absorb_e_letter(&mut parts, &mut b, i)?,
                _ => unreachable!(),
            }
        }
        Ok((parts, b))
    }

    /// Absorbs the next letter `e_i`, which sits immediately after
    /// `w1 u2 w3` in the builder's word.
    fn absorb_e_letter(&mut self, parts: &mut Parts, b: &mut CertBuilder, i: usize) -> Result<()> {
        let n = self.n;
        let touches_i = parts
            .w3
            .iter()
            .any(|l| matches!(l, Letter::T(a, bb) if *a == i || *bb == i));
        if !touches_i {
            // Commute e_i left through w3, then absorb it into the z-part.
            let e_pos = parts.w3off() + parts.w3.len();
            for q in 0..parts.w3.len() {
                let Letter::T(a, bb) = parts.w3[parts.w3.len() - 1 - q] else {
                    unreachable!()
                };
                b.rel(RelationId::R(6), Subs::ijk(a, bb, i), e_pos - 1 - q, Dir::Forward)?;
            }
            let (out, cert) = eabsorb::absorb_e(n, &parts.u2, i, AbsorbMode::Appended)?;
            b.embed(&cert, parts.zoff())?;
            parts.u2 = out;
            self.canonicalize_u2(parts, b)?;
            return Ok(());
        }

        // Bring the letters touching i to the front of w3, sorted by the
        // other subscript, removing duplicates.
        self.sort_w3_for(parts, b, i)?;
        let r = parts
            .w3
            .iter()
            .take_while(|l| matches!(l, Letter::T(a, bb) if *a == i || *bb == i))
            .count();
        let fronts: Vec<usize> = parts.w3[..r]
            .iter()
            .map(|l| match l {
                Letter::T(a, bb) => {
                    if *a == i {
                        *bb
                    } else {
                        *a
                    }
                }
                _ => unreachable!(),
            })
            .collect();
        if r >= 2 {
            // Re-chain t_{i l1} ... t_{i lr} as t_{i l1} t_{l1 l2} ...
            let mut to = alloc::vec![Letter::t(i, fronts[0])];
            to.extend(t_set_letters(&fronts));
            b.macro_step(
                MacroKind::LemmaT,
                parts.w3off(),
                parts.w3[..r].to_vec(),
                to.clone(),
            )?;
            let tail = parts.w3[r..].to_vec();
            parts.w3 = to;
            parts.w3.extend(tail);
        }
        let j = fronts[0];

        // Move e_i left to sit right after t_ij.
        let e_pos = parts.w3off() + parts.w3.len();
        for q in 0..parts.w3.len() - 1 {
            let Letter::T(a, bb) = parts.w3[parts.w3.len() - 1 - q] else { unreachable!() };
            debug_assert!(a != i && bb != i);
            b.rel(RelationId::R(6), Subs::ijk(a, bb, i), e_pos - 1 - q, Dir::Forward)?;
        }
        let u4: Vec<Letter> = parts.w3[1..].to_vec();

        let pp = eval_z_pairs(n, &parts.u2);
        let zoff = parts.zoff();
        if pp.preimage(i).is_none() {
            // u2 t_ij e_i ~ u2 e_i t_ij e_i ~ u2 e_i ~ u2
            let grow = self.introduce_e(&parts.u2, i, AbsorbMode::Appended)?;
            b.embed(&grow, zoff)?;
            b.rel(
                RelationId::R(8),
                Subs::ijk(i, j, i),
                zoff + 3 * parts.u2.len(),
                Dir::Forward,
            )?;
            b.embed(&grow.reversed(), zoff)?;
            parts.w3 = u4;
        } else if pp.preimage(j).is_none() {
            // u2 t_ij e_i ~ u2 e_j t_ij e_i = u2 z_ji
            let grow = self.introduce_e(&parts.u2, j, AbsorbMode::Appended)?;
            b.embed(&grow, zoff)?;
            parts.u2.push((j, i));
            parts.w3 = u4;
            self.canonicalize_u2(parts, b)?;
        } else {
            // both preimages exist: pull the t through u2 backwards, then
            // absorb the freed e_i
            let k = pp.preimage(i).expect("checked");
            let l = pp.preimage(j).expect("checked");
            let (tw, out) = gadgets::t_past_zword(n, k, l, &parts.u2)?;
            debug_assert_eq!(Letter::t(out.0, out.1), Letter::t(i, j));
            b.embed(&tw.reversed(), zoff)?;
            parts.w1.push(Letter::t(k, l));
            let (out, cert) = eabsorb::absorb_e(n, &parts.u2, i, AbsorbMode::Appended)?;
            b.embed(&cert, parts.zoff())?;
            parts.u2 = out;
            parts.w3 = u4;
            self.canonicalize_u2(parts, b)?;
        }
        Ok(())
    }

    /// Certificate introducing a redundant `e_x` next to `u2`: appended
    /// when `x` is outside the codomain, prepended when outside the
    /// domain. Built by reversing the absorption, bridging over any kill
    /// pairs it repartnered on the way.
    fn introduce_e(
        &mut self,
        u2: &ZWord,
        x: usize,
        mode: AbsorbMode,
    ) -> Result<Certificate> {
        let n = self.n;
        let (out, intro) = eabsorb::absorb_e(n, u2, x, mode)?;
        let mut b = CertBuilder::new(et_expansion(n, u2));
        if &out != u2 {
            let bridge = self.insn_cert_pairs(u2, &out)?;
            b.embed(&bridge, 0)?;
        }
        b.embed(&intro.reversed(), 0)?;
        Ok(b.finish())
    }

    /// Stable-sorts `w3` so letters touching `i` come first (keyed by
    /// their other subscript), by adjacent R4 swaps; collapses duplicate
    /// `t_{i l}` letters with R3.
    fn sort_w3_for(&mut self, parts: &mut Parts, b: &mut CertBuilder, i: usize) -> Result<()> {
        let w3off = parts.w3off();
        let key = |l: &Letter, original: usize| -> (usize, usize, usize) {
            match l {
                Letter::T(a, bb) if *a == i => (0, *bb, original),
                Letter::T(a, bb) if *bb == i => (0, *a, original),
                _ => (1, 0, original),
            }
        };
        // Bubble sort; the original index keeps non-i letters stable.
        let mut keyed: Vec<(Letter, (usize, usize, usize))> = parts
            .w3
            .iter()
            .enumerate()
            .map(|(idx, l)| (*l, key(l, idx)))
            .collect();
        loop {
            let mut swapped = false;
            for q in 1..keyed.len() {
                let (kl, kr) = (keyed[q - 1].1, keyed[q].1);
                let left_key = (kl.0, kl.1, if kl.0 == 0 { 0 } else { kl.2 });
                let right_key = (kr.0, kr.1, if kr.0 == 0 { 0 } else { kr.2 });
                if left_key > right_key {
                    let (Letter::T(a, bb), Letter::T(c, d)) =
                        (keyed[q - 1].0, keyed[q].0)
                    else {
                        unreachable!()
                    };
                    b.rel(
                        RelationId::R(4),
                        Subs::ijkl(a, bb, c, d),
                        w3off + q - 1,
                        Dir::Forward,
                    )?;
                    keyed.swap(q - 1, q);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        parts.w3 = keyed.into_iter().map(|(l, _)| l).collect();
        // Collapse duplicate i-letters (now adjacent).
        let mut q = 0;
        while q + 1 < parts.w3.len() {
            if parts.w3[q] == parts.w3[q + 1] {
                if let Letter::T(a, bb) = parts.w3[q] {
                    if a == i || bb == i {
                        b.rel(RelationId::R(3), Subs::ij(a, bb), w3off + q, Dir::Forward)?;
                        parts.w3.remove(q);
                        continue;
                    }
                }
            }
            q += 1;
        }
        Ok(())
    }

    /// Rewrites `u2` to the canonical word for its image.
    fn canonicalize_u2(&mut self, parts: &mut Parts, b: &mut CertBuilder) -> Result<()> {
        let target = z_pairs_for(&eval_z_pairs(self.n, &parts.u2))?;
        if target == parts.u2 {
            return Ok(());
        }
        let cert = self.insn_cert_pairs(&parts.u2, &target)?;
        b.embed(&cert, parts.zoff())?;
        parts.u2 = target;
        Ok(())
    }

    // ----- stage 2: sharpen the t-parts to kernel and cokernel -------------

    fn stage_tut1(
        &mut self,
        mut parts: Parts,
        mut b: CertBuilder,
        stats: &mut NfStats,
    ) -> Result<(Parts, CertBuilder)> {
        let n = self.n;
        let image = eval_phi(b.word())?;
        let mut lambda = equivalence_of_t_letters(n, &parts.w1);
        let mut rho = equivalence_of_t_letters(n, &parts.w3);
        // Normalise both t-parts to canonical class words.
        let lam_letters = canonical_t_word(&lambda).letters().to_vec();
        b.macro_step(MacroKind::LemmaT, 0, parts.w1.clone(), lam_letters.clone())?;
        parts.w1 = lam_letters;
        let rho_letters = canonical_t_word(&rho).letters().to_vec();
        b.macro_step(MacroKind::LemmaT, parts.w3off(), parts.w3.clone(), rho_letters.clone())?;
        parts.w3 = rho_letters;

        stats.tut1_k.push(lambda.class_count() + rho.class_count());
        loop {
            let pp = eval_z_pairs(n, &parts.u2);
            let dom = pp.dom();
            let mut condition: Option<(bool, usize, usize)> = None;
            'outer: for (ai, &a) in dom.iter().enumerate() {
                for &bb in &dom[ai + 1..] {
                    let (c, d) = (pp.apply(a).unwrap(), pp.apply(bb).unwrap());
                    if lambda.are_related(a, bb) && !rho.are_related(c, d) {
                        condition = Some((true, a, bb));
                        break 'outer;
                    }
                }
            }
            if condition.is_none() {
                'outer2: for (ai, &a) in dom.iter().enumerate() {
                    for &bb in &dom[ai + 1..] {
                        let (c, d) = (pp.apply(a).unwrap(), pp.apply(bb).unwrap());
                        if !lambda.are_related(a, bb) && rho.are_related(c, d) {
                            condition = Some((false, a, bb));
                            break 'outer2;
                        }
                    }
                }
            }
            let Some((coarsen_rho, a, bb)) = condition else { break };
            let (c, d) = (pp.apply(a).unwrap(), pp.apply(bb).unwrap());
            if coarsen_rho {
                // t_lam ~ t_lam t_ab ; t_ab u ~ u t_cd ; t_cd t_rho ~ t_kappa
                let mut to = parts.w1.clone();
                to.push(Letter::t(a, bb));
                b.macro_step(MacroKind::LemmaT, 0, parts.w1.clone(), to)?;
                let (tw, out) = gadgets::t_past_zword(n, a, bb, &parts.u2)?;
                debug_assert_eq!(Letter::t(out.0, out.1), Letter::t(c, d));
                b.embed(&tw, parts.w1.len())?;
                let kappa = rho.join(&Equivalence::from_pairs(n, &[(c, d)]))?;
                let kappa_letters = canonical_t_word(&kappa).letters().to_vec();
                let mut from = alloc::vec![Letter::t(c, d)];
                from.extend(parts.w3.iter().copied());
                b.macro_step(MacroKind::LemmaT, parts.w3off(), from, kappa_letters.clone())?;
                parts.w3 = kappa_letters;
                rho = kappa;
            } else {
                // t_rho ~ t_cd t_rho ; u t_cd ~ t_ab u ; t_lam t_ab ~ t_kappa
                let mut to = alloc::vec![Letter::t(c, d)];
                to.extend(parts.w3.iter().copied());
                b.macro_step(MacroKind::LemmaT, parts.w3off(), parts.w3.clone(), to)?;
                let (tw, out) = gadgets::t_past_zword(n, a, bb, &parts.u2)?;
                debug_assert_eq!(Letter::t(out.0, out.1), Letter::t(c, d));
                b.embed(&tw.reversed(), parts.w1.len())?;
                let kappa = lambda.join(&Equivalence::from_pairs(n, &[(a, bb)]))?;
                let kappa_letters = canonical_t_word(&kappa).letters().to_vec();
                let mut from = parts.w1.clone();
                from.push(Letter::t(a, bb));
                b.macro_step(MacroKind::LemmaT, 0, from, kappa_letters.clone())?;
                parts.w1 = kappa_letters;
                lambda = kappa;
            }
            let k = lambda.class_count() + rho.class_count();
            assert!(
                k < *stats.tut1_k.last().unwrap(),
                "sharpening must strictly decrease k"
            );
            stats.tut1_k.push(k);
        }
        assert_eq!(lambda, image.ker(), "sharpening ends at the kernel");
        assert_eq!(rho, image.coker(), "sharpening ends at the cokernel");
        Ok((parts, b))
    }

    // ----- stage 3: reduce the middle factor to the rank of the image ------

    fn stage_tut2(
        &mut self,
        mut parts: Parts,
        mut b: CertBuilder,
        stats: &mut NfStats,
    ) -> Result<(Parts, CertBuilder)> {
        let n = self.n;
        let epsilon = equivalence_of_t_letters(n, &parts.w1);
        let image = eval_phi(b.word())?;
        let target_rank = image.rank();
        stats.tut2_rank.push(eval_z_pairs(n, &parts.u2).rank());
        loop {
            let pp = eval_z_pairs(n, &parts.u2);
            if pp.rank() == target_rank {
                break;
            }
            assert!(pp.rank() > target_rank, "middle rank can never drop too far");
            // First kernel class meeting the domain at least twice.
            let class = epsilon
                .classes()
                .into_iter()
                .find(|class| class.iter().filter(|&&x| pp.apply(x).is_some()).count() >= 2)
                .expect("some class repeats while the rank is too big");
            let in_dom: Vec<usize> =
                class.iter().copied().filter(|&x| pp.apply(x).is_some()).collect();
            let (i, j) = (in_dom[0], in_dom[1]);
            let (k, l) = (pp.apply(i).unwrap(), pp.apply(j).unwrap());

            let mut to = parts.w1.clone();
            to.push(Letter::t(i, j));
            b.macro_step(MacroKind::LemmaT, 0, parts.w1.clone(), to)?;
            b.rel(RelationId::R(7), Subs::ijk(i, j, i), parts.w1.len(), Dir::Backward)?;
            let (tw, out) = gadgets::t_past_zword(n, i, j, &parts.u2)?;
            debug_assert_eq!(Letter::t(out.0, out.1), Letter::t(k, l));
            b.embed(&tw, parts.w1.len() + 2)?;
            // absorb t_kl into t_eta and t_ij into t_eps
            let mut from = alloc::vec![Letter::t(k, l)];
            from.extend(parts.w3.iter().copied());
            b.macro_step(
                MacroKind::LemmaT,
                parts.w3off() + 2,
                from,
                parts.w3.clone(),
            )?;
            let mut from = parts.w1.clone();
            from.push(Letter::t(i, j));
            b.macro_step(MacroKind::LemmaT, 0, from, parts.w1.clone())?;
            // the freed e_i cuts strand i on the input side
            let (out, cert) = eabsorb::absorb_e(n, &parts.u2, i, AbsorbMode::Prepended)?;
            b.embed(&cert, parts.w1.len())?;
            parts.u2 = out;
            self.canonicalize_u2(&mut parts, &mut b)?;
            let rank = eval_z_pairs(n, &parts.u2).rank();
            assert_eq!(
                rank + 1,
                *stats.tut2_rank.last().unwrap(),
                "each round reduces the middle rank by exactly one"
            );
            stats.tut2_rank.push(rank);
        }
        Ok((parts, b))
    }

    // ----- stage 4: align the middle factor with the minimum choice --------

    fn stage_tut3(
        &mut self,
        nf: &NormalForm,
        mut parts: Parts,
        mut b: CertBuilder,
        stats: &mut NfStats,
    ) -> Result<(Parts, CertBuilder)> {
        let n = self.n;
        let epsilon = &nf.epsilon;
        let eta = &nf.eta;
        let rank = nf.alpha.rank();

        let current_pairing = |pp: &PartialPermutation| -> Vec<(usize, usize, usize, usize)> {
            // (a_m, b_m, c_m, d_m) per transversal class, in alpha order
            nf.alpha
                .pairs()
                .iter()
                .map(|&(a, bm)| {
                    let class = epsilon.classes().into_iter().find(|c| c.contains(&a)).unwrap();
                    let mut hits = class.iter().copied().filter(|&x| pp.apply(x).is_some());
                    let c = hits.next().expect("transversal class meets the domain");
                    debug_assert!(hits.next().is_none(), "rank already matches");
                    let d = pp.apply(c).unwrap();
                    debug_assert!(eta.are_related(d, bm));
                    (a, bm, c, d)
                })
                .collect()
        };
        let k_of = |pairing: &[(usize, usize, usize, usize)]| -> usize {
            pairing.iter().filter(|&&(a, _, c, _)| a == c).count()
                + pairing.iter().filter(|&&(_, bm, _, d)| bm == d).count()
        };

        let mut pairing = current_pairing(&eval_z_pairs(n, &parts.u2));
        stats.tut3_k.push(k_of(&pairing));
        while *stats.tut3_k.last().unwrap() < 2 * rank {
            if let Some(&(a, _, c, _)) = pairing.iter().find(|&&(a, _, c, _)| a != c) {
                // Domain fix: u ~ z_ac z_ca u, absorb e_a t_ac into t_eps.
                // The kill pair enters as a redundant e_a (a is outside the
                // domain), which then splits into z_ac z_ca.
                let intro = self.introduce_e(&parts.u2, a, AbsorbMode::Prepended)?;
                b.embed(&intro, parts.zoff())?;
                b.embed(&gadgets::ez_iii(n, a, c)?.reversed(), parts.zoff())?;
                b.embed(&gadgets::ez_i_left(n, c, a)?, parts.zoff() + 2)?;
                // word now: w1 [e_a t_ac] z_ca u2 w3
                let mut to = parts.w1.clone();
                to.push(Letter::t(a, c));
                b.macro_step(MacroKind::LemmaT, 0, parts.w1.clone(), to)?;
                b.rel(RelationId::R(7), Subs::ijk(a, c, a), parts.w1.len(), Dir::Forward)?;
                let mut from = parts.w1.clone();
                from.push(Letter::t(a, c));
                b.macro_step(MacroKind::LemmaT, 0, from, parts.w1.clone())?;
                parts.u2.insert(0, (c, a));
                self.canonicalize_u2(&mut parts, &mut b)?;
            } else {
                let &(_, bm, _, d) =
                    pairing.iter().find(|&&(_, bm, _, d)| bm != d).expect("k < 2r");
                // Codomain fix: u ~ u z_bd z_db, absorb t_db e_b into t_eta.
                let intro = self.introduce_e(&parts.u2, bm, AbsorbMode::Appended)?;
                let zlen = parts.u2.len();
                b.embed(&intro, parts.zoff())?;
                b.embed(&gadgets::ez_iii(n, bm, d)?.reversed(), parts.zoff() + 3 * zlen)?;
                b.embed(&gadgets::ez_i_right(n, bm, d)?, parts.zoff() + 3 * zlen)?;
                // word now: w1 u2 [z_bd t_db e_b] w3
                let mut to = alloc::vec![Letter::t(bm, d)];
                to.extend(parts.w3.iter().copied());
                b.macro_step(
                    MacroKind::LemmaT,
                    parts.zoff() + 3 * zlen + 5,
                    parts.w3.clone(),
                    to,
                )?;
                b.rel(
                    RelationId::R(7),
                    Subs::ijk(bm, d, bm),
                    parts.zoff() + 3 * zlen + 3,
                    Dir::Forward,
                )?;
                let mut from = alloc::vec![Letter::t(bm, d)];
                from.extend(parts.w3.iter().copied());
                b.macro_step(
                    MacroKind::LemmaT,
                    parts.zoff() + 3 * zlen + 3,
                    from,
                    parts.w3.clone(),
                )?;
                parts.u2.push((bm, d));
                self.canonicalize_u2(&mut parts, &mut b)?;
            }
            pairing = current_pairing(&eval_z_pairs(n, &parts.u2));
            let k = k_of(&pairing);
            assert_eq!(
                k,
                *stats.tut3_k.last().unwrap() + 1,
                "each alignment round gains exactly one endpoint"
            );
            stats.tut3_k.push(k);
        }
        debug_assert_eq!(parts.u2, z_pairs_for(&nf.alpha)?);
        Ok((parts, b))
    }
}

fn kill_partner(i: usize) -> usize {
    if i == 1 {
        2
    } else {
        1
    }
}
