//! Canonical words over `T` for equivalences, and the quoted semilattice
//! rewriting (macro by default, elementary R3–R5 by bounded search).

use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate, MacroKind, Step};
use crate::equivalence::Equivalence;
use crate::error::{Error, Result};
use crate::eval::eval_word;
use crate::relations::apply_relation;
use crate::words::{Alphabet, Letter, Word};

use super::RewriteEngine;

/// Chain word for a set `A = {a_1 < ... < a_k}`: `t_{a1 a2} t_{a2 a3} ...`;
/// empty when `|A| <= 1`.
pub fn t_set_letters(a: &[usize]) -> Vec<Letter> {
    a.windows(2).map(|w| Letter::t(w[0], w[1])).collect()
}

/// The canonical word `t_eps = t_{A_1} ... t_{A_r}`, classes ordered by
/// minimum element. Evaluates to the idempotent block bijection of `eps`;
/// empty exactly when `eps` is trivial.
pub fn canonical_t_word(eq: &Equivalence) -> Word {
    let letters: Vec<Letter> =
        eq.classes().iter().flat_map(|class| t_set_letters(class)).collect();
    Word::new(eq.degree(), Alphabet::Et, letters).expect("canonical t-word is well-formed")
}

/// The equivalence generated by the subscripts of a `T*` word.
pub fn equivalence_of_t_letters(n: usize, letters: &[Letter]) -> Equivalence {
    let pairs: Vec<(usize, usize)> = letters
        .iter()
        .map(|l| match l {
            Letter::T(i, j) => (*i, *j),
            _ => panic!("equivalence of a non-T word"),
        })
        .collect();
    Equivalence::from_pairs(n, &pairs)
}

impl RewriteEngine {
    /// Certificate between two `T*` words with the same image: a single
    /// `LemmaT` macro (the semilattice presentation is quoted), or an
    /// elementary R3–R5 path when elaboration is enabled.
    pub fn semilattice_rewrite(&mut self, u: &Word, v: &Word) -> Result<Certificate> {
        for w in [u, v] {
            if w.alphabet() != Alphabet::Et
                || !w.letters().iter().all(|l| matches!(l, Letter::T(..)))
            {
                return Err(Error::Invalid(alloc::string::String::from(
                    "semilattice rewriting needs T* words",
                )));
            }
        }
        if eval_word(u)? != eval_word(v)? {
            return Err(Error::Invalid(alloc::string::String::from(
                "semilattice rewriting needs equal images",
            )));
        }
        let mut b = CertBuilder::new(u.clone());
        b.macro_step(MacroKind::LemmaT, 0, u.letters().to_vec(), v.letters().to_vec())?;
        let cert = b.finish();
        if self.opts.elaborate_lemma_t {
            self.elaborate_lemma_t(&cert)
        } else {
            Ok(cert)
        }
    }

    /// Replaces every `LemmaT` macro in `cert` by an elementary R3–R5 path
    /// found by bounded bidirectional search.
    pub fn elaborate_lemma_t(&mut self, cert: &Certificate) -> Result<Certificate> {
        let mut b = CertBuilder::new(cert.start.clone());
        for step in &cert.steps {
            match step {
                Step::Rel { id, subs, pos, dir } => b.rel(*id, *subs, *pos, *dir)?,
                Step::Macro { kind: MacroKind::LemmaT, pos, from, to } => {
                    let path = self.t_word_path(from, to)?;
                    for (id, subs, p, dir) in path {
                        b.rel(id, subs, pos + p, dir)?;
                    }
                }
                other => {
                    b.embed(
                        &Certificate {
                            start: b.word().clone(),
                            steps: alloc::vec![other.clone()],
                            end: crate::certificate::apply_step(b.word(), other)?,
                        },
                        0,
                    )?;
                }
            }
        }
        Ok(b.finish())
    }

    /// Bounded bidirectional search for an elementary R3–R5 path between
    /// two equal-image `T*` letter sequences.
    fn t_word_path(
        &mut self,
        from: &[Letter],
        to: &[Letter],
    ) -> Result<Vec<super::search::PathStep>> {
        let n = self.n;
        let opts = self.opts;
        let instances = self.t_instances().to_vec();
        let from = Word::new(n, Alphabet::Et, from.to_vec())?;
        let to = Word::new(n, Alphabet::Et, to.to_vec())?;
        super::search::bidirectional_path(&from, &to, &instances, opts, apply_relation)
            .ok_or_else(|| {
                Error::SearchBound(alloc::format!(
                    "no R3-R5 path from '{from}' to '{to}' within bounds"
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_words() {
        let eq = Equivalence::from_pairs(3, &[(1, 3)]);
        assert_eq!(canonical_t_word(&eq).format(), "t1,3");
        assert_eq!(canonical_t_word(&Equivalence::trivial(4)).format(), "");
        let eq = Equivalence::from_pairs(5, &[(1, 4), (4, 2), (3, 5)]);
        assert_eq!(canonical_t_word(&eq).format(), "t1,2 t2,4 t3,5");
    }

    #[test]
    fn canonical_word_matches_the_block_bijection_on_all_of_eq4() {
        for eq in Equivalence::enumerate(4) {
            let w = canonical_t_word(&eq);
            let expected = crate::generators::t_of_equivalence(&eq);
            assert_eq!(eval_word(&w).unwrap(), expected);
        }
    }

    #[test]
    fn macro_and_elaborated_rewrites() {
        let mut engine = RewriteEngine::new(3).unwrap();
        // t_12 t_12 -> t_12 (one R3 away)
        let u = Word::parse(3, Alphabet::Et, "t1,2 t1,2").unwrap();
        let v = Word::parse(3, Alphabet::Et, "t1,2").unwrap();
        let cert = engine.semilattice_rewrite(&u, &v).unwrap();
        cert.replay().unwrap();

        // t_12 t_23 -> t_23 t_31 (one R5 away)
        let u = Word::parse(3, Alphabet::Et, "t1,2 t2,3").unwrap();
        let v = Word::parse(3, Alphabet::Et, "t2,3 t1,3").unwrap();
        let cert = engine.semilattice_rewrite(&u, &v).unwrap();
        cert.replay().unwrap();

        // elaboration turns the macro into elementary steps
        let mut opts = EngineOptions::default();
        opts.elaborate_lemma_t = true;
        let mut engine = RewriteEngine::with_options(3, opts).unwrap();
        let u = Word::parse(3, Alphabet::Et, "t1,3 t1,2").unwrap();
        let v = canonical_t_word(&Equivalence::from_pairs(3, &[(1, 2), (2, 3)]));
        assert_eq!(v.format(), "t1,2 t2,3");
        let cert = engine.semilattice_rewrite(&u, &v).unwrap();
        assert!(cert.is_elementary());
        cert.replay().unwrap();
    }

    use super::super::EngineOptions;

    #[test]
    fn mismatched_images_are_rejected() {
        let mut engine = RewriteEngine::new(3).unwrap();
        let u = Word::parse(3, Alphabet::Et, "t1,2").unwrap();
        let v = Word::parse(3, Alphabet::Et, "t1,3").unwrap();
        assert!(engine.semilattice_rewrite(&u, &v).is_err());
    }
}
