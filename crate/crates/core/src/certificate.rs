//! Replayable rewrite certificates: explicit sequences of relation
//! applications witnessing that two words are congruent.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::eval::eval_word;
use crate::relations::{apply_relation, materialize, Dir, RelationId, Subs};
use crate::words::{Alphabet, Letter, Word};

/// The two permitted coarse steps. Everything else is an elementary
/// relation application.
///
/// `LemmaT` covers equalities of `T*`-words with equal image (the
/// semilattice presentation is quoted, not re-proved); `SymmGroup` covers
/// equalities of `S*`-words with equal image (likewise). Both are
/// validated by evaluation on replay and can optionally be elaborated into
/// elementary steps by bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacroKind {
    LemmaT,
    SymmGroup,
}

impl fmt::Display for MacroKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MacroKind::LemmaT => "LemmaT",
            MacroKind::SymmGroup => "SymmGroup",
        })
    }
}

/// A single rewrite step, applied at a letter position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Rel { id: RelationId, subs: Subs, pos: usize, dir: Dir },
    Macro { kind: MacroKind, pos: usize, from: Vec<Letter>, to: Vec<Letter> },
}

impl Step {
    fn reversed(&self) -> Step {
        match self {
            Step::Rel { id, subs, pos, dir } => {
                Step::Rel { id: *id, subs: *subs, pos: *pos, dir: dir.flip() }
            }
            Step::Macro { kind, pos, from, to } => {
                Step::Macro { kind: *kind, pos: *pos, from: to.clone(), to: from.clone() }
            }
        }
    }

    fn shifted(&self, offset: usize) -> Step {
        match self {
            Step::Rel { id, subs, pos, dir } => {
                Step::Rel { id: *id, subs: *subs, pos: pos + offset, dir: *dir }
            }
            Step::Macro { kind, pos, from, to } => Step::Macro {
                kind: *kind,
                pos: pos + offset,
                from: from.clone(),
                to: to.clone(),
            },
        }
    }
}

fn check_macro_letters(kind: MacroKind, letters: &[Letter]) -> Result<()> {
    let ok = match kind {
        MacroKind::LemmaT => letters.iter().all(|l| matches!(l, Letter::T(..))),
        MacroKind::SymmGroup => letters.iter().all(|l| matches!(l, Letter::S(_))),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(alloc::format!("{kind} macro sides must stay in its subalphabet")))
    }
}

/// Applies one step to `word`, validating it completely (including, for
/// macros, equality of the two sides' images).
pub fn apply_step(word: &Word, step: &Step) -> Result<Word> {
    match step {
        Step::Rel { id, subs, pos, dir } => {
            let inst = materialize(*id, *subs, word.degree())?;
            apply_relation(word, &inst, *pos, *dir)
        }
        Step::Macro { kind, pos, from, to } => {
            check_macro_letters(*kind, from)?;
            check_macro_letters(*kind, to)?;
            let expected_alphabet = match kind {
                MacroKind::LemmaT => Alphabet::Et,
                MacroKind::SymmGroup => Alphabet::Set,
            };
            if word.alphabet() != expected_alphabet {
                return Err(Error::Invalid(alloc::format!(
                    "{kind} macro applied to a {} word",
                    word.alphabet()
                )));
            }
            if *pos + from.len() > word.len()
                || word.letters()[*pos..*pos + from.len()] != *from.as_slice()
            {
                return Err(Error::PatternMismatch { pos: *pos });
            }
            let n = word.degree();
            let from_word = Word::new(n, word.alphabet(), from.clone())?;
            let to_word = Word::new(n, word.alphabet(), to.clone())?;
            if eval_word(&from_word)? != eval_word(&to_word)? {
                return Err(Error::Invalid(alloc::format!(
                    "{kind} macro sides have different images"
                )));
            }
            Ok(word.splice(*pos, from.len(), to))
        }
    }
}

/// A certificate: a start word, an ordered list of steps, and the end word
/// they produce. Replaying checks each step and that every intermediate
/// word evaluates to the same diagram as the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub start: Word,
    pub steps: Vec<Step>,
    pub end: Word,
}

impl Certificate {
    /// The empty certificate on `word`.
    pub fn identity(word: Word) -> Certificate {
        Certificate { start: word.clone(), steps: Vec::new(), end: word }
    }

    pub fn degree(&self) -> usize {
        self.start.degree()
    }

    /// Runs every step from `start`, checking validity, image preservation
    /// at each intermediate word, and that the result is exactly `end`.
    pub fn replay(&self) -> Result<()> {
        self.replay_words().map(|_| ())
    }

    /// Like [`replay`](Self::replay) but returns the word trace.
    pub fn replay_words(&self) -> Result<Vec<Word>> {
        let image = eval_word(&self.start)?;
        let mut words = Vec::with_capacity(self.steps.len() + 1);
        let mut current = self.start.clone();
        words.push(current.clone());
        for (idx, step) in self.steps.iter().enumerate() {
            current = apply_step(&current, step).map_err(|e| {
                Error::Invalid(alloc::format!("step {idx} failed: {e}"))
            })?;
            if eval_word(&current)? != image {
                return Err(Error::Invalid(alloc::format!(
                    "step {idx} changed the image"
                )));
            }
            words.push(current.clone());
        }
        if current != self.end {
            return Err(Error::Invalid(String::from("certificate end word mismatch")));
        }
        Ok(words)
    }

    /// The reverse certificate, from `end` back to `start`.
    pub fn reversed(&self) -> Certificate {
        Certificate {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(Step::reversed).collect(),
            end: self.start.clone(),
        }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn then(mut self, other: &Certificate) -> Result<Certificate> {
        if self.end != other.start {
            return Err(Error::Invalid(String::from(
                "certificate concatenation: junction words differ",
            )));
        }
        self.steps.extend(other.steps.iter().cloned());
        self.end = other.end.clone();
        Ok(self)
    }

    /// True if the certificate contains no macro steps.
    pub fn is_elementary(&self) -> bool {
        self.steps.iter().all(|s| matches!(s, Step::Rel { .. }))
    }
}

/// Incremental certificate construction: tracks the current word and
/// validates each step as it is appended.
#[derive(Debug, Clone)]
pub struct CertBuilder {
    start: Word,
    steps: Vec<Step>,
    word: Word,
}

impl CertBuilder {
    pub fn new(start: Word) -> CertBuilder {
        CertBuilder { word: start.clone(), steps: Vec::new(), start }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Applies an elementary relation step at `pos`.
    pub fn rel(&mut self, id: RelationId, subs: Subs, pos: usize, dir: Dir) -> Result<()> {
        let step = Step::Rel { id, subs, pos, dir };
        self.word = apply_step(&self.word, &step)?;
        self.steps.push(step);
        Ok(())
    }

    /// Applies a macro step; skipped entirely when `from == to`.
    pub fn macro_step(
        &mut self,
        kind: MacroKind,
        pos: usize,
        from: Vec<Letter>,
        to: Vec<Letter>,
    ) -> Result<()> {
        if from == to {
            return Ok(());
        }
        let step = Step::Macro { kind, pos, from, to };
        self.word = apply_step(&self.word, &step)?;
        self.steps.push(step);
        Ok(())
    }

    /// Splices a whole certificate in at `offset`: the current word must
    /// contain `cert.start` as the subword beginning there.
    pub fn embed(&mut self, cert: &Certificate, offset: usize) -> Result<()> {
        let len = cert.start.len();
        if offset + len > self.word.len()
            || self.word.letters()[offset..offset + len] != *cert.start.letters()
        {
            return Err(Error::Invalid(alloc::format!(
                "embed at {offset}: subword does not match certificate start"
            )));
        }
        for step in &cert.steps {
            let step = step.shifted(offset);
            self.word = apply_step(&self.word, &step)?;
            self.steps.push(step);
        }
        Ok(())
    }

    pub fn finish(self) -> Certificate {
        Certificate { start: self.start, steps: self.steps, end: self.word }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_replay_reverse() {
        let w = Word::parse(3, Alphabet::Et, "e1 e1 e2").unwrap();
        let mut b = CertBuilder::new(w.clone());
        b.rel(RelationId::R(1), Subs::only_i(1), 0, Dir::Forward).unwrap();
        b.rel(RelationId::R(2), Subs::ij(1, 2), 0, Dir::Forward).unwrap();
        let cert = b.finish();
        assert_eq!(cert.end.format(), "e2 e1");
        cert.replay().unwrap();
        let back = cert.reversed();
        assert_eq!(back.start.format(), "e2 e1");
        assert_eq!(back.end, w);
        back.replay().unwrap();
    }

    #[test]
    fn macro_steps_validate_images() {
        let w = Word::parse(3, Alphabet::Et, "t1,2 t1,3").unwrap();
        let mut b = CertBuilder::new(w);
        // t_12 t_13 and t_13 t_12 have the same image.
        b.macro_step(
            MacroKind::LemmaT,
            0,
            alloc::vec![Letter::t(1, 2), Letter::t(1, 3)],
            alloc::vec![Letter::t(1, 3), Letter::t(1, 2)],
        )
        .unwrap();
        let cert = b.finish();
        cert.replay().unwrap();

        // t_12 alone does not equal t_13: the macro must be rejected.
        let w = Word::parse(3, Alphabet::Et, "t1,2").unwrap();
        let mut b = CertBuilder::new(w);
        let err = b.macro_step(
            MacroKind::LemmaT,
            0,
            alloc::vec![Letter::t(1, 2)],
            alloc::vec![Letter::t(1, 3)],
        );
        assert!(err.is_err());
    }

    #[test]
    fn replay_rejects_tampered_certificates() {
        let w = Word::parse(3, Alphabet::Et, "e1 e1").unwrap();
        let mut b = CertBuilder::new(w);
        b.rel(RelationId::R(1), Subs::only_i(1), 0, Dir::Forward).unwrap();
        let mut cert = b.finish();
        cert.end = Word::parse(3, Alphabet::Et, "e2").unwrap();
        assert!(cert.replay().is_err());
    }
}
