//! The certificate-producing rewrite engine: reduction of `E∪T` words to
//! the canonical form `t_ε z_α t_η`, word-problem decisions for both
//! presentations, and the transport between them.

mod absorb;
mod conj;
mod eabsorb;
pub mod gadgets;
mod insn;
mod nf;
mod psigad;
mod search;
mod swords;
mod tword;
mod zword;

pub use absorb::Side;
pub use insn::ZWord;
pub use nf::{NfStats, NormalForm};
pub use tword::canonical_t_word;
pub use zword::z_word_for;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::relations::{instances_of, RelationId, RelationInstance};
use crate::words::Word;

/// Search bounds for the bounded breadth-first searches. All searches are
/// deterministic (fixed exploration order); exceeding a bound is a
/// reported error, never a guess.
#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    /// Elaborate `LemmaT` macros into elementary R3–R5 steps.
    pub elaborate_lemma_t: bool,
    /// Extra letters an intermediate word may grow beyond the longer
    /// endpoint during bounded searches.
    pub search_slack: usize,
    /// Node budget per bounded search.
    pub search_nodes: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { elaborate_lemma_t: false, search_slack: 3, search_nodes: 400_000 }
    }
}

/// The engine. Methods take `&mut self` only to fill internal memo tables;
/// results are deterministic functions of the inputs. Use one engine per
/// thread.
pub struct RewriteEngine {
    n: usize,
    opts: EngineOptions,
    f_instances: Option<Vec<RelationInstance>>,
    t_instances: Option<Vec<RelationInstance>>,
    set_instances: Option<Vec<RelationInstance>>,
    f_path_memo: BTreeMap<(ZWord, ZWord), Vec<insn::FStep>>,
    nf_memo: BTreeMap<Word, (nf::NormalForm, Certificate, nf::NfStats)>,
    psi_base_memo: BTreeMap<(RelationId, usize), Certificate>,
    reduce_memo: BTreeMap<Word, (Word, Certificate)>,
}

impl RewriteEngine {
    pub fn new(n: usize) -> Result<RewriteEngine> {
        Self::with_options(n, EngineOptions::default())
    }

    pub fn with_options(n: usize, opts: EngineOptions) -> Result<RewriteEngine> {
        if n < 2 {
            return Err(Error::Invalid(alloc::string::String::from(
                "the rewrite engine needs degree at least 2",
            )));
        }
        Ok(RewriteEngine {
            n,
            opts,
            f_instances: None,
            t_instances: None,
            set_instances: None,
            f_path_memo: BTreeMap::new(),
            nf_memo: BTreeMap::new(),
            psi_base_memo: BTreeMap::new(),
            reduce_memo: BTreeMap::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn options(&self) -> EngineOptions {
        self.opts
    }

    fn t_instances(&mut self) -> &[RelationInstance] {
        let n = self.n;
        self.t_instances
            .get_or_insert_with(|| {
                (3..=5).flat_map(|k| instances_of(RelationId::R(k), n)).collect()
            })
            .as_slice()
    }

    fn set_instances(&mut self) -> &[RelationInstance] {
        let n = self.n;
        self.set_instances
            .get_or_insert_with(|| {
                (11..=21).flat_map(|k| instances_of(RelationId::R(k), n)).collect()
            })
            .as_slice()
    }
}
