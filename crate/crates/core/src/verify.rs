//! Brute-force oracles and the desk-scale verification suite: enumeration
//! of `P_n` by restricted growth strings, generation of the singular ideal,
//! factorisation, and exhaustive relation/word-problem checks.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::diagram::{PartitionDiagram, Point};
use crate::engine::{canonical_t_word, z_word_for, NormalForm, RewriteEngine};
use crate::error::{Error, Result};
use crate::eval::{build_eps, build_tau, eval_big_phi, eval_phi};
use crate::generators;
use crate::partial_perm::PartialPermutation;
use crate::relations::{instantiate, RelationFamily};
use crate::words::{Alphabet, Letter, Word};

/// Bell numbers by the Bell-triangle recurrence.
pub fn bell(m: usize) -> u128 {
    let mut row: Vec<u128> = alloc::vec![1];
    for _ in 0..m {
        let mut next = alloc::vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// All diagrams of `P_n`, each exactly once, by restricted growth strings
/// over the `2n` points in canonical order. Independent of the diagram
/// parser and canonicaliser, so it doubles as an oracle for both.
pub fn enumerate_pn(n: usize) -> Result<Vec<PartitionDiagram>> {
    if n == 0 || n > 6 {
        return Err(Error::Invalid(alloc::format!(
            "enumeration supported for degrees 1..=6, got {n}"
        )));
    }
    let points = 2 * n;
    let mut out = Vec::new();
    let mut rgs = alloc::vec![0usize; points];
    loop {
        let classes = rgs.iter().max().unwrap() + 1;
        let mut blocks: Vec<Vec<Point>> = alloc::vec![Vec::new(); classes];
        for (slot, &class) in rgs.iter().enumerate() {
            let point = Point { index: slot % n + 1, primed: slot >= n };
            blocks[class].push(point);
        }
        out.push(PartitionDiagram::new(n, blocks)?);
        // next restricted growth string
        let mut i = points;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for tail in rgs[i + 1..].iter_mut() {
                    *tail = 0;
                }
                break;
            }
        }
    }
}

/// All singular partial permutations of degree `n` (the ideal `I_n\S_n`).
pub fn enumerate_insn(n: usize) -> Vec<PartialPermutation> {
    PartialPermutation::enumerate(n)
        .into_iter()
        .filter(|pp| pp.rank() < n)
        .collect()
}

/// Uniform random word of a length drawn from `lengths`.
pub fn random_word(
    n: usize,
    alphabet: Alphabet,
    lengths: core::ops::RangeInclusive<usize>,
    rng: &mut impl Rng,
) -> Word {
    let mut letters: Vec<Letter> = Vec::new();
    match alphabet {
        Alphabet::Et => {
            for r in 1..=n {
                letters.push(Letter::E(r));
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    letters.push(Letter::t(i, j));
                }
            }
        }
        Alphabet::Set => {
            letters.push(Letter::Ee);
            letters.push(Letter::Tt);
            for i in 1..n {
                letters.push(Letter::S(i));
            }
        }
        Alphabet::F => {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    letters.push(Letter::F(i, j));
                }
            }
        }
    }
    let len = rng.gen_range(lengths);
    let chosen = (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
    Word::new(n, alphabet, chosen).expect("letters are in range")
}

/// Outcome of one verification check: instance count and failures (empty
/// means the check passed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub n: usize,
    pub instances: usize,
    pub failures: Vec<String>,
    pub seed: Option<u64>,
}

impl Report {
    fn new(check: &str, n: usize) -> Report {
        Report { check: String::from(check), n, instances: 0, failures: Vec::new(), seed: None }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Closure of the generator diagrams under the product equals the whole
/// singular ideal.
pub fn verify_generation(n: usize) -> Result<Report> {
    let mut report = Report::new("generation", n);
    let mut gens: Vec<PartitionDiagram> = Vec::new();
    for r in 1..=n {
        gens.push(generators::e(n, r)?);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            gens.push(generators::t(n, i, j)?);
        }
    }
    for g in &gens {
        if !g.is_singular() {
            report.failures.push(alloc::format!("generator {g} is a unit"));
        }
    }
    let mut closure: BTreeSet<PartitionDiagram> = gens.iter().cloned().collect();
    let mut frontier: Vec<PartitionDiagram> = gens.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for d in &frontier {
            for g in &gens {
                for prod in [d.product(g)?, g.product(d)?] {
                    if closure.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
            }
        }
        frontier = next;
    }
    report.instances = closure.len();
    let singular: BTreeSet<PartitionDiagram> =
        enumerate_pn(n)?.into_iter().filter(|d| d.is_singular()).collect();
    if closure != singular {
        report.failures.push(alloc::format!(
            "closure has {} elements, singular ideal has {}",
            closure.len(),
            singular.len()
        ));
    }
    Ok(report)
}

/// The explicit factorisation of a singular diagram: kernel word, minimum
/// partial permutation word, cokernel word.
pub fn factorize_diagram(d: &PartitionDiagram) -> Result<Word> {
    let nf = NormalForm::of_diagram(d)?;
    let eps = canonical_t_word(&nf.epsilon);
    let mid = z_word_for(&nf.alpha)?;
    let eta = canonical_t_word(&nf.eta);
    eps.concat(&mid)?.concat(&eta)
}

/// All relation instances of the named families check diagrammatically.
pub fn verify_relations(n: usize, families: &[RelationFamily]) -> Result<Report> {
    let mut report = Report::new("relations", n);
    for family in families {
        for inst in instantiate(&family.ids(), n) {
            report.instances += 1;
            if !inst.check_diagrammatically()? {
                report.failures.push(alloc::format!("{inst}"));
            }
        }
    }
    Ok(report)
}

/// Checks for the singular-ideal presentation: relation soundness, word
/// problem versus image equality (exhaustive over short words), certificate
/// replay, and normal-form completeness.
pub fn verify_presentation_singular(n: usize) -> Result<Report> {
    let mut report = Report::new("singular-presentation", n);
    let rels = verify_relations(n, &[RelationFamily::Singular, RelationFamily::ZWords])?;
    report.instances += rels.instances;
    report.failures.extend(rels.failures);

    // Exhaustive word-problem agreement at small lengths.
    let max_len = if n <= 2 { 4 } else { 2 };
    let words = all_words(n, Alphabet::Et, max_len);
    let mut engine = RewriteEngine::new(n)?;
    let mut by_image: Vec<(PartitionDiagram, Word)> = Vec::new();
    for w in &words {
        by_image.push((eval_phi(w)?, w.clone()));
    }
    for (iu, u) in words.iter().enumerate() {
        for (iv, v) in words.iter().enumerate() {
            report.instances += 1;
            let equal_images = by_image[iu].0 == by_image[iv].0;
            let (decided, cert) = engine.decide_sim(u, v)?;
            if decided != equal_images {
                report
                    .failures
                    .push(alloc::format!("decide_sim({u}, {v}) = {decided}"));
                continue;
            }
            if let Some(cert) = cert {
                if cert.start != *u || cert.end != *v {
                    report.failures.push(alloc::format!("certificate endpoints for ({u}, {v})"));
                }
            }
        }
    }
    // Replay each word's normal-form certificate once.
    for w in &words {
        let (_, cert) = engine.normal_form(w)?;
        if let Err(e) = cert.replay() {
            report.failures.push(alloc::format!("replay nf({w}): {e}"));
        }
    }

    // Normal-form completeness over the singular ideal.
    let singular: Vec<PartitionDiagram> =
        enumerate_pn(n)?.into_iter().filter(|d| d.is_singular()).collect();
    let mut triples = BTreeSet::new();
    for d in &singular {
        report.instances += 1;
        let nf = NormalForm::of_diagram(d)?;
        if nf.diagram() != *d {
            report.failures.push(alloc::format!("normal form of {d} does not assemble back"));
        }
        triples.insert(nf);
    }
    if triples.len() != singular.len() {
        report.failures.push(alloc::format!(
            "only {} distinct normal forms for {} singular diagrams",
            triples.len(),
            singular.len()
        ));
    }
    Ok(report)
}

/// Checks for the full presentation: relation soundness, the diagrammatic
/// claims for the conjugated generator words, and word-problem agreement.
pub fn verify_presentation_full(n: usize) -> Result<Report> {
    let mut report = Report::new("full-presentation", n);
    let rels = verify_relations(n, &[RelationFamily::Full])?;
    report.instances += rels.instances;
    report.failures.extend(rels.failures);

    for r in 1..=n {
        report.instances += 1;
        if eval_big_phi(&build_eps(n, r)?)? != generators::e(n, r)? {
            report.failures.push(alloc::format!("eps_{r} image"));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            report.instances += 1;
            if eval_big_phi(&build_tau(n, i, j)?)? != generators::t(n, i, j)? {
                report.failures.push(alloc::format!("tau_{i},{j} image"));
            }
        }
    }

    let max_len = if n <= 3 { 3 } else { 2 };
    let words = all_words(n, Alphabet::Set, max_len);
    let mut engine = RewriteEngine::new(n)?;
    for u in &words {
        for v in &words {
            report.instances += 1;
            let equal_images = eval_big_phi(u)? == eval_big_phi(v)?;
            let (decided, cert) = engine.decide_approx(u, v)?;
            if decided != equal_images {
                report
                    .failures
                    .push(alloc::format!("decide_approx({u}, {v}) = {decided}"));
                continue;
            }
            if let Some(cert) = cert {
                if cert.start != *u || cert.end != *v {
                    report
                        .failures
                        .push(alloc::format!("certificate endpoints for ({u}, {v})"));
                }
            }
        }
    }
    // Replay the per-word reduction certificates once each.
    for w in &words {
        if w.letters().iter().all(|l| matches!(l, Letter::S(_))) {
            continue;
        }
        let (_, cert) = engine.reduce_to_psi(w)?;
        if let Err(e) = cert.replay() {
            report.failures.push(alloc::format!("replay reduce({w}): {e}"));
        }
    }
    Ok(report)
}

/// Checks for the quoted `I_n \ S_n` presentation: relation soundness,
/// generation of the ideal by the `f_ij`, and bounded-search agreement on
/// small samples.
pub fn verify_insn(n: usize) -> Result<Report> {
    let mut report = Report::new("insn", n);
    let rels = verify_relations(n, &[RelationFamily::Insn])?;
    report.instances += rels.instances;
    report.failures.extend(rels.failures);

    // Closure of the f generators equals the singular partial permutations.
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            gens.push(generators::f(n, i, j)?);
        }
    }
    let mut closure: BTreeSet<PartitionDiagram> = gens.iter().cloned().collect();
    let mut frontier = gens.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for d in &frontier {
            for g in &gens {
                for prod in [d.product(g)?, g.product(d)?] {
                    if closure.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
            }
        }
        frontier = next;
    }
    report.instances += closure.len();
    let expected: BTreeSet<PartitionDiagram> = enumerate_insn(n)
        .iter()
        .map(generators::partial_perm_diagram)
        .collect();
    if closure != expected {
        report.failures.push(alloc::format!(
            "f-closure has {} elements, I_n\\S_n has {}",
            closure.len(),
            expected.len()
        ));
    }

    // Equal-image F-words are joined by bounded search, via canonical forms.
    let mut engine = RewriteEngine::new(n)?;
    let mut rng = crate::verify::seeded_rng(crate::DEFAULT_SEED);
    let samples = 30;
    for _ in 0..samples {
        report.instances += 1;
        let w = random_word(n, Alphabet::F, 1..=4, &mut rng);
        let pairs: Vec<(usize, usize)> = w
            .letters()
            .iter()
            .map(|l| match l {
                Letter::F(i, j) => (*i, *j),
                _ => unreachable!(),
            })
            .collect();
        let image = crate::engine::z_word_for(
            &crate::eval::eval_word(&w)?.as_partial_perm().expect("f words land in I_n"),
        );
        let Ok(canonical) = image else {
            continue; // full-rank image cannot happen for nonempty words
        };
        let u = expansion_word(n, &pairs);
        match engine.insn_transport(&u, &canonical) {
            Ok(cert) => {
                if let Err(e) = cert.replay() {
                    report.failures.push(alloc::format!("replay insn({w}): {e}"));
                }
            }
            Err(e) => report.failures.push(alloc::format!("insn({w}): {e}")),
        }
    }
    report.seed = Some(crate::DEFAULT_SEED);
    Ok(report)
}

fn expansion_word(n: usize, pairs: &[(usize, usize)]) -> Word {
    Word::new(
        n,
        Alphabet::Et,
        pairs.iter().flat_map(|&(i, j)| crate::words::z_letters(i, j)).collect(),
    )
    .expect("in range")
}

/// Deterministic RNG for all sampled checks.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Every word of length `1..=max_len` (and the empty word for monoid
/// alphabets) at degree `n`.
pub fn all_words(n: usize, alphabet: Alphabet, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = match alphabet {
        Alphabet::Et => {
            let mut ls: Vec<Letter> = (1..=n).map(Letter::E).collect();
            for i in 1..=n {
                for j in i + 1..=n {
                    ls.push(Letter::t(i, j));
                }
            }
            ls
        }
        Alphabet::Set => {
            let mut ls = alloc::vec![Letter::Ee, Letter::Tt];
            ls.extend((1..n).map(Letter::S));
            ls
        }
        Alphabet::F => {
            let mut ls = Vec::new();
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    ls.push(Letter::F(i, j));
                }
            }
            ls
        }
    };
    let mut out = Vec::new();
    if alphabet != Alphabet::Et {
        out.push(Word::empty(n, alphabet));
    }
    let mut layer: Vec<Vec<Letter>> = alloc::vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for &l in &letters {
                let mut word = prefix.clone();
                word.push(l);
                out.push(Word::new(n, alphabet, word.clone()).expect("in range"));
                next.push(word);
            }
        }
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        assert_eq!(bell(0), 1);
        assert_eq!(bell(4), 15);
        assert_eq!(bell(6), 203);
        assert_eq!(bell(8), 4140);
        assert_eq!(bell(10), 115975);
    }

    #[test]
    fn enumeration_counts_and_uniqueness() {
        assert_eq!(enumerate_pn(1).unwrap().len(), 2);
        for n in 1..=4 {
            let all = enumerate_pn(n).unwrap();
            assert_eq!(all.len() as u128, bell(2 * n));
            let set: BTreeSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
        }
    }

    #[test]
    fn generation_counts() {
        let r2 = verify_generation(2).unwrap();
        assert!(r2.passed(), "{:?}", r2.failures);
        assert_eq!(r2.instances, 13);
        let r3 = verify_generation(3).unwrap();
        assert!(r3.passed());
        assert_eq!(r3.instances, 197);
    }

    #[test]
    fn factorization_round_trips_exhaustively() {
        for n in 2..=3 {
            for d in enumerate_pn(n).unwrap() {
                if d.is_unit() {
                    continue;
                }
                let w = factorize_diagram(&d).unwrap();
                assert_eq!(eval_phi(&w).unwrap(), d, "factorization of {d}");
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let w = factorize_diagram(&generators::e(3, 1).unwrap()).unwrap();
        assert_eq!(w.format(), "e1 t1,2 e2 e2 t1,2 e1"); // z_12 z_21
        let w = factorize_diagram(&generators::t(3, 1, 2).unwrap()).unwrap();
        assert_eq!(w.format(), "t1,2 e2 t1,2 e1 e1 t1,2 e2 t1,2");
    }

    #[test]
    fn insn_closure_count_n3() {
        let report = verify_insn(3).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(enumerate_insn(3).len(), 28);
    }

    #[test]
    fn monotone_statistics_under_products_n3() {
        let all = enumerate_pn(3).unwrap();
        for a in &all {
            for b in &all {
                let ab = a.product(b).unwrap();
                assert!(ab.dom().iter().all(|x| a.dom().contains(x)));
                assert!(ab.codom().iter().all(|x| b.codom().contains(x)));
                assert!(a.ker().refines(&ab.ker()));
                assert!(b.coker().refines(&ab.coker()));
            }
        }
    }

    #[test]
    fn rank_bound_under_triple_products_n3() {
        // rank(a b c) <= rank(b), checked through the product table.
        let all = enumerate_pn(3).unwrap();
        let index: alloc::collections::BTreeMap<&PartitionDiagram, usize> =
            all.iter().zip(0..).collect();
        let mut table = alloc::vec![alloc::vec![0usize; all.len()]; all.len()];
        for (ia, a) in all.iter().enumerate() {
            for (ib, b) in all.iter().enumerate() {
                table[ia][ib] = index[&a.product(b).unwrap()];
            }
        }
        let ranks: Vec<usize> = all.iter().map(|d| d.rank()).collect();
        for ia in 0..all.len() {
            for ib in 0..all.len() {
                let ab = table[ia][ib];
                for ic in 0..all.len() {
                    assert!(ranks[table[ab][ic]] <= ranks[ib]);
                }
            }
        }
    }
}
