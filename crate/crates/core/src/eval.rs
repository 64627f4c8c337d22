//! Evaluation homomorphisms from words onto diagrams, and the word-level
//! translations between the two presentations.

use alloc::vec::Vec;

use crate::diagram::PartitionDiagram;
use crate::error::{Error, Result};
use crate::generators;
use crate::words::{Alphabet, Letter, Word};

/// Image of a single letter under the relevant homomorphism.
pub fn eval_letter(n: usize, letter: Letter) -> Result<PartitionDiagram> {
    match letter {
        Letter::E(r) => generators::e(n, r),
        Letter::T(i, j) => generators::t(n, i, j),
        Letter::S(i) => generators::s(n, i),
        Letter::Ee => generators::e1(n),
        Letter::Tt => generators::tbar(n),
        Letter::F(i, j) => generators::f(n, i, j),
    }
}

/// Evaluates a word under the homomorphism matching its alphabet. The
/// empty word maps to the identity (only meaningful for the monoid
/// alphabets; callers that need a semigroup word must check emptiness).
pub fn eval_word(word: &Word) -> Result<PartitionDiagram> {
    let n = word.degree();
    let mut acc = PartitionDiagram::identity(n);
    for &letter in word.letters() {
        acc = acc.product(&eval_letter(n, letter)?)?;
    }
    Ok(acc)
}

/// The semigroup homomorphism `(E∪T)+ -> P_n \ S_n`. Rejects the empty
/// word: it does not belong to the free semigroup.
pub fn eval_phi(word: &Word) -> Result<PartitionDiagram> {
    if word.alphabet() != Alphabet::Et {
        return Err(Error::Invalid(alloc::string::String::from("eval_phi needs an E∪T word")));
    }
    if word.is_empty() {
        return Err(Error::Invalid(alloc::string::String::from(
            "the empty word is not a semigroup word over E∪T",
        )));
    }
    eval_word(word)
}

/// The monoid homomorphism `(S∪{e,t})* -> P_n`.
pub fn eval_big_phi(word: &Word) -> Result<PartitionDiagram> {
    if word.alphabet() != Alphabet::Set {
        return Err(Error::Invalid(alloc::string::String::from(
            "eval_big_phi needs an S∪{e,t} word",
        )));
    }
    eval_word(word)
}

/// The word `c_r = s_1 ... s_{r-1}` (empty for `r = 1`).
pub fn build_c(n: usize, r: usize) -> Result<Word> {
    if r == 0 || r > n {
        return Err(Error::BadSubscript(alloc::format!("c_{r} needs 1 <= r <= {n}")));
    }
    Word::new(n, Alphabet::Set, (1..r).map(Letter::S).collect())
}

pub(crate) fn c_letters(r: usize) -> Vec<Letter> {
    (1..r).map(Letter::S).collect()
}

pub(crate) fn c_inv_letters(r: usize) -> Vec<Letter> {
    (1..r).rev().map(Letter::S).collect()
}

/// `eps_r = c_r^{-1} e c_r`, which evaluates to the generator `e_r`.
pub fn build_eps(n: usize, r: usize) -> Result<Word> {
    if r == 0 || r > n {
        return Err(Error::BadSubscript(alloc::format!("eps_{r} needs 1 <= r <= {n}")));
    }
    Word::new(n, Alphabet::Set, eps_letters(r))
}

pub(crate) fn eps_letters(r: usize) -> Vec<Letter> {
    let mut out = c_inv_letters(r);
    out.push(Letter::Ee);
    out.extend(c_letters(r));
    out
}

/// `tau_ij = c_i^{-1} c_j^{-1} t c_j c_i` (with `i < j` canonically; the
/// notation is symmetric), which evaluates to the generator `t_ij`.
pub fn build_tau(n: usize, i: usize, j: usize) -> Result<Word> {
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::BadSubscript(alloc::format!(
            "tau_{i},{j} needs distinct subscripts in 1..={n}"
        )));
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    Word::new(n, Alphabet::Set, tau_letters(i, j))
}

pub(crate) fn tau_letters(i: usize, j: usize) -> Vec<Letter> {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let mut out = c_inv_letters(i);
    out.extend(c_inv_letters(j));
    out.push(Letter::Tt);
    out.extend(c_letters(j));
    out.extend(c_letters(i));
    out
}

/// ψ-image of a single `E∪T` letter.
pub(crate) fn psi_letter(letter: Letter) -> Vec<Letter> {
    match letter {
        Letter::E(r) => eps_letters(r),
        Letter::T(i, j) => tau_letters(i, j),
        _ => unreachable!("psi is defined on E∪T letters"),
    }
}

/// The letterwise substitution `ψ: (E∪T)+ -> (S∪{e,t})*` with
/// `e_r ↦ eps_r` and `t_ij ↦ tau_ij`. Satisfies `Φ(ψ(w)) = φ(w)`.
pub fn psi(word: &Word) -> Result<Word> {
    if word.alphabet() != Alphabet::Et {
        return Err(Error::Invalid(alloc::string::String::from("psi needs an E∪T word")));
    }
    let letters = word.letters().iter().flat_map(|&l| psi_letter(l)).collect();
    Word::new(word.degree(), Alphabet::Set, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators as gen;
    use rand::{Rng, SeedableRng};

    #[test]
    fn single_letters() {
        let w = Word::parse(3, Alphabet::Et, "e1").unwrap();
        assert_eq!(eval_phi(&w).unwrap(), gen::e(3, 1).unwrap());
        let z = Word::parse(3, Alphabet::Et, "z1,2").unwrap();
        assert_eq!(eval_phi(&z).unwrap(), gen::f(3, 1, 2).unwrap());
        let fig1 = Word::parse(3, Alphabet::Et, "t1,2 e1 t1,2").unwrap();
        assert_eq!(eval_phi(&fig1).unwrap(), gen::t(3, 1, 2).unwrap());
    }

    #[test]
    fn empty_word_cases() {
        let empty_set = Word::empty(3, Alphabet::Set);
        assert_eq!(eval_big_phi(&empty_set).unwrap(), PartitionDiagram::identity(3));
        let empty_et = Word::empty(3, Alphabet::Et);
        assert!(eval_phi(&empty_et).is_err());
        assert_eq!(eval_word(&empty_et).unwrap(), PartitionDiagram::identity(3));
    }

    #[test]
    fn nonempty_et_words_are_singular() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
        for _ in 0..200 {
            let w = crate::verify::random_word(4, Alphabet::Et, 1..=6, &mut rng);
            assert!(eval_phi(&w).unwrap().is_singular());
        }
    }

    #[test]
    fn c_words_evaluate_to_cycles() {
        for n in 2..=5 {
            for r in 1..=n {
                // c_r maps 1 -> r and m -> m-1 for 2 <= m <= r.
                let mut perm: Vec<usize> = (1..=n).collect();
                perm[0] = r;
                for m in 2..=r {
                    perm[m - 1] = m - 1;
                }
                let expected = gen::perm_diagram(n, &perm).unwrap();
                assert_eq!(eval_big_phi(&build_c(n, r).unwrap()).unwrap(), expected);
            }
        }
        assert!(build_c(4, 1).unwrap().is_empty());
    }

    #[test]
    fn eps_and_tau_evaluate_to_the_generators() {
        for n in 2..=5 {
            for r in 1..=n {
                assert_eq!(
                    eval_big_phi(&build_eps(n, r).unwrap()).unwrap(),
                    gen::e(n, r).unwrap(),
                    "eps_{r} at degree {n}"
                );
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    assert_eq!(
                        eval_big_phi(&build_tau(n, i, j).unwrap()).unwrap(),
                        gen::t(n, i, j).unwrap(),
                        "tau_{i},{j} at degree {n}"
                    );
                }
            }
        }
        assert_eq!(
            eval_big_phi(&build_eps(4, 3).unwrap()).unwrap(),
            gen::e(4, 3).unwrap()
        );
        assert_eq!(
            eval_big_phi(&build_tau(4, 2, 4).unwrap()).unwrap(),
            gen::t(4, 2, 4).unwrap()
        );
    }

    #[test]
    fn psi_commutes_with_evaluation_on_random_words() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
        for _ in 0..1000 {
            let w = crate::verify::random_word(4, Alphabet::Et, 1..=6, &mut rng);
            assert_eq!(
                eval_big_phi(&psi(&w).unwrap()).unwrap(),
                eval_phi(&w).unwrap(),
                "psi image mismatch for {w}"
            );
        }
    }

    #[test]
    fn psi_base_cases() {
        let e1 = Word::parse(4, Alphabet::Et, "e1").unwrap();
        assert_eq!(psi(&e1).unwrap().format(), "e");
        let t12 = Word::parse(4, Alphabet::Et, "t1,2").unwrap();
        assert_eq!(psi(&t12).unwrap().format(), "s1 t s1");
    }

    #[test]
    fn homomorphism_property_on_random_splits() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
        for alphabet in [Alphabet::Et, Alphabet::Set] {
            for _ in 0..300 {
                let w = crate::verify::random_word(4, alphabet, 2..=8, &mut rng);
                let cut = rng.gen_range(0..=w.len());
                let u = Word::new(4, alphabet, w.letters()[..cut].to_vec()).unwrap();
                let v = Word::new(4, alphabet, w.letters()[cut..].to_vec()).unwrap();
                assert_eq!(
                    eval_word(&w).unwrap(),
                    eval_word(&u).unwrap().product(&eval_word(&v).unwrap()).unwrap()
                );
            }
        }
    }
}
