//! Permutation words over `S = {s_1, ..., s_{n-1}}`.

use alloc::vec::Vec;

use crate::words::Letter;

/// A permutation of `{1..n}`: `images[x-1]` is the image of `x`.
/// Words act left to right: the first letter applies first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Perm {
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` first, then `rhs`.
    pub fn compose(&self, rhs: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&y| rhs.apply(y)).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = alloc::vec![0; self.images.len()];
        for (x0, &y) in self.images.iter().enumerate() {
            images[y - 1] = x0 + 1;
        }
        Perm { images }
    }

    pub fn swap(n: usize, i: usize) -> Perm {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Perm { images }
    }

    /// Image of an `S*` word (non-`S` letters are rejected by the caller).
    pub fn of_word(n: usize, letters: &[Letter]) -> Perm {
        let mut p = Perm::identity(n);
        for &letter in letters {
            let Letter::S(i) = letter else {
                panic!("permutation of a non-S word");
            };
            p = p.compose(&Perm::swap(n, i));
        }
        p
    }
}

/// A word over `S` evaluating to `p`, produced by bubble-sorting the image
/// array with adjacent swaps. Descent-only sorting means a permutation
/// fixing `1..=k` pointwise yields a word avoiding `s_1..s_k`.
pub fn sword_for_perm(p: &Perm) -> Vec<Letter> {
    let n = p.degree();
    let mut arr: Vec<usize> = p.images().to_vec();
    let mut word = Vec::new();
    loop {
        let mut swapped = false;
        for m in 1..n {
            if arr[m - 1] > arr[m] {
                arr.swap(m - 1, m);
                word.push(Letter::S(m));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    word
}

pub fn reversed(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().copied().collect()
}
