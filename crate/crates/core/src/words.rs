//! Words over the three presentation alphabets.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Which free monoid/semigroup a word lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alphabet {
    /// `E ∪ T = {e_r} ∪ {t_ij}` — the singular-ideal presentation.
    Et,
    /// `S ∪ {e,t} = {s_i} ∪ {e, t}` — the full-monoid presentation.
    Set,
    /// `F = {f_ij : i != j}` — the symmetric-inverse-monoid presentation.
    F,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Et => "et",
            Alphabet::Set => "set",
            Alphabet::F => "f",
        })
    }
}

/// A single letter. `T(i,j)` is stored with `i < j` (the notation is
/// symmetric); `F(i,j)` keeps its order (`f_ij != f_ji`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E(usize),
    T(usize, usize),
    S(usize),
    /// The distinguished letter `e` of the full presentation.
    Ee,
    /// The distinguished letter `t` of the full presentation.
    Tt,
    F(usize, usize),
}

impl Letter {
    /// Normalised `t_ij` letter.
    pub fn t(i: usize, j: usize) -> Letter {
        if i < j {
            Letter::T(i, j)
        } else {
            Letter::T(j, i)
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Letter::E(_) | Letter::T(..) => Alphabet::Et,
            Letter::S(_) | Letter::Ee | Letter::Tt => Alphabet::Set,
            Letter::F(..) => Alphabet::F,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let bad = |x: usize| x == 0 || x > n;
        let ok = match *self {
            Letter::E(r) => !bad(r),
            Letter::T(i, j) => !bad(i) && !bad(j) && i < j,
            Letter::S(i) => i >= 1 && i + 1 <= n,
            Letter::Ee | Letter::Tt => n >= 2,
            Letter::F(i, j) => !bad(i) && !bad(j) && i != j,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadSubscript(alloc::format!("letter {self} invalid at degree {n}")))
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::E(r) => write!(f, "e{r}"),
            Letter::T(i, j) => write!(f, "t{i},{j}"),
            Letter::S(i) => write!(f, "s{i}"),
            Letter::Ee => write!(f, "e"),
            Letter::Tt => write!(f, "t"),
            Letter::F(i, j) => write!(f, "f{i},{j}"),
        }
    }
}

/// A word over one alphabet at a fixed degree. The empty word is
/// representable for every alphabet; `E∪T` entry points that require a
/// semigroup word reject it explicitly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    degree: usize,
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(degree: usize, alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        for letter in &letters {
            letter.check(degree)?;
            if letter.alphabet() != alphabet {
                return Err(Error::Invalid(alloc::format!(
                    "letter {letter} does not belong to alphabet {alphabet}"
                )));
            }
        }
        Ok(Word { degree, alphabet, letters })
    }

    pub fn empty(degree: usize, alphabet: Alphabet) -> Self {
        Word { degree, alphabet, letters: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Result<Word> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: rhs.degree });
        }
        if self.alphabet != rhs.alphabet {
            return Err(Error::Invalid(String::from("alphabet mismatch in concat")));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Ok(Word { degree: self.degree, alphabet: self.alphabet, letters })
    }

    /// Splices `replacement` over `self[pos .. pos+len]`.
    pub(crate) fn splice(&self, pos: usize, len: usize, replacement: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() - len + replacement.len());
        letters.extend_from_slice(&self.letters[..pos]);
        letters.extend_from_slice(replacement);
        letters.extend_from_slice(&self.letters[pos + len..]);
        Word { degree: self.degree, alphabet: self.alphabet, letters }
    }

    /// Canonical text form: whitespace-separated tokens, e.g. `e3 t1,2`.
    /// The empty word formats as the empty string.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&alloc::format!("{letter}"));
        }
        out
    }

    /// Parses whitespace-separated tokens. Accepted tokens: `eN`, `tI,J`
    /// (and `zI,J`, which expands to `eI tI,J eJ`) for `E∪T`; `sN`, `e`, `t`
    /// for `S∪{e,t}`; `fI,J` for `F`.
    pub fn parse(degree: usize, alphabet: Alphabet, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for raw in text.split_whitespace() {
            // Track byte offsets so errors are positioned.
            let at = text[offset..].find(raw).map(|d| offset + d).unwrap_or(offset);
            offset = at + raw.len();
            let parsed = parse_token(raw, alphabet)
                .map_err(|msg| Error::Parse { at, msg })?;
            letters.extend(parsed);
        }
        Word::new(degree, alphabet, letters)
    }
}

fn parse_token(token: &str, alphabet: Alphabet) -> core::result::Result<Vec<Letter>, String> {
    let one = |l: Letter| Ok(alloc::vec![l]);
    let pair = |rest: &str| -> core::result::Result<(usize, usize), String> {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| String::from("expected two comma-separated subscripts"))?;
        let i: usize = a.trim().parse().map_err(|_| String::from("bad subscript"))?;
        let j: usize = b.trim().parse().map_err(|_| String::from("bad subscript"))?;
        Ok((i, j))
    };
    match (alphabet, token) {
        (Alphabet::Set, "e") => return one(Letter::Ee),
        (Alphabet::Set, "t") => return one(Letter::Tt),
        _ => {}
    }
    let (head, rest) = token.split_at(1);
    match (alphabet, head) {
        (Alphabet::Et, "e") => {
            let r: usize = rest.parse().map_err(|_| String::from("bad subscript"))?;
            one(Letter::E(r))
        }
        (Alphabet::Et, "t") => {
            let (i, j) = pair(rest)?;
            if i == j {
                return Err(String::from("t requires distinct subscripts"));
            }
            one(Letter::t(i, j))
        }
        (Alphabet::Et, "z") => {
            let (i, j) = pair(rest)?;
            if i == j {
                return Err(String::from("z requires distinct subscripts"));
            }
            Ok(alloc::vec![Letter::E(i), Letter::t(i, j), Letter::E(j)])
        }
        (Alphabet::Set, "s") => {
            let i: usize = rest.parse().map_err(|_| String::from("bad subscript"))?;
            one(Letter::S(i))
        }
        (Alphabet::F, "f") => {
            let (i, j) = pair(rest)?;
            if i == j {
                return Err(String::from("f requires distinct subscripts"));
            }
            one(Letter::F(i, j))
        }
        _ => Err(alloc::format!("unknown token '{token}' for alphabet {alphabet}")),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// The derived word `z_ij = e_i t_ij e_j` as a letter triple.
pub fn z_letters(i: usize, j: usize) -> [Letter; 3] {
    [Letter::E(i), Letter::t(i, j), Letter::E(j)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let w = Word::parse(4, Alphabet::Et, "e3 t1,2 t2,4").unwrap();
        assert_eq!(w.format(), "e3 t1,2 t2,4");
        assert_eq!(Word::parse(4, Alphabet::Et, &w.format()).unwrap(), w);

        let v = Word::parse(4, Alphabet::Set, "s1 e t s3").unwrap();
        assert_eq!(v.format(), "s1 e t s3");

        let u = Word::parse(4, Alphabet::F, "f2,1 f1,4").unwrap();
        assert_eq!(u.format(), "f2,1 f1,4");

        let empty = Word::parse(3, Alphabet::Et, "  ").unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.format(), "");
    }

    #[test]
    fn t_subscripts_normalise_but_f_do_not() {
        let w = Word::parse(4, Alphabet::Et, "t4,2").unwrap();
        assert_eq!(w.letters(), &[Letter::T(2, 4)]);
        let v = Word::parse(4, Alphabet::F, "f4,2").unwrap();
        assert_eq!(v.letters(), &[Letter::F(4, 2)]);
    }

    #[test]
    fn z_tokens_expand() {
        let w = Word::parse(4, Alphabet::Et, "z1,3").unwrap();
        assert_eq!(w.format(), "e1 t1,3 e3");
    }

    #[test]
    fn degree_bounds_are_enforced() {
        assert!(Word::parse(3, Alphabet::Et, "e4").is_err());
        assert!(Word::parse(3, Alphabet::Set, "s3").is_err());
        assert!(Word::parse(3, Alphabet::Et, "t2,2").is_err());
        assert!(Word::parse(3, Alphabet::Set, "e1").is_err());
    }
}
