//! The defining relations of the three presentations, materialised as
//! closed lists of concrete instances per degree.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::eval;
use crate::words::{z_letters, Alphabet, Letter, Word};

/// Identifier of a relation family member: `R1..R21`, `F1..F7`, `Z1..Z7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    R(u8),
    F(u8),
    Z(u8),
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationId::R(k) => write!(f, "R{k}"),
            RelationId::F(k) => write!(f, "F{k}"),
            RelationId::Z(k) => write!(f, "Z{k}"),
        }
    }
}

impl RelationId {
    pub fn parse(text: &str) -> Result<RelationId> {
        let (head, num) = text.split_at(1);
        let k: u8 = num
            .parse()
            .map_err(|_| Error::Invalid(alloc::format!("bad relation id '{text}'")))?;
        match head {
            "R" if (1..=21).contains(&k) => Ok(RelationId::R(k)),
            "F" if (1..=7).contains(&k) => Ok(RelationId::F(k)),
            "Z" if (1..=7).contains(&k) => Ok(RelationId::Z(k)),
            _ => Err(Error::Invalid(alloc::format!("bad relation id '{text}'"))),
        }
    }
}

/// Concrete subscript assignment. `v` distinguishes the equations of a
/// multi-equation display (e.g. `t^2 = t = tet = ts_1 = s_1t`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subs {
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub v: Option<usize>,
}

impl Subs {
    pub fn ij(i: usize, j: usize) -> Subs {
        Subs { i: Some(i), j: Some(j), ..Subs::default() }
    }

    pub fn ijk(i: usize, j: usize, k: usize) -> Subs {
        Subs { i: Some(i), j: Some(j), k: Some(k), ..Subs::default() }
    }

    pub fn ijkl(i: usize, j: usize, k: usize, l: usize) -> Subs {
        Subs { i: Some(i), j: Some(j), k: Some(k), l: Some(l), v: None }
    }

    pub fn only_i(i: usize) -> Subs {
        Subs { i: Some(i), ..Subs::default() }
    }

    pub fn variant(v: usize) -> Subs {
        Subs { v: Some(v), ..Subs::default() }
    }

    pub fn with_variant(mut self, v: usize) -> Subs {
        self.v = Some(v);
        self
    }

    /// `(name, value)` pairs in display order.
    pub fn entries(&self) -> Vec<(char, usize)> {
        let mut out = Vec::new();
        for (name, value) in
            [('i', self.i), ('j', self.j), ('k', self.k), ('l', self.l), ('v', self.v)]
        {
            if let Some(value) = value {
                out.push((name, value));
            }
        }
        out
    }
}

impl fmt::Display for Subs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (name, value)) in self.entries().iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}:{value}")?;
        }
        write!(f, "}}")
    }
}

/// A relation with concrete subscripts at a fixed degree: a pair of words
/// over the relation's alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub id: RelationId,
    pub subs: Subs,
    pub lhs: Word,
    pub rhs: Word,
}

impl RelationInstance {
    pub fn degree(&self) -> usize {
        self.lhs.degree()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.lhs.alphabet()
    }

    /// True iff both sides evaluate to the same diagram under the relevant
    /// homomorphism.
    pub fn check_diagrammatically(&self) -> Result<bool> {
        let lhs = eval::eval_word(&self.lhs)?;
        let rhs = eval::eval_word(&self.rhs)?;
        Ok(lhs == rhs)
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}: {} = {}", self.id, self.subs, self.lhs, self.rhs)
    }
}

/// Named groups of relation ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationFamily {
    /// R1–R10, the singular-ideal presentation over `E ∪ T`.
    Singular,
    /// R11–R21, the full-monoid presentation over `S ∪ {e,t}`.
    Full,
    /// F1–F7, the `I_n \ S_n` presentation.
    Insn,
    /// Z1–Z7, the F-relations transcribed onto the words `z_ij`.
    ZWords,
}

impl RelationFamily {
    pub fn ids(&self) -> Vec<RelationId> {
        match self {
            RelationFamily::Singular => (1..=10).map(RelationId::R).collect(),
            RelationFamily::Full => (11..=21).map(RelationId::R).collect(),
            RelationFamily::Insn => (1..=7).map(RelationId::F).collect(),
            RelationFamily::ZWords => (1..=7).map(RelationId::Z).collect(),
        }
    }
}

fn et(n: usize, letters: Vec<Letter>) -> Word {
    Word::new(n, Alphabet::Et, letters).expect("relation side is well-formed")
}

fn set(n: usize, letters: Vec<Letter>) -> Word {
    Word::new(n, Alphabet::Set, letters).expect("relation side is well-formed")
}

fn fw(n: usize, letters: Vec<Letter>) -> Word {
    Word::new(n, Alphabet::F, letters).expect("relation side is well-formed")
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadSubscript(String::from(msg)))
    }
}

fn distinct(xs: &[usize]) -> bool {
    xs.iter().all(|x| xs.iter().filter(|y| *y == x).count() == 1)
}

/// Builds the relation instance for the given id, subscripts, and degree,
/// enforcing every side condition.
pub fn materialize(id: RelationId, subs: Subs, n: usize) -> Result<RelationInstance> {
    use Letter::{Ee, Tt, E, F, S};
    need(n >= 2, "relations need degree at least 2")?;
    let in_range = |x: usize| x >= 1 && x <= n;
    let get = |o: Option<usize>, name: &str| {
        o.ok_or_else(|| Error::BadSubscript(alloc::format!("missing subscript {name}")))
    };
    let t = Letter::t;
    let (lhs, rhs) = match id {
        RelationId::R(1) => {
            let i = get(subs.i, "i")?;
            need(in_range(i), "i out of range")?;
            (et(n, alloc::vec![E(i), E(i)]), et(n, alloc::vec![E(i)]))
        }
        RelationId::R(2) => {
            let (i, j) = (get(subs.i, "i")?, get(subs.j, "j")?);
            need(in_range(i) && in_range(j) && i != j, "R2 needs distinct i,j")?;
            (et(n, alloc::vec![E(i), E(j)]), et(n, alloc::vec![E(j), E(i)]))
        }
        RelationId::R(3) => {
            let (i, j) = (get(subs.i, "i")?, get(subs.j, "j")?);
            need(in_range(i) && in_range(j) && i != j, "R3 needs distinct i,j")?;
            (et(n, alloc::vec![t(i, j), t(i, j)]), et(n, alloc::vec![t(i, j)]))
        }
        RelationId::R(4) => {
            let (i, j, k, l) =
                (get(subs.i, "i")?, get(subs.j, "j")?, get(subs.k, "k")?, get(subs.l, "l")?);
            need(
                in_range(i) && in_range(j) && in_range(k) && in_range(l) && i != j && k != l,
                "R4 needs i!=j and k!=l",
            )?;
            (
                et(n, alloc::vec![t(i, j), t(k, l)]),
                et(n, alloc::vec![t(k, l), t(i, j)]),
            )
        }
        RelationId::R(5) => {
            let (i, j, k) = (get(subs.i, "i")?, get(subs.j, "j")?, get(subs.k, "k")?);
            need(
                in_range(i) && in_range(j) && in_range(k) && distinct(&[i, j, k]),
                "R5 needs distinct i,j,k",
            )?;
            (
                et(n, alloc::vec![t(i, j), t(j, k)]),
                et(n, alloc::vec![t(j, k), t(k, i)]),
            )
        }
        RelationId::R(6) => {
            let (i, j, k) = (get(subs.i, "i")?, get(subs.j, "j")?, get(subs.k, "k")?);
            need(
                in_range(i) && in_range(j) && in_range(k) && i != j && k != i && k != j,
                "R6 needs k outside {i,j}",
            )?;
            (
                et(n, alloc::vec![t(i, j), E(k)]),
                et(n, alloc::vec![E(k), t(i, j)]),
            )
        }
        RelationId::R(7) => {
            let (i, j, k) = (get(subs.i, "i")?, get(subs.j, "j")?, get(subs.k, "k")?);
            need(
                in_range(i) && in_range(j) && i != j && (k == i || k == j),
                "R7 needs k in {i,j}",
            )?;
            (
                et(n, alloc::vec![t(i, j), E(k), t(i, j)]),
                et(n, alloc::vec![t(i, j)]),
            )
        }
        RelationId::R(8) => {
            let (i, j, k) = (get(subs.i, "i")?, get(subs.j, "j")?, get(subs.k, "k")?);
            need(
                in_range(i) && in_range(j) && i != j && (k == i || k == j),
                "R8 needs k in {i,j}",
            )?;
            (
                et(n, alloc::vec![E(k), t(i, j), E(k)]),
                et(n, alloc::vec![E(k)]),
            )
        }
        RelationId::R(9) => {
            let (i, j, k) = (get(subs.i, "i")?, get(subs.j, "j")?, get(subs.k, "k")?);
            need(
                in_range(i) && in_range(j) && in_range(k) && distinct(&[i, j, k]),
                "R9 needs distinct i,j,k",
            )?;
            (
                et(n, alloc::vec![E(k), t(k, i), E(i), t(i, j), E(j), t(j, k), E(k)]),
                et(n, alloc::vec![E(k), t(k, j), E(j), t(j, i), E(i), t(i, k), E(k)]),
            )
        }
        RelationId::R(10) => {
            let (i, j, k, l) =
                (get(subs.i, "i")?, get(subs.j, "j")?, get(subs.k, "k")?, get(subs.l, "l")?);
            need(
                in_range(i) && in_range(j) && in_range(k) && in_range(l)
                    && distinct(&[i, j, k, l]),
                "R10 needs distinct i,j,k,l",
            )?;
            (
                et(
                    n,
                    alloc::vec![
                        E(k), t(k, i), E(i), t(i, j), E(j), t(j, l), E(l), t(l, k), E(k)
                    ],
                ),
                et(
                    n,
                    alloc::vec![
                        E(k), t(k, l), E(l), t(l, i), E(i), t(i, j), E(j), t(j, k), E(k)
                    ],
                ),
            )
        }
        RelationId::R(11) => {
            let i = get(subs.i, "i")?;
            need(i >= 1 && i + 1 <= n, "s_i out of range")?;
            (set(n, alloc::vec![S(i), S(i)]), set(n, alloc::vec![]))
        }
        RelationId::R(12) => {
            let (i, j) = (get(subs.i, "i")?, get(subs.j, "j")?);
            need(
                i >= 1 && j + 1 <= n + 1 && i + 1 <= n && j + 1 <= n && i.abs_diff(j) > 1,
                "R12 needs |i-j| > 1",
            )?;
            (set(n, alloc::vec![S(i), S(j)]), set(n, alloc::vec![S(j), S(i)]))
        }
        RelationId::R(13) => {
            let (i, j) = (get(subs.i, "i")?, get(subs.j, "j")?);
            need(
                i >= 1 && i + 1 <= n && j >= 1 && j + 1 <= n && i.abs_diff(j) == 1,
                "R13 needs |i-j| = 1",
            )?;
            (
                set(n, alloc::vec![S(i), S(j), S(i)]),
                set(n, alloc::vec![S(j), S(i), S(j)]),
            )
        }
        RelationId::R(14) => match get(subs.v, "v")? {
            1 => (set(n, alloc::vec![Ee, Ee]), set(n, alloc::vec![Ee])),
            2 => (set(n, alloc::vec![Ee, Tt, Ee]), set(n, alloc::vec![Ee])),
            _ => return Err(Error::BadSubscript(String::from("R14 variant in {1,2}"))),
        },
        RelationId::R(15) => match get(subs.v, "v")? {
            1 => (set(n, alloc::vec![Tt, Tt]), set(n, alloc::vec![Tt])),
            2 => (set(n, alloc::vec![Tt, Ee, Tt]), set(n, alloc::vec![Tt])),
            3 => (set(n, alloc::vec![Tt, S(1)]), set(n, alloc::vec![Tt])),
            4 => (set(n, alloc::vec![S(1), Tt]), set(n, alloc::vec![Tt])),
            _ => return Err(Error::BadSubscript(String::from("R15 variant in {1..4}"))),
        },
        RelationId::R(16) => {
            let i = get(subs.i, "i")?;
            need(i >= 2 && i + 1 <= n, "R16 needs 2 <= i <= n-1")?;
            (set(n, alloc::vec![Ee, S(i)]), set(n, alloc::vec![S(i), Ee]))
        }
        RelationId::R(17) => {
            let i = get(subs.i, "i")?;
            need(i >= 3 && i + 1 <= n, "R17 needs 3 <= i <= n-1")?;
            (set(n, alloc::vec![Tt, S(i)]), set(n, alloc::vec![S(i), Tt]))
        }
        RelationId::R(18) => match get(subs.v, "v")? {
            1 => (
                set(n, alloc::vec![S(1), Ee, S(1), Ee]),
                set(n, alloc::vec![Ee, S(1), Ee, S(1)]),
            ),
            2 => (
                set(n, alloc::vec![Ee, S(1), Ee, S(1)]),
                set(n, alloc::vec![Ee, S(1), Ee]),
            ),
            _ => return Err(Error::BadSubscript(String::from("R18 variant in {1,2}"))),
        },
        RelationId::R(19) => {
            need(n >= 3, "R19 needs degree at least 3")?;
            (
                set(n, alloc::vec![Tt, S(2), Tt, S(2)]),
                set(n, alloc::vec![S(2), Tt, S(2), Tt]),
            )
        }
        RelationId::R(20) => {
            need(n >= 4, "R20 needs degree at least 4")?;
            let block = [S(2), S(3), S(1), S(2)];
            let mut lhs = alloc::vec![Tt];
            lhs.extend(block);
            lhs.push(Tt);
            lhs.extend(block);
            let mut rhs: Vec<Letter> = block.into();
            rhs.push(Tt);
            rhs.extend(block);
            rhs.push(Tt);
            (set(n, lhs), set(n, rhs))
        }
        RelationId::R(21) => {
            need(n >= 3, "R21 needs degree at least 3")?;
            let block = [S(2), S(1), Ee, S(1), S(2)];
            let mut lhs = alloc::vec![Tt];
            lhs.extend(block);
            let mut rhs: Vec<Letter> = block.into();
            rhs.push(Tt);
            (set(n, lhs), set(n, rhs))
        }
        RelationId::R(_) => {
            return Err(Error::Invalid(alloc::format!("unknown relation {id}")))
        }
        RelationId::F(k) | RelationId::Z(k) => {
            // F and Z share subscript schemes; Z sides are the expansions
            // z_ij = e_i t_ij e_j.
            let is_z = matches!(id, RelationId::Z(_));
            let gen: &dyn Fn(usize, usize) -> Vec<Letter> = if is_z {
                &|i, j| z_letters(i, j).into()
            } else {
                &|i, j| alloc::vec![F(i, j)]
            };
            let word = |parts: &[(usize, usize)]| -> Word {
                let letters: Vec<Letter> =
                    parts.iter().flat_map(|&(i, j)| gen(i, j)).collect();
                if is_z {
                    et(n, letters)
                } else {
                    fw(n, letters)
                }
            };
            let (i, j) = (get(subs.i, "i")?, get(subs.j, "j")?);
            need(in_range(i) && in_range(j) && i != j, "needs distinct i,j")?;
            match k {
                1 => (word(&[(i, j), (j, i), (i, j)]), word(&[(i, j)])),
                2 => match get(subs.v, "v")? {
                    1 => (word(&[(i, j), (i, j), (i, j)]), word(&[(i, j), (i, j)])),
                    2 => (word(&[(i, j), (i, j)]), word(&[(j, i), (j, i)])),
                    _ => return Err(Error::BadSubscript(String::from("variant in {1,2}"))),
                },
                3 => {
                    let (kk, l) = (get(subs.k, "k")?, get(subs.l, "l")?);
                    need(
                        in_range(kk) && in_range(l) && distinct(&[i, j, kk, l]),
                        "needs distinct i,j,k,l",
                    )?;
                    (word(&[(i, j), (kk, l)]), word(&[(kk, l), (i, j)]))
                }
                4 => {
                    let kk = get(subs.k, "k")?;
                    need(in_range(kk) && distinct(&[i, j, kk]), "needs distinct i,j,k")?;
                    (word(&[(i, j), (j, i)]), word(&[(i, kk), (kk, i)]))
                }
                5 => {
                    let kk = get(subs.k, "k")?;
                    need(in_range(kk) && distinct(&[i, j, kk]), "needs distinct i,j,k")?;
                    match get(subs.v, "v")? {
                        1 => (word(&[(i, j), (i, kk)]), word(&[(j, kk), (i, j)])),
                        2 => (word(&[(j, kk), (i, j)]), word(&[(i, kk), (j, kk)])),
                        _ => return Err(Error::BadSubscript(String::from("variant in {1,2}"))),
                    }
                }
                6 => {
                    let kk = get(subs.k, "k")?;
                    need(in_range(kk) && distinct(&[i, j, kk]), "needs distinct i,j,k")?;
                    (
                        word(&[(kk, i), (i, j), (j, kk)]),
                        word(&[(kk, j), (j, i), (i, kk)]),
                    )
                }
                7 => {
                    let (kk, l) = (get(subs.k, "k")?, get(subs.l, "l")?);
                    need(
                        in_range(kk) && in_range(l) && distinct(&[i, j, kk, l]),
                        "needs distinct i,j,k,l",
                    )?;
                    (
                        word(&[(kk, i), (i, j), (j, kk), (kk, l)]),
                        word(&[(kk, l), (l, i), (i, j), (j, l)]),
                    )
                }
                _ => return Err(Error::Invalid(alloc::format!("unknown relation {id}"))),
            }
        }
    };
    Ok(RelationInstance { id, subs, lhs, rhs })
}

/// Every admissible subscript assignment of `id` at degree `n`.
pub fn instances_of(id: RelationId, n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    let mut push = |subs: Subs| {
        if let Ok(inst) = materialize(id, subs, n) {
            out.push(inst);
        }
    };
    let all = 1..=n;
    match id {
        RelationId::R(1) | RelationId::R(11) | RelationId::R(16) | RelationId::R(17) => {
            for i in all {
                push(Subs::only_i(i));
            }
        }
        RelationId::R(2) => {
            for i in all.clone() {
                for j in (1..=n).filter(|&j| j != i) {
                    push(Subs::ij(i, j));
                }
            }
        }
        RelationId::R(3) => {
            for i in all.clone() {
                for j in i + 1..=n {
                    push(Subs::ij(i, j));
                }
            }
        }
        RelationId::R(4) => {
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in 1..=n {
                        for l in k + 1..=n {
                            push(Subs::ijkl(i, j, k, l));
                        }
                    }
                }
            }
        }
        RelationId::R(5) | RelationId::R(9) | RelationId::F(4) | RelationId::F(6)
        | RelationId::Z(4) | RelationId::Z(6) => {
            for_distinct_triples(n, |i, j, k| push(Subs::ijk(i, j, k)));
        }
        RelationId::R(6) => {
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in (1..=n).filter(|&k| k != i && k != j) {
                        push(Subs::ijk(i, j, k));
                    }
                }
            }
        }
        RelationId::R(7) | RelationId::R(8) => {
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in [i, j] {
                        push(Subs::ijk(i, j, k));
                    }
                }
            }
        }
        RelationId::R(10) | RelationId::F(3) | RelationId::F(7) | RelationId::Z(3)
        | RelationId::Z(7) => {
            for_distinct_quads(n, |i, j, k, l| push(Subs::ijkl(i, j, k, l)));
        }
        RelationId::R(12) => {
            for i in 1..=n.saturating_sub(1) {
                for j in i + 2..=n.saturating_sub(1) {
                    push(Subs::ij(i, j));
                }
            }
        }
        RelationId::R(13) => {
            for i in 1..=n.saturating_sub(2) {
                push(Subs::ij(i, i + 1));
            }
        }
        RelationId::R(14) | RelationId::R(18) => {
            for v in 1..=2 {
                push(Subs::variant(v));
            }
        }
        RelationId::R(15) => {
            for v in 1..=4 {
                push(Subs::variant(v));
            }
        }
        RelationId::R(19) | RelationId::R(20) | RelationId::R(21) => {
            push(Subs::default());
        }
        RelationId::F(1) | RelationId::Z(1) => {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    push(Subs::ij(i, j));
                }
            }
        }
        RelationId::F(2) | RelationId::Z(2) => {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    push(Subs::ij(i, j).with_variant(1));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    push(Subs::ij(i, j).with_variant(2));
                }
            }
        }
        RelationId::F(5) | RelationId::Z(5) => {
            for v in 1..=2 {
                for_distinct_triples(n, |i, j, k| push(Subs::ijk(i, j, k).with_variant(v)));
            }
        }
        _ => {}
    }
    out
}

fn for_distinct_triples(n: usize, mut f: impl FnMut(usize, usize, usize)) {
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in (1..=n).filter(|&k| k != i && k != j) {
                f(i, j, k);
            }
        }
    }
}

fn for_distinct_quads(n: usize, mut f: impl FnMut(usize, usize, usize, usize)) {
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in (1..=n).filter(|&k| k != i && k != j) {
                for l in (1..=n).filter(|&l| l != i && l != j && l != k) {
                    f(i, j, k, l);
                }
            }
        }
    }
}

/// Every instance of every listed id at degree `n`.
pub fn instantiate(ids: &[RelationId], n: usize) -> Vec<RelationInstance> {
    ids.iter().flat_map(|&id| instances_of(id, n)).collect()
}

/// Direction of an elementary rewrite step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Forward => "fwd",
            Dir::Backward => "bwd",
        })
    }
}

/// Replaces one occurrence of a relation side at `pos` by the other side.
pub fn apply_relation(
    word: &Word,
    rel: &RelationInstance,
    pos: usize,
    dir: Dir,
) -> Result<Word> {
    if word.degree() != rel.degree() {
        return Err(Error::DegreeMismatch { left: word.degree(), right: rel.degree() });
    }
    let (from, to) = match dir {
        Dir::Forward => (&rel.lhs, &rel.rhs),
        Dir::Backward => (&rel.rhs, &rel.lhs),
    };
    if word.alphabet() != from.alphabet() {
        return Err(Error::Invalid(String::from("relation alphabet mismatch")));
    }
    let len = from.len();
    if pos + len > word.len() || word.letters()[pos..pos + len] != *from.letters() {
        return Err(Error::PatternMismatch { pos });
    }
    Ok(word.splice(pos, len, to.letters()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_counts_match_the_subscript_schemes() {
        assert_eq!(instances_of(RelationId::R(10), 4).len(), 24); // 4!
        assert_eq!(instances_of(RelationId::R(5), 3).len(), 6); // ordered triples
        assert_eq!(instances_of(RelationId::R(19), 3).len(), 1);
        assert_eq!(instances_of(RelationId::R(19), 2).len(), 0);
        assert_eq!(instances_of(RelationId::R(20), 4).len(), 1);
        assert_eq!(instances_of(RelationId::R(20), 3).len(), 0);
        assert_eq!(instances_of(RelationId::R(21), 3).len(), 1);
        assert_eq!(instances_of(RelationId::R(6), 2).len(), 0);
        assert_eq!(instances_of(RelationId::R(4), 3).len(), 9); // C(3,2)^2
    }

    #[test]
    fn every_instance_checks_diagrammatically_small_degrees() {
        for n in 2..=4 {
            for family in [
                RelationFamily::Singular,
                RelationFamily::Full,
                RelationFamily::Insn,
                RelationFamily::ZWords,
            ] {
                for inst in instantiate(&family.ids(), n) {
                    assert!(
                        inst.check_diagrammatically().unwrap(),
                        "{inst} fails at degree {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn corrupted_relation_fails_the_check() {
        // t_12 e_3 t_12 = t_12 is false: the left side also cuts strand 3.
        let good = materialize(RelationId::R(7), Subs::ijk(1, 2, 1), 3).unwrap();
        assert!(good.check_diagrammatically().unwrap());
        let bad = RelationInstance {
            id: RelationId::R(7),
            subs: Subs::ijk(1, 2, 3),
            lhs: Word::parse(3, Alphabet::Et, "t1,2 e3 t1,2").unwrap(),
            rhs: Word::parse(3, Alphabet::Et, "t1,2").unwrap(),
        };
        assert!(!bad.check_diagrammatically().unwrap());
    }

    #[test]
    fn apply_relation_basics() {
        let r1 = materialize(RelationId::R(1), Subs::only_i(1), 3).unwrap();
        let w = Word::parse(3, Alphabet::Et, "e1 e1").unwrap();
        let applied = apply_relation(&w, &r1, 0, Dir::Forward).unwrap();
        assert_eq!(applied.format(), "e1");
        let back = apply_relation(&applied, &r1, 0, Dir::Backward).unwrap();
        assert_eq!(back, w);
        assert!(apply_relation(&w, &r1, 1, Dir::Forward).is_err());

        let r2 = materialize(RelationId::R(2), Subs::ij(1, 2), 3).unwrap();
        let v = Word::parse(3, Alphabet::Et, "e1 e2").unwrap();
        let swapped = apply_relation(&v, &r2, 0, Dir::Forward).unwrap();
        assert_eq!(swapped.format(), "e2 e1");
        assert_eq!(apply_relation(&swapped, &r2, 0, Dir::Backward).unwrap(), v);
    }

    #[test]
    fn r11_rewrites_to_the_empty_word() {
        let r11 = materialize(RelationId::R(11), Subs::only_i(1), 2).unwrap();
        let w = Word::parse(2, Alphabet::Set, "s1 s1").unwrap();
        let applied = apply_relation(&w, &r11, 0, Dir::Forward).unwrap();
        assert!(applied.is_empty());
    }
}
