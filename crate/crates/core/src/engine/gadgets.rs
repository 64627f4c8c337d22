//! Small pre-compiled certificates over `E∪T`: the basic identities among
//! the words `z_ij`, the commutation of `t` letters past `z` letters, and
//! elementary R1–R10 certificates for the relations Z1–Z7.

use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate};
use crate::error::{Error, Result};
use crate::relations::{Dir, RelationId, Subs};
use crate::words::{z_letters, Alphabet, Letter, Word};

fn et(n: usize, letters: Vec<Letter>) -> Word {
    Word::new(n, Alphabet::Et, letters).expect("gadget pattern is well-formed")
}

fn z2(i: usize, j: usize, k: usize, l: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = z_letters(i, j).into();
    out.extend(z_letters(k, l));
    out
}

const FWD: Dir = Dir::Forward;
const BWD: Dir = Dir::Backward;

/// `e_i z_ij -> z_ij` (one R1).
pub fn ez_i_left(n: usize, i: usize, j: usize) -> Result<Certificate> {
    let mut start = alloc::vec![Letter::E(i)];
    start.extend(z_letters(i, j));
    let mut b = CertBuilder::new(et(n, start));
    b.rel(RelationId::R(1), Subs::only_i(i), 0, FWD)?;
    Ok(b.finish())
}

/// `z_ij e_j -> z_ij` (one R1).
pub fn ez_i_right(n: usize, i: usize, j: usize) -> Result<Certificate> {
    let mut start: Vec<Letter> = z_letters(i, j).into();
    start.push(Letter::E(j));
    let mut b = CertBuilder::new(et(n, start));
    b.rel(RelationId::R(1), Subs::only_i(j), 2, FWD)?;
    Ok(b.finish())
}

/// `e_j z_ij -> e_i e_j` (R2, R8).
pub fn ez_ii_left(n: usize, i: usize, j: usize) -> Result<Certificate> {
    let mut start = alloc::vec![Letter::E(j)];
    start.extend(z_letters(i, j));
    let mut b = CertBuilder::new(et(n, start));
    b.rel(RelationId::R(2), Subs::ij(j, i), 0, FWD)?;
    b.rel(RelationId::R(8), Subs::ijk(i, j, j), 1, FWD)?;
    Ok(b.finish())
}

/// `z_ij e_i -> e_i e_j` (R2, R8).
pub fn ez_ii_right(n: usize, i: usize, j: usize) -> Result<Certificate> {
    let mut start: Vec<Letter> = z_letters(i, j).into();
    start.push(Letter::E(i));
    let mut b = CertBuilder::new(et(n, start));
    b.rel(RelationId::R(2), Subs::ij(j, i), 2, FWD)?;
    b.rel(RelationId::R(8), Subs::ijk(i, j, i), 0, FWD)?;
    Ok(b.finish())
}

/// `z_ij z_ij -> e_i e_j`.
pub fn ez_ii_square(n: usize, i: usize, j: usize) -> Result<Certificate> {
    let mut b = CertBuilder::new(et(n, z2(i, j, i, j)));
    b.embed(&ez_ii_right(n, i, j)?, 0)?;
    b.rel(RelationId::R(8), Subs::ijk(i, j, j), 1, FWD)?;
    Ok(b.finish())
}

/// `z_ji z_ji -> e_i e_j`.
pub fn ez_ii_square_swapped(n: usize, i: usize, j: usize) -> Result<Certificate> {
    let mut b = CertBuilder::new(et(n, z2(j, i, j, i)));
    b.embed(&ez_ii_square(n, j, i)?, 0)?;
    b.rel(RelationId::R(2), Subs::ij(j, i), 0, FWD)?;
    Ok(b.finish())
}

/// `z_ij z_ji -> e_i` (R1, R7, R8).
pub fn ez_iii(n: usize, i: usize, j: usize) -> Result<Certificate> {
    let mut b = CertBuilder::new(et(n, z2(i, j, j, i)));
    b.rel(RelationId::R(1), Subs::only_i(j), 2, FWD)?;
    b.rel(RelationId::R(7), Subs::ijk(i, j, j), 1, FWD)?;
    b.rel(RelationId::R(8), Subs::ijk(i, j, i), 0, FWD)?;
    Ok(b.finish())
}

/// `e_k z_ij -> z_ij e_k` for `k` outside `{i,j}` (R2, R6, R2).
pub fn ez_iv(n: usize, i: usize, j: usize, k: usize) -> Result<Certificate> {
    let mut start = alloc::vec![Letter::E(k)];
    start.extend(z_letters(i, j));
    let mut b = CertBuilder::new(et(n, start));
    b.rel(RelationId::R(2), Subs::ij(k, i), 0, FWD)?;
    b.rel(RelationId::R(6), Subs::ijk(i, j, k), 1, BWD)?;
    b.rel(RelationId::R(2), Subs::ij(k, j), 2, FWD)?;
    Ok(b.finish())
}

/// `t_ij z_kl -> z_kl t_{i',j'}` where `(i',j')` is the image of `(i,j)`
/// under `f_kl` (requires `k` outside `{i,j}`). Returns the certificate
/// and `(i',j')`.
pub fn t_past_z(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<(Certificate, (usize, usize))> {
    if k == i || k == j {
        return Err(Error::Invalid(alloc::string::String::from(
            "t_past_z needs k outside {i,j}",
        )));
    }
    let mut start = alloc::vec![Letter::t(i, j)];
    start.extend(z_letters(k, l));
    let mut b = CertBuilder::new(et(n, start));
    let out = if l != i && l != j {
        b.rel(RelationId::R(6), Subs::ijk(i, j, k), 0, FWD)?;
        b.rel(RelationId::R(4), Subs::ijkl(i, j, k, l), 1, FWD)?;
        b.rel(RelationId::R(6), Subs::ijk(i, j, l), 2, FWD)?;
        (i, j)
    } else if l == i {
        // t_lj z_kl: R6, R5 (t_jl t_lk -> t_lk t_kj), R6
        b.rel(RelationId::R(6), Subs::ijk(i, j, k), 0, FWD)?;
        b.rel(RelationId::R(5), Subs::ijk(j, l, k), 1, FWD)?;
        b.rel(RelationId::R(6), Subs::ijk(k, j, l), 2, FWD)?;
        (k, j)
    } else {
        // l == j; t_il z_kl: R6, R5 (t_il t_lk -> t_lk t_ki), R6
        b.rel(RelationId::R(6), Subs::ijk(i, j, k), 0, FWD)?;
        b.rel(RelationId::R(5), Subs::ijk(i, l, k), 1, FWD)?;
        b.rel(RelationId::R(6), Subs::ijk(k, i, l), 2, FWD)?;
        (i, k)
    };
    Ok((b.finish(), out))
}

/// `t_ij (z-word) -> (z-word) t_{i w, j w}` for `i, j` in the domain of the
/// word's image; folds [`t_past_z`] across the word. Returns the
/// certificate and the final `t` subscripts.
pub fn t_past_zword(
    n: usize,
    i: usize,
    j: usize,
    pairs: &[(usize, usize)],
) -> Result<(Certificate, (usize, usize))> {
    let mut start = alloc::vec![Letter::t(i, j)];
    for &(k, l) in pairs {
        start.extend(z_letters(k, l));
    }
    let mut b = CertBuilder::new(et(n, start));
    let (mut ci, mut cj) = (i, j);
    for (idx, &(k, l)) in pairs.iter().enumerate() {
        let (cert, next) = t_past_z(n, ci, cj, k, l)?;
        b.embed(&cert, 3 * idx)?;
        (ci, cj) = next;
    }
    Ok((b.finish(), (ci, cj)))
}

/// Elementary R1–R10 certificate between the two sides of a Z-relation
/// instance (sides given as the expansions of the `z` letters).
pub fn zrel(n: usize, id: RelationId, subs: Subs) -> Result<Certificate> {
    let (k, i, j) = match id {
        RelationId::Z(k) => (k, subs.i, subs.j),
        _ => return Err(Error::Invalid(alloc::string::String::from("zrel needs a Z id"))),
    };
    let need = |o: Option<usize>| {
        o.ok_or_else(|| Error::BadSubscript(alloc::string::String::from("missing subscript")))
    };
    let i = need(i)?;
    let j = need(j)?;
    match k {
        1 => {
            // z_ij z_ji z_ij -> e_i z_ij -> z_ij
            let mut start = z2(i, j, j, i);
            start.extend(z_letters(i, j));
            let mut b = CertBuilder::new(et(n, start));
            b.embed(&ez_iii(n, i, j)?, 0)?;
            b.embed(&ez_i_left(n, i, j)?, 0)?;
            Ok(b.finish())
        }
        2 => match need(subs.v)? {
            1 => {
                // z_ij^3 -> e_i e_j z_ij -> e_i e_i e_j -> e_i e_j <- z_ij^2
                let mut start = z2(i, j, i, j);
                start.extend(z_letters(i, j));
                let mut b = CertBuilder::new(et(n, start));
                b.embed(&ez_ii_square(n, i, j)?, 0)?;
                b.embed(&ez_ii_left(n, i, j)?, 1)?;
                b.rel(RelationId::R(1), Subs::only_i(i), 0, FWD)?;
                b.embed(&ez_ii_square(n, i, j)?.reversed(), 0)?;
                Ok(b.finish())
            }
            2 => {
                let mut b = CertBuilder::new(et(n, z2(i, j, i, j)));
                b.embed(&ez_ii_square(n, i, j)?, 0)?;
                b.embed(&ez_ii_square_swapped(n, i, j)?.reversed(), 0)?;
                Ok(b.finish())
            }
            _ => Err(Error::BadSubscript(alloc::string::String::from("Z2 variant"))),
        },
        3 => {
            let (kk, l) = (need(subs.k)?, need(subs.l)?);
            let mut b = CertBuilder::new(et(n, z2(i, j, kk, l)));
            b.rel(RelationId::R(2), Subs::ij(j, kk), 2, FWD)?;
            b.rel(RelationId::R(6), Subs::ijk(i, j, kk), 1, FWD)?;
            b.rel(RelationId::R(2), Subs::ij(i, kk), 0, FWD)?;
            b.rel(RelationId::R(6), Subs::ijk(kk, l, j), 3, BWD)?;
            b.rel(RelationId::R(4), Subs::ijkl(i, j, kk, l), 2, FWD)?;
            b.rel(RelationId::R(6), Subs::ijk(kk, l, i), 1, BWD)?;
            b.rel(RelationId::R(2), Subs::ij(j, l), 4, FWD)?;
            b.rel(RelationId::R(6), Subs::ijk(i, j, l), 3, FWD)?;
            b.rel(RelationId::R(2), Subs::ij(i, l), 2, FWD)?;
            Ok(b.finish())
        }
        4 => {
            let kk = need(subs.k)?;
            let mut b = CertBuilder::new(et(n, z2(i, j, j, i)));
            b.embed(&ez_iii(n, i, j)?, 0)?;
            b.embed(&ez_iii(n, i, kk)?.reversed(), 0)?;
            Ok(b.finish())
        }
        5 => {
            let kk = need(subs.k)?;
            let a = z5_chain_a(n, i, j, kk)?;
            let bchain = z5_chain_b(n, i, j, kk)?;
            let c = z5_chain_c(n, i, j, kk)?;
            match need(subs.v)? {
                1 => a.then(&bchain.reversed()),
                2 => bchain.then(&c.reversed()),
                _ => Err(Error::BadSubscript(alloc::string::String::from("Z5 variant"))),
            }
        }
        6 => {
            // z_ki z_ij z_jk -> z_kj z_ji z_ik via R9
            let mut start = z2(kk_of(subs)?, i, i, j);
            start.extend(z_letters(j, kk_of(subs)?));
            let kk = kk_of(subs)?;
            let mut b = CertBuilder::new(et(n, start));
            b.rel(RelationId::R(1), Subs::only_i(i), 2, FWD)?;
            b.rel(RelationId::R(1), Subs::only_i(j), 4, FWD)?;
            b.rel(RelationId::R(9), Subs::ijk(i, j, kk), 0, FWD)?;
            b.rel(RelationId::R(1), Subs::only_i(j), 2, BWD)?;
            b.rel(RelationId::R(1), Subs::only_i(i), 5, BWD)?;
            Ok(b.finish())
        }
        7 => {
            let (kk, l) = (need(subs.k)?, need(subs.l)?);
            // z_ki z_ij z_jk z_kl -> z_kl z_li z_ij z_jl
            let mut start = z2(kk, i, i, j);
            start.extend(z2(j, kk, kk, l));
            let mut b = CertBuilder::new(et(n, start));
            b.embed(&zrel(n, RelationId::Z(1), Subs::ij(i, j))?.reversed(), 3)?;
            b.embed(&zrel(n, RelationId::Z(4), Subs::ijk(j, i, l))?, 6)?;
            b.embed(&zrel(n, RelationId::Z(6), Subs::ijk(j, kk, l))?, 9)?;
            b.embed(&z7_observation(n, i, j, kk, l)?, 0)?;
            b.embed(&zrel(n, RelationId::Z(4), Subs::ijk(j, kk, l))?, 9)?;
            b.embed(&zrel(n, RelationId::Z(1), Subs::ij(j, l))?, 9)?;
            Ok(b.finish())
        }
        _ => Err(Error::Invalid(alloc::format!("unknown Z relation Z{k}"))),
    }
}

fn kk_of(subs: Subs) -> Result<usize> {
    subs.k
        .ok_or_else(|| Error::BadSubscript(alloc::string::String::from("missing subscript k")))
}

/// `z_ki z_ij z_jl z_lk -> z_kl z_li z_ij z_jk` via R10 (the "observation"
/// used in the Z7 derivation).
fn z7_observation(n: usize, i: usize, j: usize, k: usize, l: usize) -> Result<Certificate> {
    let mut start = z2(k, i, i, j);
    start.extend(z2(j, l, l, k));
    let mut b = CertBuilder::new(et(n, start));
    b.rel(RelationId::R(1), Subs::only_i(i), 2, FWD)?;
    b.rel(RelationId::R(1), Subs::only_i(j), 4, FWD)?;
    b.rel(RelationId::R(1), Subs::only_i(l), 6, FWD)?;
    b.rel(RelationId::R(10), Subs::ijkl(i, j, k, l), 0, FWD)?;
    b.rel(RelationId::R(1), Subs::only_i(l), 2, BWD)?;
    b.rel(RelationId::R(1), Subs::only_i(i), 5, BWD)?;
    b.rel(RelationId::R(1), Subs::only_i(j), 8, BWD)?;
    Ok(b.finish())
}

/// `z_ij z_ik -> e_j z_ik`.
fn z5_chain_a(n: usize, i: usize, j: usize, k: usize) -> Result<Certificate> {
    let mut b = CertBuilder::new(et(n, z2(i, j, i, k)));
    b.embed(&ez_ii_right(n, i, j)?, 0)?;
    b.rel(RelationId::R(2), Subs::ij(i, j), 0, FWD)?;
    Ok(b.finish())
}

/// `z_jk z_ij -> e_j z_ik` (the six-step R2/R5/R6/R8 chain).
fn z5_chain_b(n: usize, i: usize, j: usize, k: usize) -> Result<Certificate> {
    let mut b = CertBuilder::new(et(n, z2(j, k, i, j)));
    b.rel(RelationId::R(2), Subs::ij(k, i), 2, FWD)?;
    b.rel(RelationId::R(6), Subs::ijk(j, k, i), 1, FWD)?;
    b.rel(RelationId::R(2), Subs::ij(j, i), 0, FWD)?;
    b.rel(RelationId::R(6), Subs::ijk(i, j, k), 3, BWD)?;
    b.rel(RelationId::R(2), Subs::ij(k, j), 4, FWD)?;
    b.rel(RelationId::R(5), Subs::ijk(k, j, i), 2, FWD)?;
    b.rel(RelationId::R(6), Subs::ijk(i, k, j), 3, FWD)?;
    b.rel(RelationId::R(8), Subs::ijk(i, j, j), 1, FWD)?;
    b.rel(RelationId::R(2), Subs::ij(i, j), 0, FWD)?;
    Ok(b.finish())
}

/// `z_ik z_jk -> e_j z_ik`.
fn z5_chain_c(n: usize, i: usize, j: usize, k: usize) -> Result<Certificate> {
    let mut b = CertBuilder::new(et(n, z2(i, k, j, k)));
    b.rel(RelationId::R(2), Subs::ij(k, j), 2, FWD)?;
    b.rel(RelationId::R(8), Subs::ijk(j, k, k), 3, FWD)?;
    b.rel(RelationId::R(6), Subs::ijk(i, k, j), 1, FWD)?;
    b.rel(RelationId::R(2), Subs::ij(i, j), 0, FWD)?;
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{instances_of, materialize};

    #[test]
    fn ez_gadgets_replay_at_small_degrees() {
        for n in 2..=4 {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    for cert in [
                        ez_i_left(n, i, j).unwrap(),
                        ez_i_right(n, i, j).unwrap(),
                        ez_ii_left(n, i, j).unwrap(),
                        ez_ii_right(n, i, j).unwrap(),
                        ez_ii_square(n, i, j).unwrap(),
                        ez_ii_square_swapped(n, i, j).unwrap(),
                        ez_iii(n, i, j).unwrap(),
                    ] {
                        cert.replay().unwrap();
                        assert!(cert.is_elementary());
                    }
                    for k in (1..=n).filter(|&k| k != i && k != j) {
                        ez_iv(n, i, j, k).unwrap().replay().unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn ez_iii_lands_on_e_i() {
        let cert = ez_iii(3, 2, 3).unwrap();
        assert_eq!(cert.end.format(), "e2");
        cert.replay().unwrap();
    }

    #[test]
    fn t_past_z_three_cases_at_n4() {
        let n = 4;
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                for k in (1..=n).filter(|&k| k != i && k != j) {
                    for l in (1..=n).filter(|&l| l != k) {
                        let (cert, (pi, pj)) = t_past_z(n, i, j, k, l).unwrap();
                        cert.replay().unwrap();
                        // expected relabel through f_kl
                        let f = super::super::zword::f_partial_perm(n, k, l);
                        let expect =
                            (f.apply(i).unwrap_or(i), f.apply(j).unwrap_or(j));
                        assert_eq!(
                            Letter::t(pi, pj),
                            Letter::t(expect.0, expect.1)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zrel_certificates_replay_and_match_instances() {
        for n in [3usize, 4] {
            for k in 1..=7u8 {
                for inst in instances_of(RelationId::Z(k), n) {
                    let cert = zrel(n, inst.id, inst.subs).unwrap();
                    assert_eq!(cert.start, inst.lhs, "start of {inst}");
                    assert_eq!(cert.end, inst.rhs, "end of {inst}");
                    assert!(cert.is_elementary());
                    cert.replay().unwrap();
                }
            }
        }
    }

    #[test]
    fn zrel_example_z1() {
        let inst = materialize(RelationId::Z(1), Subs::ij(1, 2), 3).unwrap();
        let cert = zrel(3, inst.id, inst.subs).unwrap();
        cert.replay().unwrap();
        assert_eq!(cert.end.format(), "e1 t1,2 e2");
    }
}
