//! Absorbing a stray `e_x` into a word over the `z` generators by local
//! certified reactions. This is the word-level form of post- (or pre-)
//! composing the image with the idempotent that cuts strand `x`: touched
//! chain letters dissolve, the cut cascades through dead values, and
//! points that die outright leave a fresh kill pair behind.

use alloc::vec::Vec;

use crate::certificate::{CertBuilder, Certificate};
use crate::error::{Error, Result};
use crate::relations::{RelationId, Subs};
use crate::words::{z_letters, Alphabet, Letter, Word};

use super::gadgets;
use super::insn::ZWord;

/// Which end the `e` entered from; spawned letters inherit the direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AbsorbMode {
    /// `exp(w) ++ [e_x]`: the `e` travels left (image is `w̄ ē_x`).
    Appended,
    /// `[e_x] ++ exp(w)`: the `e` travels right (image is `ē_x w̄`).
    Prepended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item {
    Z(usize, usize),
    E(usize),
}

/// The least point outside `{a, y}` (degree at least 3 required; at degree
/// 2 no kill pair can share a partner with a third point anyway).
fn fresh_partner(n: usize, a: usize, y: usize) -> Result<usize> {
    (1..=n)
        .find(|&p| p != a && p != y)
        .ok_or_else(|| Error::Invalid(alloc::string::String::from("no fresh partner")))
}

impl Item {
    fn len(&self) -> usize {
        match self {
            Item::Z(..) => 3,
            Item::E(_) => 1,
        }
    }
}

/// Result of an absorption: the surviving `z`-word and the certificate
/// from the word-with-`e` to its expansion.
pub(crate) fn absorb_e(
    n: usize,
    w: &ZWord,
    x: usize,
    mode: AbsorbMode,
) -> Result<(ZWord, Certificate)> {
    let mut items: Vec<Item> = Vec::with_capacity(w.len() + 1);
    let start = match mode {
        AbsorbMode::Appended => {
            items.extend(w.iter().map(|&(i, j)| Item::Z(i, j)));
            items.push(Item::E(x));
            let mut letters: Vec<Letter> =
                w.iter().flat_map(|&(i, j)| z_letters(i, j)).collect();
            letters.push(Letter::E(x));
            Word::new(n, Alphabet::Et, letters)?
        }
        AbsorbMode::Prepended => {
            items.push(Item::E(x));
            items.extend(w.iter().map(|&(i, j)| Item::Z(i, j)));
            let mut letters = alloc::vec![Letter::E(x)];
            letters.extend(w.iter().flat_map(|&(i, j)| z_letters(i, j)));
            Word::new(n, Alphabet::Et, letters)?
        }
    };
    let mut b = CertBuilder::new(start);
    let offset = |items: &[Item], q: usize| -> usize {
        items[..q].iter().map(Item::len).sum()
    };

    // Main loop: resolve the loose e's by neighbour reactions, moving in
    // the travel direction when no reaction applies. A loose e whose next
    // step is blocked by another loose e waits for that one to resolve.
    let mut fuel = 100_000usize;
    loop {
        fuel = fuel.checked_sub(1).ok_or_else(|| {
            Error::SearchBound(alloc::string::String::from("absorption did not settle"))
        })?;
        // The e furthest along its journey acts first; later ones wait.
        let pick = match mode {
            AbsorbMode::Appended => items.iter().position(|it| matches!(it, Item::E(_))),
            AbsorbMode::Prepended => items.iter().rposition(|it| matches!(it, Item::E(_))),
        };
        let Some(q) = pick else { break };
        let Item::E(y) = items[q] else { unreachable!() };
        let at = offset(&items, q);

        // Absorption against either neighbour (valid in both modes).
        if let Some(Item::Z(a, bb)) = items.get(q + 1).copied() {
            if a == y {
                // e_y z_yb -> z_yb
                b.embed(&gadgets::ez_i_left(n, y, bb)?, at)?;
                items.remove(q);
                continue;
            }
        }
        if q > 0 {
            if let Item::Z(a, bb) = items[q - 1] {
                if bb == y {
                    // z_ay e_y -> z_ay
                    b.embed(&gadgets::ez_i_right(n, a, y)?, at - 3)?;
                    items.remove(q);
                    continue;
                }
            }
        }
        match mode {
            AbsorbMode::Appended => {
                if q == 0 {
                    // stuck: the point died outright; leave a kill pair
                    convert_stuck(n, &mut b, &mut items, q, at, y)?;
                    continue;
                }
                match items[q - 1] {
                    Item::Z(a, bb) if a == y => {
                        // A kill pair whose partner is y must be
                        // repartnered, not dissolved. With no third point
                        // available the e becomes its own kill pair.
                        if q >= 2 && items[q - 2] == Item::Z(bb, y) {
                            match fresh_partner(n, bb, y) {
                                Ok(p) => {
                                    let cert = gadgets::zrel(
                                        n,
                                        RelationId::Z(4),
                                        Subs::ijk(bb, y, p),
                                    )?;
                                    b.embed(&cert, at - 6)?;
                                    items[q - 2] = Item::Z(bb, p);
                                    items[q - 1] = Item::Z(p, bb);
                                }
                                Err(_) => {
                                    b.embed(
                                        &gadgets::ez_iii(n, y, bb)?.reversed(),
                                        at,
                                    )?;
                                    items.splice(
                                        q..q + 1,
                                        [Item::Z(y, bb), Item::Z(bb, y)],
                                    );
                                }
                            }
                        } else {
                            // z_yb e_y -> e_y e_b: the chain letter dissolves
                            b.embed(&gadgets::ez_ii_right(n, y, bb)?, at - 3)?;
                            items[q - 1] = Item::E(y);
                            items[q] = Item::E(bb);
                        }
                    }
                    Item::Z(a, bb) => {
                        // commute left past an unrelated letter
                        b.embed(&gadgets::ez_iv(n, a, bb, y)?.reversed(), at - 3)?;
                        items.swap(q - 1, q);
                    }
                    Item::E(_) => unreachable!("blocked e's are never picked"),
                }
            }
            AbsorbMode::Prepended => {
                if q + 1 == items.len() {
                    convert_stuck(n, &mut b, &mut items, q, at, y)?;
                    continue;
                }
                match items[q + 1] {
                    Item::Z(a, bb) if bb == y => {
                        if items.get(q + 2) == Some(&Item::Z(y, a)) {
                            // kill pair with partner y: repartner (or turn
                            // the e into its own kill pair when no third
                            // point exists)
                            match fresh_partner(n, a, y) {
                                Ok(p) => {
                                    let cert = gadgets::zrel(
                                        n,
                                        RelationId::Z(4),
                                        Subs::ijk(a, y, p),
                                    )?;
                                    b.embed(&cert, at + 1)?;
                                    items[q + 1] = Item::Z(a, p);
                                    items[q + 2] = Item::Z(p, a);
                                }
                                Err(_) => {
                                    b.embed(
                                        &gadgets::ez_iii(n, y, a)?.reversed(),
                                        at,
                                    )?;
                                    items.splice(
                                        q..q + 1,
                                        [Item::Z(y, a), Item::Z(a, y)],
                                    );
                                }
                            }
                            continue;
                        }
                        // e_y z_ay -> e_a e_y
                        b.embed(&gadgets::ez_ii_left(n, a, y)?, at)?;
                        items[q] = Item::E(a);
                        items[q + 1] = Item::E(y);
                    }
                    Item::Z(a, bb) => {
                        b.embed(&gadgets::ez_iv(n, a, bb, y)?, at)?;
                        items.swap(q, q + 1);
                    }
                    Item::E(_) => unreachable!("blocked e's are never picked"),
                }
            }
        }
    }

    let out: ZWord = items
        .iter()
        .map(|it| match it {
            Item::Z(i, j) => (*i, *j),
            Item::E(_) => unreachable!("all loose e's resolved"),
        })
        .collect();
    if out.is_empty() {
        return Err(Error::Invalid(alloc::string::String::from(
            "absorption emptied the word",
        )));
    }
    Ok((out, b.finish()))
}

/// A loose `e_y` at the end of its journey: trade it for the kill pair
/// `z_yp z_py` (always image-sound; the closing reorder tidies up).
fn convert_stuck(
    n: usize,
    b: &mut CertBuilder,
    items: &mut Vec<Item>,
    q: usize,
    at: usize,
    y: usize,
) -> Result<()> {
    let p = if y == 1 { 2 } else { 1 };
    b.embed(&gadgets::ez_iii(n, y, p)?.reversed(), at)?;
    items.splice(q..q + 1, [Item::Z(y, p), Item::Z(p, y)]);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::zword::{eval_z_pairs, f_partial_perm, z_pairs_for};
    use crate::partial_perm::PartialPermutation;

    fn e_cut(n: usize, x: usize) -> PartialPermutation {
        PartialPermutation::partial_identity(
            n,
            &(1..=n).filter(|&v| v != x).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn absorption_is_exhaustively_correct_at_small_degrees() {
        for n in 2..=4 {
            for beta in PartialPermutation::enumerate(n) {
                if beta.rank() == n {
                    continue;
                }
                let canonical = z_pairs_for(&beta).unwrap();
                for x in 1..=n {
                    let (out, cert) = absorb_e(n, &canonical, x, AbsorbMode::Appended)
                        .unwrap_or_else(|e| panic!("append {beta} e_{x}: {e}"));
                    cert.replay().unwrap();
                    let expected = beta.compose(&e_cut(n, x)).unwrap();
                    assert_eq!(eval_z_pairs(n, &out), expected, "append {beta} e_{x}");

                    let (out, cert) = absorb_e(n, &canonical, x, AbsorbMode::Prepended)
                        .unwrap_or_else(|e| panic!("prepend {beta} e_{x}: {e}"));
                    cert.replay().unwrap();
                    let expected = e_cut(n, x).compose(&beta).unwrap();
                    assert_eq!(eval_z_pairs(n, &out), expected, "prepend {beta} e_{x}");
                }
            }
        }
    }

    #[test]
    fn absorption_output_reorders_to_canonical_cheaply() {
        // The surviving word must be joinable to the canonical word of the
        // new image by the bounded search.
        let mut engine = crate::engine::RewriteEngine::new(4).unwrap();
        for beta in PartialPermutation::enumerate(4) {
            if beta.rank() == 4 {
                continue;
            }
            let canonical = z_pairs_for(&beta).unwrap();
            for x in 1..=4 {
                for mode in [AbsorbMode::Appended, AbsorbMode::Prepended] {
                    let (out, _) = absorb_e(4, &canonical, x, mode).unwrap();
                    let gamma = eval_z_pairs(4, &out);
                    let target = z_pairs_for(&gamma).unwrap();
                    let cert = engine
                        .insn_cert_pairs(&out, &target)
                        .unwrap_or_else(|e| panic!("reorder {beta} e_{x} {mode:?}: {e}"));
                    cert.replay().unwrap();
                }
            }
        }
    }

    #[test]
    fn truncation_cascade_example() {
        // beta = [4 -> 2]; cutting 2 kills the whole chain.
        let beta = PartialPermutation::new(4, alloc::vec![(4, 2)]).unwrap();
        let canonical = z_pairs_for(&beta).unwrap();
        let (out, cert) = absorb_e(4, &canonical, 2, AbsorbMode::Appended).unwrap();
        cert.replay().unwrap();
        assert_eq!(eval_z_pairs(4, &out), PartialPermutation::empty(4));
    }
}
