//! Property tests for the text formats and the product.

use proptest::prelude::*;

use partition_monoid::diagram::PartitionDiagram;
use partition_monoid::verify::enumerate_pn;
use partition_monoid::words::{Alphabet, Letter, Word};

fn arb_diagram(n: usize) -> impl Strategy<Value = PartitionDiagram> {
    // a restricted growth string over the 2n points
    proptest::collection::vec(0..2 * n, 2 * n).prop_map(move |raw| {
        let mut rgs = vec![0usize; 2 * n];
        let mut max = 0;
        for (slot, &r) in raw.iter().enumerate().skip(1) {
            rgs[slot] = r % (max + 2);
            max = max.max(rgs[slot]);
        }
        let mut blocks = vec![Vec::new(); max + 1];
        for (slot, &class) in rgs.iter().enumerate() {
            blocks[class].push(partition_monoid::diagram::Point {
                index: slot % n + 1,
                primed: slot >= n,
            });
        }
        blocks.retain(|b| !b.is_empty());
        PartitionDiagram::new(n, blocks).unwrap()
    })
}

fn arb_word(n: usize, alphabet: Alphabet) -> impl Strategy<Value = Word> {
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
            let mut ls = vec![Letter::Ee, Letter::Tt];
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
    proptest::collection::vec(0..letters.len(), 0..12)
        .prop_map(move |picks| {
            Word::new(n, alphabet, picks.iter().map(|&p| letters[p]).collect()).unwrap()
        })
}

proptest! {
    #[test]
    fn diagram_format_parse_round_trip(d in arb_diagram(5)) {
        let text = d.format();
        let back = PartitionDiagram::parse(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back.format(), text);
    }

    #[test]
    fn word_format_parse_round_trip(
        w in prop_oneof![arb_word(5, Alphabet::Et), arb_word(5, Alphabet::Set), arb_word(5, Alphabet::F)]
    ) {
        let text = w.format();
        let back = Word::parse(w.degree(), w.alphabet(), &text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.format(), text);
    }

    #[test]
    fn product_associates_on_random_triples_n6(
        a in arb_diagram(6), b in arb_diagram(6), c in arb_diagram(6)
    ) {
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn product_associates_exhaustively_n3() {
    let all = enumerate_pn(3).unwrap();
    let index: std::collections::BTreeMap<&PartitionDiagram, u16> =
        all.iter().zip(0u16..).collect();
    let mut table = vec![vec![0u16; all.len()]; all.len()];
    for (ia, a) in all.iter().enumerate() {
        for (ib, b) in all.iter().enumerate() {
            table[ia][ib] = index[&a.product(b).unwrap()];
        }
    }
    for ia in 0..all.len() {
        for ib in 0..all.len() {
            let ab = table[ia][ib] as usize;
            for ic in 0..all.len() {
                assert_eq!(table[ab][ic], table[ia][table[ib][ic] as usize]);
            }
        }
    }
}

#[test]
fn canonical_form_matches_the_independent_enumeration() {
    // every enumerated diagram formats and parses back to itself, and the
    // formatted strings are pairwise distinct
    for n in 1..=4 {
        let all = enumerate_pn(n).unwrap();
        let mut texts: Vec<String> = all.iter().map(|d| d.format()).collect();
        for (d, text) in all.iter().zip(&texts) {
            assert_eq!(&PartitionDiagram::parse(text).unwrap(), d);
        }
        texts.sort();
        texts.dedup();
        assert_eq!(texts.len(), all.len());
    }
}
