//! Integration tests for the rewrite engine: stage decompositions, normal
//! forms, word-problem decisions, and the transport between presentations.

use partition_monoid::engine::canonical_t_word;
use partition_monoid::eval::{eval_big_phi, eval_phi, eval_word, psi};
use partition_monoid::relations::{instances_of, RelationId};
use partition_monoid::verify::{all_words, random_word, seeded_rng};
use partition_monoid::words::{Alphabet, Letter, Word};
use partition_monoid::{Certificate, RewriteEngine, Step};

fn et(n: usize, text: &str) -> Word {
    Word::parse(n, Alphabet::Et, text).unwrap()
}

#[test]
fn w123_base_cases() {
    let mut engine = RewriteEngine::new(3).unwrap();
    // a single e_i splits with empty t-parts
    let (w1, w2, w3, cert) = engine.decompose_w123(&et(3, "e1")).unwrap();
    assert!(w1.is_empty() && w3.is_empty());
    assert_eq!(w2.format(), "e1 t1,2 e2 e2 t1,2 e1"); // z_12 z_21
    cert.replay().unwrap();

    // a single t_ij keeps itself on both sides
    let (w1, w2, w3, cert) = engine.decompose_w123(&et(3, "t1,2")).unwrap();
    assert_eq!(w1.format(), "t1,2");
    assert_eq!(w3.format(), "t1,2");
    assert_eq!(eval_word(&w2).unwrap(), partition_monoid::generators::e(3, 1).unwrap());
    cert.replay().unwrap();
}

#[test]
fn w123_random_words_decompose_correctly() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(11);
    for _ in 0..150 {
        let w = random_word(4, Alphabet::Et, 1..=7, &mut rng);
        let (w1, w2, w3, cert) = engine.decompose_w123(&w).unwrap();
        assert!(w1.letters().iter().all(|l| matches!(l, Letter::T(..))));
        assert!(w3.letters().iter().all(|l| matches!(l, Letter::T(..))));
        assert_eq!(w2.len() % 3, 0);
        let product = w1.concat(&w2).unwrap().concat(&w3).unwrap();
        assert_eq!(eval_phi(&product).unwrap(), eval_phi(&w).unwrap());
        assert_eq!(cert.start, w);
        assert_eq!(cert.end, product);
        cert.replay().unwrap();
    }
}

#[test]
fn tut1_reaches_kernel_and_cokernel() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(12);
    for _ in 0..100 {
        let w = random_word(4, Alphabet::Et, 1..=6, &mut rng);
        let (t_eps, _u, t_eta, cert) = engine.to_tut1(&w).unwrap();
        let image = eval_phi(&w).unwrap();
        assert_eq!(t_eps, canonical_t_word(&image.ker()));
        assert_eq!(t_eta, canonical_t_word(&image.coker()));
        cert.replay().unwrap();
    }
}

#[test]
fn tut1_in_shape_words_need_no_rounds() {
    let mut engine = RewriteEngine::new(3).unwrap();
    // normal-form words are already in shape, so sharpening is immediate
    let w = et(3, "t1,2 e1 e2 t1,3");
    let (nf, _) = engine.normal_form(&w).unwrap();
    let shaped = nf.word();
    let (_, _, _, cert) = engine.to_tut1(&shaped).unwrap();
    cert.replay().unwrap();
    let (_, _, _, stats) = {
        let (nf2, cert2, stats) = engine.normal_form_with_stats(&shaped).unwrap();
        cert2.replay().unwrap();
        (nf2, cert2, 0, stats)
    };
    assert_eq!(stats.tut1_k.len(), 1, "no sharpening rounds for shaped words");
}

#[test]
fn tut2_middle_rank_matches_image() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(13);
    for _ in 0..100 {
        let w = random_word(4, Alphabet::Et, 1..=6, &mut rng);
        let (t_eps, u, t_eta, cert) = engine.to_tut2(&w).unwrap();
        let image = eval_phi(&w).unwrap();
        let mid = eval_word(&u).unwrap();
        assert_eq!(mid.rank(), image.rank());
        let product = t_eps.concat(&u).unwrap().concat(&t_eta).unwrap();
        assert_eq!(eval_phi(&product).unwrap(), image);
        cert.replay().unwrap();
    }
}

#[test]
fn normal_form_matches_spec_examples() {
    let mut engine = RewriteEngine::new(3).unwrap();
    let (nf, cert) = engine.normal_form(&et(3, "e1")).unwrap();
    assert!(nf.epsilon.is_trivial() && nf.eta.is_trivial());
    assert_eq!(nf.alpha.format(), "[2->2, 3->3]");
    cert.replay().unwrap();

    let (nf, cert) = engine.normal_form(&et(3, "t1,2")).unwrap();
    assert_eq!(nf.epsilon.format(), "(1,2|3)");
    assert_eq!(nf.eta.format(), "(1,2|3)");
    assert_eq!(nf.alpha.format(), "[1->1, 3->3]");
    cert.replay().unwrap();
}

#[test]
fn normal_form_is_canonical_on_equal_image_pairs() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(14);
    let mut by_image: std::collections::BTreeMap<_, Vec<Word>> = Default::default();
    for _ in 0..300 {
        let w = random_word(4, Alphabet::Et, 1..=6, &mut rng);
        by_image.entry(eval_phi(&w).unwrap()).or_default().push(w);
    }
    let mut pairs = 0;
    for (_, words) in by_image {
        for pair in words.windows(2) {
            let (nf_a, _) = engine.normal_form(&pair[0]).unwrap();
            let (nf_b, _) = engine.normal_form(&pair[1]).unwrap();
            assert_eq!(nf_a, nf_b);
            pairs += 1;
        }
    }
    assert!(pairs > 10, "sampling found {pairs} equal-image pairs");
}

#[test]
fn monotone_instrumentation() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(15);
    for _ in 0..100 {
        let w = random_word(4, Alphabet::Et, 1..=7, &mut rng);
        let (_, _, stats) = engine.normal_form_with_stats(&w).unwrap();
        assert!(stats.tut1_k.windows(2).all(|p| p[1] < p[0]));
        assert!(stats.tut2_rank.windows(2).all(|p| p[1] + 1 == p[0]));
        assert!(stats.tut3_k.windows(2).all(|p| p[1] == p[0] + 1));
        assert!(stats.tut1_k.len() <= 2 * 4 - 1);
    }
}

#[test]
fn decide_sim_fig1_is_a_single_step() {
    let mut engine = RewriteEngine::new(3).unwrap();
    let (eq, cert) = engine
        .decide_sim(&et(3, "t1,2 e1 t1,2"), &et(3, "t1,2"))
        .unwrap();
    assert!(eq);
    let cert = cert.unwrap();
    assert_eq!(cert.steps.len(), 1, "one application of the sandwich relation");
    assert!(matches!(cert.steps[0], Step::Rel { id: RelationId::R(7), .. }));
    cert.replay().unwrap();

    let (eq, cert) = engine.decide_sim(&et(3, "e1 e2"), &et(3, "e2 e1")).unwrap();
    assert!(eq);
    assert_eq!(cert.unwrap().steps.len(), 1);
}

#[test]
fn decide_sim_agrees_with_images_exhaustively_n2() {
    let mut engine = RewriteEngine::new(2).unwrap();
    let words = all_words(2, Alphabet::Et, 4);
    for u in &words {
        for v in &words {
            let equal = eval_phi(u).unwrap() == eval_phi(v).unwrap();
            let (decided, cert) = engine.decide_sim(u, v).unwrap();
            assert_eq!(decided, equal, "({u}, {v})");
            if let Some(cert) = cert {
                assert_eq!(cert.start, *u);
                assert_eq!(cert.end, *v);
            }
        }
    }
}

#[test]
fn psi_transport_of_single_steps_replays() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(16);
    let mut transported = 0;
    // single relation applications inside random host words
    for k in 1..=10u8 {
        for inst in instances_of(RelationId::R(k), 4) {
            if transported > 60 {
                break;
            }
            if rand::Rng::gen_range(&mut rng, 0..4) != 0 {
                continue;
            }
            let host = random_word(4, Alphabet::Et, 0..=2, &mut rng);
            let mut letters = host.letters().to_vec();
            let pos = letters.len();
            letters.extend(inst.lhs.letters().iter().copied());
            let start = Word::new(4, Alphabet::Et, letters).unwrap();
            let mut steps = Vec::new();
            steps.push(Step::Rel {
                id: inst.id,
                subs: inst.subs,
                pos,
                dir: partition_monoid::relations::Dir::Forward,
            });
            let end = partition_monoid::relations::apply_relation(
                &start,
                &inst,
                pos,
                partition_monoid::relations::Dir::Forward,
            )
            .unwrap();
            let cert = Certificate { start: start.clone(), steps, end };
            cert.replay().unwrap();
            let moved = engine.psi_transport(&cert).unwrap();
            assert_eq!(moved.start, psi(&start).unwrap());
            assert_eq!(moved.end, psi(&cert.end).unwrap());
            moved.replay().unwrap();
            transported += 1;
        }
    }
    assert!(transported >= 30);
}

#[test]
fn psi_transport_of_full_normal_form_certificates() {
    let mut engine = RewriteEngine::new(3).unwrap();
    let mut rng = seeded_rng(17);
    for _ in 0..10 {
        let w = random_word(3, Alphabet::Et, 1..=4, &mut rng);
        let (_, cert) = engine.normal_form(&w).unwrap();
        let moved = engine.psi_transport(&cert).unwrap();
        assert_eq!(moved.start, psi(&cert.start).unwrap());
        assert_eq!(moved.end, psi(&cert.end).unwrap());
        moved.replay().unwrap();
    }
}

#[test]
fn decide_approx_matches_spec_examples() {
    let mut engine = RewriteEngine::new(3).unwrap();
    let s = |text: &str| Word::parse(3, Alphabet::Set, text).unwrap();
    let (eq, cert) = engine.decide_approx(&s("s1 s1"), &s("")).unwrap();
    assert!(eq);
    cert.unwrap().replay().unwrap();
    let (eq, cert) = engine.decide_approx(&s("e t e"), &s("e")).unwrap();
    assert!(eq);
    cert.unwrap().replay().unwrap();
    // mixed random pairs agree with image equality
    let mut rng = seeded_rng(18);
    for _ in 0..40 {
        let u = random_word(3, Alphabet::Set, 0..=4, &mut rng);
        let v = random_word(3, Alphabet::Set, 0..=4, &mut rng);
        let equal = eval_big_phi(&u).unwrap() == eval_big_phi(&v).unwrap();
        let (decided, cert) = engine.decide_approx(&u, &v).unwrap();
        assert_eq!(decided, equal, "({u}, {v})");
        if let Some(cert) = cert {
            cert.replay().unwrap();
        }
    }
}

#[test]
fn lemma_identities_hold_as_certified_rewrites() {
    // the sandwich-word identities at every admissible subscript
    use partition_monoid::engine::gadgets;
    for n in 2..=4 {
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                for cert in [
                    gadgets::ez_i_left(n, i, j).unwrap(),
                    gadgets::ez_i_right(n, i, j).unwrap(),
                    gadgets::ez_ii_left(n, i, j).unwrap(),
                    gadgets::ez_ii_right(n, i, j).unwrap(),
                    gadgets::ez_iii(n, i, j).unwrap(),
                ] {
                    cert.replay().unwrap();
                }
            }
        }
    }
    // t_ij z_kl case split at n=4
    let n = 4;
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in (1..=n).filter(|&k| k != i && k != j) {
                for l in (1..=n).filter(|&l| l != k) {
                    let (cert, _) = gadgets::t_past_z(n, i, j, k, l).unwrap();
                    cert.replay().unwrap();
                }
            }
        }
    }
}
