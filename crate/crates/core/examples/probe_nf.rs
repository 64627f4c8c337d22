use partition_monoid::eval::eval_phi;
use partition_monoid::verify::{all_words, random_word, seeded_rng};
use partition_monoid::words::{Alphabet, Word};
use partition_monoid::RewriteEngine;

fn main() {
    // spec examples at n=3
    let mut engine = RewriteEngine::new(3).unwrap();
    for text in ["e1", "t1,2", "t1,2 e1 t1,2", "e1 e2 t1,3", "t1,2 t2,3 e2 e1 t1,3"] {
        let w = Word::parse(3, Alphabet::Et, text).unwrap();
        let t0 = std::time::Instant::now();
        match engine.normal_form_with_stats(&w) {
            Ok((nf, cert, stats)) => {
                cert.replay().unwrap();
                println!(
                    "nf({text}) = eps {} alpha {} eta {} | {} steps {:?} | stats {:?}",
                    nf.epsilon, nf.alpha, nf.eta, cert.steps.len(), t0.elapsed(), stats
                );
            }
            Err(e) => println!("nf({text}) FAILED: {e}"),
        }
    }
    // exhaustive words at n=2 up to length 4
    let mut engine = RewriteEngine::new(2).unwrap();
    let words = all_words(2, Alphabet::Et, 4);
    let t0 = std::time::Instant::now();
    let mut ok = 0;
    for w in &words {
        match engine.normal_form(&w) {
            Ok((nf, cert)) => {
                cert.replay().unwrap();
                assert_eq!(eval_phi(&cert.end).unwrap(), eval_phi(w).unwrap());
                assert_eq!(nf.diagram(), eval_phi(w).unwrap());
                ok += 1;
            }
            Err(e) => println!("nf({w}) FAILED: {e}"),
        }
    }
    println!("n=2 exhaustive: {ok}/{} in {:?}", words.len(), t0.elapsed());
    // random words at n=4
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(7);
    let t0 = std::time::Instant::now();
    for idx in 0..200 {
        let w = random_word(4, Alphabet::Et, 1..=8, &mut rng);
        match engine.normal_form(&w) {
            Ok((nf, cert)) => {
                if idx < 3 {
                    cert.replay().unwrap();
                }
                assert_eq!(nf.diagram(), eval_phi(&w).unwrap());
            }
            Err(e) => {
                println!("nf({w}) FAILED: {e}");
                break;
            }
        }
    }
    println!("n=4 random 200 in {:?}", t0.elapsed());
}
