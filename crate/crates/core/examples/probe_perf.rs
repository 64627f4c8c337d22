use partition_monoid::eval::eval_phi;
use partition_monoid::verify::{random_word, seeded_rng};
use partition_monoid::words::Alphabet;
use partition_monoid::RewriteEngine;

fn main() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let mut rng = seeded_rng(7);
    let mut t0 = std::time::Instant::now();
    for idx in 1..=3000usize {
        let w = random_word(4, Alphabet::Et, 1..=8, &mut rng);
        let (nf, _cert) = engine.normal_form(&w).unwrap();
        assert_eq!(nf.diagram(), eval_phi(&w).unwrap());
        if idx % 500 == 0 {
            println!("{idx}: last 500 in {:?}", t0.elapsed());
            t0 = std::time::Instant::now();
        }
    }
}
