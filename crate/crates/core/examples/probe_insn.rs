use partition_monoid::engine::EngineOptions;
use partition_monoid::RewriteEngine;
use partition_monoid::words::{Alphabet, Word};

fn main() {
    // the chain-truncation cascade: C([4->2]) ++ kill(2) vs C(empty map)
    for (slack, nodes) in [(3usize, 400_000usize), (4, 400_000), (5, 400_000), (6, 1_000_000)] {
        let mut opts = EngineOptions::default();
        opts.search_slack = slack;
        opts.search_nodes = nodes;
        let mut engine = RewriteEngine::with_options(4, opts).unwrap();
        let from = Word::parse(4, Alphabet::Et, "z2,4 z1,2 z2,1 z3,1 z1,3 z2,1 z1,2").unwrap();
        let to = Word::parse(4, Alphabet::Et, "z1,2 z2,1 z2,1 z1,2 z3,1 z1,3 z4,1 z1,4").unwrap();
        let t0 = std::time::Instant::now();
        match engine.insn_transport(&from, &to) {
            Ok(cert) => {
                cert.replay().unwrap();
                println!("slack {slack}/{nodes}: {} steps in {:?} (replays)", cert.steps.len(), t0.elapsed());
            }
            Err(e) => println!("slack {slack}/{nodes}: FAILED in {:?}: {e}", t0.elapsed()),
        }
    }
}
