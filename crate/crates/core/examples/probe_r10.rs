use partition_monoid::relations::{RelationId, Subs};
use partition_monoid::RewriteEngine;

fn main() {
    let mut engine = RewriteEngine::new(4).unwrap();
    let t0 = std::time::Instant::now();
    match engine.psi_rel_cert(RelationId::R(4), Subs::ijkl(1, 2, 3, 4)) {
        Ok(cert) => {
            println!("R4 disjoint: {} steps in {:?}", cert.steps.len(), t0.elapsed());
            cert.replay().unwrap();
            println!("R4 disjoint replays OK");
        }
        Err(e) => println!("R4 disjoint FAILED: {e}"),
    }
    let t0 = std::time::Instant::now();
    match engine.psi_rel_cert(RelationId::R(10), Subs::ijkl(1, 2, 3, 4)) {
        Ok(cert) => {
            println!("R10: {} steps in {:?}", cert.steps.len(), t0.elapsed());
            cert.replay().unwrap();
            println!("R10 replays OK");
        }
        Err(e) => println!("R10 FAILED: {e}"),
    }
}
