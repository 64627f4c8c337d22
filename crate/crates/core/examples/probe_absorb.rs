use partition_monoid::partial_perm::PartialPermutation;

fn main() {
    let beta = PartialPermutation::new(2, vec![(1, 2)]).unwrap();
    println!("beta: {beta}");
    let c = partition_monoid::engine::z_word_for(&beta).unwrap();
    println!("canonical word: {c}");
}
