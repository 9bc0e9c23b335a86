//! Harary schemes for majority and k-majority, checked by brute force, with
//! the connectivity characterization at (n, k, c) = (6, 4, 3).

use ballsearch::analysis::{vertex_connectivity, Verifier};
use ballsearch::bounds::majority_edges;
use ballsearch::constructions::kmajority_graph;
use ballsearch::{ProblemSpec, QueryGraph, WeightedInstance};

fn main() {
    println!("n  k  edges  formula  solves(c=3)");
    for n in 4..=9usize {
        let k = n / 2 + 1;
        let g = kmajority_graph(n, k).unwrap();
        let p = ProblemSpec::majority(WeightedInstance::unit(n), 3).unwrap();
        let ok = Verifier::new(&p).unwrap().solves(&g).unwrap();
        println!(
            "{n}  {k}  {:>5}  {:>7}  {ok}",
            g.edge_count(),
            majority_edges(n as u64)
        );
    }

    let p = ProblemSpec::k_majority(WeightedInstance::unit(6), 4u32, 3).unwrap();
    let verifier = Verifier::new(&p).unwrap();
    let (mut solving, mut agree) = (0, 0);
    for mask in 0u128..1 << 15 {
        let g = QueryGraph::from_pair_mask(6, mask);
        let solves = verifier.solves(&g).unwrap();
        solving += usize::from(solves);
        agree += usize::from(solves == (vertex_connectivity(&g).unwrap() >= 3));
    }
    println!("(6,4,3): {solving} of 32768 graphs solve; {agree} agree with 3-connectivity");

    let g = QueryGraph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
    let report = verifier.check(&g).unwrap();
    let ev = report.evidence.unwrap();
    println!("6-cycle fails ({:?}):", ev.conflict);
    for c in &ev.colorings {
        println!("  {c}");
    }
}
