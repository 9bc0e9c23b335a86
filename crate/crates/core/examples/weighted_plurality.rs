//! Balanced partitions and the weighted plurality scheme built on them.

use ballsearch::analysis::{decode_structured, Verifier};
use ballsearch::constructions::{balance_partition, weighted_plurality_scheme};
use ballsearch::model::answers_for;
use ballsearch::{Coloring, ProblemSpec, WeightedInstance};

fn main() {
    for (weights, c) in [
        (vec![5u64, 1, 1, 1], 2),
        (vec![4, 3, 3, 2], 2),
        (vec![7, 6, 5, 3, 2, 2, 1], 3),
    ] {
        let s = WeightedInstance::from_u64s(&weights).unwrap();
        let parts = balance_partition(&s, c).unwrap();
        let part_weights: Vec<u64> = parts
            .iter()
            .map(|p| p.iter().map(|&b| weights[b]).sum())
            .collect();
        let (g, d) = weighted_plurality_scheme(&s, c).unwrap();
        let p = ProblemSpec::plurality(s, c).unwrap();
        let ok = Verifier::new(&p).unwrap().solves(&g).unwrap();
        println!("{weights:?}, c = {c}: parts {parts:?} weighing {part_weights:?}");
        println!("  {} edges, solves {ok}", g.edge_count());

        let coloring =
            Coloring::from_labels(&(0..weights.len()).map(|b| b % c).collect::<Vec<_>>());
        let answers = answers_for(&g, &coloring).unwrap();
        println!(
            "  coloring {coloring}: {}",
            decode_structured(&d, &answers, &p).unwrap()
        );
    }
}
