//! Adversaries that keep the answer open: the non-slavery one for two-color
//! majority and the minimum-degree one for plurality query graphs.

use ballsearch::adaptive::{adversary_mindeg, adversary_prop4, Adversary};
use ballsearch::{ProblemSpec, QueryGraph, WeightedInstance};

fn main() {
    let s = WeightedInstance::unit(8);
    let mut adv = adversary_prop4(&s).unwrap();
    println!("sides {:?}, budget {}", adv.sides(), adv.budget());
    let queries = [(0, 1), (2, 5), (1, 7)];
    for &(u, v) in &queries {
        println!("  {u} {v} -> {}", adv.answer(u, v).symbol());
    }
    let ev = adv.fooling_evidence().unwrap();
    let g = QueryGraph::new(8, queries).unwrap();
    let problem = ProblemSpec::majority(s, 2).unwrap();
    println!(
        "  still open: {} vs {} (valid {})",
        ev.colorings[0],
        ev.colorings[1],
        ev.validate(&g, &problem)
    );

    let g = QueryGraph::new(
        7,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 3),
        ],
    )
    .unwrap();
    let problem = ProblemSpec::plurality(WeightedInstance::unit(7), 3).unwrap();
    let ev = adversary_mindeg(&g, 3).unwrap();
    println!(
        "min degree {}: {} vs {} ({:?}, valid {})",
        g.min_degree().unwrap(),
        ev.colorings[0],
        ev.colorings[1],
        ev.conflict,
        ev.validate(&g, &problem)
    );
}
