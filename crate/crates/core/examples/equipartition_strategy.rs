//! The merge-and-difference strategy for weights with an even number of
//! equipartitions, replayed on every coloring.

use ballsearch::adaptive::prop3_even_strategy;
use ballsearch::bounds::equal_partition_count;
use ballsearch::model::enumerate_colorings;
use ballsearch::{ProblemSpec, WeightedInstance};

fn main() {
    for weights in [
        vec![1u64, 1, 2, 2],
        vec![1, 1, 1, 1, 2],
        vec![2, 2, 3, 3, 4, 4],
    ] {
        let s = WeightedInstance::from_u64s(&weights).unwrap();
        let p = equal_partition_count(&s);
        let tree = prop3_even_strategy(&s).unwrap();
        let problem = ProblemSpec::majority(s, 2).unwrap();
        let worst = enumerate_colorings(weights.len(), 2)
            .map(|c| tree.run(&c).1)
            .max()
            .unwrap();
        println!(
            "{weights:?}: p = {p}, depth {} (n - 2 = {}), worst run {worst}, correct {}",
            tree.depth(),
            weights.len() - 2,
            tree.first_error(&problem).is_none()
        );
    }
    let s = WeightedInstance::from_u64s(&[1, 1, 2, 2]).unwrap();
    print!("{}", prop3_even_strategy(&s).unwrap().render());
}
