//! Exact adaptive values for two-color majority, and the weighted instance
//! where the equipartition lower bound is not tight.

use std::time::Instant;

use ballsearch::adaptive::game_value;
use ballsearch::bounds::{equal_partition_count, ones_in_binary, prop3_bounds};
use ballsearch::{ProblemSpec, WeightedInstance};

fn main() {
    println!("n  value  n-b(n)  states");
    for n in 2..=7usize {
        let problem = ProblemSpec::majority(WeightedInstance::unit(n), 2).unwrap();
        let sol = game_value(&problem, 16).unwrap();
        println!(
            "{n}  {:>5}  {:>6}  {}",
            sol.value,
            n as u32 - ones_in_binary(n as u64),
            sol.states
        );
    }

    let s = WeightedInstance::from_u64s(&[1, 10, 11, 100, 101, 110, 111]).unwrap();
    let started = Instant::now();
    let problem = ProblemSpec::majority(s.clone(), 2).unwrap();
    let sol = game_value(&problem, 16).unwrap();
    let lower = prop3_bounds(&s).unwrap();
    println!(
        "weights {:?}: value {} (p = {}, lower bound {}), {} states, {:.2?}",
        [1, 10, 11, 100, 101, 110, 111],
        sol.value,
        equal_partition_count(&s),
        lower.bounds.get("prop3_lower").unwrap().value,
        sol.states,
        started.elapsed()
    );
    println!(
        "optimal first query: {:?}",
        match &sol.tree {
            ballsearch::adaptive::StrategyTree::Query { pair, .. } => Some(*pair),
            _ => None,
        }
    );
}
