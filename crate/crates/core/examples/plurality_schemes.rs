//! Plurality query graphs: the partite scheme with cycles inside parts and
//! the three-color constructions, against their bound formulas.

use ballsearch::analysis::Verifier;
use ballsearch::bounds::{decimal_string, nonadaptive_formulas};
use ballsearch::constructions::{c3_graph, turan_cycles};
use ballsearch::{ProblemSpec, WeightedInstance};

fn main() {
    println!("n  c  edges  lower  upper      solves");
    for c in 3..=4usize {
        for n in c..=9 {
            let (g, _) = turan_cycles(n, c).unwrap();
            let p = ProblemSpec::plurality(WeightedInstance::unit(n), c).unwrap();
            let ok = Verifier::new(&p).unwrap().solves(&g).unwrap();
            let set = nonadaptive_formulas(n as u64, None, c as u64);
            println!(
                "{n}  {c}  {:>5}  {:>5}  {:<9}  {ok}",
                g.edge_count(),
                set.get("plurality_lower").unwrap().value,
                decimal_string(&set.get("plurality_upper").unwrap().exact, 3),
            );
        }
    }

    println!("\nthree colors:");
    for n in 4..=9usize {
        let (g, _) = c3_graph(n).unwrap();
        let p = ProblemSpec::plurality(WeightedInstance::unit(n), 3).unwrap();
        let ok = Verifier::new(&p).unwrap().solves(&g).unwrap();
        println!("n = {n}: {} edges, solves {ok}", g.edge_count());
    }
}
