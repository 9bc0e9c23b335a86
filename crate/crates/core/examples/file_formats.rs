//! Graph and answer files written and read back, then decoded with and
//! without the scheme descriptor.

use ballsearch::analysis::{decode, decode_structured};
use ballsearch::constructions::turan_cycles;
use ballsearch::formats::{parse_answers, parse_graph, write_answers, write_graph};
use ballsearch::model::answers_for;
use ballsearch::{Coloring, ProblemSpec, WeightedInstance};

fn main() {
    let (g, descriptor) = turan_cycles(7, 3).unwrap();
    let graph_text = write_graph(&g);
    print!("{graph_text}");
    assert_eq!(parse_graph(&graph_text).unwrap(), g);
    println!(
        "descriptor: {}",
        serde_json::to_string(&descriptor).unwrap()
    );

    let problem = ProblemSpec::plurality(WeightedInstance::unit(7), 3).unwrap();
    let coloring = Coloring::from_labels(&[0, 1, 1, 2, 1, 0, 2]);
    let answer_text = write_answers(&answers_for(&g, &coloring).unwrap());
    let answers = parse_answers(&answer_text).unwrap();
    println!("coloring {coloring}");
    println!(
        "reference decoder:  {:?}",
        decode(&g, &answers, &problem).unwrap()
    );
    println!(
        "structured decoder: {}",
        decode_structured(&descriptor, &answers, &problem).unwrap()
    );
}
