//! Small end-to-end tour: build a restriction hypergraph, decide the
//! Turánnical property, and inspect the certified witness.

use turannical::experiments::sample_hypergraph;
use turannical::solver::{is_turannical, max_undetected_edges, SearchBudget};
use turannical::turan::{intersection_hypergraph, turan_number, turm};
use turannical::UniformHypergraph;

fn main() {
    // The complete restriction hypergraph is Turánnical (Turán's theorem).
    let complete = UniformHypergraph::complete(3, 8).unwrap();
    let (verdict, report) = is_turannical(&complete, SearchBudget::default()).unwrap();
    println!(
        "complete K^(3)_8: {verdict:?}, best undetected graph has {} edges (t_3(8) = {})",
        report.max_undetected_edges,
        turan_number(3, 8).unwrap()
    );

    // Restricting to triples meeting a 2-set leaves room for more edges.
    let f = intersection_hypergraph(3, 10, 2).unwrap();
    let report = max_undetected_edges(&f, SearchBudget::default()).unwrap();
    println!(
        "I^(3)(10,2): max undetected = {} (formula gives {}), optimal = {}",
        report.max_undetected_edges,
        turm(3, 10, 2).unwrap(),
        report.optimal
    );

    // A sparse random restriction hypergraph usually fails to be Turánnical.
    let sparse = sample_hypergraph(3, 12, 0.1, 42).unwrap();
    let (verdict, report) = is_turannical(&sparse, SearchBudget::default()).unwrap();
    println!(
        "R^(3)(12, 0.1) seed 42: {verdict:?}, witness with {} edges vs t_3(12) = {}",
        report.max_undetected_edges,
        turan_number(3, 12).unwrap()
    );
}
