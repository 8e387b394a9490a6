//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use leavitt_core::lpa::{parse_element, Element};
use leavitt_core::{families, Digraph, Ring};

pub fn arc(g: Digraph) -> Arc<Digraph> {
    Arc::new(g)
}

/// An element with a few overlapping ghost-path products, so that
/// normalization has CK2 expansions and seam rewrites to do.
pub fn dense_element(graph: &Arc<Digraph>) -> Element {
    let text = match graph.vertex_count() {
        2 => "(e+f)*(e*+f*)*(e+f)*(e*e*)*(e e)*(e*+f*)",
        _ => "(e1+f1)*(e1*+f1*)*(e1 e1 f1)*(f1* e1*)",
    };
    parse_element(graph, Ring::Rationals, text).expect("fixture parses")
}

/// Chain of `n` looped vertices ending in a sink, then `extra` disjoint
/// pass-through vertices to give the reduction something to eliminate.
pub fn reduction_fixture(n: usize) -> Digraph {
    let mut text = String::new();
    for i in 0..n {
        text += &format!("vertex c{i}\nvertex p{i}\n");
    }
    text += "vertex w\n";
    for i in 0..n {
        text += &format!("arrow l{i} c{i} c{i}\narrow a{i} c{i} p{i} *2\n");
        let next = if i + 1 < n { format!("c{}", i + 1) } else { "w".into() };
        text += &format!("arrow b{i} p{i} {next} *3\n");
    }
    Digraph::parse(&text).expect("fixture parses")
}

pub fn growth_fixtures() -> Vec<(&'static str, Arc<Digraph>)> {
    vec![
        ("toeplitz", arc(families::toeplitz())),
        ("qS3", arc(families::q_sphere_odd(2))),
        ("qD4", arc(families::q_disk(2))),
    ]
}
