//! Named example digraphs.
//!
//! Quantum-space digraphs use vertices `1..n` with loops `e1..en` and chain
//! arrows `f1..f(n-1)`; sinks are named `w`, `w1`, `w2`.

use crate::digraph::{Digraph, DigraphBuilder};

fn build(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Digraph {
    Digraph::from_parts(vertices, arrows).expect("family definitions are well formed")
}

/// A single vertex.
pub fn gamma1() -> Digraph {
    build(&["v"], &[])
}

/// `u --e--> v`.
pub fn gamma2() -> Digraph {
    build(&["u", "v"], &[("e", "u", "v")])
}

/// One vertex `v` with a loop `e`.
pub fn single_loop() -> Digraph {
    build(&["v"], &[("e", "v", "v")])
}

/// The Toeplitz digraph: loop `e` at `v` and `f: v → w`.
pub fn toeplitz() -> Digraph {
    build(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")])
}

/// The rose with `n` petals: loops `e1..en` at `v`.
pub fn rose(n: usize) -> Digraph {
    let mut b = DigraphBuilder::new();
    b.vertex("v").unwrap();
    for i in 1..=n {
        b.arrow(&format!("e{i}"), "v", "v").unwrap();
    }
    b.build()
}

fn loop_chain(n: usize) -> DigraphBuilder {
    let mut b = DigraphBuilder::new();
    for i in 1..=n {
        b.vertex(&i.to_string()).unwrap();
    }
    for i in 1..=n {
        let v = i.to_string();
        b.arrow(&format!("e{i}"), &v, &v).unwrap();
        if i < n {
            b.arrow(&format!("f{i}"), &v, &(i + 1).to_string()).unwrap();
        }
    }
    b
}

/// Quantum disk `qD^{2n}`: a chain of `n` looped vertices ending in a sink.
pub fn q_disk(n: usize) -> Digraph {
    let mut b = loop_chain(n);
    b.vertex("w").unwrap();
    b.arrow(&format!("f{n}"), &n.to_string(), "w").unwrap();
    b.build()
}

/// Odd quantum sphere `qS^{2n-1}`: a chain of `n` looped vertices.
pub fn q_sphere_odd(n: usize) -> Digraph {
    loop_chain(n).build()
}

/// Even quantum sphere `qS^{2n}`: the chain ends with arrows to two sinks.
pub fn q_sphere_even(n: usize) -> Digraph {
    let mut b = loop_chain(n);
    b.vertex("w1").unwrap();
    b.vertex("w2").unwrap();
    b.arrow(&format!("f{n}"), &n.to_string(), "w1").unwrap();
    b.arrow(&format!("g{n}"), &n.to_string(), "w2").unwrap();
    b.build()
}

/// Quantum real projective space `qRP^{2n}`: two parallel arrows into one sink.
pub fn q_rp(n: usize) -> Digraph {
    let mut b = loop_chain(n);
    b.vertex("w").unwrap();
    b.arrow(&format!("f{n}"), &n.to_string(), "w").unwrap();
    b.arrow(&format!("g{n}"), &n.to_string(), "w").unwrap();
    b.build()
}

/// The reduction example: `u→v`, five `u→x`, three `v→w`, two `w→v`, `x→y`.
pub fn reduction_example() -> Digraph {
    Digraph::parse(
        "vertex u\nvertex v\nvertex w\nvertex x\nvertex y\n\
         arrow a u v\narrow b u x *5\narrow c v w *3\narrow d w v *2\narrow h x y\n",
    )
    .expect("family definitions are well formed")
}

/// `u ⇄ v ⇄ w`; its complete reductions depend on the elimination order.
pub fn lambda() -> Digraph {
    build(
        &["u", "v", "w"],
        &[("a", "u", "v"), ("b", "v", "u"), ("c", "v", "w"), ("d", "w", "v")],
    )
}
