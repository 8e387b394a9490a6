//! Random and exhaustive digraphs with pairwise disjoint cycles, and random
//! algebra elements.

use std::sync::Arc;

use leavitt_core::digraph::DigraphBuilder;
use leavitt_core::lpa::{Element, Monomial};
use leavitt_core::{Digraph, LaurentPoly, Path, Ring, RingValue, VertexId};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

/// A block of the vertex order: a vertex with or without a loop, or a cycle.
#[derive(Debug, Clone, Copy)]
enum Block {
    Plain,
    Looped,
    Cycle(usize),
}

impl Block {
    fn size(self) -> usize {
        match self {
            Block::Plain | Block::Looped => 1,
            Block::Cycle(k) => k,
        }
    }
}

fn assemble(blocks: &[Block], forward: &[(usize, usize, usize)]) -> Digraph {
    let mut b = DigraphBuilder::new();
    let n: usize = blocks.iter().map(|b| b.size()).sum();
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    for name in &names {
        b.vertex(name).unwrap();
    }
    let mut arrow = 0;
    let mut next = |b: &mut DigraphBuilder, s: usize, t: usize| {
        b.arrow(&format!("a{arrow}"), &names[s], &names[t]).unwrap();
        arrow += 1;
    };
    let mut start = 0;
    for block in blocks {
        match *block {
            Block::Plain => {}
            Block::Looped => next(&mut b, start, start),
            Block::Cycle(k) => {
                for i in 0..k {
                    next(&mut b, start + i, start + (i + 1) % k);
                }
            }
        }
        start += block.size();
    }
    for &(s, t, mult) in forward {
        for _ in 0..mult {
            next(&mut b, s, t);
        }
    }
    b.build()
}

fn block_of(blocks: &[Block]) -> Vec<usize> {
    blocks.iter().enumerate().flat_map(|(i, b)| std::iter::repeat_n(i, b.size())).collect()
}

/// Random digraph on at most `max_vertices` vertices whose cycles are
/// pairwise disjoint. Arrows between blocks only go forward in the order.
pub fn random_digraph<R: Rng>(rng: &mut R, max_vertices: usize, acyclic: bool) -> Digraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let block = match rng.gen_range(0..4) {
            _ if acyclic => Block::Plain,
            0 => Block::Looped,
            1 if left >= 2 => Block::Cycle(rng.gen_range(2..=left.min(3))),
            _ => Block::Plain,
        };
        left -= block.size();
        blocks.push(block);
    }
    let owner = block_of(&blocks);
    let mut forward = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if owner[s] < owner[t] && rng.gen_bool(0.4) {
                forward.push((s, t, rng.gen_range(1..=2)));
            }
        }
    }
    assemble(&blocks, &forward)
}

fn compositions(n: usize) -> Vec<Vec<Block>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in [Block::Plain, Block::Looped, Block::Cycle(2), Block::Cycle(3), Block::Cycle(4), Block::Cycle(5)] {
        if first.size() > n {
            continue;
        }
        for mut rest in compositions(n - first.size()) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every digraph with `n` vertices built from an ordered sequence of blocks
/// (plain vertex, looped vertex, or a cycle of length ≥ 2) and any set of
/// simple forward arrows between blocks, calling `f` on each.
pub fn for_each_small_digraph(n: usize, mut f: impl FnMut(Digraph)) {
    for blocks in compositions(n) {
        let owner = block_of(&blocks);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .filter(|&(s, t)| owner[s] < owner[t])
            .collect();
        for mask in 0u64..(1 << pairs.len()) {
            let forward: Vec<(usize, usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(s, t))| (s, t, 1))
                .collect();
            f(assemble(&blocks, &forward));
        }
    }
}

/// A random path of length at most `max_len` starting at `v`.
pub fn random_path_from<R: Rng>(g: &Digraph, v: VertexId, max_len: usize, rng: &mut R) -> Path {
    let mut arrows = Vec::new();
    let mut at = v;
    for _ in 0..rng.gen_range(0..=max_len) {
        let Some(&e) = g.out_arrows(at).choose(rng) else { break };
        arrows.push(e);
        at = g.target(e);
    }
    if arrows.is_empty() {
        Path::vertex(v)
    } else {
        Path::from_arrows(g, &arrows).unwrap()
    }
}

/// A random path of length at most `max_len` ending at `v`.
pub fn random_path_into<R: Rng>(g: &Digraph, v: VertexId, max_len: usize, rng: &mut R) -> Path {
    let mut arrows = Vec::new();
    let mut at = v;
    for _ in 0..rng.gen_range(0..=max_len) {
        let Some(&e) = g.in_arrows(at).choose(rng) else { break };
        arrows.push(e);
        at = g.source(e);
    }
    arrows.reverse();
    if arrows.is_empty() {
        Path::vertex(v)
    } else {
        Path::from_arrows(g, &arrows).unwrap()
    }
}

pub fn random_vertex<R: Rng>(g: &Digraph, rng: &mut R) -> VertexId {
    VertexId(rng.gen_range(0..g.vertex_count() as u32))
}

pub fn random_monomial<R: Rng>(g: &Digraph, max_len: usize, rng: &mut R) -> Monomial {
    let v = random_vertex(g, rng);
    let p = random_path_into(g, v, max_len, rng);
    let q = random_path_into(g, v, max_len, rng);
    Monomial::new(p, q).unwrap()
}

pub fn random_value<R: Rng>(ring: Ring, rng: &mut R) -> RingValue {
    let small = |rng: &mut R| {
        let x = rng.gen_range(-3i64..=3);
        if x == 0 {
            1
        } else {
            x
        }
    };
    match ring {
        Ring::Rationals => RingValue::Rat(BigRational::new(BigInt::from(small(rng)), BigInt::from(rng.gen_range(1..=3)))),
        Ring::Laurent => {
            let mut p = LaurentPoly::zero();
            for _ in 0..rng.gen_range(1..=2) {
                let c = BigRational::from_integer(BigInt::from(small(rng)));
                p = p.add(&LaurentPoly::monomial(c, rng.gen_range(-2..=2)));
            }
            if p.is_zero() {
                ring.one()
            } else {
                RingValue::Laurent(p)
            }
        }
        _ => ring.from_i64(small(rng)),
    }
}

pub fn random_element<R: Rng>(g: &Arc<Digraph>, ring: Ring, terms: usize, max_len: usize, rng: &mut R) -> Element {
    let items: Vec<(Monomial, RingValue)> = (0..rng.gen_range(1..=terms))
        .map(|_| (random_monomial(g, max_len, rng), random_value(ring, rng)))
        .collect();
    Element::from_terms(g, ring, items).unwrap()
}

/// A cycle `c0 → c1 → … → c0` of length `len` with exits from the listed
/// positions, each to its own sink.
pub fn cycle_with_exits(len: usize, exits: &[usize]) -> Digraph {
    let mut b = DigraphBuilder::new();
    for i in 0..len {
        b.vertex(&format!("c{i}")).unwrap();
    }
    for i in 0..len {
        b.arrow(&format!("e{i}"), &format!("c{i}"), &format!("c{}", (i + 1) % len)).unwrap();
    }
    for (k, &pos) in exits.iter().enumerate() {
        b.vertex(&format!("w{k}")).unwrap();
        b.arrow(&format!("f{k}"), &format!("c{pos}"), &format!("w{k}")).unwrap();
    }
    b.build()
}

/// Every cycle of length at most 4 with at most 2 exits, up to rotation.
pub fn seam_graphs() -> Vec<Digraph> {
    let mut out = Vec::new();
    for len in 1..=4 {
        out.push(cycle_with_exits(len, &[]));
        for a in 0..len {
            out.push(cycle_with_exits(len, &[a]));
            for b in a..len {
                out.push(cycle_with_exits(len, &[a, b]));
            }
        }
    }
    out
}
