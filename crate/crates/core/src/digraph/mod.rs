//! Finite multidigraphs `(V, E, s, t)`.
//!
//! Vertices and arrows are addressed by dense ids ([`VertexId`], [`ArrowId`])
//! in declaration order; names are unique within their kind. Loops and
//! parallel arrows are allowed.

mod paths;
mod sets;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::ErrorClass;

pub use paths::{Cycle, CycleReport, CycleStructure, PEnumeration, PTarget, Path, DEFAULT_CYCLE_CAP};
pub use sets::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} refers to unknown vertex {vertex:?}")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("arrows {0:?} and {1:?} are not composable")]
    NotComposable(String, String),
    #[error("cycle enumeration exceeded the cap of {0} cycles")]
    CycleCapExceeded(usize),
    #[error("cycles through vertex {0:?} are not pairwise disjoint")]
    IntersectingCycles(String),
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
}

impl DigraphError {
    pub fn class(&self) -> ErrorClass {
        match self {
            DigraphError::Syntax { .. }
            | DigraphError::DuplicateVertex(_)
            | DigraphError::DuplicateArrow(_)
            | DigraphError::DanglingEndpoint { .. }
            | DigraphError::UnknownVertex(_)
            | DigraphError::UnknownArrow(_)
            | DigraphError::NotComposable(..) => ErrorClass::Input,
            DigraphError::CycleCapExceeded(_) => ErrorClass::Budget,
            DigraphError::IntersectingCycles(_) | DigraphError::NotHereditarySaturated => {
                ErrorClass::Precondition
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone)]
pub struct Digraph {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    out: Vec<Vec<ArrowId>>,
    inc: Vec<Vec<ArrowId>>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.arrows == other.arrows
    }
}

impl Eq for Digraph {}

/// Incremental construction with name validation.
#[derive(Debug, Default)]
pub struct DigraphBuilder {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl DigraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> Result<VertexId, DigraphError> {
        if self.vertex_index.contains_key(name) {
            return Err(DigraphError::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.vertex_names.len() as u32);
        self.vertex_names.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId, DigraphError> {
        let lookup = |v: &str| {
            self.vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| DigraphError::DanglingEndpoint {
                    arrow: name.to_string(),
                    vertex: v.to_string(),
                })
        };
        let (s, t) = (lookup(source)?, lookup(target)?);
        self.arrow_between(name, s, t)
    }

    pub fn arrow_between(
        &mut self,
        name: &str,
        source: VertexId,
        target: VertexId,
    ) -> Result<ArrowId, DigraphError> {
        if self.arrow_index.contains_key(name) {
            return Err(DigraphError::DuplicateArrow(name.to_string()));
        }
        let id = ArrowId(self.arrows.len() as u32);
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn has_arrow(&self, name: &str) -> bool {
        self.arrow_index.contains_key(name)
    }

    pub fn build(self) -> Digraph {
        let n = self.vertex_names.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, a) in self.arrows.iter().enumerate() {
            out[a.source.index()].push(ArrowId(i as u32));
            inc[a.target.index()].push(ArrowId(i as u32));
        }
        Digraph {
            vertex_names: self.vertex_names,
            arrows: self.arrows,
            vertex_index: self.vertex_index,
            arrow_index: self.arrow_index,
            out,
            inc,
        }
    }
}

impl Digraph {
    /// Convenience constructor: `vertices` by name, `arrows` as `(name, source, target)`.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Digraph, DigraphError> {
        let mut b = DigraphBuilder::new();
        for v in vertices {
            b.vertex(v)?;
        }
        for (name, s, t) in arrows {
            b.arrow(name, s, t)?;
        }
        Ok(b.build())
    }

    /// Parses the line-oriented digraph format:
    ///
    /// ```text
    /// # comment
    /// vertex v
    /// arrow e v w        # one arrow
    /// arrow f v w *3     # f_1, f_2, f_3
    /// ```
    pub fn parse(text: &str) -> Result<Digraph, DigraphError> {
        let mut b = DigraphBuilder::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| DigraphError::Syntax {
                line: lineno + 1,
                message: message.to_string(),
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["vertex", name] => {
                    b.vertex(name)?;
                }
                ["arrow", name, src, dst] => {
                    b.arrow(name, src, dst)?;
                }
                ["arrow", name, src, dst, mult] => {
                    let k: usize = mult
                        .strip_prefix('*')
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(|| syntax("multiplicity must look like *<k>"))?;
                    for i in 1..=k {
                        b.arrow(&format!("{name}_{i}"), src, dst)?;
                    }
                }
                ["vertex", ..] => return Err(syntax("expected `vertex <name>`")),
                ["arrow", ..] => return Err(syntax("expected `arrow <name> <src> <dst> [*k]`")),
                _ => return Err(syntax("unknown directive")),
            }
        }
        Ok(b.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn arrow(&self, e: ArrowId) -> &Arrow {
        &self.arrows[e.index()]
    }

    pub fn source(&self, e: ArrowId) -> VertexId {
        self.arrows[e.index()].source
    }

    pub fn target(&self, e: ArrowId) -> VertexId {
        self.arrows[e.index()].target
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn arrow_name(&self, e: ArrowId) -> &str {
        &self.arrows[e.index()].name
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId, DigraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| DigraphError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId, DigraphError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| DigraphError::UnknownArrow(name.to_string()))
    }

    pub fn out_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.out[v.index()]
    }

    pub fn in_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.inc[v.index()]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v.index()].is_empty()
    }

    pub fn has_loop(&self, v: VertexId) -> bool {
        self.out[v.index()].iter().any(|&e| self.target(e) == v)
    }

    /// Vertices without outgoing arrows, in declaration order.
    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        !self.on_some_cycle().iter().any(|&b| b)
    }

    /// `u ⇝ v`: a path (possibly of length 0) from `u` to `v` exists.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.successors_of(&[u])[v.index()]
    }

    /// Membership vector of all successors of `start` (including `start`).
    pub(crate) fn successors_of(&self, start: &[VertexId]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack: Vec<VertexId> = Vec::new();
        for &s in start {
            if !seen[s.index()] {
                seen[s.index()] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &e in self.out_arrows(u) {
                let t = self.target(e);
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Membership vector of all predecessors of `targets` (including them).
    pub(crate) fn predecessors_of(&self, targets: &[VertexId]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack: Vec<VertexId> = Vec::new();
        for &s in targets {
            if !seen[s.index()] {
                seen[s.index()] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &e in self.in_arrows(u) {
                let s = self.source(e);
                if !seen[s.index()] {
                    seen[s.index()] = true;
                    stack.push(s);
                }
            }
        }
        seen
    }

    /// Strongly connected components, each sorted by vertex id.
    pub(crate) fn strongly_connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut g = petgraph::Graph::<(), ()>::with_capacity(self.vertex_count(), self.arrow_count());
        let nodes: Vec<_> = self.vertices().map(|_| g.add_node(())).collect();
        for a in &self.arrows {
            g.add_edge(nodes[a.source.index()], nodes[a.target.index()], ());
        }
        petgraph::algo::tarjan_scc(&g)
            .into_iter()
            .map(|comp| {
                let mut vs: Vec<VertexId> = comp.into_iter().map(|n| VertexId(n.index() as u32)).collect();
                vs.sort();
                vs
            })
            .collect()
    }

    /// For each vertex, whether it lies on at least one cycle.
    pub(crate) fn on_some_cycle(&self) -> Vec<bool> {
        let mut on = vec![false; self.vertex_count()];
        for comp in self.strongly_connected_components() {
            if comp.len() > 1 || self.has_loop(comp[0]) {
                for v in comp {
                    on[v.index()] = true;
                }
            }
        }
        on
    }

    /// Full subgraph on the vertices with `keep[v]`; names are preserved.
    pub fn full_subgraph(&self, keep: &[bool]) -> Digraph {
        let mut b = DigraphBuilder::new();
        for v in self.vertices().filter(|v| keep[v.index()]) {
            b.vertex(self.vertex_name(v)).expect("names are unique");
        }
        for a in &self.arrows {
            if keep[a.source.index()] && keep[a.target.index()] {
                b.arrow(&a.name, &self.vertex_names[a.source.index()], &self.vertex_names[a.target.index()])
                    .expect("names are unique");
            }
        }
        b.build()
    }

    /// `Γ/H`: the full subgraph on `V ∖ H`. `H` must be hereditary and saturated.
    pub fn quotient(&self, h: &VertexSet) -> Result<Digraph, DigraphError> {
        if !h.is_hereditary() || !h.is_saturated() {
            return Err(DigraphError::NotHereditarySaturated);
        }
        let keep: Vec<bool> = self.vertices().map(|v| !h.contains(v)).collect();
        Ok(self.full_subgraph(&keep))
    }

    /// Number of arrows from `u` to `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.out_arrows(u).iter().filter(|&&e| self.target(e) == v).count()
    }
}

impl fmt::Display for Digraph {
    /// Writes the digraph in the same grammar [`Digraph::parse`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.vertex_names {
            writeln!(f, "vertex {name}")?;
        }
        for a in &self.arrows {
            writeln!(
                f,
                "arrow {} {} {}",
                a.name,
                self.vertex_names[a.source.index()],
                self.vertex_names[a.target.index()]
            )?;
        }
        Ok(())
    }
}
