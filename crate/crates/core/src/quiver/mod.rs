//! Finite-dimensional representations over ℚ: a space `ρ(v) = ℚ^d` per vertex
//! and a matrix `ρ(e)` of shape `dim ρ(te) × dim ρ(se)` per arrow.
//!
//! When every stacked map `⊕_{se=v} ρ(e)` is invertible (condition Iso), the
//! representation carries a right action of the Leavitt path algebra; see
//! [`Actions`].

mod action;
mod matrix;
mod roundtrip;

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use thiserror::Error;

use crate::digraph::{ArrowId, Digraph, DigraphError, VertexId};
use crate::ErrorClass;

pub use action::{generator_action, relation_audit, Actions, AuditReport, Generator, Relation, RelationFailure};
pub use matrix::{BlockMatrix, Matrix};
pub use roundtrip::{reconstruct, restrict, restrict_and_reconstruct, RoundTrip};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("map for {arrow:?} has shape {found:?}, expected {expected:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("condition Iso fails at vertex {0:?}")]
    IsoFails(String),
    #[error("representation and reduction step live over different digraphs")]
    WrongDigraph,
}

impl QuiverError {
    pub fn class(&self) -> ErrorClass {
        match self {
            QuiverError::Digraph(e) => e.class(),
            QuiverError::Parse { .. } | QuiverError::Shape { .. } => ErrorClass::Input,
            QuiverError::IsoFails(_) | QuiverError::WrongDigraph => ErrorClass::Precondition,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    graph: Arc<Digraph>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// Per non-sink vertex, whether its stacked map is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub verdicts: Vec<(VertexId, bool)>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.1)
    }

    pub fn first_failure(&self) -> Option<VertexId> {
        self.verdicts.iter().find(|v| !v.1).map(|v| v.0)
    }
}

impl Representation {
    pub fn new(graph: Arc<Digraph>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation, QuiverError> {
        assert_eq!(dims.len(), graph.vertex_count(), "one dimension per vertex");
        assert_eq!(maps.len(), graph.arrow_count(), "one map per arrow");
        for e in graph.arrow_ids() {
            let expected = (dims[graph.target(e).index()], dims[graph.source(e).index()]);
            let found = maps[e.index()].shape();
            if expected != found {
                return Err(QuiverError::Shape {
                    arrow: graph.arrow_name(e).to_string(),
                    expected,
                    found,
                });
            }
        }
        Ok(Representation { graph, dims, maps })
    }

    pub fn zero(graph: &Arc<Digraph>) -> Representation {
        Representation {
            graph: graph.clone(),
            dims: vec![0; graph.vertex_count()],
            maps: vec![Matrix::zeros(0, 0); graph.arrow_count()],
        }
    }

    pub fn graph(&self) -> &Arc<Digraph> {
        &self.graph
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims[v.index()]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, e: ArrowId) -> &Matrix {
        &self.maps[e.index()]
    }

    /// `⊕_{se=v} ρ(e): ρ(v) → ⊕ ρ(te)`, blocks in out-arrow order.
    pub fn stacked(&self, v: VertexId) -> Matrix {
        let blocks: Vec<&Matrix> = self.graph.out_arrows(v).iter().map(|&e| self.map(e)).collect();
        Matrix::vstack(&blocks, self.dim(v))
    }

    pub fn check_iso(&self) -> IsoReport {
        let verdicts = self
            .graph
            .vertices()
            .filter(|&v| !self.graph.is_sink(v))
            .map(|v| {
                let s = self.stacked(v);
                (v, s.rows() == s.cols() && s.rank() == s.cols())
            })
            .collect();
        IsoReport { verdicts }
    }

    pub(crate) fn require_iso(&self) -> Result<(), QuiverError> {
        match self.check_iso().first_failure() {
            Some(v) => Err(QuiverError::IsoFails(self.graph.vertex_name(v).to_string())),
            None => Ok(()),
        }
    }

    /// Reads the text format written by [`Self::render`]:
    ///
    /// ```text
    /// dim u = 2
    /// dim v = 1
    /// map e
    /// 1 -1/2
    /// end
    /// ```
    ///
    /// Every vertex needs a `dim` line. A map may be omitted only when one of
    /// its endpoints has dimension 0.
    pub fn parse(graph: &Arc<Digraph>, text: &str) -> Result<Representation, QuiverError> {
        let g = &**graph;
        let mut dims: Vec<Option<usize>> = vec![None; g.vertex_count()];
        let mut rows_of: Vec<Option<Vec<Vec<BigRational>>>> = vec![None; g.arrow_count()];
        let mut open: Option<(ArrowId, usize)> = None;
        let err = |line: usize, message: String| QuiverError::Parse { line, message };
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            last = lineno;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((e, _)) = open {
                if line == "end" {
                    open = None;
                    continue;
                }
                let row = line
                    .split_whitespace()
                    .map(|w| BigRational::from_str(w).map_err(|_| err(lineno, format!("bad rational {w:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                rows_of[e.index()].get_or_insert_with(Vec::new).push(row);
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["dim", v, "=", d] => {
                    let v = g.vertex_id(v)?;
                    let d: usize = d.parse().map_err(|_| err(lineno, format!("bad dimension {d:?}")))?;
                    if dims[v.index()].replace(d).is_some() {
                        return Err(err(lineno, "dimension given twice".into()));
                    }
                }
                ["map", e] => {
                    let e = g.arrow_id(e)?;
                    if rows_of[e.index()].replace(Vec::new()).is_some() {
                        return Err(err(lineno, "map given twice".into()));
                    }
                    open = Some((e, lineno));
                }
                _ => return Err(err(lineno, "expected `dim <v> = <d>` or `map <e>`".into())),
            }
        }
        if let Some((_, line)) = open {
            return Err(err(line, "map block is missing `end`".into()));
        }
        let mut out_dims = Vec::with_capacity(dims.len());
        for v in g.vertices() {
            out_dims.push(dims[v.index()].ok_or_else(|| err(last, format!("no dimension for vertex {:?}", g.vertex_name(v))))?);
        }
        let mut maps = Vec::with_capacity(g.arrow_count());
        for e in g.arrow_ids() {
            let (r, c) = (out_dims[g.target(e).index()], out_dims[g.source(e).index()]);
            let m = match rows_of[e.index()].take() {
                Some(rows) if rows.is_empty() && r * c == 0 => Matrix::zeros(r, c),
                Some(rows) => {
                    let found = (rows.len(), rows.first().map_or(0, Vec::len));
                    Matrix::from_rows(rows, c).filter(|m| m.rows() == r).ok_or_else(|| QuiverError::Shape {
                        arrow: g.arrow_name(e).to_string(),
                        expected: (r, c),
                        found,
                    })?
                }
                None if r * c == 0 => Matrix::zeros(r, c),
                None => return Err(err(last, format!("no map for arrow {:?}", g.arrow_name(e)))),
            };
            maps.push(m);
        }
        Representation::new(graph.clone(), out_dims, maps)
    }

    pub fn render(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        for v in g.vertices() {
            out.push_str(&format!("dim {} = {}\n", g.vertex_name(v), self.dim(v)));
        }
        for e in g.arrow_ids() {
            out.push_str(&format!("map {}\n{}end\n", g.arrow_name(e), self.map(e)));
        }
        out
    }

    /// A random representation satisfying Iso with every `dim ρ(v) ≤ max_dim`.
    ///
    /// Sinks and cycles get random dimensions, other vertices the sum over
    /// their arrow targets. Each non-sink gets a random invertible matrix cut
    /// into row blocks.
    pub fn random<R: Rng>(graph: &Arc<Digraph>, max_dim: usize, rng: &mut R) -> Result<Representation, QuiverError> {
        let g = &**graph;
        // cyclic components; finite dimension forces 0 on any that is not a
        // single cycle, and on everything reachable from a cycle's exits
        let mut on_cycle = vec![false; g.vertex_count()];
        let mut seeds = Vec::new();
        let mut free: Vec<Vec<VertexId>> = g.sinks().into_iter().map(|w| vec![w]).collect();
        for comp in g.strongly_connected_components() {
            let inside = |v: VertexId| comp.contains(&v);
            let internal = |v: VertexId| g.out_arrows(v).iter().filter(|&&e| inside(g.target(e))).count();
            if comp.len() == 1 && !g.has_loop(comp[0]) {
                continue;
            }
            for &v in &comp {
                on_cycle[v.index()] = true;
            }
            if comp.iter().all(|&v| internal(v) == 1) {
                for &v in &comp {
                    seeds.extend(g.out_arrows(v).iter().map(|&e| g.target(e)).filter(|&t| !inside(t)));
                }
                free.push(comp);
            } else {
                seeds.extend(comp);
            }
        }
        let forced = g.successors_of(&seeds);
        free.retain(|node| !forced[node[0].index()]);

        let mut hi = max_dim.max(1);
        let mut zeroed = 0;
        let dims = loop {
            let mut dims = vec![0usize; g.vertex_count()];
            for (i, node) in free.iter().enumerate() {
                let d = if i < zeroed { 0 } else { rng.gen_range(0..=hi) };
                for &v in node {
                    dims[v.index()] = d;
                }
            }
            fill_sums(g, &mut dims, &on_cycle);
            if dims.iter().all(|&d| d <= max_dim) {
                break dims;
            }
            if hi > 1 {
                hi /= 2;
            } else {
                zeroed += 1;
            }
        };

        let mut maps = vec![Matrix::zeros(0, 0); g.arrow_count()];
        for e in g.arrow_ids() {
            maps[e.index()] = Matrix::zeros(dims[g.target(e).index()], dims[g.source(e).index()]);
        }
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let n = dims[v.index()];
            let m = random_invertible(n, rng);
            let mut row = 0;
            for &e in g.out_arrows(v) {
                let r = dims[g.target(e).index()];
                maps[e.index()] = m.sub_block(row, 0, r, n);
                row += r;
            }
        }
        Representation::new(graph.clone(), dims, maps)
    }
}

/// Non-sink vertices off the cycles get the sum of their targets' dimensions.
fn fill_sums(g: &Digraph, dims: &mut [usize], on_cycle: &[bool]) {
    let mut done: Vec<bool> = g.vertices().map(|v| g.is_sink(v) || on_cycle[v.index()]).collect();
    fn visit(g: &Digraph, v: VertexId, dims: &mut [usize], done: &mut [bool]) -> usize {
        if done[v.index()] {
            return dims[v.index()];
        }
        let mut sum = 0;
        for &e in g.out_arrows(v) {
            sum += visit(g, g.target(e), dims, done);
        }
        dims[v.index()] = sum;
        done[v.index()] = true;
        sum
    }
    for v in g.vertices() {
        visit(g, v, dims, &mut done);
    }
}

/// `L·U` with unit-free nonzero diagonals, so always invertible.
fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut l = Matrix::zeros(n, n);
    let mut u = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                let d = [-2, -1, 1, 2][rng.gen_range(0..4)];
                l.set(i, i, int(1));
                u.set(i, i, int(d));
            } else if i > j {
                l.set(i, j, int(rng.gen_range(-2..=2)));
            } else {
                u.set(i, j, int(rng.gen_range(-2..=2)));
            }
        }
    }
    l.mul(&u)
}
