//! The partial order on sinks and cycles, heights, Gelfand–Kirillov
//! dimensions and the matrix decomposition for digraphs whose cycles have no
//! exits.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{CycleStructure, Digraph, DigraphError, PTarget, Path, VertexId};
use crate::lpa::{BasisMonomial, CheckReport, Element, LpaError, Normalizer};
use crate::ring::Ring;
use crate::ErrorClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Lpa(#[from] LpaError),
    #[error("cycle {0} has an exit; no matrix decomposition")]
    CycleWithExit(String),
    #[error("no Gelfand-Kirillov data for coefficient ring {0}")]
    UnsupportedRing(Ring),
}

impl StructureError {
    pub fn class(&self) -> ErrorClass {
        match self {
            StructureError::Digraph(e) => e.class(),
            StructureError::Lpa(e) => e.class(),
            StructureError::CycleWithExit(_) | StructureError::UnsupportedRing(_) => ErrorClass::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetNode {
    Sink(VertexId),
    /// Index into [`CycleStructure::cycles`].
    Cycle(usize),
}

/// Sinks and cycles ordered by reachability, with heights.
#[derive(Debug, Clone)]
pub struct CyclePoset {
    structure: CycleStructure,
    nodes: Vec<PosetNode>,
    /// `below[i]`: nodes `j ≠ i` with `i ⇝ j`.
    below: Vec<Vec<usize>>,
    heights: Vec<u32>,
}

impl CyclePoset {
    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    pub fn structure(&self) -> &CycleStructure {
        &self.structure
    }

    pub fn height_of(&self, i: usize) -> u32 {
        self.heights[i]
    }

    pub fn strictly_below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    /// `ht(Γ)`: the largest height of a cycle, or 0.
    pub fn height(&self) -> u32 {
        self.nodes
            .iter()
            .zip(&self.heights)
            .filter(|(n, _)| matches!(n, PosetNode::Cycle(_)))
            .map(|(_, &h)| h)
            .max()
            .unwrap_or(0)
    }

    /// Cover relations `(upper, lower)` of the order.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (i, below) in self.below.iter().enumerate() {
            for &j in below {
                let covered = below.iter().any(|&k| k != j && self.below[k].contains(&j));
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    pub fn node_name(&self, g: &Digraph, i: usize) -> String {
        match self.nodes[i] {
            PosetNode::Sink(w) => g.vertex_name(w).to_string(),
            PosetNode::Cycle(c) => format!("[{}]", self.structure.cycle(c).render(g)),
        }
    }
}

pub fn build_poset(g: &Digraph) -> Result<CyclePoset, StructureError> {
    let structure = g.cycle_structure()?;
    let mut nodes: Vec<PosetNode> = g.sinks().into_iter().map(PosetNode::Sink).collect();
    nodes.extend((0..structure.cycles().len()).map(PosetNode::Cycle));
    let anchor = |n: &PosetNode| match *n {
        PosetNode::Sink(w) => w,
        PosetNode::Cycle(c) => structure.cycle(c).base(),
    };
    let below: Vec<Vec<usize>> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let reach = g.successors_of(&[anchor(n)]);
            (0..nodes.len())
                .filter(|&j| j != i && reach[anchor(&nodes[j]).index()])
                .collect()
        })
        .collect();

    fn height(i: usize, nodes: &[PosetNode], below: &[Vec<usize>], memo: &mut [Option<u32>], s: &CycleStructure) -> u32 {
        if let Some(h) = memo[i] {
            return h;
        }
        let h = match nodes[i] {
            PosetNode::Sink(_) => 0,
            PosetNode::Cycle(c) if !s.has_exit(c) => 1,
            PosetNode::Cycle(_) => {
                let mut best = 0;
                for &j in &below[i] {
                    best = best.max(height(j, nodes, below, memo, s));
                }
                2 + best
            }
        };
        memo[i] = Some(h);
        h
    }
    let mut memo = vec![None; nodes.len()];
    let heights = (0..nodes.len())
        .map(|i| height(i, &nodes, &below, &mut memo, &structure))
        .collect();
    Ok(CyclePoset {
        structure,
        nodes,
        below,
        heights,
    })
}

pub fn height(g: &Digraph) -> Result<u32, StructureError> {
    Ok(build_poset(g)?.height())
}

/// What is known about the coefficient ring `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Field,
    IntegralDomain,
    /// A `k`-algebra over a field with the given GK dimension.
    Algebra { gk_dim: u32 },
}

impl Coefficients {
    pub fn for_ring(ring: Ring) -> Result<Coefficients, StructureError> {
        match ring {
            Ring::Rationals => Ok(Coefficients::Field),
            Ring::IntegersMod(m) if is_prime(m) => Ok(Coefficients::Field),
            Ring::IntegersMod(_) => Err(StructureError::UnsupportedRing(ring)),
            Ring::Integers => Ok(Coefficients::IntegralDomain),
            Ring::Laurent => Ok(Coefficients::Algebra { gk_dim: 1 }),
        }
    }

    pub fn offset(self) -> u32 {
        match self {
            Coefficients::Field | Coefficients::IntegralDomain => 0,
            Coefficients::Algebra { gk_dim } => gk_dim,
        }
    }
}

fn is_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkDim {
    Finite(u32),
    Infinite,
}

impl fmt::Display for GkDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GkDim::Finite(d) => write!(f, "{d}"),
            GkDim::Infinite => f.write_str("inf"),
        }
    }
}

/// `ht(Γ) + GKdim(k)`, or infinite when two cycles share a vertex.
pub fn gk_dim(g: &Digraph, coefficients: Coefficients) -> Result<GkDim, StructureError> {
    match build_poset(g) {
        Ok(p) => Ok(GkDim::Finite(p.height() + coefficients.offset())),
        Err(StructureError::Digraph(DigraphError::IntersectingCycles(_))) => Ok(GkDim::Infinite),
        Err(e) => Err(e),
    }
}

/// `⌈ht(Γ)/2⌉ + GKdim(k)` for the path algebra.
pub fn gk_dim_path_algebra(g: &Digraph, coefficients: Coefficients) -> Result<u32, StructureError> {
    Ok(height(g)?.div_ceil(2) + coefficients.offset())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Summand {
    /// `M_{P_w}(k)`.
    Sink { sink: VertexId, index: Vec<Path> },
    /// `M_{P_C}(k[x, x⁻¹])`.
    Cycle { cycle: usize, index: Vec<Path> },
}

impl Summand {
    pub fn size(&self) -> usize {
        match self {
            Summand::Sink { index, .. } | Summand::Cycle { index, .. } => index.len(),
        }
    }

    pub fn index(&self) -> &[Path] {
        match self {
            Summand::Sink { index, .. } | Summand::Cycle { index, .. } => index,
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, Summand::Cycle { .. })
    }

    /// `M_n(k)` or `M_n(k[x,x^-1])`.
    pub fn shape(&self) -> String {
        if self.is_laurent() {
            format!("M_{}(k[x,x^-1])", self.size())
        } else {
            format!("M_{}(k)", self.size())
        }
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    structure: CycleStructure,
    summands: Vec<Summand>,
}

impl Decomposition {
    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn structure(&self) -> &CycleStructure {
        &self.structure
    }

    /// `Σ n²` over the matrix summands over `k`; the `k`-dimension when acyclic.
    pub fn sink_dimension(&self) -> usize {
        self.summands
            .iter()
            .filter(|s| !s.is_laurent())
            .map(|s| s.size() * s.size())
            .sum()
    }

    /// `M_2(k) + M_1(k[x,x^-1])`.
    pub fn shape(&self) -> String {
        if self.summands.is_empty() {
            return "0".to_string();
        }
        self.summands.iter().map(Summand::shape).collect::<Vec<_>>().join(" + ")
    }
}

/// One summand per sink and per cycle; every cycle must be exitless.
pub fn decompose(g: &Digraph) -> Result<Decomposition, StructureError> {
    let structure = g.cycle_structure()?;
    if let Some(c) = (0..structure.cycles().len()).find(|&c| structure.has_exit(c)) {
        return Err(StructureError::CycleWithExit(structure.cycle(c).render(g)));
    }
    let mut summands = Vec::new();
    for w in g.sinks() {
        let index = g.enumerate_p(&PTarget::Sink(w), None, 0)?.paths;
        summands.push(Summand::Sink { sink: w, index });
    }
    for (ci, c) in structure.cycles().iter().enumerate() {
        let index = g.enumerate_p(&PTarget::Cycle(c.clone()), None, 0)?.paths;
        summands.push(Summand::Cycle { cycle: ci, index });
    }
    Ok(Decomposition { structure, summands })
}

/// Samples `pq*·rs* = δ_{q,r} ps*` in sink summands and
/// `pCᵐq*·rCⁿs* = δ_{q,r} pC^{m+n}s*` in cycle summands, using normalization.
pub fn matrix_unit_check(g: &Arc<Digraph>, samples: usize, seed: u64) -> Result<CheckReport, StructureError> {
    let decomposition = decompose(g)?;
    let normalizer = Normalizer::new(g)?;
    let ring = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    let nonempty: Vec<&Summand> = decomposition.summands().iter().filter(|s| s.size() > 0).collect();
    let element = |b: BasisMonomial| Element::monomial(g, ring, normalizer.from_basis(&b));
    for _ in 0..samples {
        let Some(summand) = nonempty.choose(&mut rng) else {
            break;
        };
        let index = summand.index();
        let pick = |rng: &mut ChaCha8Rng| index.choose(rng).expect("nonempty").clone();
        let (p, q, s) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        // Bias towards the matching case so both branches are exercised.
        let r = if rng.gen_bool(0.5) { q.clone() } else { pick(&mut rng) };
        let (a, b, expected) = match summand {
            Summand::Sink { sink, .. } => {
                let unit = |p: &Path, q: &Path| BasisMonomial::Sink {
                    p: p.clone(),
                    q: q.clone(),
                    sink: *sink,
                };
                let expected = (q == r).then(|| unit(&p, &s));
                (unit(&p, &q), unit(&r, &s), expected)
            }
            Summand::Cycle { cycle, .. } => {
                let (m, n) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                let unit = |p: &Path, k: i64, q: &Path| BasisMonomial::Cycle {
                    p: p.clone(),
                    n: k,
                    q: q.clone(),
                    cycle: *cycle,
                };
                let expected = (q == r).then(|| unit(&p, m + n, &s));
                (unit(&p, m, &q), unit(&r, n, &s), expected)
            }
        };
        let product = element(a).mul(&element(b))?;
        let expected = match expected {
            Some(e) => element(e),
            None => Element::zero(g, ring),
        };
        let ok = normalizer.equals(&product, &expected)?;
        report.record(ok, || format!("unit law fails: {product} vs {expected}"));
    }
    Ok(report)
}
