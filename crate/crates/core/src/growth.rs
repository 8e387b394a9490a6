//! Two-sided bounds for `dim Wⁿ`, where `W` is spanned by the cycles, their
//! duals, the cycle-free paths (vertices included) and their duals.
//!
//! * `g(n)` counts basis monomials that are products of at most `n`
//!   generators with no rewriting. The cost of a path is the least number of
//!   pieces it splits into, each piece a canonical cycle or a path without a
//!   repeated vertex; the cost of `pq*` is `cost(p) + cost(q)` (1 for a
//!   vertex).
//! * `h(n)` is the size of `Sₙ = Sₙ₋₁ ∪ supp(normalize(b·x))` over `b ∈ Sₙ₋₁`
//!   and generators `x`, which spans a space containing `Wⁿ`.

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::digraph::{ArrowId, Cycle, Digraph, DigraphError, Path, VertexId};
use crate::lpa::{LpaError, Monomial, Normalizer};
use crate::ErrorClass;

/// Default cap on `|Sₙ|` for the upper bound.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrowthError {
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Lpa(#[from] LpaError),
    #[error("upper bound exceeded the budget of {budget} monomials after n = {}", .partial.len().saturating_sub(1))]
    Budget { budget: usize, partial: Vec<usize> },
    #[error("degree fit needs at least 6 rows, got {0}")]
    TooFewRows(usize),
}

impl GrowthError {
    pub fn class(&self) -> ErrorClass {
        match self {
            GrowthError::Digraph(e) => e.class(),
            GrowthError::Lpa(e) => e.class(),
            GrowthError::Budget { .. } => ErrorClass::Budget,
            GrowthError::TooFewRows(_) => ErrorClass::Precondition,
        }
    }
}

/// Paths without a repeated vertex, including the vertices themselves.
pub fn cycle_free_paths(g: &Digraph) -> Vec<Path> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let mut on_path = vec![false; g.vertex_count()];
        on_path[v.index()] = true;
        let mut arrows = Vec::new();
        simple_from(g, v, &mut on_path, &mut arrows, &mut out);
        out.push(Path::vertex(v));
    }
    out
}

fn simple_from(g: &Digraph, at: VertexId, on_path: &mut [bool], arrows: &mut Vec<ArrowId>, out: &mut Vec<Path>) {
    for &e in g.out_arrows(at) {
        let t = g.target(e);
        if on_path[t.index()] {
            continue;
        }
        arrows.push(e);
        out.push(Path::from_arrows(g, arrows).expect("walk is a path"));
        on_path[t.index()] = true;
        simple_from(g, t, on_path, arrows, out);
        on_path[t.index()] = false;
        arrows.pop();
    }
}

/// The generating set as monomials: cycles, cycle-free paths and their duals.
pub fn generators(normalizer: &Normalizer) -> Vec<Monomial> {
    let g = normalizer.graph();
    let mut set: Vec<Monomial> = Vec::new();
    let mut push = |m: Monomial| {
        if !set.contains(&m) {
            set.push(m);
        }
    };
    for c in normalizer.structure().cycles() {
        push(Monomial::path(c.as_path()));
        push(Monomial::dual(c.as_path()));
    }
    for p in cycle_free_paths(g) {
        push(Monomial::path(p.clone()));
        push(Monomial::dual(p));
    }
    set
}

/// Path cost histograms for one sink or cycle base.
struct Histograms {
    /// all paths ending at the anchor, by cost
    all: Vec<u128>,
    /// those ending with a full copy of the cycle
    ending_with_cycle: Vec<u128>,
}

struct CostSearch<'a> {
    g: &'a Digraph,
    cycles: &'a [Cycle],
    own: Option<&'a [ArrowId]>,
    limit: u32,
    hist: Histograms,
    /// reversed arrows: `rev[0]` is the last arrow of the path
    rev: Vec<ArrowId>,
    /// `costs[k]`: cost of the suffix made of the last `k` arrows
    costs: Vec<u32>,
}

impl CostSearch<'_> {
    fn record(&mut self, cost: u32) {
        let k = cost as usize;
        self.hist.all[k] += 1;
        if let Some(c) = self.own {
            if self.rev.len() >= c.len() && self.rev[..c.len()].iter().rev().eq(c.iter()) {
                self.hist.ending_with_cycle[k] += 1;
            }
        }
    }

    /// Cost of the current path, whose first arrow is `rev.last()`.
    fn front_cost(&self) -> u32 {
        let g = self.g;
        let len = self.rev.len();
        let first = |j: usize| self.rev[len - 1 - j];
        let start = g.source(first(0));
        let mut seen = vec![start];
        let mut best = u32::MAX;
        for j in 0..len {
            let e = first(j);
            let t = g.target(e);
            let closes = seen.contains(&t);
            if closes {
                // a canonical cycle starting at `start` is still a piece
                let piece: Vec<ArrowId> = (0..=j).map(first).collect();
                if self.cycles.iter().any(|c| c.base() == start && c.arrows() == piece.as_slice()) {
                    best = best.min(1 + self.costs[len - 1 - j]);
                }
                break;
            }
            seen.push(t);
            best = best.min(1 + self.costs[len - 1 - j]);
        }
        best
    }

    fn run(&mut self, at: VertexId) {
        for &e in self.g.in_arrows(at) {
            self.rev.push(e);
            let cost = self.front_cost();
            if cost <= self.limit {
                self.costs.push(cost);
                self.record(cost);
                self.run(self.g.source(e));
                self.costs.pop();
            }
            self.rev.pop();
        }
    }
}

fn histograms(g: &Digraph, cycles: &[Cycle], anchor: VertexId, own: Option<&[ArrowId]>, limit: u32) -> Histograms {
    let n = limit as usize + 1;
    let mut search = CostSearch {
        g,
        cycles,
        own,
        limit,
        hist: Histograms {
            all: vec![0; n],
            ending_with_cycle: vec![0; n],
        },
        rev: Vec::new(),
        costs: vec![0],
    };
    search.record(0);
    search.run(anchor);
    search.hist
}

/// Cost of a path: least number of pieces, each a canonical cycle or a path
/// with no repeated vertex. Trivial paths cost 0.
pub fn path_cost(g: &Digraph, cycles: &[Cycle], p: &Path) -> u32 {
    let a = p.arrows();
    let mut best = vec![u32::MAX; a.len() + 1];
    best[0] = 0;
    for i in 0..a.len() {
        if best[i] == u32::MAX {
            continue;
        }
        let start = g.source(a[i]);
        let mut seen = vec![start];
        for j in i..a.len() {
            let t = g.target(a[j]);
            if seen.contains(&t) {
                if cycles.iter().any(|c| c.base() == start && c.arrows() == &a[i..=j]) {
                    best[j + 1] = best[j + 1].min(best[i] + 1);
                }
                break;
            }
            seen.push(t);
            best[j + 1] = best[j + 1].min(best[i] + 1);
        }
    }
    best[a.len()]
}

/// `g(n)` for `n = 0..=n_max`; `g(0) = 1` counts the span of the empty product.
pub fn lower_bound(normalizer: &Normalizer, n_max: usize) -> Result<Vec<u128>, GrowthError> {
    let g = &**normalizer.graph();
    let cycles = normalizer.structure().cycles();
    let limit = n_max as u32;
    let mut per_cost = vec![0u128; n_max + 2];
    let mut anchors: Vec<(VertexId, Option<&[ArrowId]>)> = g.sinks().into_iter().map(|w| (w, None)).collect();
    anchors.extend(cycles.iter().map(|c| (c.base(), Some(c.arrows()))));
    for (anchor, own) in anchors {
        let h = histograms(g, cycles, anchor, own, limit);
        for k1 in 0..=n_max {
            for k2 in 0..=(n_max - k1) {
                let pairs = h.all[k1] * h.all[k2] - h.ending_with_cycle[k1] * h.ending_with_cycle[k2];
                // the lone vertex costs one generator
                let cost = (k1 + k2).max(1);
                per_cost[cost] += pairs;
            }
        }
    }
    let mut out = Vec::with_capacity(n_max + 1);
    let mut running = 0u128;
    for (n, &c) in per_cost.iter().enumerate().take(n_max + 1) {
        running += c;
        out.push(if n == 0 { 1 } else { running });
    }
    Ok(out)
}

/// `h(n) = |Sₙ|` for `n = 0..=n_max`, with `h(0) = 1`.
pub fn upper_bound(normalizer: &Normalizer, n_max: usize, budget: usize) -> Result<Vec<usize>, GrowthError> {
    let gens = generators(normalizer);
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut frontier: Vec<Monomial> = Vec::new();
    let mut rows = vec![1usize];
    let absorb = |m: Monomial, seen: &mut HashSet<Monomial>, next: &mut Vec<Monomial>| -> Result<(), GrowthError> {
        if normalizer.is_basic(&m) {
            if seen.insert(m.clone()) {
                next.push(m);
            }
        } else {
            for (b, _) in normalizer.expand(&m)? {
                if seen.insert(b.clone()) {
                    next.push(b);
                }
            }
        }
        Ok(())
    };
    for n in 1..=n_max {
        let mut next = Vec::new();
        if n == 1 {
            for x in &gens {
                absorb(x.clone(), &mut seen, &mut next)?;
            }
        } else {
            for b in &frontier {
                for x in &gens {
                    if let Some(m) = b.mul(x) {
                        absorb(m, &mut seen, &mut next)?;
                    }
                }
                if seen.len() > budget {
                    return Err(GrowthError::Budget { budget, partial: rows });
                }
            }
        }
        rows.push(seen.len());
        frontier = next;
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthTable {
    pub lower: Vec<u128>,
    pub upper: Vec<usize>,
}

impl GrowthTable {
    pub fn compute(graph: &Arc<Digraph>, n_max: usize, budget: usize) -> Result<GrowthTable, GrowthError> {
        let normalizer = Normalizer::new(graph)?;
        Ok(GrowthTable {
            lower: lower_bound(&normalizer, n_max)?,
            upper: upper_bound(&normalizer, n_max, budget)?,
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, u128, usize)> + '_ {
        self.lower.iter().zip(&self.upper).enumerate().map(|(n, (&g, &h))| (n, g, h))
    }

    /// `g(n) ≤ h(n)` and both nondecreasing.
    pub fn is_consistent(&self) -> bool {
        self.rows().all(|(_, g, h)| g <= h as u128)
            && self.lower.windows(2).all(|w| w[0] <= w[1])
            && self.upper.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn fit_lower(&self) -> Result<DegreeFit, GrowthError> {
        fit_degree(&self.lower.iter().map(|&x| x as f64).collect::<Vec<_>>())
    }

    pub fn fit_upper(&self) -> Result<DegreeFit, GrowthError> {
        fit_degree(&self.upper.iter().map(|&x| x as f64).collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeFit {
    pub degree: f64,
    /// root-mean-square residual of the log-log regression
    pub residual: f64,
}

/// Least-squares slope of `log value` against `log n` over the upper half of
/// the rows `n ≥ 1`; `values[n]` is the table entry at `n`.
pub fn fit_degree(values: &[f64]) -> Result<DegreeFit, GrowthError> {
    let rows = values.len().saturating_sub(1);
    if rows < 6 {
        return Err(GrowthError::TooFewRows(rows));
    }
    let n_max = values.len() - 1;
    let from = n_max / 2 + 1;
    let points: Vec<(f64, f64)> = (from..=n_max)
        .map(|n| ((n as f64).ln(), values[n].max(1.0).ln()))
        .collect();
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let residual = (points
        .iter()
        .map(|p| (p.1 - (my + slope * (p.0 - mx))).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Ok(DegreeFit {
        degree: slope,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn table(g: Digraph, n: usize) -> GrowthTable {
        GrowthTable::compute(&Arc::new(g), n, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn single_loop_is_linear() {
        let t = table(families::single_loop(), 12);
        for (n, g, h) in t.rows() {
            assert_eq!(g, 2 * n as u128 + 1);
            assert_eq!(h, 2 * n + 1);
        }
        assert!((t.fit_lower().unwrap().degree - 1.0).abs() < 0.15);
    }

    #[test]
    fn gamma2_stabilises() {
        let t = table(families::gamma2(), 8);
        assert_eq!(&t.lower[..4], &[1, 3, 4, 4]);
        assert_eq!(&t.upper[..3], &[1, 4, 4]);
        assert_eq!(*t.lower.last().unwrap(), 4);
        assert_eq!(*t.upper.last().unwrap(), 4);
        assert!(t.fit_lower().unwrap().degree.abs() < 1e-9);
    }

    #[test]
    fn sandwich_holds() {
        for g in [families::toeplitz(), families::q_sphere_odd(2), families::q_disk(2)] {
            let t = table(g, 10);
            assert!(t.is_consistent(), "{t:?}");
        }
    }

    #[test]
    fn cost_of_cycle_powers() {
        let g = families::q_disk(2);
        let n = Normalizer::new(&Arc::new(g.clone())).unwrap();
        let cycles = n.structure().cycles();
        let cost = |s: &str| path_cost(&g, cycles, &Path::parse(&g, s).unwrap());
        assert_eq!(cost("e1"), 1);
        assert_eq!(cost("e1.e1.f1"), 3);
        assert_eq!(cost("e1.f1.e2.e2.f2"), 5);
        assert_eq!(cost("f1.e2"), 2);
        assert_eq!(cost("f1.f2"), 1);
        assert_eq!(cost("1"), 0);
    }

    #[test]
    fn generator_count() {
        let n = Normalizer::new(&Arc::new(families::toeplitz())).unwrap();
        // e, e*, v, w, f, f*
        assert_eq!(generators(&n).len(), 6);
    }

    #[test]
    fn fit_needs_rows() {
        assert!(matches!(fit_degree(&[1.0, 2.0, 3.0]), Err(GrowthError::TooFewRows(2))));
        let flat = fit_degree(&[1.0; 10]).unwrap();
        assert_eq!(flat.degree, 0.0);
    }

    #[test]
    fn budget_reports_partial_table() {
        let n = Normalizer::new(&Arc::new(families::q_sphere_odd(2))).unwrap();
        match upper_bound(&n, 20, 50) {
            Err(GrowthError::Budget { partial, .. }) => assert!(!partial.is_empty()),
            other => panic!("{other:?}"),
        }
    }
}
