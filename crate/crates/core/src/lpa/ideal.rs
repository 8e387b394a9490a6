use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Element, LpaError, Monomial, Normalizer};
use crate::digraph::{Digraph, PTarget, Path, VertexId, VertexSet};
use crate::ring::Ring;

/// The two-sided ideal `(H)` generated by a hereditary saturated set `H`.
#[derive(Debug, Clone)]
pub struct Ideal {
    graph: Arc<Digraph>,
    closure: VertexSet,
}

impl Ideal {
    /// `(X) = (H)` where `H` is the hereditary saturated closure of `X`.
    pub fn generated_by(graph: &Arc<Digraph>, x: &VertexSet) -> Ideal {
        Ideal {
            graph: Arc::clone(graph),
            closure: graph.hereditary_saturated_closure(x),
        }
    }

    pub fn graph(&self) -> &Arc<Digraph> {
        &self.graph
    }

    /// The hereditary saturated set `H`.
    pub fn vertices(&self) -> &VertexSet {
        &self.closure
    }

    pub fn is_zero(&self) -> bool {
        self.closure.is_empty()
    }

    /// `(H₁) ∩ (H₂) = (H₁ ∩ H₂)`.
    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal {
            graph: Arc::clone(&self.graph),
            closure: self.closure.intersection(&self.graph, &other.closure),
        }
    }

    /// True iff every basis monomial of `normalize(a)` has its middle vertex in `H`.
    pub fn contains(&self, normalizer: &Normalizer, a: &Element) -> Result<bool, LpaError> {
        let a = normalizer.normalize(a)?;
        Ok(a.terms().keys().all(|m| self.closure.contains(m.middle())))
    }
}

/// Outcome of a sampled check, with the first counterexample if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl CheckReport {
    pub(crate) fn new() -> CheckReport {
        CheckReport {
            passed: true,
            checked: 0,
            witness: None,
        }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

/// A random path ending at `v`, found by walking backwards at most `max_len` steps.
pub(crate) fn random_path_into(g: &Digraph, v: VertexId, max_len: usize, rng: &mut impl Rng) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut arrows = Vec::with_capacity(len);
    let mut at = v;
    for _ in 0..len {
        let Some(&e) = g.in_arrows(at).choose(rng) else {
            break;
        };
        arrows.push(e);
        at = g.source(e);
    }
    if arrows.is_empty() {
        return Path::vertex(v);
    }
    arrows.reverse();
    Path::from_arrows(g, &arrows).expect("backward walk is a path")
}

fn random_spanning_monomial(g: &Digraph, h: &VertexSet, rng: &mut impl Rng) -> Option<Monomial> {
    let members: Vec<VertexId> = h.members().iter().copied().collect();
    let &v = members.choose(rng)?;
    let p = random_path_into(g, v, 4, rng);
    let q = random_path_into(g, v, 4, rng);
    Monomial::new(p, q)
}

/// Samples `a ∈ (H₁)`, `b ∈ (H₂)` of the form `pvq*` and checks `ab ∈ (H₁ ∩ H₂)`;
/// conversely checks that spanning elements `pvq*` of `(H₁ ∩ H₂)` factor as
/// `(pv)(vq*)` with the factors in `(H₁)` and `(H₂)`.
pub fn ideal_product_check(
    normalizer: &Normalizer,
    i: &Ideal,
    j: &Ideal,
    samples: usize,
    seed: u64,
) -> Result<CheckReport, LpaError> {
    let g = normalizer.graph();
    let ring = Ring::Integers;
    let meet = i.intersection(j);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    for _ in 0..samples {
        if let (Some(a), Some(b)) = (
            random_spanning_monomial(g, i.vertices(), &mut rng),
            random_spanning_monomial(g, j.vertices(), &mut rng),
        ) {
            let middle = random_spanning_monomial(g, &VertexSet::from_members(g, g.vertices()), &mut rng)
                .expect("digraph has a vertex");
            let a = Element::monomial(g, ring, a);
            let b = Element::monomial(g, ring, b);
            let x = Element::monomial(g, ring, middle);
            let product = a.mul(&x)?.mul(&b)?;
            let ok = meet.contains(normalizer, &product)?;
            report.record(ok, || format!("({a})·({x})·({b}) is not in the intersection ideal"));
        }
        if let Some(m) = random_spanning_monomial(g, meet.vertices(), &mut rng) {
            let v = m.middle();
            let left = Element::monomial(g, ring, Monomial::new(m.p().clone(), Path::vertex(v)).expect("tp = v"));
            let right = Element::monomial(g, ring, Monomial::new(Path::vertex(v), m.q().clone()).expect("tq = v"));
            let whole = Element::monomial(g, ring, m);
            let ok = i.contains(normalizer, &left)?
                && j.contains(normalizer, &right)?
                && normalizer.equals(&left.mul(&right)?, &whole)?;
            report.record(ok, || format!("{whole} does not factor through the product"));
        }
    }
    Ok(report)
}

/// Dimension bookkeeping for `L(Γ/H) ≅ L(Γ)/(H)` on an acyclic digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDimensions {
    pub whole: usize,
    pub ideal: usize,
    pub quotient: usize,
    pub passed: bool,
}

fn acyclic_dimension(g: &Digraph, keep: impl Fn(VertexId) -> bool) -> Result<usize, LpaError> {
    let mut total = 0;
    for w in g.sinks().into_iter().filter(|&w| keep(w)) {
        let n = g.enumerate_p(&PTarget::Sink(w), None, 0)?.paths.len();
        total += n * n;
    }
    Ok(total)
}

/// Checks `dim L(Γ/H) = dim L(Γ) − dim (H)`; `Γ` must be acyclic.
pub fn quotient_dimension_check(g: &Digraph, h: &VertexSet) -> Result<QuotientDimensions, LpaError> {
    if !g.is_acyclic() {
        return Err(LpaError::NotAcyclic);
    }
    let quotient_graph = g.quotient(h)?;
    let whole = acyclic_dimension(g, |_| true)?;
    let ideal = acyclic_dimension(g, |w| h.contains(w))?;
    let quotient = acyclic_dimension(&quotient_graph, |_| true)?;
    Ok(QuotientDimensions {
        whole,
        ideal,
        quotient,
        passed: whole >= ideal && quotient == whole - ideal,
    })
}
