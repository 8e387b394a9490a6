use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{LpaError, Monomial};
use crate::digraph::{ArrowId, Digraph, Path, VertexId, VertexSet};
use crate::ring::{Ring, RingValue};

/// Grading verdict for an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero element, homogeneous of every degree.
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

/// A finite combination `Σ λᵢ pᵢqᵢ*` over a fixed digraph and ring.
#[derive(Debug, Clone)]
pub struct Element {
    graph: Arc<Digraph>,
    ring: Ring,
    terms: BTreeMap<Monomial, RingValue>,
}

impl PartialEq for Element {
    /// Term-wise equality; use [`super::Normalizer::equals`] for equality in the algebra.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl Eq for Element {}

fn same_graph(a: &Arc<Digraph>, b: &Arc<Digraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Element {
    pub fn zero(graph: &Arc<Digraph>, ring: Ring) -> Element {
        Element {
            graph: Arc::clone(graph),
            ring,
            terms: BTreeMap::new(),
        }
    }

    /// `1 = Σ v`.
    pub fn one(graph: &Arc<Digraph>, ring: Ring) -> Element {
        let mut e = Element::zero(graph, ring);
        for v in graph.vertices() {
            e.terms.insert(Monomial::vertex(v), ring.one());
        }
        e
    }

    pub fn scalar(graph: &Arc<Digraph>, value: RingValue) -> Element {
        let ring = value.ring();
        if value.is_zero() {
            return Element::zero(graph, ring);
        }
        let mut e = Element::zero(graph, ring);
        for v in graph.vertices() {
            e.terms.insert(Monomial::vertex(v), value.clone());
        }
        e
    }

    pub fn monomial(graph: &Arc<Digraph>, ring: Ring, m: Monomial) -> Element {
        let mut e = Element::zero(graph, ring);
        e.terms.insert(m, ring.one());
        e
    }

    pub fn vertex(graph: &Arc<Digraph>, ring: Ring, v: VertexId) -> Element {
        Element::monomial(graph, ring, Monomial::vertex(v))
    }

    pub fn arrow(graph: &Arc<Digraph>, ring: Ring, e: ArrowId) -> Element {
        Element::monomial(graph, ring, Monomial::path(Path::arrow(graph, e)))
    }

    pub fn dual_arrow(graph: &Arc<Digraph>, ring: Ring, e: ArrowId) -> Element {
        Element::monomial(graph, ring, Monomial::dual(Path::arrow(graph, e)))
    }

    /// Builds an element from terms, combining repeats and dropping zeros.
    pub fn from_terms(
        graph: &Arc<Digraph>,
        ring: Ring,
        terms: impl IntoIterator<Item = (Monomial, RingValue)>,
    ) -> Result<Element, LpaError> {
        let mut e = Element::zero(graph, ring);
        for (m, c) in terms {
            e.add_term(m, &c)?;
        }
        Ok(e)
    }

    pub fn graph(&self) -> &Arc<Digraph> {
        &self.graph
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RingValue> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> RingValue {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &RingValue) -> Result<(), LpaError> {
        if !self.ring.contains(c) {
            return Err(crate::ring::RingError::Mismatch {
                left: self.ring,
                right: c.ring(),
            }
            .into());
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(c)?;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Element) -> Result<(), LpaError> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(LpaError::DifferentDigraphs);
        }
        if self.ring != other.ring {
            return Err(crate::ring::RingError::Mismatch {
                left: self.ring,
                right: other.ring,
            }
            .into());
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element, LpaError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Result<Element, LpaError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, lambda: &RingValue) -> Result<Element, LpaError> {
        let mut out = Element::zero(&self.graph, self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.mul(lambda)?)?;
        }
        Ok(out)
    }

    /// Bilinear extension of [`Monomial::mul`]; the result is not normalized.
    pub fn mul(&self, other: &Element) -> Result<Element, LpaError> {
        self.check_compatible(other)?;
        let mut out = Element::zero(&self.graph, self.ring);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(m) = a.mul(b) {
                    out.add_term(m, &x.mul(y)?)?;
                }
            }
        }
        Ok(out)
    }

    /// The involution: `pq*` ↦ `qp*`, coefficients fixed.
    pub fn star(&self) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect(),
        }
    }

    pub fn degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Degree::Zero,
            Some(d) if degrees.all(|x| x == d) => Degree::Homogeneous(d),
            Some(_) => Degree::Inhomogeneous,
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: i64) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `εaε` with `ε = Σ_{u∈U} u`: keeps the monomials with `sp, sq ∈ U`.
    pub fn corner(&self, u: &VertexSet) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| u.contains(m.left()) && u.contains(m.right()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms in printing order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &RingValue)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.display_cmp(b.0, &self.graph));
        terms
    }
}

/// Joins `(coefficient, word)` pairs as `a + 2·b - c`.
pub(crate) fn render_sum<'a>(terms: impl Iterator<Item = (&'a RingValue, String)>) -> String {
    let mut out = String::new();
    for (c, word) in terms {
        let (negative, c) = if c.is_negative_scalar() { (true, c.neg()) } else { (false, c.clone()) };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !c.is_one() {
            let text = c.to_string();
            if text.contains(' ') {
                out.push_str(&format!("({text})·"));
            } else {
                out.push_str(&format!("{text}·"));
            }
        }
        out.push_str(&word);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        let text = render_sum(terms.into_iter().map(|(m, c)| (c, m.render(&self.graph))));
        f.write_str(&text)
    }
}
