use std::cmp::Ordering;

use crate::digraph::{Digraph, Path, VertexId};

/// The monomial `pq*`, stored only when `tp = tq`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    p: Path,
    q: Path,
}

impl Monomial {
    /// `None` when `tp ≠ tq`, i.e. the monomial is zero.
    pub fn new(p: Path, q: Path) -> Option<Monomial> {
        (p.target() == q.target()).then_some(Monomial { p, q })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            p: Path::vertex(v),
            q: Path::vertex(v),
        }
    }

    /// The path `p` viewed as `p · (tp)*`.
    pub fn path(p: Path) -> Monomial {
        let q = Path::vertex(p.target());
        Monomial { p, q }
    }

    /// The dual path `q*` viewed as `tq · q*`.
    pub fn dual(q: Path) -> Monomial {
        let p = Path::vertex(q.target());
        Monomial { p, q }
    }

    pub fn p(&self) -> &Path {
        &self.p
    }

    pub fn q(&self) -> &Path {
        &self.q
    }

    pub fn into_parts(self) -> (Path, Path) {
        (self.p, self.q)
    }

    /// The vertex `tp = tq` between the two halves.
    pub fn middle(&self) -> VertexId {
        self.p.target()
    }

    /// `sp`, the left idempotent.
    pub fn left(&self) -> VertexId {
        self.p.source()
    }

    /// `sq`, the right idempotent.
    pub fn right(&self) -> VertexId {
        self.q.source()
    }

    /// `ℓ(p) − ℓ(q)`.
    pub fn degree(&self) -> i64 {
        self.p.len() as i64 - self.q.len() as i64
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    /// `(p₁q₁*)(p₂q₂*)`: `q₁*p₂` collapses to `r` when `p₂ = q₁r`, to `r*`
    /// when `q₁ = p₂r`, and to zero otherwise.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(r) = other.p.strip_prefix(&self.q) {
            let p = self.p.concat(&r)?;
            Some(Monomial {
                p,
                q: other.q.clone(),
            })
        } else if let Some(r) = self.q.strip_prefix(&other.p) {
            let q = other.q.concat(&r)?;
            Some(Monomial { p: self.p.clone(), q })
        } else {
            None
        }
    }

    /// Plain rendering `p.q*`; a lone vertex name when both halves are trivial.
    pub fn render(&self, g: &Digraph) -> String {
        match (self.p.is_trivial(), self.q.is_trivial()) {
            (true, true) => g.vertex_name(self.p.source()).to_string(),
            (false, true) => self.p.render(g),
            (true, false) => self.q.render_dual(g),
            (false, false) => format!("{}.{}", self.p.render(g), self.q.render_dual(g)),
        }
    }

    /// Order used for printing: degree, then the halves by display order.
    pub fn display_cmp(&self, other: &Monomial, g: &Digraph) -> Ordering {
        (self.p.len() + self.q.len())
            .cmp(&(other.p.len() + other.q.len()))
            .then_with(|| self.p.display_cmp(&other.p, g))
            .then_with(|| self.q.display_cmp(&other.q, g))
    }
}
