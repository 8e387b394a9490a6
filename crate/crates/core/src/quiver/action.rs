//! The right action of the algebra on `⊕_v ρ(v)`. Since the action is on the
//! right, the matrix of a product `ab` is `A_b · A_a`.

use std::fmt;

use super::{BlockMatrix, Matrix, QuiverError, Representation};
use crate::digraph::{ArrowId, Digraph, Path, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Vertex(VertexId),
    Arrow(ArrowId),
    Dual(ArrowId),
}

impl Generator {
    pub fn all(g: &Digraph) -> Vec<Generator> {
        let mut out: Vec<Generator> = g.vertices().map(Generator::Vertex).collect();
        out.extend(g.arrow_ids().map(Generator::Arrow));
        out.extend(g.arrow_ids().map(Generator::Dual));
        out
    }

    pub fn render(self, g: &Digraph) -> String {
        match self {
            Generator::Vertex(v) => g.vertex_name(v).to_string(),
            Generator::Arrow(e) => g.arrow_name(e).to_string(),
            Generator::Dual(e) => format!("{}*", g.arrow_name(e)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    V,
    E,
    Ck1,
    Ck2,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::V => "V",
            Relation::E => "E",
            Relation::Ck1 => "CK1",
            Relation::Ck2 => "CK2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: Relation,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    /// identities checked, per relation in the order V, E, CK1, CK2
    pub checked: [usize; 4],
    pub failures: Vec<RelationFailure>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_checked(&self) -> usize {
        self.checked.iter().sum()
    }

    fn check(&mut self, relation: Relation, ok: bool, witness: impl FnOnce() -> String) {
        self.checked[relation as usize] += 1;
        if !ok {
            self.failures.push(RelationFailure {
                relation,
                witness: witness(),
            });
        }
    }
}

/// Actions of every vertex, arrow and dual arrow.
#[derive(Debug, Clone)]
pub struct Actions {
    vertex: Vec<BlockMatrix>,
    arrow: Vec<BlockMatrix>,
    dual: Vec<BlockMatrix>,
}

impl Actions {
    /// `A_v` projects onto `ρ(v)`, `A_e` applies `ρ(e)` from the `se` block to
    /// the `te` block, and `A_{e*}` applies the `e`-column of the inverse
    /// stacked map at `se` from the `te` block to the `se` block.
    pub fn new(rep: &Representation) -> Result<Actions, QuiverError> {
        rep.require_iso()?;
        let g = &**rep.graph();
        let vertex = g.vertices().map(|v| BlockMatrix::single(v, v, Matrix::identity(rep.dim(v)))).collect();
        let arrow = g
            .arrow_ids()
            .map(|e| BlockMatrix::single(g.target(e), g.source(e), rep.map(e).clone()))
            .collect();
        let mut dual = vec![BlockMatrix::zero(); g.arrow_count()];
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let inv = rep.stacked(v).inverse().expect("Iso checked");
            let mut col = 0;
            for &e in g.out_arrows(v) {
                let w = rep.dim(g.target(e));
                dual[e.index()] = BlockMatrix::single(v, g.target(e), inv.sub_block(0, col, rep.dim(v), w));
                col += w;
            }
        }
        Ok(Actions { vertex, arrow, dual })
    }

    pub fn of(&self, x: Generator) -> &BlockMatrix {
        match x {
            Generator::Vertex(v) => &self.vertex[v.index()],
            Generator::Arrow(e) => &self.arrow[e.index()],
            Generator::Dual(e) => &self.dual[e.index()],
        }
    }

    /// For negative controls.
    pub fn of_mut(&mut self, x: Generator) -> &mut BlockMatrix {
        match x {
            Generator::Vertex(v) => &mut self.vertex[v.index()],
            Generator::Arrow(e) => &mut self.arrow[e.index()],
            Generator::Dual(e) => &mut self.dual[e.index()],
        }
    }

    /// Action of the path `p = e₁⋯eₙ`: `A_{eₙ} ⋯ A_{e₁}`.
    pub fn path(&self, p: &Path) -> BlockMatrix {
        p.arrows()
            .iter()
            .fold(self.vertex[p.source().index()].clone(), |acc, &e| self.arrow[e.index()].mul(&acc))
    }

    /// Action of `p* = eₙ*⋯e₁*`: `A_{e₁*} ⋯ A_{eₙ*}`.
    pub fn path_dual(&self, p: &Path) -> BlockMatrix {
        p.arrows()
            .iter()
            .fold(self.vertex[p.source().index()].clone(), |acc, &e| acc.mul(&self.dual[e.index()]))
    }

    /// Checks (V), (E), (CK1) and (CK2) as exact matrix identities.
    pub fn audit(&self, g: &Digraph) -> AuditReport {
        let mut report = AuditReport::default();
        let name = |x: Generator| x.render(g);
        for v in g.vertices() {
            for w in g.vertices() {
                let lhs = self.vertex[w.index()].mul(&self.vertex[v.index()]);
                let rhs = if v == w { self.vertex[v.index()].clone() } else { BlockMatrix::zero() };
                report.check(Relation::V, lhs == rhs, || {
                    format!("{}·{}", name(Generator::Vertex(v)), name(Generator::Vertex(w)))
                });
            }
        }
        for e in g.arrow_ids() {
            let (s, t) = (&self.vertex[g.source(e).index()], &self.vertex[g.target(e).index()]);
            let a = &self.arrow[e.index()];
            report.check(Relation::E, t.mul(a).mul(s) == *a, || format!("s·{0}·t = {0}", name(Generator::Arrow(e))));
            let d = &self.dual[e.index()];
            report.check(Relation::E, s.mul(d).mul(t) == *d, || format!("t·{0}·s = {0}", name(Generator::Dual(e))));
        }
        for e in g.arrow_ids() {
            for f in g.arrow_ids() {
                let lhs = self.arrow[f.index()].mul(&self.dual[e.index()]);
                let rhs = if e == f { self.vertex[g.target(e).index()].clone() } else { BlockMatrix::zero() };
                report.check(Relation::Ck1, lhs == rhs, || {
                    format!("{}{}", name(Generator::Dual(e)), name(Generator::Arrow(f)))
                });
            }
        }
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let sum = g.out_arrows(v).iter().fold(BlockMatrix::zero(), |acc, &e| {
                acc.add(&self.dual[e.index()].mul(&self.arrow[e.index()]))
            });
            report.check(Relation::Ck2, sum == self.vertex[v.index()], || {
                format!("{} = Σ ee*", g.vertex_name(v))
            });
        }
        report
    }

    /// Conjugates every action by the block-diagonal `phi`: `phi · A · phi_inv`.
    pub(crate) fn conjugate_by(&self, phi: &BlockMatrix, phi_inv: &BlockMatrix) -> Actions {
        let conj = |m: &BlockMatrix| phi.mul(m).mul(phi_inv);
        Actions {
            vertex: self.vertex.iter().map(conj).collect(),
            arrow: self.arrow.iter().map(conj).collect(),
            dual: self.dual.iter().map(conj).collect(),
        }
    }
}

pub fn generator_action(rep: &Representation, x: Generator) -> Result<BlockMatrix, QuiverError> {
    Ok(Actions::new(rep)?.of(x).clone())
}

pub fn relation_audit(rep: &Representation) -> Result<AuditReport, QuiverError> {
    Ok(Actions::new(rep)?.audit(rep.graph()))
}
