//! Moving representations across one elimination step. Restriction composes
//! the maps through the eliminated vertex `v`; reconstruction puts back
//! `ρ'(v) = ⊕_{se=v} ρ(te)`.

use super::{Actions, BlockMatrix, Generator, Matrix, QuiverError, Representation};
use crate::digraph::VertexId;
use crate::reduction::{ArrowOrigin, ReductionStep};

/// Restriction of `rep` to the reduced digraph: the new arrow `f·g` gets
/// `ρ(g)ρ(f)`.
pub fn restrict(rep: &Representation, step: &ReductionStep) -> Result<Representation, QuiverError> {
    if **rep.graph() != **step.before() {
        return Err(QuiverError::WrongDigraph);
    }
    let after = step.after();
    let dims = after.vertices().map(|v| rep.dim(step.vertex_before(v))).collect();
    let maps = after
        .arrow_ids()
        .map(|e| match step.origin(e) {
            ArrowOrigin::Kept(a) => rep.map(a).clone(),
            ArrowOrigin::Composite(f, g) => rep.map(g).mul(rep.map(f)),
        })
        .collect();
    Representation::new(after.clone(), dims, maps)
}

/// Rebuilds a representation of the original digraph from one of the reduced
/// digraph. Arrows out of `v` become coordinate projections and an arrow `f`
/// into `v` becomes the stack of the maps of the `f·g`.
pub fn reconstruct(reduced: &Representation, step: &ReductionStep) -> Result<Representation, QuiverError> {
    if **reduced.graph() != **step.after() {
        return Err(QuiverError::WrongDigraph);
    }
    let before = step.before();
    let v = step.eliminated();
    let outs = before.out_arrows(v);
    let dim_after = |u: VertexId| reduced.dim(step.vertex_after(u).expect("survivor"));
    let dims: Vec<usize> = before
        .vertices()
        .map(|u| if u == v { outs.iter().map(|&g| dim_after(before.target(g))).sum() } else { dim_after(u) })
        .collect();
    let composite = |f, g| {
        reduced
            .graph()
            .arrow_ids()
            .find(|&a| step.origin(a) == ArrowOrigin::Composite(f, g))
            .expect("every through-path has an arrow")
    };
    let mut maps = Vec::with_capacity(before.arrow_count());
    for e in before.arrow_ids() {
        let m = if before.source(e) == v {
            // projection onto the e-coordinate
            let col: usize = outs
                .iter()
                .take_while(|&&g| g != e)
                .map(|&g| dims[before.target(g).index()])
                .sum();
            let r = dims[before.target(e).index()];
            let mut m = Matrix::zeros(r, dims[v.index()]);
            for i in 0..r {
                m.set(i, col + i, num_traits::One::one());
            }
            m
        } else if before.target(e) == v {
            let blocks: Vec<&Matrix> = outs.iter().map(|&g| reduced.map(composite(e, g))).collect();
            Matrix::vstack(&blocks, dims[before.source(e).index()])
        } else {
            let kept = step.arrow_after(e).expect("arrow away from v is kept");
            reduced.map(kept).clone()
        };
        maps.push(m);
    }
    Representation::new(before.clone(), dims, maps)
}

#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub restricted: Representation,
    pub reconstructed: Representation,
    /// `dim ρ'(u) = dim ρ(u)` for every vertex
    pub dims_match: bool,
    /// every generator action of `ρ'` equals `Φ A Φ⁻¹` with `Φ` the identity
    /// off `v` and the stacked map at `v`
    pub conjugate: bool,
    pub failures: Vec<String>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.dims_match && self.conjugate && self.failures.is_empty()
    }
}

pub fn restrict_and_reconstruct(rep: &Representation, step: &ReductionStep) -> Result<RoundTrip, QuiverError> {
    rep.require_iso()?;
    let restricted = restrict(rep, step)?;
    let reconstructed = reconstruct(&restricted, step)?;
    let g = step.before();
    let v = step.eliminated();
    let mut failures = Vec::new();
    if !restricted.check_iso().passed() {
        failures.push("restriction fails Iso".to_string());
    }
    if !reconstructed.check_iso().passed() {
        failures.push("reconstruction fails Iso".to_string());
    }
    let dims_match = rep.dims() == reconstructed.dims();
    let mut conjugate = false;
    if dims_match && failures.is_empty() {
        let phi_v = rep.stacked(v);
        let phi_v_inv = phi_v.inverse().expect("Iso checked");
        let block = |u: VertexId, at_v: &Matrix| if u == v { at_v.clone() } else { Matrix::identity(rep.dim(u)) };
        let phi = BlockMatrix::diagonal(g.vertices().map(|u| (u, block(u, &phi_v))));
        let phi_inv = BlockMatrix::diagonal(g.vertices().map(|u| (u, block(u, &phi_v_inv))));
        let original = Actions::new(rep)?.conjugate_by(&phi, &phi_inv);
        let rebuilt = Actions::new(&reconstructed)?;
        conjugate = true;
        for x in Generator::all(g) {
            if original.of(x) != rebuilt.of(x) {
                conjugate = false;
                failures.push(format!("action of {} is not conjugate", x.render(g)));
            }
        }
    }
    Ok(RoundTrip {
        restricted,
        reconstructed,
        dims_match,
        conjugate,
        failures,
    })
}
