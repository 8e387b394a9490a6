use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::{render_sum, Element, LpaError, Monomial};
use crate::digraph::{CycleStructure, Digraph, Path, VertexId};

/// Default cap on the number of rewrite steps in one normalization.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// A member of the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisMonomial {
    /// `pq*` with `tp = tq = sink`.
    Sink { p: Path, q: Path, sink: VertexId },
    /// `pCⁿq*` with `p, q ∈ P_C`; `cycle` indexes [`CycleStructure::cycles`].
    Cycle { p: Path, n: i64, q: Path, cycle: usize },
}

/// Rewrites elements into the canonical basis.
///
/// A monomial `pq*` with middle vertex `v = tp` is basic when `v` is a sink,
/// or when `v = sC` and `p`, `q` do not both end with `C`. Otherwise:
///
/// * off a cycle base, expand by `v = Σ ee*` over arrows leaving `v`;
/// * at `sC` with `p = p'C`, `q = q'C`, use
///   `CC* = sC − Σ r f f* r*` over proper prefixes `r` of `C` and exits `f` at `tr`.
#[derive(Debug, Clone)]
pub struct Normalizer {
    graph: Arc<Digraph>,
    structure: CycleStructure,
    term_cap: usize,
}

impl Normalizer {
    pub fn new(graph: &Arc<Digraph>) -> Result<Normalizer, LpaError> {
        Ok(Normalizer {
            graph: Arc::clone(graph),
            structure: graph.cycle_structure()?,
            term_cap: DEFAULT_TERM_CAP,
        })
    }

    pub fn with_term_cap(mut self, cap: usize) -> Normalizer {
        self.term_cap = cap;
        self
    }

    pub fn graph(&self) -> &Arc<Digraph> {
        &self.graph
    }

    pub fn structure(&self) -> &CycleStructure {
        &self.structure
    }

    /// Signed integer expansion of one monomial in the basis.
    pub fn expand(&self, m: &Monomial) -> Result<BTreeMap<Monomial, i64>, LpaError> {
        let g = &*self.graph;
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        let mut stack: Vec<(Monomial, i64)> = vec![(m.clone(), 1)];
        let mut steps = 0usize;
        while let Some((m, sign)) = stack.pop() {
            steps += 1;
            if steps > self.term_cap {
                return Err(LpaError::TermCap(self.term_cap));
            }
            let v = m.middle();
            if g.is_sink(v) {
                accumulate(&mut out, m, sign, self.term_cap)?;
                continue;
            }
            match self.structure.locate(v) {
                Some((ci, 0)) => {
                    let c = self.structure.cycle(ci).arrows();
                    if !(m.p().ends_with(c) && m.q().ends_with(c)) {
                        accumulate(&mut out, m, sign, self.term_cap)?;
                        continue;
                    }
                    let p = m.p().truncate(g, m.p().len() - c.len());
                    let q = m.q().truncate(g, m.q().len() - c.len());
                    let (mut pr, mut qr) = (p.clone(), q.clone());
                    for &ce in c {
                        for &f in g.out_arrows(g.source(ce)) {
                            if f != ce {
                                let term = Monomial::new(pr.push(g, f), qr.push(g, f)).expect("same target");
                                stack.push((term, -sign));
                            }
                        }
                        pr = pr.push(g, ce);
                        qr = qr.push(g, ce);
                    }
                    stack.push((Monomial::new(p, q).expect("same target"), sign));
                }
                _ => {
                    for &e in g.out_arrows(v) {
                        let term = Monomial::new(m.p().push(g, e), m.q().push(g, e)).expect("same target");
                        stack.push((term, sign));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn normalize(&self, a: &Element) -> Result<Element, LpaError> {
        let ring = a.ring();
        let mut out = Element::zero(&self.graph, ring);
        for (m, c) in a.terms() {
            if self.is_basic(m) {
                out.add_term(m.clone(), c)?;
                continue;
            }
            for (b, k) in self.expand(m)? {
                out.add_term(b, &c.mul(&ring.from_i64(k))?)?;
            }
        }
        Ok(out)
    }

    /// Equality in the algebra: `normalize(a − b) = 0`.
    pub fn equals(&self, a: &Element, b: &Element) -> Result<bool, LpaError> {
        Ok(self.normalize(&a.sub(b)?)?.is_zero())
    }

    pub fn is_basic(&self, m: &Monomial) -> bool {
        let v = m.middle();
        if self.graph.is_sink(v) {
            return true;
        }
        match self.structure.locate(v) {
            Some((ci, 0)) => {
                let c = self.structure.cycle(ci).arrows();
                !(m.p().ends_with(c) && m.q().ends_with(c))
            }
            _ => false,
        }
    }

    pub fn classify(&self, m: &Monomial) -> Option<BasisMonomial> {
        let v = m.middle();
        if self.graph.is_sink(v) {
            return Some(BasisMonomial::Sink {
                p: m.p().clone(),
                q: m.q().clone(),
                sink: v,
            });
        }
        let ci = self.structure.cycle_based_at(v)?;
        let c = self.structure.cycle(ci).arrows();
        let (p, a) = strip_powers(&self.graph, m.p(), c);
        let (q, b) = strip_powers(&self.graph, m.q(), c);
        if a > 0 && b > 0 {
            return None;
        }
        Some(BasisMonomial::Cycle {
            p,
            n: a as i64 - b as i64,
            q,
            cycle: ci,
        })
    }

    pub fn from_basis(&self, b: &BasisMonomial) -> Monomial {
        match b {
            BasisMonomial::Sink { p, q, .. } => Monomial::new(p.clone(), q.clone()).expect("same target"),
            BasisMonomial::Cycle { p, n, q, cycle } => {
                let power = self.structure.cycle(*cycle).power(n.unsigned_abs() as usize);
                let (p, q) = if *n >= 0 {
                    (p.concat(&power).expect("p ends at sC"), q.clone())
                } else {
                    (p.clone(), q.concat(&power).expect("q ends at sC"))
                };
                Monomial::new(p, q).expect("same target")
            }
        }
    }

    /// Basis rendering: `p.C^n.q*` with cycle powers collapsed.
    pub fn render_monomial(&self, m: &Monomial) -> String {
        let g = &*self.graph;
        let Some(BasisMonomial::Cycle { p, n, q, cycle }) = self.classify(m) else {
            return m.render(g);
        };
        let c = self.structure.cycle(cycle);
        let mut parts = Vec::new();
        if !p.is_trivial() {
            parts.push(p.render(g));
        }
        match n {
            0 => {}
            1 => parts.push(c.render(g)),
            -1 => parts.push(c.as_path().render_dual(g)),
            n if c.len() == 1 => parts.push(format!("{}^{n}", c.render(g))),
            n => parts.push(format!("({})^{n}", c.render(g))),
        }
        if !q.is_trivial() {
            parts.push(q.render_dual(g));
        }
        if parts.is_empty() {
            g.vertex_name(m.middle()).to_string()
        } else {
            parts.join(".")
        }
    }

    /// Renders `a` (normalized first) in basis form.
    pub fn render(&self, a: &Element) -> Result<String, LpaError> {
        let a = self.normalize(a)?;
        Ok(render_sum(
            a.sorted_terms().into_iter().map(|(m, c)| (c, self.render_monomial(m))),
        ))
    }
}

fn accumulate(out: &mut BTreeMap<Monomial, i64>, m: Monomial, sign: i64, cap: usize) -> Result<(), LpaError> {
    match out.entry(m) {
        Entry::Vacant(slot) => {
            slot.insert(sign);
        }
        Entry::Occupied(mut slot) => {
            let k = slot.get().checked_add(sign).ok_or(LpaError::TermCap(cap))?;
            if k == 0 {
                slot.remove();
            } else {
                *slot.get_mut() = k;
            }
        }
    }
    Ok(())
}

/// Splits `p = p₁Cᵃ` with `a` maximal.
fn strip_powers(g: &Digraph, p: &Path, c: &[crate::digraph::ArrowId]) -> (Path, usize) {
    let mut len = p.len();
    let mut a = 0;
    while len >= c.len() && p.arrows()[..len].ends_with(c) {
        len -= c.len();
        a += 1;
    }
    (p.truncate(g, len), a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::lpa::parse_element;
    use crate::ring::Ring;

    fn check(g: crate::Digraph, ring: Ring, expr: &str, expected: &str) {
        let g = Arc::new(g);
        let n = Normalizer::new(&g).unwrap();
        let a = parse_element(&g, ring, expr).unwrap();
        assert_eq!(n.render(&a).unwrap(), expected, "{expr}");
    }

    #[test]
    fn spec_examples() {
        check(families::gamma2(), Ring::Rationals, "u", "e.e*");
        check(families::toeplitz(), Ring::Rationals, "1 - (e+f)(e*+f*)", "w");
        check(families::toeplitz(), Ring::Rationals, "(e+f)(e*+f*)", "v");
        check(families::single_loop(), Ring::Rationals, "e e*", "v");
        check(families::single_loop(), Ring::Rationals, "e* e", "v");
        check(families::toeplitz(), Ring::Integers, "v - e e*", "f.f*");
    }

    #[test]
    fn toeplitz_identities_over_rings() {
        for ring in [Ring::Integers, Ring::Rationals, Ring::integers_mod(6).unwrap(), Ring::Laurent] {
            check(families::toeplitz(), ring, "(e+f)(e+f)(e*+f*)", "e");
            check(families::toeplitz(), ring, "(e+f)(e*+f*)(e*+f*)", "e*");
        }
    }

    #[test]
    fn cycle_powers_render() {
        check(families::single_loop(), Ring::Rationals, "e e e e* ", "e^2");
        check(families::single_loop(), Ring::Rationals, "e* e* e*", "e^-3");
        let two = crate::Digraph::parse("vertex a\nvertex b\narrow x a b\narrow y b a\n").unwrap();
        check(two.clone(), Ring::Rationals, "x y x y", "(x.y)^2");
        check(two.clone(), Ring::Rationals, "b", "y.y*");
        check(two, Ring::Rationals, "y* x*", "y*.x*");
    }

    #[test]
    fn idempotent_and_classified() {
        let g = Arc::new(families::q_disk(2));
        let n = Normalizer::new(&g).unwrap();
        let a = parse_element(&g, Ring::Integers, "e1 f1 e2* f1* + 2 e2 e2* - f1 f1*").unwrap();
        let once = n.normalize(&a).unwrap();
        assert_eq!(n.normalize(&once).unwrap(), once);
        for m in once.terms().keys() {
            let b = n.classify(m).expect("basic");
            assert_eq!(n.from_basis(&b), *m);
        }
    }

    #[test]
    fn rejects_intersecting_cycles() {
        let g = Arc::new(families::rose(2));
        assert!(matches!(Normalizer::new(&g), Err(LpaError::Digraph(_))));
    }

    #[test]
    fn term_cap_is_enforced() {
        let g = Arc::new(families::q_disk(3));
        let n = Normalizer::new(&g).unwrap().with_term_cap(3);
        let a = parse_element(&g, Ring::Integers, "e1 e1 e1 e1* e1* e1*").unwrap();
        assert_eq!(n.normalize(&a), Err(LpaError::TermCap(3)));
    }
}
