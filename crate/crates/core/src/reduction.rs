//! Vertex elimination: remove a loopless nonsink `v` and replace every path
//! `fg` through `v` by a new arrow named `f·g`.
//!
//! Composite names nest with parentheses, e.g. `(f·g)·h`, and each new arrow
//! remembers the pair of arrows it replaces, so [`embed_phi`] can expand it
//! back into a path of the original digraph.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{ArrowId, Digraph, DigraphBuilder, DigraphError, PTarget, Path, VertexId, DEFAULT_CYCLE_CAP};
use crate::lpa::{CheckReport, Element, LpaError, Monomial, Normalizer};
use crate::ring::Ring;
use crate::ErrorClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Lpa(#[from] LpaError),
    #[error("vertex {0:?} carries a loop and cannot be eliminated")]
    HasLoop(String),
    #[error("vertex {0:?} is a sink and cannot be eliminated")]
    IsSink(String),
    #[error("digraph is not completely reduced: {0:?} is a loopless nonsink")]
    NotReduced(String),
    #[error("element lives over a different digraph than the reduction step")]
    WrongDigraph,
}

impl ReductionError {
    pub fn class(&self) -> ErrorClass {
        match self {
            ReductionError::Digraph(e) => e.class(),
            ReductionError::Lpa(e) => e.class(),
            ReductionError::HasLoop(_) | ReductionError::IsSink(_) | ReductionError::NotReduced(_) => {
                ErrorClass::Precondition
            }
            ReductionError::WrongDigraph => ErrorClass::Precondition,
        }
    }
}

/// Where an arrow of the reduced digraph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowOrigin {
    Kept(ArrowId),
    /// The path `fg` through the eliminated vertex.
    Composite(ArrowId, ArrowId),
}

#[derive(Debug, Clone)]
pub struct ReductionStep {
    before: Arc<Digraph>,
    after: Arc<Digraph>,
    eliminated: VertexId,
    /// before-vertex → after-vertex
    vertex_map: Vec<Option<VertexId>>,
    /// after-vertex → before-vertex
    vertex_back: Vec<VertexId>,
    /// after-arrow → origin in `before`
    origin: Vec<ArrowOrigin>,
}

impl ReductionStep {
    pub fn before(&self) -> &Arc<Digraph> {
        &self.before
    }

    pub fn after(&self) -> &Arc<Digraph> {
        &self.after
    }

    /// The eliminated vertex, as an id of [`Self::before`].
    pub fn eliminated(&self) -> VertexId {
        self.eliminated
    }

    pub fn eliminated_name(&self) -> &str {
        self.before.vertex_name(self.eliminated)
    }

    pub fn vertex_after(&self, v: VertexId) -> Option<VertexId> {
        self.vertex_map[v.index()]
    }

    pub fn vertex_before(&self, v: VertexId) -> VertexId {
        self.vertex_back[v.index()]
    }

    pub fn origin(&self, e: ArrowId) -> ArrowOrigin {
        self.origin[e.index()]
    }

    /// New arrows of [`Self::after`] with their `(f, g)` provenance in [`Self::before`].
    pub fn new_arrows(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        self.after
            .arrow_ids()
            .filter_map(|e| match self.origin[e.index()] {
                ArrowOrigin::Composite(f, g) => Some((e, f, g)),
                ArrowOrigin::Kept(_) => None,
            })
            .collect()
    }

    /// The arrow of `after` that an unaffected arrow of `before` became.
    pub fn arrow_after(&self, e: ArrowId) -> Option<ArrowId> {
        self.after
            .arrow_ids()
            .find(|&a| self.origin[a.index()] == ArrowOrigin::Kept(e))
    }
}

fn compose_name(f: &str, g: &str) -> String {
    let wrap = |s: &str| if s.contains('·') { format!("({s})") } else { s.to_string() };
    format!("{}·{}", wrap(f), wrap(g))
}

/// Eliminates the loopless nonsink `v`.
pub fn reduce_step(g: &Arc<Digraph>, v: VertexId) -> Result<ReductionStep, ReductionError> {
    if g.is_sink(v) {
        return Err(ReductionError::IsSink(g.vertex_name(v).to_string()));
    }
    if g.has_loop(v) {
        return Err(ReductionError::HasLoop(g.vertex_name(v).to_string()));
    }
    let mut b = DigraphBuilder::new();
    let mut vertex_map = vec![None; g.vertex_count()];
    let mut vertex_back = Vec::with_capacity(g.vertex_count() - 1);
    for u in g.vertices().filter(|&u| u != v) {
        vertex_map[u.index()] = Some(b.vertex(g.vertex_name(u))?);
        vertex_back.push(u);
    }
    let mut origin = Vec::new();
    for e in g.arrow_ids() {
        if g.source(e) != v && g.target(e) != v {
            let (s, t) = (vertex_map[g.source(e).index()], vertex_map[g.target(e).index()]);
            b.arrow_between(g.arrow_name(e), s.expect("kept"), t.expect("kept"))?;
            origin.push(ArrowOrigin::Kept(e));
        }
    }
    let mut taken: HashSet<String> = g.arrow_ids().map(|e| g.arrow_name(e).to_string()).collect();
    for &f in g.in_arrows(v) {
        for &h in g.out_arrows(v) {
            let base = compose_name(g.arrow_name(f), g.arrow_name(h));
            let mut name = base.clone();
            let mut k = 2;
            while taken.contains(&name) || b.has_arrow(&name) {
                name = format!("{base}_{k}");
                k += 1;
            }
            taken.insert(name.clone());
            let (s, t) = (vertex_map[g.source(f).index()], vertex_map[g.target(h).index()]);
            b.arrow_between(&name, s.expect("kept"), t.expect("kept"))?;
            origin.push(ArrowOrigin::Composite(f, h));
        }
    }
    Ok(ReductionStep {
        before: Arc::clone(g),
        after: Arc::new(b.build()),
        eliminated: v,
        vertex_map,
        vertex_back,
        origin,
    })
}

/// Elimination-order policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// The loopless nonsink with the smallest name.
    NameOrder,
    /// The loopless nonsink with the most incident arrows; ties by name.
    MaxDegreeFirst,
    /// The named vertices in order, then [`Strategy::NameOrder`].
    Script(Vec<String>),
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "name-order" => Ok(Strategy::NameOrder),
            "max-degree" | "max-degree-first" => Ok(Strategy::MaxDegreeFirst),
            _ => match s.strip_prefix("script:") {
                Some(list) => Ok(Strategy::Script(
                    list.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect(),
                )),
                None => Err(format!(
                    "unknown strategy {s:?}; expected name-order, max-degree or script:v1,v2,..."
                )),
            },
        }
    }
}

pub fn loopless_nonsinks(g: &Digraph) -> Vec<VertexId> {
    g.vertices().filter(|&v| !g.is_sink(v) && !g.has_loop(v)).collect()
}

pub fn is_completely_reduced(g: &Digraph) -> bool {
    loopless_nonsinks(g).is_empty()
}

#[derive(Debug, Clone)]
pub struct ReductionTrace {
    start: Arc<Digraph>,
    steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn identity(g: &Arc<Digraph>) -> ReductionTrace {
        ReductionTrace {
            start: Arc::clone(g),
            steps: Vec::new(),
        }
    }

    pub fn start(&self) -> &Arc<Digraph> {
        &self.start
    }

    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    pub fn end(&self) -> &Arc<Digraph> {
        self.steps.last().map_or(&self.start, |s| s.after())
    }

    /// Appends one elimination, by vertex name in the current end digraph.
    pub fn push(&mut self, vertex: &str) -> Result<(), ReductionError> {
        let end = Arc::clone(self.end());
        let v = end.vertex_id(vertex)?;
        self.steps.push(reduce_step(&end, v)?);
        Ok(())
    }

    /// Vertices of the start digraph that survive to the end.
    pub fn surviving(&self) -> Vec<VertexId> {
        let end = self.end();
        end.vertices()
            .map(|v| self.start.vertex_id(end.vertex_name(v)).expect("names survive"))
            .collect()
    }

    /// Composite of the step embeddings `L(end) → L(start)`.
    pub fn embed(&self, a: &Element) -> Result<Element, ReductionError> {
        let mut x = a.clone();
        for step in self.steps.iter().rev() {
            x = embed_phi(step, &x)?;
        }
        Ok(x)
    }
}

fn choose(g: &Digraph, strategy: &Strategy, script_pos: &mut usize) -> Result<Option<VertexId>, ReductionError> {
    let candidates = loopless_nonsinks(g);
    if candidates.is_empty() {
        return Ok(None);
    }
    if let Strategy::Script(names) = strategy {
        if let Some(name) = names.get(*script_pos) {
            *script_pos += 1;
            let v = g.vertex_id(name)?;
            return Ok(Some(v));
        }
    }
    let by_name = |a: &VertexId, b: &VertexId| g.vertex_name(*a).cmp(g.vertex_name(*b));
    let pick = match strategy {
        Strategy::MaxDegreeFirst => candidates.into_iter().min_by(|a, b| {
            let degree = |v: VertexId| g.in_arrows(v).len() + g.out_arrows(v).len();
            degree(*b).cmp(&degree(*a)).then_with(|| by_name(a, b))
        }),
        _ => candidates.into_iter().min_by(by_name),
    };
    Ok(pick)
}

/// Eliminates loopless nonsinks until none remain.
pub fn complete_reduction(g: &Arc<Digraph>, strategy: &Strategy) -> Result<ReductionTrace, ReductionError> {
    let mut trace = ReductionTrace::identity(g);
    let mut script_pos = 0;
    while let Some(v) = choose(trace.end(), strategy, &mut script_pos)? {
        let step = reduce_step(trace.end(), v)?;
        trace.steps.push(step);
    }
    Ok(trace)
}

/// Isomorphism test for completely reduced digraphs, by backtracking on the
/// arrow-multiplicity matrix.
pub fn reduced_isomorphic(g1: &Digraph, g2: &Digraph) -> Result<bool, ReductionError> {
    for g in [g1, g2] {
        if let Some(&v) = loopless_nonsinks(g).first() {
            return Err(ReductionError::NotReduced(g.vertex_name(v).to_string()));
        }
    }
    Ok(isomorphic(g1, g2))
}

/// Multidigraph isomorphism on arrow multiplicities (names ignored).
pub fn isomorphic(g1: &Digraph, g2: &Digraph) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.arrow_count() != g2.arrow_count() {
        return false;
    }
    let n = g1.vertex_count();
    let matrix = |g: &Digraph| -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; n]; n];
        for e in g.arrow_ids() {
            m[g.source(e).index()][g.target(e).index()] += 1;
        }
        m
    };
    let (m1, m2) = (matrix(g1), matrix(g2));
    let signature = |m: &Vec<Vec<usize>>, v: usize| -> (usize, Vec<usize>, Vec<usize>) {
        let mut out: Vec<usize> = (0..n).filter(|&u| u != v).map(|u| m[v][u]).collect();
        let mut inc: Vec<usize> = (0..n).filter(|&u| u != v).map(|u| m[u][v]).collect();
        out.sort_unstable();
        inc.sort_unstable();
        (m[v][v], out, inc)
    };
    let sig1: Vec<_> = (0..n).map(|v| signature(&m1, v)).collect();
    let sig2: Vec<_> = (0..n).map(|v| signature(&m2, v)).collect();
    let mut a: Vec<_> = sig1.clone();
    let mut b: Vec<_> = sig2.clone();
    a.sort();
    b.sort();
    if a != b {
        return false;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        n: usize,
        m1: &[Vec<usize>],
        m2: &[Vec<usize>],
        sig1: &[(usize, Vec<usize>, Vec<usize>)],
        sig2: &[(usize, Vec<usize>, Vec<usize>)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || sig1[i] != sig2[j] {
                continue;
            }
            let consistent = (0..i).all(|k| m1[i][k] == m2[j][image[k]] && m1[k][i] == m2[image[k]][j]);
            if !consistent {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if extend(i + 1, n, m1, m2, sig1, sig2, image, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    extend(0, n, &m1, &m2, &sig1, &sig2, &mut image, &mut used)
}

fn expand_path(step: &ReductionStep, p: &Path) -> Path {
    let g = &*step.before;
    if p.is_trivial() {
        return Path::vertex(step.vertex_before(p.source()));
    }
    let mut arrows = Vec::with_capacity(p.len() * 2);
    for &e in p.arrows() {
        match step.origin(e) {
            ArrowOrigin::Kept(a) => arrows.push(a),
            ArrowOrigin::Composite(f, h) => {
                arrows.push(f);
                arrows.push(h);
            }
        }
    }
    Path::from_arrows(g, &arrows).expect("expansion of a path is a path")
}

/// `φ`: vertices to vertices, kept arrows to themselves, a new arrow `f·g` to the path `fg`.
pub fn embed_phi(step: &ReductionStep, a: &Element) -> Result<Element, ReductionError> {
    if **a.graph() != *step.after {
        return Err(ReductionError::WrongDigraph);
    }
    let terms = a.terms().iter().map(|(m, c)| {
        let p = expand_path(step, m.p());
        let q = expand_path(step, m.q());
        (Monomial::new(p, q).expect("same target"), c.clone())
    });
    Ok(Element::from_terms(&step.before, a.ring(), terms)?)
}

fn random_monomial(g: &Digraph, rng: &mut impl Rng) -> Monomial {
    let v = VertexId(rng.gen_range(0..g.vertex_count() as u32));
    let p = crate::lpa::random_path_into(g, v, 3, rng);
    let q = crate::lpa::random_path_into(g, v, 3, rng);
    Monomial::new(p, q).expect("same target")
}

fn random_element(g: &Arc<Digraph>, ring: Ring, rng: &mut impl Rng) -> Result<Element, LpaError> {
    let terms: Vec<_> = (0..rng.gen_range(1..=3))
        .map(|_| (random_monomial(g, rng), ring.from_i64(rng.gen_range(-2..=2))))
        .collect();
    Element::from_terms(g, ring, terms)
}

/// Dimension of `L(Γ)` restricted to `sp, sq ∈ U`, for acyclic `Γ`.
fn corner_dimension(g: &Digraph, keep: &BTreeSet<VertexId>) -> Result<usize, DigraphError> {
    let mut total = 0;
    for w in g.sinks() {
        let paths = g.enumerate_p(&PTarget::Sink(w), None, 0)?.paths;
        let n = paths.iter().filter(|p| keep.contains(&p.source())).count();
        total += n * n;
    }
    Ok(total)
}

/// Checks that sinks, the number of cycles and the number of cyclic
/// components survive the reduction. For acyclic inputs it compares
/// `dim L(end)` with the corner dimension. When the cycles of the start
/// digraph are pairwise disjoint it also samples elements and checks that `φ`
/// lands in the corner on the surviving vertices and is multiplicative.
pub fn corner_correspondence_check(
    trace: &ReductionTrace,
    samples: usize,
    seed: u64,
) -> Result<CheckReport, ReductionError> {
    let start = trace.start();
    let end = trace.end();
    let surviving: BTreeSet<VertexId> = trace.surviving().into_iter().collect();
    let corner = crate::digraph::VertexSet::from_members(start, surviving.iter().copied());
    let mut report = CheckReport {
        passed: true,
        checked: 0,
        witness: None,
    };
    let mut record = |ok: bool, witness: &dyn Fn() -> String| {
        report.checked += 1;
        if !ok && report.passed {
            report.passed = false;
            report.witness = Some(witness());
        }
    };

    let names = |g: &Digraph, vs: Vec<VertexId>| -> Vec<String> {
        vs.into_iter().map(|v| g.vertex_name(v).to_string()).collect()
    };
    let (s1, s2) = (names(start, start.sinks()), names(end, end.sinks()));
    record(
        s1.iter().collect::<BTreeSet<_>>() == s2.iter().collect::<BTreeSet<_>>(),
        &|| format!("sinks changed: {s1:?} vs {s2:?}"),
    );
    let c1 = start.cycles(DEFAULT_CYCLE_CAP)?.cycles.len();
    let c2 = end.cycles(DEFAULT_CYCLE_CAP)?.cycles.len();
    record(c1 == c2, &|| format!("cycle count changed: {c1} vs {c2}"));
    let (k1, k2) = (cyclic_components(start), cyclic_components(end));
    record(k1 == k2, &|| format!("cyclic component count changed: {k1} vs {k2}"));

    if start.is_acyclic() {
        let big_dim = corner_dimension(start, &surviving)?;
        let all: BTreeSet<VertexId> = end.vertices().collect();
        let small_dim = corner_dimension(end, &all)?;
        record(big_dim == small_dim, &|| {
            format!("corner dimension {big_dim} differs from reduced dimension {small_dim}")
        });
    }

    let (big, small) = match (Normalizer::new(start), Normalizer::new(end)) {
        (Ok(big), Ok(small)) => (big, small),
        (Err(LpaError::Digraph(DigraphError::IntersectingCycles(_))), _) => return Ok(report),
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    };
    let ring = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_element(end, ring, &mut rng)?;
        let b = random_element(end, ring, &mut rng)?;
        let (pa, pb) = (trace.embed(&a)?, trace.embed(&b)?);
        record(pa.corner(&corner) == pa, &|| format!("φ({a}) leaves the corner"));
        let lhs = big.normalize(&trace.embed(&small.normalize(&a.mul(&b)?)?)?)?;
        let rhs = big.normalize(&pa.mul(&pb)?)?;
        record(lhs == rhs, &|| format!("φ is not multiplicative on {a} and {b}"));
    }
    Ok(report)
}

/// Number of strongly connected components that contain a cycle.
pub fn cyclic_components(g: &Digraph) -> usize {
    g.strongly_connected_components()
        .iter()
        .filter(|c| c.len() > 1 || g.has_loop(c[0]))
        .count()
}

/// Arrow multiplicities keyed by vertex names.
pub fn labeled_multiplicities(g: &Digraph) -> BTreeMap<(String, String), usize> {
    let mut m = BTreeMap::new();
    for e in g.arrow_ids() {
        let key = (g.vertex_name(g.source(e)).to_string(), g.vertex_name(g.target(e)).to_string());
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::lpa::parse_element;

    fn arc(g: Digraph) -> Arc<Digraph> {
        Arc::new(g)
    }

    #[test]
    fn eliminate_w_gives_six_loops() {
        let g = arc(families::reduction_example());
        let step = reduce_step(&g, g.vertex_id("w").unwrap()).unwrap();
        let after = step.after();
        let v = after.vertex_id("v").unwrap();
        assert_eq!(after.multiplicity(v, v), 6);
        assert_eq!(step.new_arrows().len(), 6);
        assert_eq!(after.arrow_name(step.new_arrows()[0].0), "c_1·d_1");
    }

    #[test]
    fn source_elimination_adds_nothing() {
        let g = arc(families::gamma2());
        let step = reduce_step(&g, g.vertex_id("u").unwrap()).unwrap();
        assert_eq!(step.after().vertex_count(), 1);
        assert_eq!(step.after().arrow_count(), 0);
        assert!(matches!(
            reduce_step(&g, g.vertex_id("v").unwrap()),
            Err(ReductionError::IsSink(_))
        ));
        let l = arc(families::single_loop());
        assert!(matches!(reduce_step(&l, VertexId(0)), Err(ReductionError::HasLoop(_))));
    }

    #[test]
    fn nested_names() {
        let g = arc(Digraph::parse("vertex a\nvertex b\nvertex c\nvertex d\narrow f a b\narrow g b c\narrow h c d\n").unwrap());
        let mut t = ReductionTrace::identity(&g);
        t.push("b").unwrap();
        t.push("c").unwrap();
        let end = t.end();
        assert_eq!(end.arrow_name(ArrowId(0)), "(f·g)·h");
        let phi = t.embed(&parse_element(end, Ring::Integers, "`(f·g)·h`").unwrap()).unwrap();
        assert_eq!(phi.to_string(), "f.g.h");
    }

    #[test]
    fn paper_example_reductions() {
        let g = arc(families::reduction_example());
        let t = complete_reduction(&g, &Strategy::NameOrder).unwrap();
        let end = t.end();
        assert!(is_completely_reduced(end));
        let expected = Digraph::parse("vertex v\nvertex y\narrow e v v *6\n").unwrap();
        assert!(reduced_isomorphic(end, &expected).unwrap());
        let scripted = complete_reduction(&g, &Strategy::Script(vec!["w".into(), "u".into(), "x".into()])).unwrap();
        let names: Vec<_> = scripted.end().vertices().map(|v| scripted.end().vertex_name(v).to_string()).collect();
        assert_eq!(names, ["v", "y"]);
        assert_eq!(scripted.end().multiplicity(VertexId(0), VertexId(0)), 6);
    }

    #[test]
    fn lambda_has_two_reductions() {
        let g = arc(families::lambda());
        let a = complete_reduction(&g, &Strategy::NameOrder).unwrap();
        let b = complete_reduction(&g, &Strategy::MaxDegreeFirst).unwrap();
        assert_eq!(a.end().vertex_count(), 1);
        assert_eq!(a.end().arrow_count(), 2);
        assert_eq!(b.end().vertex_count(), 2);
        assert_eq!(b.end().arrow_count(), 4);
        assert!(!reduced_isomorphic(a.end(), b.end()).unwrap());
        assert!(reduced_isomorphic(a.end(), a.end()).unwrap());
        assert!(matches!(reduced_isomorphic(&g, &g), Err(ReductionError::NotReduced(_))));
    }

    // Disjoint cycles do not make the complete reduction unique: which vertex
    // of the 2-cycle survives decides whether the loop at v0 keeps a direct
    // arrow to the sink.
    #[test]
    fn disjoint_cycles_two_reductions() {
        let g = arc(Digraph::parse(
            "vertex v0\nvertex v1\nvertex v2\nvertex v3\n\
             arrow a0 v0 v0\narrow a1 v1 v2\narrow a2 v2 v1\narrow a3 v0 v1\narrow a4 v1 v3\n",
        )
        .unwrap());
        assert!(g.cycle_structure().is_ok());
        let mut a = ReductionTrace::identity(&g);
        a.push("v1").unwrap();
        let mut b = ReductionTrace::identity(&g);
        b.push("v2").unwrap();
        assert!(is_completely_reduced(a.end()) && is_completely_reduced(b.end()));
        assert_eq!(a.end().arrow_count(), 5);
        assert_eq!(b.end().arrow_count(), 4);
        assert!(!reduced_isomorphic(a.end(), b.end()).unwrap());
    }

    #[test]
    fn identity_trace() {
        let g = arc(families::single_loop());
        let t = complete_reduction(&g, &Strategy::NameOrder).unwrap();
        assert!(t.steps().is_empty());
        assert!(corner_correspondence_check(&t, 10, 0).unwrap().passed);
    }

    #[test]
    fn corner_checks() {
        let path = arc(Digraph::parse("vertex u\nvertex v\nvertex w\narrow a u v\narrow b v w\n").unwrap());
        let t = complete_reduction(&path, &Strategy::NameOrder).unwrap();
        assert!(corner_correspondence_check(&t, 30, 1).unwrap().passed);
        let g = arc(families::reduction_example());
        let t = complete_reduction(&g, &Strategy::NameOrder).unwrap();
        let report = corner_correspondence_check(&t, 30, 2).unwrap();
        assert!(report.passed, "{:?}", report.witness);
        assert_eq!(report.checked, 3);
        assert_eq!(cyclic_components(t.end()), 1);
        let q = arc(families::q_disk(2));
        let mut t = ReductionTrace::identity(&q);
        t.push("w").unwrap_err();
        let d = arc(Digraph::parse("vertex a\nvertex b\nvertex c\narrow x a b\narrow y b b\narrow z b c\narrow s a c\n").unwrap());
        let t = complete_reduction(&d, &Strategy::NameOrder).unwrap();
        let report = corner_correspondence_check(&t, 40, 3).unwrap();
        assert!(report.passed, "{:?}", report.witness);
        assert!(report.checked > 40);
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("name-order".parse::<Strategy>().unwrap(), Strategy::NameOrder);
        assert_eq!("max-degree".parse::<Strategy>().unwrap(), Strategy::MaxDegreeFirst);
        assert_eq!(
            "script:w,u".parse::<Strategy>().unwrap(),
            Strategy::Script(vec!["w".into(), "u".into()])
        );
        assert!("fastest".parse::<Strategy>().is_err());
    }
}
