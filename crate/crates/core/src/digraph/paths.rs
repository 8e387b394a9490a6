use std::cmp::Ordering;

use super::{ArrowId, Digraph, DigraphError, VertexId};

/// Default cap on the number of cycles [`Digraph::cycles`] will enumerate.
pub const DEFAULT_CYCLE_CAP: usize = 10_000;

/// A finite path. A path of length 0 is a vertex; otherwise `source` and
/// `target` are determined by the arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(g: &Digraph, e: ArrowId) -> Path {
        Path {
            source: g.source(e),
            target: g.target(e),
            arrows: vec![e],
        }
    }

    /// Builds a path from a nonempty arrow sequence, checking `t(eᵢ) = s(eᵢ₊₁)`.
    pub fn from_arrows(g: &Digraph, arrows: &[ArrowId]) -> Result<Path, DigraphError> {
        let (first, last) = match (arrows.first(), arrows.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(DigraphError::NotComposable(String::new(), String::new())),
        };
        for w in arrows.windows(2) {
            if g.target(w[0]) != g.source(w[1]) {
                return Err(DigraphError::NotComposable(
                    g.arrow_name(w[0]).to_string(),
                    g.arrow_name(w[1]).to_string(),
                ));
            }
        }
        Ok(Path {
            source: g.source(first),
            target: g.target(last),
            arrows: arrows.to_vec(),
        })
    }

    /// Parses dot-separated arrow names, or a single vertex name for a trivial path.
    pub fn parse(g: &Digraph, text: &str) -> Result<Path, DigraphError> {
        let text = text.trim();
        if let Ok(v) = g.vertex_id(text) {
            return Ok(Path::vertex(v));
        }
        let arrows = text
            .split('.')
            .map(|n| g.arrow_id(n.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(g, &arrows)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self · other`, or `None` when `t(self) ≠ s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// Appends one arrow; the caller guarantees `t(self) = s(e)`.
    pub(crate) fn push(&self, g: &Digraph, e: ArrowId) -> Path {
        debug_assert_eq!(self.target, g.source(e));
        let mut arrows = Vec::with_capacity(self.len() + 1);
        arrows.extend_from_slice(&self.arrows);
        arrows.push(e);
        Path {
            source: self.source,
            target: g.target(e),
            arrows,
        }
    }

    /// If `self = prefix · r`, returns `r`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.source != prefix.source || !self.arrows.starts_with(&prefix.arrows) {
            return None;
        }
        Some(Path {
            source: prefix.target,
            target: self.target,
            arrows: self.arrows[prefix.len()..].to_vec(),
        })
    }

    pub fn ends_with(&self, suffix: &[ArrowId]) -> bool {
        self.arrows.ends_with(suffix)
    }

    /// The prefix consisting of the first `len` arrows.
    pub fn truncate(&self, g: &Digraph, len: usize) -> Path {
        if len >= self.len() {
            return self.clone();
        }
        let target = if len == 0 {
            self.source
        } else {
            g.target(self.arrows[len - 1])
        };
        Path {
            source: self.source,
            target,
            arrows: self.arrows[..len].to_vec(),
        }
    }

    /// Vertex sequence `s(e₁), …, s(eₙ), t(eₙ)`.
    pub fn vertices(&self, g: &Digraph) -> Vec<VertexId> {
        let mut vs = vec![self.source];
        vs.extend(self.arrows.iter().map(|&e| g.target(e)));
        vs
    }

    /// Dot-separated arrow names, or the vertex name for a trivial path.
    pub fn render(&self, g: &Digraph) -> String {
        if self.arrows.is_empty() {
            g.vertex_name(self.source).to_string()
        } else {
            self.arrows.iter().map(|&e| g.arrow_name(e)).collect::<Vec<_>>().join(".")
        }
    }

    /// Renders `self*` as dual arrows in reverse order.
    pub fn render_dual(&self, g: &Digraph) -> String {
        if self.arrows.is_empty() {
            g.vertex_name(self.source).to_string()
        } else {
            self.arrows
                .iter()
                .rev()
                .map(|&e| format!("{}*", g.arrow_name(e)))
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Length first, then lexicographic by arrow names.
    pub fn display_cmp(&self, other: &Path, g: &Digraph) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a = self.arrows.iter().map(|&e| g.arrow_name(e));
            let b = other.arrows.iter().map(|&e| g.arrow_name(e));
            a.cmp(b)
                .then_with(|| g.vertex_name(self.source).cmp(g.vertex_name(other.source)))
        })
    }
}

/// A cycle stored in canonical rotation: it starts at the vertex with the
/// lexicographically smallest name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    base: VertexId,
    arrows: Vec<ArrowId>,
}

impl Cycle {
    /// Rotates `arrows` (a closed path through distinct vertices) into canonical form.
    pub fn canonical(g: &Digraph, arrows: &[ArrowId]) -> Cycle {
        let start = (0..arrows.len())
            .min_by(|&i, &j| g.vertex_name(g.source(arrows[i])).cmp(g.vertex_name(g.source(arrows[j]))))
            .expect("cycles are nonempty");
        let mut rotated = arrows[start..].to_vec();
        rotated.extend_from_slice(&arrows[..start]);
        Cycle {
            base: g.source(rotated[0]),
            arrows: rotated,
        }
    }

    /// The canonical base vertex `sC`.
    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn as_path(&self) -> Path {
        Path {
            source: self.base,
            target: self.base,
            arrows: self.arrows.clone(),
        }
    }

    /// `C^n` as a path for `n ≥ 0`.
    pub fn power(&self, n: usize) -> Path {
        let mut arrows = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            arrows.extend_from_slice(&self.arrows);
        }
        Path {
            source: self.base,
            target: self.base,
            arrows,
        }
    }

    /// Vertices in cycle order starting at the base.
    pub fn vertices(&self, g: &Digraph) -> Vec<VertexId> {
        self.arrows.iter().map(|&e| g.source(e)).collect()
    }

    /// Arrows leaving the cycle.
    pub fn exits(&self, g: &Digraph) -> Vec<ArrowId> {
        self.arrows
            .iter()
            .flat_map(|&c| {
                let v = g.source(c);
                g.out_arrows(v).iter().copied().filter(move |&e| e != c)
            })
            .collect()
    }

    pub fn render(&self, g: &Digraph) -> String {
        self.as_path().render(g)
    }
}

/// Result of exhaustive cycle enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub cycles: Vec<Cycle>,
    pub disjoint: bool,
}

/// Cycle data for a digraph whose cycles are pairwise vertex-disjoint.
#[derive(Debug, Clone)]
pub struct CycleStructure {
    cycles: Vec<Cycle>,
    /// vertex → (cycle index, position of the vertex along the cycle)
    position: Vec<Option<(usize, usize)>>,
    exits: Vec<Vec<ArrowId>>,
}

impl CycleStructure {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle(&self, i: usize) -> &Cycle {
        &self.cycles[i]
    }

    /// `(cycle index, position)` when `v` lies on a cycle.
    pub fn locate(&self, v: VertexId) -> Option<(usize, usize)> {
        self.position[v.index()]
    }

    pub fn exits(&self, i: usize) -> &[ArrowId] {
        &self.exits[i]
    }

    pub fn has_exit(&self, i: usize) -> bool {
        !self.exits[i].is_empty()
    }

    /// The cycle containing `v` as its canonical base, if any.
    pub fn cycle_based_at(&self, v: VertexId) -> Option<usize> {
        match self.locate(v) {
            Some((c, 0)) => Some(c),
            _ => None,
        }
    }
}

/// Target of a `P` index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PTarget {
    Sink(VertexId),
    Cycle(Cycle),
}

/// Members of `P_w` or `P_C`, in length-then-lexicographic order. When
/// `infinite` is set the list holds every member up to the requested length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PEnumeration {
    pub paths: Vec<Path>,
    pub infinite: bool,
}

impl Digraph {
    /// All cycles up to rotation, plus whether they are pairwise disjoint.
    pub fn cycles(&self, cap: usize) -> Result<CycleReport, DigraphError> {
        let mut order: Vec<VertexId> = self.vertices().collect();
        order.sort_by(|a, b| self.vertex_name(*a).cmp(self.vertex_name(*b)));
        let mut rank = vec![0usize; self.vertex_count()];
        for (i, v) in order.iter().enumerate() {
            rank[v.index()] = i;
        }

        let mut found: Vec<Cycle> = Vec::new();
        let mut on_path = vec![false; self.vertex_count()];
        let mut arrows: Vec<ArrowId> = Vec::new();
        for &start in &order {
            on_path[start.index()] = true;
            self.cycle_dfs(start, start, &rank, &mut on_path, &mut arrows, &mut found, cap)?;
            on_path[start.index()] = false;
        }

        let mut count = vec![0usize; self.vertex_count()];
        for c in &found {
            for v in c.vertices(self) {
                count[v.index()] += 1;
            }
        }
        let disjoint = count.iter().all(|&n| n <= 1);
        Ok(CycleReport {
            cycles: found,
            disjoint,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn cycle_dfs(
        &self,
        start: VertexId,
        at: VertexId,
        rank: &[usize],
        on_path: &mut [bool],
        arrows: &mut Vec<ArrowId>,
        found: &mut Vec<Cycle>,
        cap: usize,
    ) -> Result<(), DigraphError> {
        for &e in self.out_arrows(at) {
            let t = self.target(e);
            arrows.push(e);
            if t == start {
                if found.len() >= cap {
                    return Err(DigraphError::CycleCapExceeded(cap));
                }
                found.push(Cycle {
                    base: start,
                    arrows: arrows.clone(),
                });
            } else if rank[t.index()] > rank[start.index()] && !on_path[t.index()] {
                on_path[t.index()] = true;
                self.cycle_dfs(start, t, rank, on_path, arrows, found, cap)?;
                on_path[t.index()] = false;
            }
            arrows.pop();
        }
        Ok(())
    }

    /// Cycle data via strongly connected components. Fails when two cycles
    /// share a vertex: then some component is neither a single vertex with at
    /// most one loop nor a simple cycle.
    pub fn cycle_structure(&self) -> Result<CycleStructure, DigraphError> {
        let mut comp_of = vec![usize::MAX; self.vertex_count()];
        let comps = self.strongly_connected_components();
        for (i, comp) in comps.iter().enumerate() {
            for v in comp {
                comp_of[v.index()] = i;
            }
        }
        let mut cycles = Vec::new();
        for comp in &comps {
            let internal: Vec<Vec<ArrowId>> = comp
                .iter()
                .map(|&v| {
                    self.out_arrows(v)
                        .iter()
                        .copied()
                        .filter(|&e| comp_of[self.target(e).index()] == comp_of[v.index()])
                        .collect()
                })
                .collect();
            let total: usize = internal.iter().map(Vec::len).sum();
            if total == 0 {
                continue;
            }
            if internal.iter().any(|arrows| arrows.len() != 1) {
                let v = comp
                    .iter()
                    .zip(&internal)
                    .find(|(_, a)| a.len() > 1)
                    .map(|(v, _)| *v)
                    .unwrap_or(comp[0]);
                return Err(DigraphError::IntersectingCycles(self.vertex_name(v).to_string()));
            }
            // Each vertex has exactly one internal out-arrow: the component is one cycle.
            let mut arrows = Vec::with_capacity(comp.len());
            let mut at = comp[0];
            loop {
                let idx = comp.binary_search(&at).expect("vertex in component");
                let e = internal[idx][0];
                arrows.push(e);
                at = self.target(e);
                if at == comp[0] {
                    break;
                }
            }
            cycles.push(Cycle::canonical(self, &arrows));
        }
        cycles.sort_by(|a, b| self.vertex_name(a.base).cmp(self.vertex_name(b.base)));

        let mut position = vec![None; self.vertex_count()];
        let mut exits = Vec::with_capacity(cycles.len());
        for (i, c) in cycles.iter().enumerate() {
            for (k, v) in c.vertices(self).into_iter().enumerate() {
                position[v.index()] = Some((i, k));
            }
            exits.push(c.exits(self));
        }
        Ok(CycleStructure {
            cycles,
            position,
            exits,
        })
    }

    /// Enumerates `P_w` (paths ending at the sink `w`) or `P_C` (paths ending
    /// at `sC` that do not end with a full copy of `C`), optionally restricted
    /// to paths starting at `from`. If the set is infinite, every member of
    /// length ≤ `max_len` is returned and `infinite` is set.
    pub fn enumerate_p(
        &self,
        target: &PTarget,
        from: Option<VertexId>,
        max_len: usize,
    ) -> Result<PEnumeration, DigraphError> {
        let on_cycle = self.on_some_cycle();
        let (end, forbidden_suffix, own_cycle): (VertexId, Option<&[ArrowId]>, Vec<VertexId>) = match target {
            PTarget::Sink(w) => {
                if !self.is_sink(*w) {
                    return Err(DigraphError::UnknownVertex(format!(
                        "{} is not a sink",
                        self.vertex_name(*w)
                    )));
                }
                (*w, None, Vec::new())
            }
            PTarget::Cycle(c) => {
                let structure = self.cycle_structure()?;
                if structure.locate(c.base()).is_none() {
                    return Err(DigraphError::UnknownVertex(format!(
                        "{} is not on a cycle",
                        self.vertex_name(c.base())
                    )));
                }
                (c.base(), Some(c.arrows()), c.vertices(self))
            }
        };
        let preds = self.predecessors_of(&[end]);
        let infinite = self
            .vertices()
            .any(|x| on_cycle[x.index()] && preds[x.index()] && !own_cycle.contains(&x));
        let bound = if infinite { Some(max_len) } else { None };

        let mut paths = Vec::new();
        let mut reversed: Vec<ArrowId> = Vec::new();
        self.p_dfs(end, end, forbidden_suffix, from, bound, &mut reversed, &mut paths);
        paths.sort_by(|a, b| a.display_cmp(b, self));
        Ok(PEnumeration { paths, infinite })
    }

    #[allow(clippy::too_many_arguments)]
    fn p_dfs(
        &self,
        end: VertexId,
        at: VertexId,
        forbidden_suffix: Option<&[ArrowId]>,
        from: Option<VertexId>,
        bound: Option<usize>,
        reversed: &mut Vec<ArrowId>,
        out: &mut Vec<Path>,
    ) {
        if let Some(c) = forbidden_suffix {
            if reversed.len() == c.len() && reversed.iter().rev().eq(c.iter()) {
                return;
            }
        }
        if from.is_none_or(|f| f == at) {
            let arrows: Vec<ArrowId> = reversed.iter().rev().copied().collect();
            out.push(Path {
                source: at,
                target: end,
                arrows,
            });
        }
        if bound.is_some_and(|b| reversed.len() >= b) {
            return;
        }
        for &e in self.in_arrows(at) {
            reversed.push(e);
            self.p_dfs(end, self.source(e), forbidden_suffix, from, bound, reversed, out);
            reversed.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn names(g: &Digraph, paths: &[Path]) -> Vec<String> {
        paths.iter().map(|p| p.render(g)).collect()
    }

    #[test]
    fn cycles_of_named_graphs() {
        let g3 = families::single_loop();
        let r = g3.cycles(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(r.cycles.len(), 1);
        assert!(r.disjoint);
        let rose = families::rose(2);
        let r = rose.cycles(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(r.cycles.len(), 2);
        assert!(!r.disjoint);
        let s3 = families::q_sphere_odd(2);
        let r = s3.cycles(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(r.cycles.len(), 2);
        assert!(r.disjoint);
    }

    #[test]
    fn cycle_cap_is_enforced() {
        let rose = families::rose(5);
        assert_eq!(rose.cycles(3), Err(DigraphError::CycleCapExceeded(3)));
    }

    #[test]
    fn canonical_rotation_starts_at_smallest_name() {
        let g = Digraph::from_parts(&["b", "a", "c"], &[("x", "b", "c"), ("y", "c", "a"), ("z", "a", "b")]).unwrap();
        let s = g.cycle_structure().unwrap();
        assert_eq!(s.cycles().len(), 1);
        assert_eq!(g.vertex_name(s.cycle(0).base()), "a");
        assert_eq!(s.cycle(0).render(&g), "z.x.y");
        let r = g.cycles(10).unwrap();
        assert_eq!(r.cycles, s.cycles());
    }

    #[test]
    fn structure_rejects_intersecting_cycles() {
        assert!(matches!(
            families::rose(2).cycle_structure(),
            Err(DigraphError::IntersectingCycles(_))
        ));
        assert!(matches!(
            families::lambda().cycle_structure(),
            Err(DigraphError::IntersectingCycles(_))
        ));
    }

    #[test]
    fn p_sets() {
        let g2 = families::gamma2();
        let v = g2.vertex_id("v").unwrap();
        let p = g2.enumerate_p(&PTarget::Sink(v), None, 10).unwrap();
        assert_eq!(names(&g2, &p.paths), ["v", "e"]);
        assert!(!p.infinite);

        let g3 = families::single_loop();
        let c = g3.cycle_structure().unwrap().cycle(0).clone();
        let p = g3.enumerate_p(&PTarget::Cycle(c), None, 10).unwrap();
        assert_eq!(names(&g3, &p.paths), ["v"]);

        let t = families::toeplitz();
        let c = t.cycle_structure().unwrap().cycle(0).clone();
        let p = t.enumerate_p(&PTarget::Cycle(c), None, 10).unwrap();
        assert_eq!(names(&t, &p.paths), ["v"]);
        assert!(!p.infinite);
        let w = t.vertex_id("w").unwrap();
        let p = t.enumerate_p(&PTarget::Sink(w), None, 3).unwrap();
        assert!(p.infinite);
        assert_eq!(names(&t, &p.paths), ["w", "f", "e.f", "e.e.f"]);
    }

    #[test]
    fn p_set_from_filter() {
        let g = families::q_sphere_even(1);
        let s = g.sinks()[0];
        let start = g.vertex_id("1").unwrap();
        let p = g.enumerate_p(&PTarget::Sink(s), Some(start), 2).unwrap();
        assert!(p.infinite);
        assert!(p.paths.iter().all(|q| q.source() == start));
        assert_eq!(p.paths.len(), 2);
    }

    #[test]
    fn path_algebra_helpers() {
        let t = families::toeplitz();
        let e = t.arrow_id("e").unwrap();
        let f = t.arrow_id("f").unwrap();
        let ef = Path::from_arrows(&t, &[e, f]).unwrap();
        assert!(Path::from_arrows(&t, &[f, e]).is_err());
        let pe = Path::arrow(&t, e);
        assert_eq!(ef.strip_prefix(&pe).unwrap(), Path::arrow(&t, f));
        assert_eq!(ef.strip_prefix(&Path::vertex(t.source(e))).unwrap(), ef);
        assert!(pe.strip_prefix(&ef).is_none());
        assert_eq!(ef.truncate(&t, 1), pe);
        assert_eq!(ef.truncate(&t, 0), Path::vertex(t.source(e)));
        assert_eq!(Path::parse(&t, "e.f").unwrap(), ef);
        assert_eq!(ef.render_dual(&t), "f*.e*");
    }
}
