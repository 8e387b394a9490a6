use std::collections::BTreeSet;

use super::{Digraph, VertexId};

/// A subset of the vertices of a fixed digraph, with its hereditary and
/// saturated predicates evaluated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: BTreeSet<VertexId>,
    hereditary: bool,
    saturated: bool,
}

impl VertexSet {
    pub fn from_members(g: &Digraph, members: impl IntoIterator<Item = VertexId>) -> VertexSet {
        let members: BTreeSet<VertexId> = members.into_iter().collect();
        let inside = |v: VertexId| members.contains(&v);
        let hereditary = g
            .arrow_ids()
            .all(|e| !inside(g.source(e)) || inside(g.target(e)));
        let saturated = g.vertices().all(|v| {
            g.is_sink(v) || inside(v) || !g.out_arrows(v).iter().all(|&e| inside(g.target(e)))
        });
        VertexSet {
            members,
            hereditary,
            saturated,
        }
    }

    pub fn from_names(g: &Digraph, names: &[&str]) -> Result<VertexSet, super::DigraphError> {
        let ids = names.iter().map(|n| g.vertex_id(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(VertexSet::from_members(g, ids))
    }

    pub fn empty(g: &Digraph) -> VertexSet {
        VertexSet::from_members(g, [])
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, g: &Digraph, other: &VertexSet) -> VertexSet {
        VertexSet::from_members(g, self.members.intersection(&other.members).copied())
    }

    pub fn names<'g>(&self, g: &'g Digraph) -> Vec<&'g str> {
        self.members.iter().map(|&v| g.vertex_name(v)).collect()
    }
}

impl Digraph {
    /// Smallest hereditary superset of `x`: all successors of its members.
    pub fn hereditary_closure(&self, x: &VertexSet) -> VertexSet {
        let start: Vec<VertexId> = x.members().iter().copied().collect();
        let seen = self.successors_of(&start);
        VertexSet::from_members(self, self.vertices().filter(|v| seen[v.index()]))
    }

    /// Least hereditary saturated superset of `x`: alternately close under
    /// successors and add every non-sink whose arrow targets all lie inside.
    pub fn hereditary_saturated_closure(&self, x: &VertexSet) -> VertexSet {
        let start: Vec<VertexId> = x.members().iter().copied().collect();
        let mut inside = self.successors_of(&start);
        loop {
            let mut changed = false;
            for v in self.vertices() {
                if inside[v.index()] || self.is_sink(v) {
                    continue;
                }
                if self.out_arrows(v).iter().all(|&e| inside[self.target(e).index()]) {
                    inside[v.index()] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        VertexSet::from_members(self, self.vertices().filter(|v| inside[v.index()]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn set(g: &Digraph, names: &[&str]) -> VertexSet {
        VertexSet::from_names(g, names).unwrap()
    }

    #[test]
    fn hereditary_closure_examples() {
        let t = families::toeplitz();
        assert_eq!(t.hereditary_closure(&set(&t, &["v"])).names(&t), ["v", "w"]);
        assert_eq!(t.hereditary_closure(&set(&t, &["w"])).names(&t), ["w"]);
        let d = families::q_disk(2);
        let first = VertexSet::from_members(&d, [VertexId(0)]);
        assert_eq!(d.hereditary_closure(&first).len(), d.vertex_count());
    }

    #[test]
    fn saturated_closure_examples() {
        let g = families::gamma2();
        assert_eq!(g.hereditary_saturated_closure(&set(&g, &["v"])).names(&g), ["u", "v"]);
        let t = families::toeplitz();
        assert_eq!(t.hereditary_saturated_closure(&set(&t, &["w"])).names(&t), ["w"]);
        assert!(g.hereditary_saturated_closure(&VertexSet::empty(&g)).is_empty());
    }

    #[test]
    fn flags() {
        let t = families::toeplitz();
        let w = set(&t, &["w"]);
        assert!(w.is_hereditary() && w.is_saturated());
        let v = set(&t, &["v"]);
        assert!(!v.is_hereditary());
        let g = families::gamma2();
        let v = set(&g, &["v"]);
        assert!(v.is_hereditary() && !v.is_saturated());
    }
}
