//! Brute-force rewriting of words in vertices, arrows and dual arrows.
//!
//! Rules, applied to the leftmost adjacent pair that matches:
//! incompatible endpoints give 0; a vertex next to another letter is
//! dropped; `e*f` is `t(e)` if `e = f` and 0 otherwise; and, when the
//! Cuntz–Krieger rule is on, `ee*` for the first arrow `e` out of `s(e)`
//! becomes `s(e) − Σ gg*` over the other arrows `g` out of `s(e)`.
//! Irreducible words are `pq*` without that special seam, which form a basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use leavitt_core::lpa::{Element, Monomial, Normalizer};
use leavitt_core::{ArrowId, Digraph, Path, Ring, RingValue, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    V(VertexId),
    A(ArrowId),
    D(ArrowId),
}

pub type Word = Vec<Letter>;
pub type Poly = BTreeMap<Word, i64>;

pub struct Rewriter<'g> {
    g: &'g Digraph,
    ck2: bool,
}

impl<'g> Rewriter<'g> {
    pub fn new(g: &'g Digraph) -> Rewriter<'g> {
        Rewriter { g, ck2: true }
    }

    /// Only (V), (E) and (CK1).
    pub fn without_ck2(g: &'g Digraph) -> Rewriter<'g> {
        Rewriter { g, ck2: false }
    }

    fn ends(&self, l: Letter) -> (VertexId, VertexId) {
        match l {
            Letter::V(v) => (v, v),
            Letter::A(e) => (self.g.source(e), self.g.target(e)),
            Letter::D(e) => (self.g.target(e), self.g.source(e)),
        }
    }

    fn special(&self, e: ArrowId) -> bool {
        self.g.out_arrows(self.g.source(e))[0] == e
    }

    /// `None` when irreducible.
    fn step(&self, w: &Word) -> Option<Vec<(Word, i64)>> {
        let splice = |i: usize, mid: &[Letter]| -> Word {
            let mut out = w[..i].to_vec();
            out.extend_from_slice(mid);
            out.extend_from_slice(&w[i + 2..]);
            out
        };
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            if self.ends(x).1 != self.ends(y).0 {
                return Some(vec![]);
            }
            match (x, y) {
                (Letter::V(_), _) => return Some(vec![(splice(i, &[y]), 1)]),
                (_, Letter::V(_)) => return Some(vec![(splice(i, &[x]), 1)]),
                (Letter::D(e), Letter::A(f)) => {
                    return Some(if e == f { vec![(splice(i, &[Letter::V(self.g.target(e))]), 1)] } else { vec![] });
                }
                (Letter::A(e), Letter::D(f)) if self.ck2 && e == f && self.special(e) => {
                    let v = self.g.source(e);
                    let mut out = vec![(splice(i, &[Letter::V(v)]), 1)];
                    for &g in self.g.out_arrows(v) {
                        if g != e {
                            out.push((splice(i, &[Letter::A(g), Letter::D(g)]), -1));
                        }
                    }
                    return Some(out);
                }
                _ => {}
            }
        }
        None
    }

    pub fn reduce_word(&self, w: Word) -> Poly {
        let mut out = Poly::new();
        let mut work = vec![(w, 1i64)];
        while let Some((w, c)) = work.pop() {
            match self.step(&w) {
                None => *out.entry(w).or_insert(0) += c,
                Some(next) => work.extend(next.into_iter().map(|(w2, c2)| (w2, c * c2))),
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Reduced form of an element, coefficients in its ring.
    pub fn element(&self, a: &Element) -> BTreeMap<Word, RingValue> {
        let ring = a.ring();
        let mut acc: BTreeMap<Word, RingValue> = BTreeMap::new();
        for (m, c) in a.terms() {
            for (w, k) in self.reduce_word(word(m)) {
                let term = c.mul(&ring.from_i64(k)).unwrap();
                let slot = acc.entry(w).or_insert_with(|| ring.zero());
                *slot = slot.add(&term).unwrap();
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }
}

pub fn path_word(p: &Path) -> Word {
    p.arrows().iter().map(|&e| Letter::A(e)).collect()
}

pub fn dual_word(p: &Path) -> Word {
    p.arrows().iter().rev().map(|&e| Letter::D(e)).collect()
}

/// `pq*` as a word; a bare vertex when both paths are trivial.
pub fn word(m: &Monomial) -> Word {
    let mut w = path_word(m.p());
    w.extend(dual_word(m.q()));
    if w.is_empty() {
        w.push(Letter::V(m.middle()));
    }
    w
}

/// Number of irreducible words `pq*` (the basis size) of an acyclic digraph.
pub fn basis_count(g: &Digraph) -> usize {
    assert!(g.is_acyclic());
    let mut paths_into: Vec<Vec<Path>> = vec![Vec::new(); g.vertex_count()];
    fn walk(g: &Digraph, p: Path, into: &mut Vec<Vec<Path>>) {
        into[p.target().index()].push(p.clone());
        for &e in g.out_arrows(p.target()) {
            let mut arrows = p.arrows().to_vec();
            arrows.push(e);
            walk(g, Path::from_arrows(g, &arrows).unwrap(), into);
        }
    }
    for v in g.vertices() {
        walk(g, Path::vertex(v), &mut paths_into);
    }
    let rw = Rewriter::new(g);
    let mut count = 0;
    for ps in &paths_into {
        for p in ps {
            for q in ps {
                let m = Monomial::new(p.clone(), q.clone()).unwrap();
                let w = word(&m);
                let reduced = rw.reduce_word(w.clone());
                if reduced.len() == 1 && reduced.get(&w) == Some(&1) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Equality in the algebra, decided by reduced forms.
pub fn same(rw: &Rewriter, a: &Element, b: &Element) -> bool {
    rw.element(a) == rw.element(b)
}

pub fn ring_value_nonzero(r: &RingValue) -> bool {
    !r.is_zero()
}

pub fn rings() -> [Ring; 4] {
    [Ring::Integers, Ring::Rationals, Ring::IntegersMod(6), Ring::Laurent]
}

/// Checks `CC* = sC − Σ r f f* r*` for the first cycle of `g`, over proper
/// prefixes `r` of `C` and exits `f` at `t(r)`: by the rewriter, by the
/// normalizer, and the normal form against the rewriter.
pub fn seam_identity_holds(g: &Arc<Digraph>) -> bool {
    let n = Normalizer::new(g).unwrap();
    let c = n.structure().cycle(0).clone();
    let cp = c.as_path();
    let ring = Ring::Integers;
    let lhs = Element::monomial(g, ring, Monomial::new(cp.clone(), cp).unwrap());
    let mut rhs = Element::vertex(g, ring, c.base());
    for j in 0..c.len() {
        let prefix = &c.arrows()[..j];
        let at = if j == 0 { c.base() } else { g.target(prefix[j - 1]) };
        for &f in g.out_arrows(at) {
            if f == c.arrows()[j] {
                continue;
            }
            let mut arrows = prefix.to_vec();
            arrows.push(f);
            let p = Path::from_arrows(g, &arrows).unwrap();
            let term = Element::monomial(g, ring, Monomial::new(p.clone(), p).unwrap());
            rhs = rhs.sub(&term).unwrap();
        }
    }
    let rw = Rewriter::new(g);
    same(&rw, &lhs, &rhs) && n.equals(&lhs, &rhs).unwrap() && same(&rw, &n.normalize(&lhs).unwrap(), &rhs)
}
