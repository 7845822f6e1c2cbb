//! Bounded coset enumeration over the trivial subgroup, used to turn a
//! presented groupoid with finite vertex groups into a concrete one.

use super::collapse::{abelian_invariants, collapse_component, SignedGen};
use super::{component_vertex_lists, PresToConcrete, PresentedGroupoid};
use crate::group::FiniteGroup;
use crate::groupoid::ConcreteGroupoid;
use std::collections::VecDeque;
use std::sync::Arc;

/// Default budget, in coset-table cells.
pub const DEFAULT_BUDGET: usize = 100_000;

const NONE: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<usize>,
    forward: Vec<usize>,
    budget: usize,
}

impl CosetTable {
    fn new(gens: usize, budget: usize) -> Self {
        let cols = 2 * gens;
        Self {
            cols,
            table: vec![NONE; cols],
            forward: vec![0],
            budget,
        }
    }

    fn cosets(&self) -> usize {
        self.forward.len()
    }

    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.cols + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] != r {
            r = self.forward[r];
        }
        let mut x = c;
        while self.forward[x] != r {
            let next = self.forward[x];
            self.forward[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Option<usize> {
        let d = self.cosets();
        if (d + 1) * self.cols > self.budget {
            return None;
        }
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.forward.push(d);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Some(d)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.forward[hi] = lo;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex, &mut queue);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != NONE {
                        self.merge(e1, fx, &mut queue);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    /// Scans `word` from coset `c`, defining cosets to complete it.
    /// Returns false when the budget runs out.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> bool {
        if word.is_empty() {
            return true;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, word.len() as isize - 1);
        loop {
            while i <= j && self.get(f, word[i as usize]) != NONE {
                f = self.get(f, word[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i && self.get(b, word[j as usize] ^ 1) != NONE {
                b = self.get(b, word[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return true;
            }
            if i == j {
                let x = word[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return true;
            }
            if self.define(f, word[i as usize]).is_none() {
                return false;
            }
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. On success returns the
/// group with elements numbered by breadth-first order from the identity and
/// the element of each generator.
pub(crate) fn enumerate_group(gens: usize, relators: &[Vec<SignedGen>], budget: usize) -> Option<(FiniteGroup, Vec<usize>)> {
    let mut t = CosetTable::new(gens, budget.max(1));
    if gens > 0 && t.cols > budget {
        return None;
    }
    let words: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.iter().map(|&(g, inv)| 2 * g + inv as usize).collect())
        .collect();
    let mut c = 0;
    while c < t.cosets() {
        if t.is_live(c) {
            for w in &words {
                if !t.scan_and_fill(c, w) {
                    return None;
                }
                if !t.is_live(c) {
                    break;
                }
            }
            if t.is_live(c) {
                for x in 0..t.cols {
                    if t.get(c, x) == NONE && t.define(c, x).is_none() {
                        return None;
                    }
                }
            }
        }
        c += 1;
    }
    // compact live cosets in breadth-first order from coset 0
    let n_cols = t.cols;
    let mut index = vec![NONE; t.cosets()];
    let mut order = vec![0usize];
    let mut words_of: Vec<Vec<usize>> = vec![Vec::new()];
    index[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for x in 0..n_cols {
            let d = t.rep(t.get(c, x));
            if index[d] == NONE {
                index[d] = order.len();
                order.push(d);
                let mut w = words_of[k].clone();
                w.push(x);
                words_of.push(w);
            }
        }
        k += 1;
    }
    let n = order.len();
    let act = |t: &mut CosetTable, c: usize, x: usize| -> usize { index[t.rep(t.get(order[c], x))] };
    let mut next = vec![vec![0usize; n_cols]; n];
    for c in 0..n {
        for x in 0..n_cols {
            next[c][x] = act(&mut t, c, x);
        }
    }
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| words_of[b].iter().fold(a, |at, &x| next[at][x])).collect())
        .collect();
    let group = FiniteGroup::from_table_unchecked(table);
    let gen_elems = (0..gens).map(|g| next[0][2 * g]).collect();
    Some((group, gen_elems))
}

/// A concrete groupoid presented by `p`, with the comparison functor.
#[derive(Clone, Debug)]
pub struct ConcreteModel {
    pub groupoid: Arc<ConcreteGroupoid>,
    /// Bijective on objects, surjective on morphisms, respects relations.
    pub functor: PresToConcrete,
    /// Vertex group of each component (components in order of least vertex).
    pub vertex_groups: Vec<FiniteGroup>,
}

/// Concretizes `p` when every vertex group is finite and enumerable within
/// `budget` table cells per component; `None` means unknown.
pub fn concretize(p: &PresentedGroupoid, budget: usize) -> Option<ConcreteModel> {
    let comps = component_vertex_lists(&p.graph);
    let mut vertex_groups = Vec::new();
    // (vertex, index within component, component)
    let mut placement = vec![(0usize, 0usize); p.num_vertices()];
    let mut edge_elem = vec![0usize; p.num_edges()];
    for (ci, verts) in comps.iter().enumerate() {
        let collapse = collapse_component(p, verts[0]);
        let pres = &collapse.presentation;
        if abelian_invariants(pres).free_rank > 0 {
            return None;
        }
        let (group, gen_elems) = enumerate_group(pres.generators.len(), &pres.relators, budget)?;
        for (k, &v) in verts.iter().enumerate() {
            placement[v] = (ci, k);
        }
        for (e, g) in collapse.edge_generator.iter().enumerate() {
            if collapse.tree.reached[p.graph.edges[e].src] {
                edge_elem[e] = g.map_or(group.identity(), |g| gen_elems[g]);
            }
        }
        vertex_groups.push(group);
    }
    // objects keep vertex order; morphisms grouped by component as (u, v, g)
    let objects: Vec<String> = p.graph.vertices.clone();
    let mut offsets = Vec::with_capacity(comps.len());
    let mut morphisms = Vec::new();
    for (ci, verts) in comps.iter().enumerate() {
        offsets.push(morphisms.len());
        let k = vertex_groups[ci].order();
        for &u in verts {
            for &v in verts {
                for g in 0..k {
                    let name = if k == 1 {
                        format!("{}>{}", objects[u], objects[v])
                    } else {
                        format!("{}>{}:{g}", objects[u], objects[v])
                    };
                    morphisms.push((name, u, v));
                }
            }
        }
    }
    let locate = |m: usize| {
        let ci = offsets.iter().rposition(|&o| o <= m).unwrap();
        let k = vertex_groups[ci].order();
        let n = comps[ci].len();
        let local = m - offsets[ci];
        (ci, local / k / n, (local / k) % n, local % k)
    };
    let index = |ci: usize, u: usize, v: usize, g: usize| {
        let k = vertex_groups[ci].order();
        offsets[ci] + (u * comps[ci].len() + v) * k + g
    };
    let groupoid = Arc::new(ConcreteGroupoid::from_parts(objects, morphisms, |f, h| {
        let (ci, u, _, g1) = locate(f);
        let (_, _, w, g2) = locate(h);
        index(ci, u, w, vertex_groups[ci].mul(g1, g2))
    }));
    let edge_map = p
        .graph
        .edges
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let (ci, u) = placement[edge.src];
            let (_, v) = placement[edge.tgt];
            index(ci, u, v, edge_elem[e])
        })
        .collect();
    let functor = PresToConcrete {
        domain: Arc::new(p.clone()),
        codomain: groupoid.clone(),
        vertex_map: (0..p.num_vertices()).collect(),
        edge_map,
    };
    Some(ConcreteModel {
        groupoid,
        functor,
        vertex_groups,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{Edge, GenGraph, Word};
    use super::*;

    fn rel(word: &[(usize, bool)]) -> Vec<SignedGen> {
        word.to_vec()
    }

    #[test]
    fn enumerates_small_groups() {
        let (g, gens) = enumerate_group(1, &[rel(&[(0, false); 5])], 1000).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.element_order(gens[0]), 5);
        // S3 = <a, b | a^2, b^3, (ab)^2>
        let s3 = enumerate_group(
            2,
            &[
                rel(&[(0, false), (0, false)]),
                rel(&[(1, false), (1, false), (1, false)]),
                rel(&[(0, false), (1, false), (0, false), (1, false)]),
            ],
            1000,
        )
        .unwrap()
        .0;
        assert!(s3.is_isomorphic(&FiniteGroup::symmetric(3)));
        // trivial group from no generators
        assert_eq!(enumerate_group(0, &[], 10).unwrap().0.order(), 1);
        // Z/2 x Z/2 = <a, b | a^2, b^2, abAB>
        let v4 = enumerate_group(
            2,
            &[
                rel(&[(0, false), (0, false)]),
                rel(&[(1, false), (1, false)]),
                rel(&[(0, false), (1, false), (0, true), (1, true)]),
            ],
            1000,
        )
        .unwrap()
        .0;
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.abelianization().torsion, vec![2, 2]);
    }

    #[test]
    fn coincidences_collapse_to_trivial() {
        // <a, b | a b^-1 ... > with a = b, a^2 = a^3 forces a = 1
        let g = enumerate_group(
            2,
            &[rel(&[(0, false), (1, true)]), rel(&[(0, false), (0, false), (0, true), (0, true), (0, true)])],
            1000,
        )
        .unwrap()
        .0;
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn infinite_group_exhausts_budget() {
        assert!(enumerate_group(1, &[], 1000).is_none());
        // Z x Z/2 is infinite too
        assert!(enumerate_group(2, &[rel(&[(1, false), (1, false)]), rel(&[(0, false), (1, false), (0, true), (1, true)])], 2000)
            .is_none());
    }

    fn z2_loop_on(n: usize) -> PresentedGroupoid {
        // n vertices on a path, plus a loop a at vertex 0 with a^2 = 1
        let mut edges: Vec<Edge> = (1..n)
            .map(|i| Edge { id: format!("t{i}"), src: i - 1, tgt: i })
            .collect();
        edges.push(Edge { id: "a".into(), src: 0, tgt: 0 });
        let g = GenGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges).unwrap();
        let aa = g.parse_word(&["a+", "a+"], None).unwrap();
        PresentedGroupoid::new(g, vec![(aa, Word::empty(0))]).unwrap()
    }

    #[test]
    fn finite_vertex_groups_concretize() {
        let p = z2_loop_on(3);
        let m = concretize(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.groupoid.num_objects(), 3);
        assert_eq!(m.groupoid.num_morphisms(), 3 * 3 * 2);
        assert!(m.groupoid.validate().is_valid());
        m.functor.check().unwrap();
        // surjective on morphisms: every morphism is the image of some word
        let a = m.functor.edge_map[2];
        assert!(!m.groupoid.is_identity(a));
    }

    #[test]
    fn tree_concretizes_to_simply_connected() {
        let g = GenGraph::new(
            vec!["p".into(), "q".into(), "r".into()],
            vec![Edge { id: "x".into(), src: 0, tgt: 1 }, Edge { id: "y".into(), src: 2, tgt: 1 }],
        )
        .unwrap();
        let m = concretize(&PresentedGroupoid::free(g), 10).unwrap();
        assert!(m.groupoid.is_simply_connected());
        assert_eq!(m.groupoid.num_morphisms(), 9);
    }

    #[test]
    fn free_loop_is_unknown() {
        let g = GenGraph::new(vec!["v".into()], vec![Edge { id: "a".into(), src: 0, tgt: 0 }]).unwrap();
        for budget in [1, 100, DEFAULT_BUDGET] {
            assert!(concretize(&PresentedGroupoid::free(g.clone()), budget).is_none());
        }
    }
}
