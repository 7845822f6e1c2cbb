//! Groupoids of functors from a presented groupoid into a finite one.

use crate::error::{Error, Result};
use crate::groupoid::{ConcreteFunctor, ConcreteGroupoid, MorId, ObjId};
use crate::presentation::{component_vertex_lists, PresFunctor, PresToConcrete, PresentedGroupoid, SpanningTree, Word};
use std::collections::HashMap;
use std::sync::Arc;

/// Default cap on the number of natural isomorphisms materialized.
pub const DEFAULT_MORPHISM_CAP: usize = 1_000_000;

/// One functor: where each vertex and each generating edge goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub vertex_map: Vec<ObjId>,
    pub edge_map: Vec<MorId>,
}

/// `Fun(p, g)` with its objects remembered as assignments.
///
/// Morphism components are indexed by the vertices of `p`.
#[derive(Clone, Debug)]
pub struct FunctorGroupoid {
    pub domain: Arc<PresentedGroupoid>,
    pub target: Arc<ConcreteGroupoid>,
    pub groupoid: Arc<ConcreteGroupoid>,
    pub assignments: Vec<Assignment>,
    index: HashMap<Assignment, ObjId>,
}

enum Step {
    Root(usize),
    /// A tree edge that reaches its far endpoint, walked forward or backward.
    Tree { edge: usize, forward: bool },
    Free(usize),
}

/// Enumerates every functor `p -> g` by backtracking along spanning trees,
/// checking each relation as soon as its letters are assigned.
pub fn enumerate_functors(p: &PresentedGroupoid, g: &ConcreteGroupoid) -> Vec<Assignment> {
    let graph = &p.graph;
    let mut steps = Vec::new();
    let mut vertex_step = vec![0usize; p.num_vertices()];
    let mut edge_step = vec![0usize; p.num_edges()];
    let mut tree_edge = vec![false; p.num_edges()];
    for verts in component_vertex_lists(graph) {
        let tree = SpanningTree::bfs(graph, verts[0]);
        vertex_step[verts[0]] = steps.len();
        steps.push(Step::Root(verts[0]));
        for &v in tree.order.iter().skip(1) {
            let l = tree.parent[v].expect("reached vertex has a parent letter");
            tree_edge[l.edge] = true;
            vertex_step[v] = steps.len();
            edge_step[l.edge] = steps.len();
            steps.push(Step::Tree { edge: l.edge, forward: !l.inverse });
        }
    }
    for e in 0..p.num_edges() {
        if !tree_edge[e] {
            edge_step[e] = steps.len();
            steps.push(Step::Free(e));
        }
    }
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); steps.len().max(1)];
    for (r, (a, b)) in p.relations.iter().enumerate() {
        let last = a
            .letters
            .iter()
            .chain(&b.letters)
            .map(|l| edge_step[l.edge])
            .chain([vertex_step[a.base], vertex_step[b.base]])
            .max()
            .unwrap_or(0);
        checks[last].push(r);
    }
    let mut cur = Assignment {
        vertex_map: vec![usize::MAX; p.num_vertices()],
        edge_map: vec![usize::MAX; p.num_edges()],
    };
    let mut out = Vec::new();
    search(p, g, &steps, &checks, 0, &mut cur, &mut out);
    out
}

fn search(
    p: &PresentedGroupoid,
    g: &ConcreteGroupoid,
    steps: &[Step],
    checks: &[Vec<usize>],
    k: usize,
    cur: &mut Assignment,
    out: &mut Vec<Assignment>,
) {
    if k == steps.len() {
        out.push(cur.clone());
        return;
    }
    let candidates: Vec<MorId> = match steps[k] {
        Step::Root(_) => (0..g.num_objects()).collect(),
        Step::Tree { edge, forward } => {
            let e = &p.graph.edges[edge];
            if forward {
                g.out(cur.vertex_map[e.src]).to_vec()
            } else {
                g.out(cur.vertex_map[e.tgt]).iter().map(|&m| g.inverse(m)).collect()
            }
        }
        Step::Free(edge) => {
            let e = &p.graph.edges[edge];
            g.hom(cur.vertex_map[e.src], cur.vertex_map[e.tgt])
        }
    };
    for c in candidates {
        match steps[k] {
            Step::Root(v) => cur.vertex_map[v] = c,
            Step::Tree { edge, forward } => {
                let e = &p.graph.edges[edge];
                cur.edge_map[edge] = c;
                if forward {
                    cur.vertex_map[e.tgt] = g.tgt(c);
                } else {
                    cur.vertex_map[e.src] = g.src(c);
                }
            }
            Step::Free(edge) => cur.edge_map[edge] = c,
        }
        let ok = checks[k].iter().all(|&r| {
            let (a, b) = &p.relations[r];
            eval(g, cur, a) == eval(g, cur, b)
        });
        if ok {
            search(p, g, steps, checks, k + 1, cur, out);
        }
    }
}

fn eval(g: &ConcreteGroupoid, a: &Assignment, w: &Word) -> MorId {
    w.letters.iter().fold(g.identity(a.vertex_map[w.base]), |acc, l| {
        let m = a.edge_map[l.edge];
        g.then(acc, if l.inverse { g.inverse(m) } else { m })
    })
}

impl FunctorGroupoid {
    /// Materializes `Fun(p, g)`, refusing when more than `cap` natural
    /// isomorphisms would be needed.
    pub fn new(p: Arc<PresentedGroupoid>, g: Arc<ConcreteGroupoid>, cap: usize) -> Result<Self> {
        let assignments = enumerate_functors(&p, &g);
        let needed: u128 = assignments
            .iter()
            .map(|a| a.vertex_map.iter().map(|&x| g.out(x).len() as u128).product::<u128>())
            .sum();
        if needed > cap as u128 {
            return Err(Error::ResourceLimit {
                what: "functor groupoid morphisms",
                needed,
                limit: cap as u128,
            });
        }
        let index: HashMap<Assignment, ObjId> = assignments.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let n = p.num_vertices();
        let mut morphisms = Vec::with_capacity(needed as usize);
        let mut comps = vec![0usize; n];
        for (s, a) in assignments.iter().enumerate() {
            // odometer over component choices
            let outs: Vec<&[MorId]> = a.vertex_map.iter().map(|&x| g.out(x)).collect();
            let mut digits = vec![0usize; n];
            loop {
                for v in 0..n {
                    comps[v] = outs[v][digits[v]];
                }
                let target = conjugate(&p, &g, a, &comps);
                let t = index[&target];
                morphisms.push((s, t, comps.clone()));
                let mut v = 0;
                while v < n {
                    digits[v] += 1;
                    if digits[v] < outs[v].len() {
                        break;
                    }
                    digits[v] = 0;
                    v += 1;
                }
                if v == n {
                    break;
                }
            }
        }
        let factors = vec![g.clone(); n];
        let groupoid = Arc::new(ConcreteGroupoid::componentwise(assignments.len(), factors, morphisms));
        Ok(Self {
            domain: p,
            target: g,
            groupoid,
            assignments,
            index,
        })
    }

    pub fn index_of(&self, a: &Assignment) -> Option<ObjId> {
        self.index.get(a).copied()
    }

    /// The functor behind object `x`.
    pub fn functor(&self, x: ObjId) -> PresToConcrete {
        let a = &self.assignments[x];
        PresToConcrete {
            domain: self.domain.clone(),
            codomain: self.target.clone(),
            vertex_map: a.vertex_map.clone(),
            edge_map: a.edge_map.clone(),
        }
    }

    /// Restriction along `along: q -> p`, as a functor `Fun(p, g) -> Fun(q, g)`.
    pub fn restriction(&self, along: &PresFunctor, to: &FunctorGroupoid) -> Result<ConcreteFunctor> {
        let object_map = (0..self.assignments.len())
            .map(|x| {
                let f = self.functor(x);
                let a = Assignment {
                    vertex_map: along.vertex_map.iter().map(|&v| f.vertex_map[v]).collect(),
                    edge_map: along.edge_map.iter().map(|w| f.evaluate(w)).collect(),
                };
                to.index_of(&a)
                    .ok_or_else(|| Error::InvalidFunctor("restricted functor breaks a relation".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = &self.groupoid;
        let morphism_map = (0..g.num_morphisms())
            .map(|m| {
                let comps = g.components_of(m).expect("componentwise");
                let sub: Vec<MorId> = along.vertex_map.iter().map(|&v| comps[v]).collect();
                to.groupoid
                    .lookup_componentwise(object_map[g.src(m)], &sub)
                    .expect("restricted transformation exists")
            })
            .collect();
        Ok(ConcreteFunctor::new_unchecked(self.groupoid.clone(), to.groupoid.clone(), object_map, morphism_map))
    }
}

/// Target of the natural isomorphism with components `theta` out of `a`.
fn conjugate(p: &PresentedGroupoid, g: &ConcreteGroupoid, a: &Assignment, theta: &[MorId]) -> Assignment {
    Assignment {
        vertex_map: theta.iter().map(|&m| g.tgt(m)).collect(),
        edge_map: p
            .graph
            .edges
            .iter()
            .zip(&a.edge_map)
            .map(|(e, &m)| g.then(g.then(g.inverse(theta[e.src]), m), theta[e.tgt]))
            .collect(),
    }
}

/// `Fun(p, g)` with the default cap.
pub fn functor_groupoid(p: &PresentedGroupoid, g: &ConcreteGroupoid) -> Result<ConcreteGroupoid> {
    let fg = FunctorGroupoid::new(Arc::new(p.clone()), Arc::new(g.clone()), DEFAULT_MORPHISM_CAP)?;
    Ok((*fg.groupoid).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::presentation::{Edge, GenGraph};

    fn loop_pres(rel_trivial: bool) -> PresentedGroupoid {
        let g = GenGraph::new(vec!["v".into()], vec![Edge { id: "a".into(), src: 0, tgt: 0 }]).unwrap();
        let rels = if rel_trivial {
            vec![(g.parse_word(&["a+"], None).unwrap(), Word::empty(0))]
        } else {
            vec![]
        };
        PresentedGroupoid::new(g, rels).unwrap()
    }

    #[test]
    fn free_loop_into_z2() {
        let z2 = ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let f = functor_groupoid(&loop_pres(false), &z2).unwrap();
        assert_eq!(f.num_objects(), 2);
        assert_eq!(f.connected_components().1, 2);
        for x in 0..2 {
            assert_eq!(f.automorphisms(x).len(), 2);
        }
        assert!(f.validate().is_valid());
    }

    #[test]
    fn trivial_relation_leaves_one_functor() {
        let z2 = ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2));
        assert_eq!(functor_groupoid(&loop_pres(true), &z2).unwrap().num_objects(), 1);
    }

    #[test]
    fn point_evaluates_to_target() {
        let g = ConcreteGroupoid::banal_group(2, &FiniteGroup::symmetric(3));
        let pt = PresentedGroupoid::free(GenGraph::new(vec!["p".into()], vec![]).unwrap());
        let f = functor_groupoid(&pt, &g).unwrap();
        assert_eq!(f.num_objects(), 2);
        assert_eq!(f.num_morphisms(), g.num_morphisms());
    }

    #[test]
    fn empty_domain_has_one_functor() {
        let f = functor_groupoid(&PresentedGroupoid::empty(), &ConcreteGroupoid::empty()).unwrap();
        assert_eq!((f.num_objects(), f.num_morphisms()), (1, 1));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::symmetric(3)));
        let p = Arc::new(loop_pres(false));
        let err = FunctorGroupoid::new(p, g, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { needed: 36, .. }));
    }

    #[test]
    fn conjugation_classes_of_s3() {
        // functors from a free loop into S3, up to iso: conjugacy classes
        let g = ConcreteGroupoid::from_group(&FiniteGroup::symmetric(3));
        let f = functor_groupoid(&loop_pres(false), &g).unwrap();
        assert_eq!(f.num_objects(), 6);
        assert_eq!(f.connected_components().1, 3);
    }
}
