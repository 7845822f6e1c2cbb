//! Colimits and 2-colimits of covariant diagrams, as presentations.

use super::{ConcreteDiagram, PresentedDiagram, Variance};
use crate::equivalence::{are_equivalent, Verdict};
use crate::error::{Error, Result};
use crate::groupoid::{ConcreteGroupoid, MorId};
use crate::presentation::{Edge, GenGraph, Letter, PresFunctor, PresentedGroupoid, Word};
use crate::util::DisjointSet;
use std::collections::BTreeMap;
use std::sync::Arc;

fn require_covariant(variance: Variance) -> Result<()> {
    match variance {
        Variance::Covariant => Ok(()),
        Variance::Contravariant => Err(Error::InvalidDiagram("colimits need a covariant diagram".into())),
    }
}

/// Turns concrete values into presentations (one generator per
/// non-identity morphism, one relation per composable pair).
pub fn presented_diagram(d: &ConcreteDiagram) -> Result<PresentedDiagram> {
    require_covariant(d.variance)?;
    let converted: Vec<(Arc<PresentedGroupoid>, Vec<Option<usize>>)> = d
        .values
        .iter()
        .map(|g| {
            let (p, edges) = PresentedGroupoid::from_concrete(g);
            (Arc::new(p), edges)
        })
        .collect();
    let word_of = |k: usize, m: MorId| {
        let (p, edges) = &converted[k];
        match edges[m] {
            Some(e) => Word::letter(&p.graph, Letter::fwd(e)),
            None => Word::empty(d.values[k].src(m)),
        }
    };
    let mut transitions = BTreeMap::new();
    for (&(i, j), f) in d.transitions() {
        let g = &d.values[i];
        let edge_map = (0..g.num_morphisms())
            .filter(|&m| !g.is_identity(m))
            .map(|m| word_of(j, f.morphism_map[m]))
            .collect();
        let t = PresFunctor::new(converted[i].0.clone(), converted[j].0.clone(), f.object_map.clone(), edge_map)?;
        transitions.insert((i, j), t);
    }
    let values = converted.into_iter().map(|(p, _)| p).collect();
    PresentedDiagram::new(d.poset.clone(), Variance::Covariant, values, transitions)
}

/// Vertex and edge offsets of each value inside a disjoint union.
struct Offsets {
    vertex: Vec<usize>,
    edge: Vec<usize>,
}

impl Offsets {
    fn new(d: &PresentedDiagram) -> Self {
        let (mut vertex, mut edge) = (Vec::new(), Vec::new());
        let (mut v, mut e) = (0, 0);
        for p in &d.values {
            vertex.push(v);
            edge.push(e);
            v += p.num_vertices();
            e += p.num_edges();
        }
        Self { vertex, edge }
    }

    /// Copy of a word of value `i`, with vertices sent through `vmap`.
    fn shift(&self, i: usize, w: &Word, vmap: &dyn Fn(usize) -> usize) -> Word {
        Word {
            base: vmap(self.vertex[i] + w.base),
            letters: w
                .letters
                .iter()
                .map(|l| Letter {
                    edge: self.edge[i] + l.edge,
                    inverse: l.inverse,
                })
                .collect(),
        }
    }
}

fn injection(d: &PresentedDiagram, off: &Offsets, i: usize, target: &Arc<PresentedGroupoid>, vmap: &dyn Fn(usize) -> usize) -> PresFunctor {
    let p = &d.values[i];
    PresFunctor {
        domain: p.clone(),
        codomain: target.clone(),
        vertex_map: (0..p.num_vertices()).map(|v| vmap(off.vertex[i] + v)).collect(),
        edge_map: (0..p.num_edges())
            .map(|e| Word::letter(&target.graph, Letter::fwd(off.edge[i] + e)))
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct ColimResult {
    pub groupoid: Arc<PresentedGroupoid>,
    pub injections: Vec<PresFunctor>,
    /// Class of every vertex of the disjoint union.
    pub vertex_class: Vec<usize>,
}

/// The strict colimit: objects glued along the transitions, generators
/// kept apart and identified through relations.
pub fn diagram_colim(d: &PresentedDiagram) -> Result<ColimResult> {
    require_covariant(d.variance)?;
    let off = Offsets::new(d);
    let total_v: usize = d.values.iter().map(|p| p.num_vertices()).sum();
    let mut ds = DisjointSet::new(total_v);
    for (&(i, j), f) in d.transitions() {
        for (x, &y) in f.vertex_map.iter().enumerate() {
            ds.union(off.vertex[i] + x, off.vertex[j] + y);
        }
    }
    let (class, n) = ds.classes();
    let names = element_names(d);
    let mut vertices = vec![String::new(); n];
    for v in (0..total_v).rev() {
        vertices[class[v]] = names.0[v].clone();
    }
    let vmap = |v: usize| class[v];
    let mut edges = Vec::new();
    for (i, p) in d.values.iter().enumerate() {
        for (e, edge) in p.graph.edges.iter().enumerate() {
            edges.push(Edge {
                id: names.1[off.edge[i] + e].clone(),
                src: vmap(off.vertex[i] + edge.src),
                tgt: vmap(off.vertex[i] + edge.tgt),
            });
        }
    }
    let graph = GenGraph::new(vertices, edges)?;
    let mut relations = Vec::new();
    for (i, p) in d.values.iter().enumerate() {
        for (a, b) in &p.relations {
            relations.push((off.shift(i, a, &vmap), off.shift(i, b, &vmap)));
        }
    }
    for (&(i, j), f) in d.transitions() {
        for e in 0..d.values[i].num_edges() {
            let image = off.shift(j, &f.edge_map[e], &vmap);
            let own = Word::letter(&graph, Letter::fwd(off.edge[i] + e));
            relations.push((image, own));
        }
    }
    let groupoid = Arc::new(PresentedGroupoid::new(graph, relations)?);
    let injections = (0..d.len()).map(|i| injection(d, &off, i, &groupoid, &vmap)).collect();
    Ok(ColimResult {
        groupoid,
        injections,
        vertex_class: class,
    })
}

/// Names `elem.v` and `elem.e` for the disjoint union.
fn element_names(d: &PresentedDiagram) -> (Vec<String>, Vec<String>) {
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for (i, p) in d.values.iter().enumerate() {
        let el = &d.poset.elements()[i];
        vs.extend(p.graph.vertices.iter().map(|v| format!("{el}.{v}")));
        es.extend(p.graph.edges.iter().map(|e| format!("{el}.{}", e.id)));
    }
    (vs, es)
}

#[derive(Clone, Debug)]
pub struct TcResult {
    pub groupoid: Arc<PresentedGroupoid>,
    pub injections: Vec<PresFunctor>,
    /// For each strict pair `(i, j)`, the component at each object `x` of
    /// `value(i)`: a word from `α_j(ψ_ij(x))` to `α_i(x)`.
    pub lambda: BTreeMap<(usize, usize), Vec<Word>>,
    /// Number of value relations, naturality squares and cocycle relations.
    pub relation_counts: (usize, usize, usize),
}

/// The 2-colimit: disjoint union plus one invertible generator per
/// component of each coherence transformation `λ_ij : α_j ψ_ij => α_i`,
/// with naturality squares and the cocycle `λ_ik(x) = λ_jk(ψ_ij x) ; λ_ij(x)`.
pub fn diagram_tc(d: &PresentedDiagram) -> Result<TcResult> {
    require_covariant(d.variance)?;
    let off = Offsets::new(d);
    let (vertices, mut edge_names) = element_names(d);
    let id = |v: usize| v;
    let mut edges: Vec<Edge> = Vec::new();
    for (i, p) in d.values.iter().enumerate() {
        for (e, edge) in p.graph.edges.iter().enumerate() {
            edges.push(Edge {
                id: std::mem::take(&mut edge_names[off.edge[i] + e]),
                src: off.vertex[i] + edge.src,
                tgt: off.vertex[i] + edge.tgt,
            });
        }
    }
    let els = d.poset.elements();
    let mut lambda_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (&(i, j), f) in d.transitions() {
        let list = (0..d.values[i].num_vertices())
            .map(|x| {
                edges.push(Edge {
                    id: format!("lambda[{},{}].{}", els[i], els[j], d.values[i].graph.vertices[x]),
                    src: off.vertex[j] + f.vertex_map[x],
                    tgt: off.vertex[i] + x,
                });
                edges.len() - 1
            })
            .collect();
        lambda_edge.insert((i, j), list);
    }
    let graph = GenGraph::new(vertices, edges)?;
    let lam = |i: usize, j: usize, x: usize| Word::letter(&graph, Letter::fwd(lambda_edge[&(i, j)][x]));
    let mut relations = Vec::new();
    for (i, p) in d.values.iter().enumerate() {
        for (a, b) in &p.relations {
            relations.push((off.shift(i, a, &id), off.shift(i, b, &id)));
        }
    }
    let base = relations.len();
    for (&(i, j), f) in d.transitions() {
        for (e, edge) in d.values[i].graph.edges.iter().enumerate() {
            let lhs = off.shift(j, &f.edge_map[e], &id).then(&lam(i, j, edge.tgt));
            let rhs = lam(i, j, edge.src).then(&Word::letter(&graph, Letter::fwd(off.edge[i] + e)));
            relations.push((lhs, rhs));
        }
    }
    let naturality = relations.len() - base;
    for (i, j, k) in d.poset.strict_chains() {
        let f = d.transition(i, j);
        for x in 0..d.values[i].num_vertices() {
            relations.push((lam(i, k, x), lam(j, k, f.vertex_map[x]).then(&lam(i, j, x))));
        }
    }
    let cocycles = relations.len() - base - naturality;
    let lambda = lambda_edge
        .keys()
        .map(|&(i, j)| ((i, j), (0..d.values[i].num_vertices()).map(|x| lam(i, j, x)).collect()))
        .collect();
    let groupoid = Arc::new(PresentedGroupoid::new(graph, relations)?);
    let injections = (0..d.len()).map(|i| injection(d, &off, i, &groupoid, &id)).collect();
    Ok(TcResult {
        groupoid,
        injections,
        lambda,
        relation_counts: (base, naturality, cocycles),
    })
}

#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub tc: TcResult,
    pub colim: ColimResult,
    /// The comparison functor from the 2-colimit to the colimit.
    pub functor: PresFunctor,
    pub verdict: Verdict,
}

/// The comparison functor: objects to their classes, value generators to
/// their copies, coherence generators to identities.
pub fn delta_comparison(d: &PresentedDiagram, budget: usize) -> Result<DeltaResult> {
    let tc = diagram_tc(d)?;
    let colim = diagram_colim(d)?;
    let value_edges: usize = d.values.iter().map(|p| p.num_edges()).sum();
    let vertex_map = colim.vertex_class.clone();
    let edge_map = tc
        .groupoid
        .graph
        .edges
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            if e < value_edges {
                Word::letter(&colim.groupoid.graph, Letter::fwd(e))
            } else {
                Word::empty(vertex_map[edge.src])
            }
        })
        .collect();
    let functor = PresFunctor::new(tc.groupoid.clone(), colim.groupoid.clone(), vertex_map, edge_map)?;
    let verdict = are_equivalent(&*tc.groupoid, &*colim.groupoid, budget);
    Ok(DeltaResult {
        tc,
        colim,
        functor,
        verdict,
    })
}

/// Colimit over a filtered poset: classes of objects and of morphisms,
/// where `(i, x) ~ (k, ψ_ik(x))` for `i <= k`.
pub fn filtered_colim(d: &ConcreteDiagram) -> Result<ConcreteGroupoid> {
    require_covariant(d.variance)?;
    if let Some((i, j)) = d.poset.filtered_witness() {
        let els = d.poset.elements();
        return Err(Error::NotFiltered(els[i].clone(), els[j].clone()));
    }
    let Some(top) = d.poset.top() else {
        return Ok(ConcreteGroupoid::empty());
    };
    let n = d.len();
    let (mut ov, mut mv) = (vec![0usize], vec![0usize]);
    for g in &d.values {
        ov.push(ov.last().unwrap() + g.num_objects());
        mv.push(mv.last().unwrap() + g.num_morphisms());
    }
    let (mut objs, mut mors) = (DisjointSet::new(ov[n]), DisjointSet::new(mv[n]));
    for (&(i, k), f) in d.transitions() {
        for (x, &y) in f.object_map.iter().enumerate() {
            objs.union(ov[i] + x, ov[k] + y);
        }
        for (m, &h) in f.morphism_map.iter().enumerate() {
            mors.union(mv[i] + m, mv[k] + h);
        }
    }
    let (ocls, on) = objs.classes();
    let (mcls, mn) = mors.classes();
    let els = d.poset.elements();
    let locate = |offsets: &[usize], flat: usize| {
        let i = (0..n).find(|&i| flat < offsets[i + 1]).unwrap();
        (i, flat - offsets[i])
    };
    // classes are numbered by least member, which is also their name
    let mut obj_names = vec![String::new(); on];
    for flat in (0..ov[n]).rev() {
        let (i, x) = locate(&ov, flat);
        obj_names[ocls[flat]] = format!("{}.{}", els[i], d.values[i].object_name(x));
    }
    let mut morphisms = vec![(String::new(), 0, 0); mn];
    for flat in (0..mv[n]).rev() {
        let (i, m) = locate(&mv, flat);
        let g = &d.values[i];
        morphisms[mcls[flat]] = (
            format!("{}.{}", els[i], g.morphism_name(m)),
            ocls[ov[i] + g.src(m)],
            ocls[ov[i] + g.tgt(m)],
        );
    }
    // every class meets the top value exactly once
    let top_g = &d.values[top];
    let mut to_top = vec![0usize; mn];
    for m in 0..top_g.num_morphisms() {
        to_top[mcls[mv[top] + m]] = m;
    }
    let of_top: Vec<usize> = (0..top_g.num_morphisms()).map(|m| mcls[mv[top] + m]).collect();
    Ok(ConcreteGroupoid::from_parts(obj_names, morphisms, |a, b| {
        of_top[top_g.then(to_top[a], to_top[b])]
    }))
}

#[cfg(test)]
mod tests {
    use super::super::FinitePoset;
    use super::*;
    use crate::equivalence::equivalence_fingerprint;
    use crate::group::FiniteGroup;
    use crate::groupoid::ConcreteFunctor;
    use crate::presentation::{collapse_component, DEFAULT_BUDGET};

    fn points(n: usize) -> Arc<PresentedGroupoid> {
        Arc::new(PresentedGroupoid::free(
            GenGraph::new((0..n).map(|i| format!("p{i}")).collect(), vec![]).unwrap(),
        ))
    }

    fn interval() -> Arc<PresentedGroupoid> {
        let g = GenGraph::new(vec!["0".into(), "1".into()], vec![Edge { id: "m".into(), src: 0, tgt: 1 }]).unwrap();
        Arc::new(PresentedGroupoid::free(g))
    }

    fn to(dom: &Arc<PresentedGroupoid>, cod: &Arc<PresentedGroupoid>, vmap: Vec<usize>) -> PresFunctor {
        PresFunctor::new(dom.clone(), cod.clone(), vmap, vec![]).unwrap()
    }

    /// Poset `c < a`, `c < b`; `c` is two points.
    fn span(a: Arc<PresentedGroupoid>, amap: Vec<usize>, b: Arc<PresentedGroupoid>, bmap: Vec<usize>) -> PresentedDiagram {
        let c = points(2);
        let t = BTreeMap::from([((2, 0), to(&c, &a, amap)), ((2, 1), to(&c, &b, bmap))]);
        PresentedDiagram::new(FinitePoset::span(), Variance::Covariant, vec![a, b, c], t).unwrap()
    }

    fn circle_span() -> PresentedDiagram {
        span(interval(), vec![0, 1], points(1), vec![0, 0])
    }

    fn collapsing_span() -> PresentedDiagram {
        span(points(1), vec![0, 0], points(1), vec![0, 0])
    }

    #[test]
    fn circle_colimits() {
        let d = circle_span();
        let colim = diagram_colim(&d).unwrap();
        assert_eq!(colim.groupoid.num_vertices(), 1);
        assert_eq!(colim.groupoid.num_edges(), 1);
        assert!(colim.groupoid.relations.is_empty());
        let tc = diagram_tc(&d).unwrap();
        assert_eq!((tc.groupoid.num_vertices(), tc.groupoid.num_edges()), (5, 5));
        assert_eq!(tc.relation_counts, (0, 0, 0));
        assert!(tc.groupoid.is_connected());
        assert_eq!(collapse_component(&tc.groupoid, 0).presentation.rank(), 1);
        for g in [&*colim.groupoid, &*tc.groupoid] {
            let f = equivalence_fingerprint(g, DEFAULT_BUDGET);
            assert_eq!(f.component_count, 1);
            assert_eq!(f.per_component[0].abelian.free_rank, 1);
            assert!(f.per_component[0].abelian.torsion.is_empty());
        }
        assert_eq!(delta_comparison(&d, DEFAULT_BUDGET).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn collapsing_span_separates_colim_and_tc() {
        let d = collapsing_span();
        let colim = diagram_colim(&d).unwrap();
        assert_eq!((colim.groupoid.num_vertices(), colim.groupoid.num_edges()), (1, 0));
        let tc = diagram_tc(&d).unwrap();
        assert_eq!((tc.groupoid.num_vertices(), tc.groupoid.num_edges()), (4, 4));
        assert_eq!(collapse_component(&tc.groupoid, 0).presentation.rank(), 1);
        assert_eq!(delta_comparison(&d, DEFAULT_BUDGET).unwrap().verdict, Verdict::No);
    }

    #[test]
    fn lambda_components_have_the_right_endpoints() {
        let d = circle_span();
        let tc = diagram_tc(&d).unwrap();
        let g = &tc.groupoid.graph;
        for (&(i, j), comps) in &tc.lambda {
            for (x, w) in comps.iter().enumerate() {
                let fx = d.transition(i, j).vertex_map[x];
                assert_eq!(w.source(), tc.injections[j].vertex_map[fx]);
                assert_eq!(w.target(g), tc.injections[i].vertex_map[x]);
            }
        }
    }

    #[test]
    fn delta_commutes_with_injections() {
        let d = circle_span();
        let delta = delta_comparison(&d, DEFAULT_BUDGET).unwrap();
        for i in 0..d.len() {
            let composite = delta.tc.injections[i].then(&delta.functor);
            assert!(composite.agrees_with(&delta.colim.injections[i]));
        }
    }

    #[test]
    fn single_element_is_the_value() {
        let v = interval();
        let d = PresentedDiagram::new(FinitePoset::chain(1), Variance::Covariant, vec![v.clone()], BTreeMap::new()).unwrap();
        let colim = diagram_colim(&d).unwrap();
        let tc = diagram_tc(&d).unwrap();
        for g in [&colim.groupoid, &tc.groupoid] {
            assert_eq!((g.num_vertices(), g.num_edges(), g.relations.len()), (2, 1, 0));
        }
    }

    fn inclusion_z2_z4() -> ConcreteDiagram {
        let z2 = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let z4 = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(4)));
        let inc = ConcreteFunctor::new(z2.clone(), z4.clone(), vec![0], vec![0, 2]).unwrap();
        ConcreteDiagram::new(FinitePoset::chain(2), Variance::Covariant, vec![z2, z4], BTreeMap::from([((0, 1), inc)])).unwrap()
    }

    #[test]
    fn filtered_colimit_of_an_inclusion() {
        let d = inclusion_z2_z4();
        let g = filtered_colim(&d).unwrap();
        assert_eq!(g.num_objects(), 1);
        assert_eq!(g.num_morphisms(), 4);
        assert!(g.validate().is_valid());
        let p = presented_diagram(&d).unwrap();
        let tc = diagram_tc(&p).unwrap();
        assert_eq!(
            equivalence_fingerprint(&g, DEFAULT_BUDGET),
            equivalence_fingerprint(&*tc.groupoid, DEFAULT_BUDGET)
        );
        assert_eq!(delta_comparison(&p, DEFAULT_BUDGET).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn non_filtered_is_rejected() {
        let v = Arc::new(ConcreteGroupoid::point());
        let d = ConcreteDiagram::new(
            FinitePoset::discrete(vec!["a".into(), "b".into()]),
            Variance::Covariant,
            vec![v.clone(), v],
            BTreeMap::new(),
        )
        .unwrap();
        assert!(matches!(filtered_colim(&d), Err(Error::NotFiltered(..))));
    }
}
