//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use costack::diagrams::{ConcreteDiagram, FinitePoset, Variance};
use costack::group::FiniteGroup;
use costack::presentation::{Edge, GenGraph, Letter, PresentedGroupoid, Word};
use std::collections::BTreeMap;
use costack::groupoid::{ConcreteFunctor, ConcreteGroupoid, MorId, ObjId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_group(rng: &mut impl Rng) -> FiniteGroup {
    match rng.gen_range(0..6) {
        0 => FiniteGroup::trivial(),
        1 => FiniteGroup::cyclic(2),
        2 => FiniteGroup::cyclic(3),
        3 => FiniteGroup::cyclic(4),
        4 => FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)),
        _ => FiniteGroup::symmetric(3),
    }
}

/// Disjoint union of connected pieces `n` objects × group `G`, within the
/// given object and morphism budgets. Never empty.
pub fn random_groupoid(rng: &mut impl Rng, max_objects: usize, max_morphisms: usize) -> ConcreteGroupoid {
    let mut parts = Vec::new();
    let (mut objs, mut mors) = (max_objects, max_morphisms);
    loop {
        let g = small_group(rng);
        let n = rng.gen_range(1..=objs.min(3));
        if n * n * g.order() > mors {
            if parts.is_empty() {
                parts.push(ConcreteGroupoid::point());
            }
            break;
        }
        parts.push(ConcreteGroupoid::banal_group(n, &g));
        objs -= n;
        mors -= n * n * g.order();
        if objs == 0 || rng.gen_bool(0.5) {
            break;
        }
    }
    let refs: Vec<&ConcreteGroupoid> = parts.iter().collect();
    ConcreteGroupoid::disjoint_union(&refs)
}

/// Homomorphism `Aut(x) -> Aut(y)` sending chosen generators to chosen
/// images, if that extends consistently.
fn extend_hom(a: &ConcreteGroupoid, x: ObjId, b: &ConcreteGroupoid, y: ObjId, gens: &[MorId], images: &[MorId]) -> Option<HashMap<MorId, MorId>> {
    let mut map = HashMap::from([(a.identity(x), b.identity(y))]);
    let mut queue = vec![a.identity(x)];
    while let Some(u) = queue.pop() {
        let fu = map[&u];
        for (&g, &h) in gens.iter().zip(images) {
            let (v, fv) = (a.then(u, g), b.then(fu, h));
            match map.get(&v) {
                Some(&w) if w != fv => return None,
                Some(_) => {}
                None => {
                    map.insert(v, fv);
                    queue.push(v);
                }
            }
        }
    }
    Some(map)
}

fn generators(a: &ConcreteGroupoid, x: ObjId) -> Vec<MorId> {
    let g = a.vertex_group(x);
    let autos = a.automorphisms(x);
    // vertex group elements are indexed like the automorphism list
    g.generating_set().into_iter().map(|k| autos[k]).collect()
}

/// A random functor, built from a base object per component, a random
/// homomorphism of vertex groups and random transport morphisms.
pub fn random_functor(rng: &mut impl Rng, a: &Arc<ConcreteGroupoid>, b: &Arc<ConcreteGroupoid>) -> Option<ConcreteFunctor> {
    if b.num_objects() == 0 {
        return (a.num_objects() == 0).then(|| ConcreteFunctor::new(a.clone(), b.clone(), vec![], vec![]).unwrap());
    }
    let (comp, _) = a.connected_components();
    let (bcomp, _) = b.connected_components();
    let mut object_map = vec![0; a.num_objects()];
    let mut transport = vec![0; a.num_objects()]; // F(t_u) for the chosen t_u : x0 -> u
    let mut tree = vec![0; a.num_objects()];
    let mut morphism_map = vec![0; a.num_morphisms()];
    let mut phis = HashMap::new();
    for x0 in a.component_representatives() {
        let y0 = rng.gen_range(0..b.num_objects());
        let targets: Vec<ObjId> = (0..b.num_objects()).filter(|&y| bcomp[y] == bcomp[y0]).collect();
        for u in (0..a.num_objects()).filter(|&u| comp[u] == comp[x0]) {
            let y = if u == x0 { y0 } else { *targets.choose(rng).unwrap() };
            object_map[u] = y;
            tree[u] = a.hom(x0, u)[0];
            transport[u] = if u == x0 { b.identity(y0) } else { *b.hom(y0, y).choose(rng).unwrap() };
        }
        let gens = generators(a, x0);
        let autos = b.automorphisms(y0);
        let phi = (0..20)
            .find_map(|_| {
                let images: Vec<MorId> = gens.iter().map(|_| *autos.choose(rng).unwrap()).collect();
                extend_hom(a, x0, b, y0, &gens, &images)
            })
            .unwrap_or_else(|| extend_hom(a, x0, b, y0, &gens, &vec![b.identity(y0); gens.len()]).unwrap());
        phis.insert(x0, phi);
    }
    let reps = a.component_representatives();
    for m in 0..a.num_morphisms() {
        let (u, v) = (a.src(m), a.tgt(m));
        let x0 = *reps.iter().find(|&&r| comp[r] == comp[u]).unwrap();
        let loop_at_base = a.then(a.then(tree[u], m), a.inverse(tree[v]));
        let image = phis[&x0][&loop_at_base];
        morphism_map[m] = b.then(b.then(b.inverse(transport[u]), image), transport[v]);
    }
    Some(ConcreteFunctor::new(a.clone(), b.clone(), object_map, morphism_map).expect("construction gives a functor"))
}

pub fn injective_functor(rng: &mut impl Rng, a: &Arc<ConcreteGroupoid>, b: &Arc<ConcreteGroupoid>) -> Option<ConcreteFunctor> {
    (0..60).find_map(|_| random_functor(rng, a, b).filter(|f| f.is_injective_on_objects()))
}

pub fn random_chain(rng: &mut impl Rng) -> ConcreteDiagram {
    let n = rng.gen_range(1..=4);
    let values: Vec<Arc<ConcreteGroupoid>> = (0..n).map(|_| Arc::new(random_groupoid(rng, 3, 20))).collect();
    let mut covers = BTreeMap::new();
    for i in 1..n {
        covers.insert((i - 1, i), random_functor(rng, &values[i - 1], &values[i]).unwrap());
    }
    ConcreteDiagram::from_covers(FinitePoset::chain(n), Variance::Covariant, values, covers).unwrap()
}

pub fn random_injective_span(rng: &mut impl Rng) -> ConcreteDiagram {
    loop {
        let c = Arc::new(random_groupoid(rng, 2, 8));
        let a = Arc::new(random_groupoid(rng, 4, 30));
        let b = Arc::new(random_groupoid(rng, 3, 20));
        let Some(f) = injective_functor(rng, &c, &a) else { continue };
        let g = random_functor(rng, &c, &b).unwrap();
        let legs = BTreeMap::from([((2, 0), f), ((2, 1), g)]);
        return ConcreteDiagram::new(FinitePoset::span(), Variance::Covariant, vec![a, b, c], legs).unwrap();
    }
}

pub fn random_walk(rng: &mut impl Rng, graph: &GenGraph, from: usize, len: usize) -> Word {
    let mut w = Word::empty(from);
    let mut at = from;
    for _ in 0..len {
        let options: Vec<Letter> = (0..graph.edges.len())
            .flat_map(|e| [Letter::fwd(e), Letter::inv(e)])
            .filter(|&l| graph.letter_src(l) == at)
            .collect();
        let Some(&l) = options.choose(rng) else { break };
        w.letters.push(l);
        at = graph.letter_tgt(l);
    }
    w
}

pub fn random_presentation(rng: &mut impl Rng) -> PresentedGroupoid {
    let nv = rng.gen_range(1..=3);
    let ne = rng.gen_range(0..=4);
    let edges = (0..ne)
        .map(|k| Edge { id: format!("e{k}"), src: rng.gen_range(0..nv), tgt: rng.gen_range(0..nv) })
        .collect();
    let graph = GenGraph::new((0..nv).map(|k| format!("v{k}")).collect(), edges).unwrap();
    let mut relations = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let v = rng.gen_range(0..nv);
        let len = rng.gen_range(1..=4);
        let lhs = random_walk(rng, &graph, v, len);
        let end = lhs.target(&graph);
        let rhs = (0..20)
            .map(|_| {
                let len = rng.gen_range(0..=3);
                random_walk(rng, &graph, v, len)
            })
            .find(|w| w.target(&graph) == end);
        if let Some(rhs) = rhs {
            relations.push((lhs, rhs));
        }
    }
    PresentedGroupoid::new(graph, relations).unwrap()
}
