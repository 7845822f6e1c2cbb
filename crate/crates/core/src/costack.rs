//! Sheaf and stack conditions for hom-functors over cover nerves, Van
//! Kampen verdicts, and the induced functor into the edge-path 2-colimit.

use crate::diagrams::{diagram_colim, diagram_tc, ConcreteDiagram, PresentedDiagram, TwoLimit, Limit, Variance};
use crate::equivalence::{are_equivalent, equivalence_fingerprint, Battery, EquivalenceInvariant, Verdict, WordEquality};
use crate::error::{Error, Result};
use crate::functor_groupoid::FunctorGroupoid;
use crate::groupoid::{ConcreteFunctor, ConcreteGroupoid, MorId};
use crate::presentation::{component_vertex_lists, PresFunctor, PresentedGroupoid, SpanningTree, Word};
use crate::space::{build_nerve_of, is_good_cover, CoverNerve, GoodReading, Subcomplex};
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

/// `U_S ↦ Fun(pi1(U_S), g)` over the nerve elements with `|S| <= depth`,
/// as a contravariant diagram, with the restrictions from the total.
#[derive(Clone, Debug)]
pub struct HomDiagram {
    pub diagram: ConcreteDiagram,
    pub pieces: Vec<FunctorGroupoid>,
    pub total: FunctorGroupoid,
    pub restrictions: Vec<ConcreteFunctor>,
}

pub fn hom_diagram(nerve: &CoverNerve, g: &Arc<ConcreteGroupoid>, depth: usize, cap: usize) -> Result<HomDiagram> {
    let keep: Vec<usize> = (0..nerve.index_sets.len()).filter(|&k| nerve.index_sets[k].len() <= depth).collect();
    let poset = nerve.diagram.poset.restrict(&keep);
    let pieces = keep
        .iter()
        .map(|&k| FunctorGroupoid::new(nerve.diagram.values[k].clone(), g.clone(), cap))
        .collect::<Result<Vec<_>>>()?;
    let mut transitions = BTreeMap::new();
    for (a, b) in poset.strict_pairs() {
        let inclusion = nerve.diagram.transition(keep[a], keep[b]);
        transitions.insert((a, b), pieces[b].restriction(inclusion, &pieces[a])?);
    }
    let values = pieces.iter().map(|p| p.groupoid.clone()).collect();
    let diagram = ConcreteDiagram::new(poset, Variance::Contravariant, values, transitions)?;
    let total_pi1 = Arc::new(nerve.total.pi1());
    let total = FunctorGroupoid::new(total_pi1.clone(), g.clone(), cap)?;
    let restrictions = keep
        .iter()
        .zip(&pieces)
        .map(|(&k, piece)| {
            let inclusion = nerve.pieces[k].inclusion(&nerve.total, nerve.diagram.values[k].clone(), total_pi1.clone())?;
            total.restriction(&inclusion, piece)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomDiagram {
        diagram,
        pieces,
        total,
        restrictions,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShStReport {
    /// `sh(n)` or `st(n)` for an `n`-member cover.
    pub condition: String,
    pub cover: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

fn describe(nerve: &CoverNerve) -> String {
    format!("{} members, {} nonempty pieces", nerve.cover.len(), nerve.index_sets.len())
}

fn report(condition: String, nerve: &CoverNerve, outcome: Result<Option<String>>) -> Result<ShStReport> {
    let (verdict, witness) = match outcome {
        Ok(None) => (Verdict::Yes, None),
        Ok(Some(w)) => (Verdict::No, Some(w)),
        Err(e @ Error::ResourceLimit { .. }) => (Verdict::Unknown, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(ShStReport {
        condition,
        cover: describe(nerve),
        verdict,
        witness,
    })
}

/// Whether `Fun(pi1(U), g)` maps isomorphically onto the strict limit over
/// the pieces and pairwise intersections.
pub fn check_sh(nerve: &CoverNerve, g: &Arc<ConcreteGroupoid>, cap: usize) -> Result<ShStReport> {
    let outcome = (|| {
        let h = hom_diagram(nerve, g, 2, cap)?;
        let lim = Limit::new(&h.diagram, cap)?;
        let total = &h.total.groupoid;
        let family = |x: usize| h.restrictions.iter().map(|r| r.object_map[x]).collect::<Vec<_>>();
        let mut objects = Vec::with_capacity(total.num_objects());
        for x in 0..total.num_objects() {
            match lim.index_of(&family(x)) {
                Some(y) => objects.push(y),
                None => return Ok(Some(format!("restrictions of functor #{x} are not compatible"))),
            }
        }
        if let Some(w) = bijection_witness(&objects, lim.families.len(), "object") {
            return Ok(Some(w));
        }
        let mut morphisms = Vec::with_capacity(total.num_morphisms());
        for m in 0..total.num_morphisms() {
            let comps: Vec<MorId> = h.restrictions.iter().map(|r| r.morphism_map[m]).collect();
            match lim.morphism(objects[total.src(m)], &comps) {
                Some(k) => morphisms.push(k),
                None => return Ok(Some(format!("transformation #{m} has no compatible image"))),
            }
        }
        Ok(bijection_witness(&morphisms, lim.groupoid.num_morphisms(), "morphism"))
    })();
    report(format!("sh({})", nerve.cover.len()), nerve, outcome)
}

fn bijection_witness(map: &[usize], codomain: usize, what: &str) -> Option<String> {
    let mut hit = vec![0usize; codomain];
    for &y in map {
        hit[y] += 1;
    }
    hit.iter().position(|&h| h != 1).map(|y| {
        if hit[y] == 0 {
            format!("limit {what} #{y} is not in the image")
        } else {
            format!("limit {what} #{y} has {} preimages", hit[y])
        }
    })
}

/// Whether `Fun(pi1(U), g)` maps by an equivalence onto the 2-limit over
/// pieces, pairwise and triple intersections. Decided by a bijection on
/// components and isomorphisms of automorphism groups at representatives.
pub fn check_st(nerve: &CoverNerve, g: &Arc<ConcreteGroupoid>, cap: usize) -> Result<ShStReport> {
    let outcome = (|| {
        let h = hom_diagram(nerve, g, nerve.depth, cap)?;
        let tl = TwoLimit::new(&h.diagram, cap)?;
        let total = &h.total.groupoid;
        let family = |x: usize| h.restrictions.iter().map(|r| r.object_map[x]).collect::<Vec<_>>();
        let (tl_cls, tl_n) = tl.components();
        let (cls, n) = total.connected_components();
        let reps = total.component_representatives();
        let mut hit = vec![None; tl_n];
        for (c, &a) in reps.iter().enumerate() {
            let Some(image) = tl.identity_cocycle(&family(a)) else {
                return Ok(Some(format!("restrictions of functor #{a} are not compatible")));
            };
            if let Some(prev) = hit[tl_cls[image]].replace(c) {
                return Ok(Some(format!("components {prev} and {c} become isomorphic")));
            }
            // automorphisms at the representative
            let autos = total.automorphisms(a);
            let images: HashSet<Vec<MorId>> = autos
                .iter()
                .map(|&m| h.restrictions.iter().map(|r| r.morphism_map[m]).collect())
                .collect();
            let stab = tl.stabilizer(image);
            if images.len() != autos.len() {
                return Ok(Some(format!("not faithful at functor #{a}")));
            }
            if stab.len() != autos.len() {
                return Ok(Some(format!(
                    "not full at functor #{a}: {} automorphisms against {}",
                    autos.len(),
                    stab.len()
                )));
            }
        }
        let _ = (cls, n);
        Ok(hit
            .iter()
            .position(|h| h.is_none())
            .map(|c| format!("2-limit component {c} is not reached")))
    })();
    report(format!("st({})", nerve.cover.len()), nerve, outcome)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanKampenReport {
    pub pushout: Verdict,
    pub two_pushout: Verdict,
    /// Set when the verdict rests on an explicit equivalence rather than on
    /// agreement of invariants.
    pub pushout_certified: bool,
    pub two_pushout_certified: bool,
    pub whole: EquivalenceInvariant,
    pub colim: EquivalenceInvariant,
    pub tc: EquivalenceInvariant,
    pub battery: Vec<String>,
    pub battery_whole: Option<Vec<u64>>,
    pub battery_colim: Option<Vec<u64>>,
    pub battery_tc: Option<Vec<u64>>,
}

/// Compares the colimit and 2-colimit of `pi1(u) <- pi1(u ∩ v) -> pi1(v)`
/// with `pi1(x)`.
pub fn check_vankampen(x: &Subcomplex, u: &Subcomplex, v: &Subcomplex, battery: &Battery, budget: usize) -> Result<VanKampenReport> {
    let nerve = build_nerve_of(x, &[u.clone(), v.clone()], 2)?;
    let colim = diagram_colim(&nerve.diagram)?.groupoid;
    let tc = diagram_tc(&nerve.diagram)?.groupoid;
    let whole = x.pi1();
    let fp = |p: &PresentedGroupoid| equivalence_fingerprint(p, budget);
    let (fw, fc, ft) = (fp(&whole), fp(&colim), fp(&tc));
    let (bw, bc, bt) = (battery.counts(&whole, budget), battery.counts(&*colim, budget), battery.counts(&*tc, budget));
    let judge = |p: &PresentedGroupoid, f: &EquivalenceInvariant, b: &Option<Vec<u64>>| match are_equivalent(p, &whole, budget) {
        Verdict::Yes => (Verdict::Yes, true),
        Verdict::No => (Verdict::No, false),
        Verdict::Unknown => match (b, &bw) {
            (Some(b), Some(w)) if b != w => (Verdict::No, false),
            (Some(_), Some(_)) if *f == fw => (Verdict::Yes, false),
            _ => (Verdict::Unknown, false),
        },
    };
    let (pushout, pushout_certified) = judge(&colim, &fc, &bc);
    let (two_pushout, two_pushout_certified) = judge(&tc, &ft, &bt);
    Ok(VanKampenReport {
        pushout,
        two_pushout,
        pushout_certified,
        two_pushout_certified,
        whole: fw,
        colim: fc,
        tc: ft,
        battery: battery.targets.iter().map(|(n, _)| n.clone()).collect(),
        battery_whole: bw,
        battery_colim: bc,
        battery_tc: bt,
    })
}

#[derive(Clone, Debug)]
pub struct TerminalMap {
    /// From the 2-colimit of `q` to the 2-colimit of the edge-path diagram.
    pub functor: PresFunctor,
    /// Whether every relation of the source is respected in the target.
    pub relations: Verdict,
}

/// The functor from the 2-colimit of `q` into the 2-colimit of the
/// edge-path groupoids of a good cover: every piece goes to its
/// (componentwise simply connected) counterpart, matching components in
/// order, and coherence generators go to coherence generators.
pub fn induced_map_to_terminal(q: &PresentedDiagram, target: &CoverNerve, reading: GoodReading, budget: usize) -> Result<TerminalMap> {
    if !is_good_cover(target, reading) {
        return Err(Error::NotGood("some piece is not simply connected".into()));
    }
    let t = &target.diagram;
    if !q.poset.same_order(&t.poset) {
        return Err(Error::ShapeMismatch("diagram is not indexed by the nerve".into()));
    }
    let tc_q = diagram_tc(q)?;
    let tc_t = diagram_tc(t)?;
    // piece maps on vertices, and tree paths inside target pieces
    let mut piece_maps = Vec::with_capacity(q.len());
    let mut trees = Vec::with_capacity(q.len());
    for s in 0..q.len() {
        let (qs, ts) = (&q.values[s], &t.values[s]);
        let (q_comps, t_comps) = (component_vertex_lists(&qs.graph), component_vertex_lists(&ts.graph));
        let mut map = vec![0usize; qs.num_vertices()];
        if t_comps.len() == 1 {
            map.iter_mut().for_each(|m| *m = t_comps[0][0]);
        } else if q_comps.len() == t_comps.len() {
            for (qc, tc) in q_comps.iter().zip(&t_comps) {
                for &x in qc {
                    map[x] = tc[0];
                }
            }
        } else if !q_comps.is_empty() {
            return Err(Error::InvalidFunctor(format!(
                "piece {} has {} components against {}",
                t.poset.elements()[s],
                q_comps.len(),
                t_comps.len()
            )));
        }
        piece_maps.push(map);
        trees.push(t_comps.iter().map(|c| SpanningTree::bfs(&ts.graph, c[0])).collect::<Vec<_>>());
    }
    let path = |s: usize, a: usize, b: usize| -> Result<Word> {
        let tree = trees[s]
            .iter()
            .find(|tr| tr.reached[a])
            .ok_or_else(|| Error::InvalidFunctor("vertex outside the target piece".into()))?;
        if !tree.reached[b] {
            return Err(Error::InvalidFunctor(format!(
                "no path in piece {} between the images",
                t.poset.elements()[s]
            )));
        }
        Ok(tree.path_between(&t.values[s].graph, a, b))
    };
    let mut vertex_map = Vec::with_capacity(tc_q.groupoid.num_vertices());
    for (s, map) in piece_maps.iter().enumerate() {
        vertex_map.extend(map.iter().map(|&y| tc_t.injections[s].vertex_map[y]));
    }
    let value_edges: usize = q.values.iter().map(|p| p.num_edges()).sum();
    let mut edge_map: Vec<Word> = Vec::with_capacity(tc_q.groupoid.num_edges());
    for e in 0..value_edges {
        edge_map.push(Word::empty(vertex_map[tc_q.groupoid.graph.edges[e].src]));
    }
    for &(s, u) in tc_q.lambda.keys() {
        let psi = q.transition(s, u);
        let iota = t.transition(s, u);
        for x in 0..q.values[s].num_vertices() {
            let y = piece_maps[s][x];
            let from = piece_maps[u][psi.vertex_map[x]];
            let to = iota.vertex_map[y];
            let w = tc_t.injections[u].image(&path(u, from, to)?);
            edge_map.push(w.then(&tc_t.lambda[&(s, u)][y]));
        }
    }
    let functor = PresFunctor::new(tc_q.groupoid.clone(), tc_t.groupoid.clone(), vertex_map, edge_map)?;
    let oracle = WordEquality::new(&tc_t.groupoid, budget);
    let mut relations = Verdict::Yes;
    for (a, b) in functor.relation_images() {
        match oracle.equal(&tc_t.groupoid, &a, &b) {
            Verdict::No => {
                relations = Verdict::No;
                break;
            }
            Verdict::Unknown => relations = Verdict::Unknown,
            Verdict::Yes => {}
        }
    }
    Ok(TerminalMap { functor, relations })
}
