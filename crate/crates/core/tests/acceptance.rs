//! The eight acceptance criteria, each printed as one pass/fail line.

mod common;

use common::*;
use costack::cosheaf::{check_cosheaf_sets, compatible_maps_to_pi0, terminal_cosheaf_map, Pi0Functor, Pi0Times, RestrictedPi0, SetFunctor};
use costack::costack::{check_sh, check_st, check_vankampen};
use costack::diagrams::{
    deform, delta_comparison, diagram_colim, diagram_tc, gamma_embedding, presented_diagram, ConcreteDiagram, FinitePoset,
    PresentedDiagram, Variance,
};
use costack::equivalence::{equivalence_fingerprint, Battery, Verdict};
use costack::functor_groupoid::FunctorGroupoid;
use costack::group::FiniteGroup;
use costack::groupoid::{ConcreteFunctor, ConcreteGroupoid, MorId, NatIso, ObjId};
use costack::presentation::{Edge, GenGraph, Letter, PresFunctor, PresentedGroupoid, Word, DEFAULT_BUDGET};
use costack::space::{build_nerve, build_nerve_of, Complex2, Subcomplex};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------- shared samples ----------

fn points(n: usize) -> Arc<PresentedGroupoid> {
    Arc::new(PresentedGroupoid::free(GenGraph::new((0..n).map(|i| format!("p{i}")).collect(), vec![]).unwrap()))
}

fn span(a: Arc<PresentedGroupoid>, amap: Vec<usize>, b: Arc<PresentedGroupoid>, bmap: Vec<usize>) -> PresentedDiagram {
    let c = points(2);
    let legs = BTreeMap::from([
        ((2, 0), PresFunctor::new(c.clone(), a.clone(), amap, vec![]).unwrap()),
        ((2, 1), PresFunctor::new(c.clone(), b.clone(), bmap, vec![]).unwrap()),
    ]);
    PresentedDiagram::new(FinitePoset::span(), Variance::Covariant, vec![a, b, c], legs).unwrap()
}

fn interval() -> Arc<PresentedGroupoid> {
    let g = GenGraph::new(vec!["0".into(), "1".into()], vec![Edge { id: "m".into(), src: 0, tgt: 1 }]).unwrap();
    Arc::new(PresentedGroupoid::free(g))
}

fn complex(vertices: &[&str], edges: &[(&str, usize, usize)], cells: &[(&str, &[&str])]) -> Complex2 {
    let edges = edges.iter().map(|&(id, s, t)| Edge { id: id.into(), src: s, tgt: t }).collect();
    let cells = cells.iter().map(|&(id, b)| (id.to_string(), b.to_vec())).collect();
    Complex2::new(vertices.iter().map(|v| v.to_string()).collect(), edges, cells).unwrap()
}

fn sample_complexes() -> Vec<(String, Arc<Complex2>)> {
    let mut out: Vec<(String, Complex2)> = Vec::new();
    for n in 3..=9 {
        out.push((format!("cycle {n}"), Complex2::cycle(n)));
    }
    for n in 3..=6 {
        out.push((format!("disk {n}"), Complex2::disk(n)));
    }
    out.push(("tetrahedron boundary".into(), Complex2::tetrahedron_boundary()));
    out.push(("torus".into(), Complex2::torus()));
    out.push(("torus grid 2x2".into(), Complex2::torus_grid(2, 2)));
    out.push(("torus grid 2x3".into(), Complex2::torus_grid(2, 3)));
    out.push(("wedge of two circles".into(), Complex2::wedge_of_circles()));
    out.push(("projective plane".into(), complex(&["v"], &[("a", 0, 0)], &[("P", &["a+", "a+"])])));
    out.push(("Klein bottle".into(), complex(&["v"], &[("a", 0, 0), ("b", 0, 0)], &[("K", &["a+", "b+", "a-", "b+"])])));
    out.push(("theta graph".into(), complex(&["x", "y"], &[("p", 0, 1), ("q", 0, 1), ("r", 0, 1)], &[])));
    out.push((
        "two triangles".into(),
        complex(
            &["a0", "a1", "a2", "b0", "b1", "b2"],
            &[("s0", 0, 1), ("s1", 1, 2), ("s2", 2, 0), ("t0", 3, 4), ("t1", 4, 5), ("t2", 5, 3)],
            &[],
        ),
    ));
    out.into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}

/// Ids of elements not in the boundary of anything else.
fn top_elements(c: &Complex2) -> Vec<String> {
    let mut used_edges = vec![false; c.num_edges()];
    let mut used_vertices = vec![false; c.num_vertices()];
    for cell in &c.cells {
        for l in &cell.boundary.letters {
            used_edges[l.edge] = true;
        }
    }
    for e in &c.graph.edges {
        used_vertices[e.src] = true;
        used_vertices[e.tgt] = true;
    }
    let mut out: Vec<String> = c.cells.iter().map(|x| x.id.clone()).collect();
    out.extend(c.graph.edges.iter().enumerate().filter(|(k, _)| !used_edges[*k]).map(|(_, e)| e.id.clone()));
    out.extend(c.graph.vertices.iter().enumerate().filter(|(k, _)| !used_vertices[*k]).map(|(_, v)| v.clone()));
    out
}

fn all_ids(c: &Complex2) -> Vec<String> {
    let mut ids = c.graph.vertices.clone();
    ids.extend(c.graph.edges.iter().map(|e| e.id.clone()));
    ids.extend(c.cells.iter().map(|x| x.id.clone()));
    ids
}

/// Random covers with `k` members: every top element goes to some member,
/// and members pick up a few extra elements.
fn random_cover(rng: &mut impl Rng, c: &Arc<Complex2>, k: usize) -> Vec<Subcomplex> {
    let tops = top_elements(c);
    let ids = all_ids(c);
    let mut members: Vec<Vec<String>> = vec![Vec::new(); k];
    for t in &tops {
        members[rng.gen_range(0..k)].push(t.clone());
    }
    for m in members.iter_mut() {
        if m.is_empty() || rng.gen_bool(0.5) {
            m.push(ids.choose(rng).unwrap().clone());
        }
    }
    members.iter().map(|m| Subcomplex::from_ids(c.clone(), m).unwrap()).collect()
}

/// Contiguous arcs of a cycle, `k` of them, sharing endpoints.
fn arcs(n: usize, k: usize) -> (Arc<Complex2>, Vec<Subcomplex>) {
    let c = Arc::new(Complex2::cycle(n));
    let cover = (0..k)
        .map(|j| {
            let ids: Vec<String> = (j * n / k..(j + 1) * n / k).map(|e| format!("e{e}")).collect();
            Subcomplex::from_ids(c.clone(), &ids).unwrap()
        })
        .collect();
    (c, cover)
}

// ---------- criteria ----------

fn criterion_1() -> Check {
    let d = span(interval(), vec![0, 1], points(1), vec![0, 0]);
    let colim = diagram_colim(&d).map_err(|e| e.to_string())?;
    let tc = diagram_tc(&d).map_err(|e| e.to_string())?;
    for (name, g) in [("colim", &colim.groupoid), ("tc", &tc.groupoid)] {
        let f = equivalence_fingerprint(&**g, DEFAULT_BUDGET);
        ensure(
            f.component_count == 1 && f.per_component[0].abelian.free_rank == 1 && f.per_component[0].abelian.torsion.is_empty(),
            || format!("{name} fingerprints as {f}"),
        )?;
    }
    ensure(tc.groupoid.num_vertices() == 5, || format!("tc has {} objects", tc.groupoid.num_vertices()))?;
    Ok("colim and tc: 1 component, free rank 1, no torsion; tc has 5 objects".into())
}

fn criterion_2() -> Check {
    let mut rng = rng(2);
    let battery = Battery::default();
    let complexes = sample_complexes();
    let mut checks = 0;
    for (name, c) in &complexes {
        let whole = Subcomplex::full(c.clone());
        let expected = equivalence_fingerprint(&whole.pi1(), DEFAULT_BUDGET);
        for _ in 0..2 {
            let cover = random_cover(&mut rng, c, 2);
            let r = check_vankampen(&whole, &cover[0], &cover[1], &battery, DEFAULT_BUDGET).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.pushout == Verdict::Yes && r.two_pushout == Verdict::Yes, || {
                format!("{name} with {:?} / {:?}: pushout {}, 2-pushout {}", cover[0].element_names(), cover[1].element_names(), r.pushout, r.two_pushout)
            })?;
            ensure(r.colim == expected && r.tc == expected, || format!("{name}: fingerprints {} / {} against {expected}", r.colim, r.tc))?;
            checks += 1;
        }
    }
    Ok(format!("{} complexes, {checks} two-member covers, all yes/yes with matching fingerprints", complexes.len()))
}

fn criterion_3() -> Check {
    let mut rng = rng(3);
    let verdict = |d: &PresentedDiagram| delta_comparison(d, DEFAULT_BUDGET).map(|r| r.verdict).map_err(|e| e.to_string());
    for k in 0..12 {
        let d = random_chain(&mut rng);
        let v = verdict(&presented_diagram(&d).unwrap())?;
        ensure(v == Verdict::Yes, || format!("chain #{k}: {v}"))?;
    }
    for k in 0..12 {
        let d = random_injective_span(&mut rng);
        let v = verdict(&presented_diagram(&d).unwrap())?;
        ensure(v == Verdict::Yes, || format!("injective span #{k}: {v}"))?;
    }
    let collapsing = span(points(1), vec![0, 0], points(1), vec![0, 0]);
    let v = verdict(&collapsing)?;
    ensure(v == Verdict::No, || format!("collapsing span: {v}"))?;
    Ok("12 chains yes, 12 injective-leg spans yes, collapsing span no".into())
}

/// `i1` injective on objects; `lambda : j1∘i1 => j2∘i2` made by conjugating
/// `j1∘i1` with random components and factoring the result through
/// `i2, j2` in one of two ways.
fn random_square(rng: &mut impl Rng) -> (ConcreteFunctor, ConcreteFunctor, ConcreteFunctor, ConcreteFunctor, NatIso) {
    loop {
        let a = Arc::new(random_groupoid(rng, 3, 20));
        let b = Arc::new(random_groupoid(rng, 5, 40));
        let Some(i1) = injective_functor(rng, &a, &b) else { continue };
        let d = Arc::new(random_groupoid(rng, 5, 40));
        let j1 = random_functor(rng, &b, &d).unwrap();
        let top = i1.then(&j1).unwrap();
        let comps: Vec<MorId> = top.object_map.iter().map(|&y| *d.out(y).choose(rng).unwrap()).collect();
        let object_map: Vec<ObjId> = comps.iter().map(|&m| d.tgt(m)).collect();
        let morphism_map = (0..a.num_morphisms())
            .map(|m| d.then(d.then(d.inverse(comps[a.src(m)]), top.morphism_map[m]), comps[a.tgt(m)]))
            .collect();
        let h = ConcreteFunctor::new(a.clone(), d.clone(), object_map, morphism_map).unwrap();
        let (i2, j2) = if rng.gen_bool(0.5) {
            (ConcreteFunctor::identity(a.clone()), h)
        } else {
            (h, ConcreteFunctor::identity(d.clone()))
        };
        let lambda = NatIso::new(top, i2.then(&j2).unwrap(), comps).unwrap();
        return (i1, i2, j1, j2, lambda);
    }
}

/// Exhaustive functoriality, independent of the library's own check.
fn is_functor(f: &ConcreteFunctor) -> bool {
    let (a, b) = (&f.domain, &f.codomain);
    (0..a.num_morphisms()).all(|m| {
        b.src(f.morphism_map[m]) == f.object_map[a.src(m)]
            && b.tgt(f.morphism_map[m]) == f.object_map[a.tgt(m)]
            && a.out(a.tgt(m)).iter().all(|&n| f.morphism_map[a.then(m, n)] == b.then(f.morphism_map[m], f.morphism_map[n]))
    }) && (0..a.num_objects()).all(|x| f.morphism_map[a.identity(x)] == b.identity(f.object_map[x]))
}

fn criterion_4() -> Check {
    let mut rng = rng(4);
    let n = 120;
    for k in 0..n {
        let (i1, i2, j1, j2, lambda) = random_square(&mut rng);
        let out = deform(&i1, &i2, &j1, &j2, &lambda).map_err(|e| format!("square #{k}: {e}"))?;
        ensure(is_functor(&out.j1_prime), || format!("square #{k}: j1' is not a functor"))?;
        let lhs = i1.then(&out.j1_prime).unwrap();
        let rhs = i2.then(&j2).unwrap();
        ensure(lhs.object_map == rhs.object_map && lhs.morphism_map == rhs.morphism_map, || format!("square #{k}: j1'∘i1 != j2∘i2"))?;
        // κ : j1 => j1' is natural, and restricts to λ along i1
        let (b, d) = (&j1.domain, &j1.codomain);
        let natural = (0..b.num_morphisms()).all(|m| {
            let (x, y) = (b.src(m), b.tgt(m));
            d.then(j1.morphism_map[m], out.kappa.components[y]) == d.then(out.kappa.components[x], out.j1_prime.morphism_map[m])
        });
        ensure(natural, || format!("square #{k}: kappa is not natural"))?;
        let restricted: Vec<MorId> = i1.object_map.iter().map(|&x| out.kappa.components[x]).collect();
        ensure(restricted == lambda.components, || format!("square #{k}: kappa restricted to i1 differs from lambda"))?;
    }
    Ok(format!("{n} random squares, all postconditions hold"))
}

fn random_poset(rng: &mut impl Rng) -> FinitePoset {
    let n = rng.gen_range(1..=4);
    let covers: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.45)).collect();
    FinitePoset::from_covers((0..n).map(|i| format!("p{i}")).collect(), &covers).unwrap()
}

fn random_contravariant_diagram(rng: &mut impl Rng) -> ConcreteDiagram {
    loop {
        let poset = random_poset(rng);
        let values: Vec<Arc<ConcreteGroupoid>> = (0..poset.len()).map(|_| Arc::new(random_groupoid(rng, 3, 12))).collect();
        let covers = poset
            .covers()
            .into_iter()
            .map(|(i, j)| ((i, j), random_functor(rng, &values[j], &values[i]).unwrap()))
            .collect();
        // non-commuting diamonds are rejected; try again
        if let Ok(d) = ConcreteDiagram::from_covers(poset, Variance::Contravariant, values, covers) {
            return d;
        }
    }
}

fn criterion_5() -> Check {
    let mut rng = rng(5);
    let n = 60;
    let mut pairs = 0usize;
    for k in 0..n {
        let d = random_contravariant_diagram(&mut rng);
        let gamma = gamma_embedding(&d).map_err(|e| format!("diagram #{k}: {e}"))?;
        let (lim, tl, f) = (&gamma.lim.groupoid, &gamma.tl_groupoid, &gamma.functor);
        for a in 0..lim.num_objects() {
            for b in 0..lim.num_objects() {
                let src = lim.hom(a, b);
                let mut image: Vec<MorId> = src.iter().map(|&m| f.morphism_map[m]).collect();
                image.sort_unstable();
                image.dedup();
                let target = tl.hom(f.object_map[a], f.object_map[b]);
                ensure(image.len() == src.len() && image.len() == target.len(), || {
                    format!("diagram #{k}: hom({a}, {b}) has {} morphisms, {} images, {} in the 2-limit", src.len(), image.len(), target.len())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{n} random diagrams, {pairs} hom-sets, all bijective"))
}

fn criterion_6() -> Check {
    let mut rng = rng(6);
    let mut covers = 0;
    for (name, c) in sample_complexes() {
        let whole = Subcomplex::full(c.clone());
        for k in [1, 2, 2, 3] {
            let cover = random_cover(&mut rng, &c, k);
            let r = check_cosheaf_sets(&Pi0Functor, &whole, &cover).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("{name}: {}", r.witness.clone().unwrap_or_default()))?;
            covers += 1;
        }
    }
    // synthetic cosheaves: copies of components, and components of a fixed subcomplex
    let mut synthetic: Vec<(String, Subcomplex, Box<dyn SetFunctor>)> = Vec::new();
    for (name, c) in sample_complexes().into_iter().take(6) {
        let whole = Subcomplex::full(c.clone());
        synthetic.push((format!("{name}, pi0 x 2"), whole.clone(), Box::new(Pi0Times(2))));
        let restrict = random_cover(&mut rng, &c, 2).swap_remove(0);
        synthetic.push((format!("{name}, pi0 of a subcomplex"), whole, Box::new(RestrictedPi0(restrict))));
    }
    for (name, u, f) in &synthetic {
        let cover = random_cover(&mut rng, u.parent(), 2);
        let r = check_cosheaf_sets(f.as_ref(), u, &cover).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("{name} is not a cosheaf on its cover"))?;
        let map = terminal_cosheaf_map(f.as_ref(), u).map_err(|e| e.to_string())?;
        let all = compatible_maps_to_pi0(f.as_ref(), u);
        ensure(all == vec![map.clone()], || format!("{name}: {} compatible maps", all.len()))?;
    }
    Ok(format!("pi0 passes on {covers} covers; {} synthetic cosheaves have exactly one map", synthetic.len()))
}

fn criterion_7() -> Check {
    let z2 = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)));
    let cap = 2_000_000;
    let mut samples: Vec<(String, Arc<Complex2>, Vec<Subcomplex>)> = Vec::new();
    for (n, k) in [(6, 3), (7, 3), (9, 3)] {
        let (c, cover) = arcs(n, k);
        samples.push((format!("cycle {n}, {k} arcs"), c, cover));
    }
    let mut rng = rng(7);
    for (name, c) in [
        ("theta", Arc::new(complex(&["x", "y"], &[("p", 0, 1), ("q", 0, 1), ("r", 0, 1)], &[]))),
        ("disk", Arc::new(Complex2::disk(6))),
        ("tetrahedron", Arc::new(Complex2::tetrahedron_boundary())),
    ] {
        samples.push((format!("{name}, random"), c.clone(), random_cover(&mut rng, &c, 3)));
    }
    let mut premise = 0;
    for (name, _, cover) in &samples {
        let mut pairwise = true;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let total = cover[i].union(&cover[j]).unwrap();
            let nerve = build_nerve_of(&total, &[cover[i].clone(), cover[j].clone()], 2).map_err(|e| e.to_string())?;
            let sh = check_sh(&nerve, &z2, cap).map_err(|e| e.to_string())?;
            let st = check_st(&nerve, &z2, cap).map_err(|e| e.to_string())?;
            pairwise &= sh.verdict == Verdict::Yes && st.verdict == Verdict::Yes;
        }
        if !pairwise {
            continue;
        }
        premise += 1;
        let nerve = build_nerve(cover).map_err(|e| e.to_string())?;
        for r in [check_sh(&nerve, &z2, cap), check_st(&nerve, &z2, cap)] {
            let r = r.map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Yes, || format!("{name}: {} is {} ({:?})", r.condition, r.verdict, r.witness))?;
        }
    }
    ensure(premise >= 5, || format!("only {premise} samples met the pairwise premise"))?;
    Ok(format!("{} samples, {premise} with passing pairwise checks, no counterexamples", samples.len()))
}

// --- brute-force functor enumeration, independent of the library's search ---

fn evaluate(g: &ConcreteGroupoid, edges: &[MorId], vertex_image: ObjId, w: &Word) -> MorId {
    w.letters.iter().fold(g.identity(vertex_image), |acc, l: &Letter| {
        let m = if l.inverse { g.inverse(edges[l.edge]) } else { edges[l.edge] };
        g.then(acc, m)
    })
}

fn brute_force_counts(p: &PresentedGroupoid, g: &ConcreteGroupoid) -> (usize, usize) {
    let (nv, ne) = (p.num_vertices(), p.num_edges());
    let (no, nm) = (g.num_objects(), g.num_morphisms());
    let mut functors = Vec::new();
    let total = no.pow(nv as u32) * nm.pow(ne as u32);
    for code in 0..total {
        let mut c = code;
        let vmap: Vec<ObjId> = (0..nv).map(|_| { let x = c % no; c /= no; x }).collect();
        let emap: Vec<MorId> = (0..ne).map(|_| { let x = c % nm; c /= nm; x }).collect();
        let endpoints = p.graph.edges.iter().zip(&emap).all(|(e, &m)| g.src(m) == vmap[e.src] && g.tgt(m) == vmap[e.tgt]);
        if !endpoints {
            continue;
        }
        let relations = p.relations.iter().all(|(l, r)| evaluate(g, &emap, vmap[l.base], l) == evaluate(g, &emap, vmap[r.base], r));
        if relations {
            functors.push(vmap);
        }
    }
    let morphisms = functors.iter().map(|vmap| vmap.iter().map(|&x| g.out(x).len()).product::<usize>()).sum();
    (functors.len(), morphisms)
}

fn criterion_8() -> Check {
    let mut rng = rng(8);
    let mut pairs = 0;
    let mut nonempty = 0;
    while pairs < 40 {
        let p = Arc::new(random_presentation(&mut rng));
        let g = Arc::new(random_groupoid(&mut rng, 3, 12));
        let candidates = g.num_objects().pow(p.num_vertices() as u32) * g.num_morphisms().pow(p.num_edges() as u32);
        if candidates > 10_000 {
            continue;
        }
        let expected = brute_force_counts(&p, &g);
        let fun = FunctorGroupoid::new(p.clone(), g.clone(), 1_000_000).map_err(|e| e.to_string())?;
        let found = (fun.groupoid.num_objects(), fun.groupoid.num_morphisms());
        ensure(found == expected, || format!("pair #{pairs}: library {found:?}, brute force {expected:?}\n{p}"))?;
        pairs += 1;
        nonempty += usize::from(expected.0 > 0);
    }
    Ok(format!("{pairs} pairs ({nonempty} with functors), counts agree"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("1 circle from a span", criterion_1, Duration::from_secs(1)),
        ("2 van kampen suite", criterion_2, Duration::from_secs(60)),
        ("3 comparison dichotomy", criterion_3, Duration::MAX),
        ("4 deformation squares", criterion_4, Duration::from_secs(30)),
        ("5 embedding full and faithful", criterion_5, Duration::MAX),
        ("6 components as terminal cosheaf", criterion_6, Duration::MAX),
        ("7 sheaf/stack escalation", criterion_7, Duration::MAX),
        ("8 functor counts against brute force", criterion_8, Duration::MAX),
    ];
    let mut failures = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            o => o,
        };
        match &outcome {
            Ok(msg) => println!("criterion {name}: PASS ({msg}; {elapsed:.2?})"),
            Err(msg) => {
                println!("criterion {name}: FAIL ({msg}; {elapsed:.2?})");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed: {failures:?}");
}
