//! Equivalence-invariant fingerprints, a sound three-valued equivalence test,
//! and functor counts into a battery of small groupoids.

use crate::abelian::AbelianInvariant;
use crate::group::FiniteGroup;
use crate::groupoid::ConcreteGroupoid;
use crate::presentation::{
    abelian_invariants, collapse_component, component_vertex_lists, enumerate_group, free_reduce, reduce_signed, simplify,
    simplify_tracked, Collapse, PresentedGroupoid, SignedGen, VertexGroupPresentation, Word,
};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

/// Either kind of groupoid.
#[derive(Clone, Copy, Debug)]
pub enum AnyGroupoid<'a> {
    Concrete(&'a ConcreteGroupoid),
    Presented(&'a PresentedGroupoid),
}

impl<'a> From<&'a ConcreteGroupoid> for AnyGroupoid<'a> {
    fn from(g: &'a ConcreteGroupoid) -> Self {
        AnyGroupoid::Concrete(g)
    }
}

impl<'a> From<&'a PresentedGroupoid> for AnyGroupoid<'a> {
    fn from(p: &'a PresentedGroupoid) -> Self {
        AnyGroupoid::Presented(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentInvariant {
    pub abelian: AbelianInvariant,
    pub order: GroupOrder,
}

/// Component count plus per-component vertex-group data, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquivalenceInvariant {
    pub component_count: usize,
    pub per_component: Vec<ComponentInvariant>,
}

impl EquivalenceInvariant {
    /// True when some component's order could not be determined.
    pub fn is_partial(&self) -> bool {
        self.per_component.iter().any(|c| c.order == GroupOrder::Unknown)
    }

    /// Equality of the data that is always exact (count and abelian parts).
    pub fn abelian_data(&self) -> Vec<&AbelianInvariant> {
        self.per_component.iter().map(|c| &c.abelian).collect()
    }
}

impl fmt::Display for EquivalenceInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .per_component
            .iter()
            .map(|c| match c.order {
                GroupOrder::Finite(n) => format!("{} (order {n})", c.abelian),
                GroupOrder::Infinite => format!("{} (infinite)", c.abelian),
                GroupOrder::Unknown => format!("{} (order unknown)", c.abelian),
            })
            .collect();
        write!(f, "{} component(s): [{}]", self.component_count, parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

/// What is known about one component's vertex group.
#[derive(Clone, Debug)]
enum Known {
    Finite(FiniteGroup),
    Free(usize),
    Unknown,
}

#[derive(Clone, Debug)]
struct Component {
    abelian: AbelianInvariant,
    known: Known,
    /// Group presentation when the input was presented.
    presentation: Option<VertexGroupPresentation>,
}

impl Component {
    fn invariant(&self) -> ComponentInvariant {
        let order = match &self.known {
            Known::Finite(g) => GroupOrder::Finite(g.order() as u64),
            Known::Free(0) => GroupOrder::Finite(1),
            Known::Free(_) => GroupOrder::Infinite,
            Known::Unknown if self.abelian.free_rank > 0 => GroupOrder::Infinite,
            Known::Unknown => GroupOrder::Unknown,
        };
        ComponentInvariant {
            abelian: self.abelian.clone(),
            order,
        }
    }
}

fn components(g: AnyGroupoid<'_>, budget: usize) -> Vec<Component> {
    match g {
        AnyGroupoid::Concrete(g) => g
            .component_representatives()
            .into_iter()
            .map(|x| {
                let group = g.vertex_group(x);
                Component {
                    abelian: group.abelianization(),
                    known: Known::Finite(group),
                    presentation: None,
                }
            })
            .collect(),
        AnyGroupoid::Presented(p) => component_vertex_lists(&p.graph)
            .into_iter()
            .map(|verts| {
                let pres = simplify(&collapse_component(p, verts[0]).presentation);
                let abelian = abelian_invariants(&pres);
                let known = if pres.relators.is_empty() {
                    Known::Free(pres.rank())
                } else if abelian.free_rank > 0 {
                    Known::Unknown
                } else {
                    match enumerate_group(pres.rank(), &pres.relators, budget) {
                        Some((group, _)) => Known::Finite(group),
                        None => Known::Unknown,
                    }
                };
                Component {
                    abelian,
                    known,
                    presentation: Some(pres),
                }
            })
            .collect(),
    }
}

/// Fingerprint; orders of presented components are found by coset
/// enumeration within `budget` table cells.
pub fn equivalence_fingerprint<'a>(g: impl Into<AnyGroupoid<'a>>, budget: usize) -> EquivalenceInvariant {
    let mut per_component: Vec<ComponentInvariant> = components(g.into(), budget).iter().map(Component::invariant).collect();
    per_component.sort();
    EquivalenceInvariant {
        component_count: per_component.len(),
        per_component,
    }
}

/// Sound equivalence test: `Yes` and `No` are always correct.
pub fn are_equivalent<'a, 'b>(a: impl Into<AnyGroupoid<'a>>, b: impl Into<AnyGroupoid<'b>>, budget: usize) -> Verdict {
    let (ca, cb) = (components(a.into(), budget), components(b.into(), budget));
    if ca.len() != cb.len() {
        return Verdict::No;
    }
    let sorted = |cs: &[Component]| {
        let mut v: Vec<ComponentInvariant> = cs.iter().map(Component::invariant).collect();
        v.sort();
        v
    };
    let (fa, fb) = (sorted(&ca), sorted(&cb));
    let abel = |v: &[ComponentInvariant]| v.iter().map(|c| c.abelian.clone()).collect::<Vec<_>>();
    if abel(&fa) != abel(&fb) {
        return Verdict::No;
    }
    let all_known = |v: &[ComponentInvariant]| v.iter().all(|c| c.order != GroupOrder::Unknown);
    if all_known(&fa) && all_known(&fb) && fa != fb {
        return Verdict::No;
    }
    let mut used = vec![false; cb.len()];
    // a matching through pairs that are not ruled out, then one through
    // pairs that are proven isomorphic
    if !perfect_matching(&ca, &cb, 0, &mut used, &|x, y| iso(x, y) != Some(false)) {
        return Verdict::No;
    }
    let mut used = vec![false; cb.len()];
    if perfect_matching(&ca, &cb, 0, &mut used, &|x, y| iso(x, y) == Some(true)) {
        Verdict::Yes
    } else {
        Verdict::Unknown
    }
}

/// Whether two components have isomorphic vertex groups, when decidable.
fn iso(x: &Component, y: &Component) -> Option<bool> {
    if x.abelian != y.abelian {
        return Some(false);
    }
    let (ix, iy) = (x.invariant(), y.invariant());
    if ix.order != GroupOrder::Unknown && iy.order != GroupOrder::Unknown && ix != iy {
        return Some(false);
    }
    match (&x.known, &y.known) {
        (Known::Finite(g), Known::Finite(h)) => return Some(g.is_isomorphic(h)),
        (Known::Free(r), Known::Free(s)) => return Some(r == s),
        (Known::Free(0), Known::Finite(h)) | (Known::Finite(h), Known::Free(0)) => return Some(h.order() == 1),
        (Known::Free(_), Known::Finite(_)) | (Known::Finite(_), Known::Free(_)) => return Some(false),
        _ => {}
    }
    match (&x.presentation, &y.presentation) {
        (Some(p), Some(q)) if same_up_to_renaming(p, q) => Some(true),
        _ => None,
    }
}

fn perfect_matching(a: &[Component], b: &[Component], i: usize, used: &mut [bool], edge: &dyn Fn(&Component, &Component) -> bool) -> bool {
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if !used[j] && edge(&a[i], &b[j]) {
            used[j] = true;
            if perfect_matching(a, b, i + 1, used, edge) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Cyclically reduced, least rotation of the relator or its inverse.
fn canonical_relator(r: &[SignedGen]) -> Vec<SignedGen> {
    let mut w = reduce_signed(r.to_vec());
    while w.len() >= 2 && w[0].0 == w[w.len() - 1].0 && w[0].1 != w[w.len() - 1].1 {
        w.pop();
        w.remove(0);
    }
    let inv: Vec<SignedGen> = w.iter().rev().map(|&(g, e)| (g, !e)).collect();
    let mut best = w.clone();
    for word in [&w, &inv] {
        for k in 0..word.len() {
            let rot: Vec<SignedGen> = word[k..].iter().chain(&word[..k]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn relator_set(p: &VertexGroupPresentation, perm: &[usize], flip: u32) -> Vec<Vec<SignedGen>> {
    let mut rels: Vec<Vec<SignedGen>> = p
        .relators
        .iter()
        .map(|r| {
            let renamed: Vec<SignedGen> = r.iter().map(|&(g, e)| (perm[g], e ^ (flip >> g & 1 == 1))).collect();
            canonical_relator(&renamed)
        })
        .filter(|r| !r.is_empty())
        .collect();
    rels.sort();
    rels.dedup();
    rels
}

const RENAMING_RANK_LIMIT: usize = 6;

/// Identical presentations after renaming and inverting generators.
fn same_up_to_renaming(p: &VertexGroupPresentation, q: &VertexGroupPresentation) -> bool {
    let n = p.rank();
    if n != q.rank() {
        return false;
    }
    let target = relator_set(q, &(0..n).collect::<Vec<_>>(), 0);
    if n > RENAMING_RANK_LIMIT {
        return relator_set(p, &(0..n).collect::<Vec<_>>(), 0) == target;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for flip in 0..1u32 << n {
            if relator_set(p, &perm, flip) == target {
                return true;
            }
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Small target groupoids used to refine fingerprints by functor counts.
#[derive(Clone, Debug)]
pub struct Battery {
    pub targets: Vec<(String, ConcreteGroupoid)>,
}

pub const BATTERY_NAMES: [&str; 4] = ["z2", "z3", "s3", "two"];

impl Battery {
    /// Builds a battery from names among `z2`, `z3`, `s3`, `two`.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Option<Self> {
        let targets = names
            .iter()
            .map(|n| {
                let g = match n.as_ref() {
                    "z2" => ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)),
                    "z3" => ConcreteGroupoid::from_group(&FiniteGroup::cyclic(3)),
                    "s3" => ConcreteGroupoid::from_group(&FiniteGroup::symmetric(3)),
                    "two" => ConcreteGroupoid::banal(2),
                    _ => return None,
                };
                Some((n.as_ref().to_string(), g))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self { targets })
    }

    /// Number of functors into each target, counted up to natural
    /// isomorphism; `None` when a count is out of reach.
    pub fn counts<'a>(&self, g: impl Into<AnyGroupoid<'a>>, budget: usize) -> Option<Vec<u64>> {
        let comps = components(g.into(), budget);
        self.targets.iter().map(|(_, t)| functor_classes(&comps, t)).collect()
    }
}

impl Default for Battery {
    fn default() -> Self {
        Self::from_names(&BATTERY_NAMES).unwrap()
    }
}

/// Product over source components of the sum over target components of
/// homomorphisms up to conjugation.
fn functor_classes(source: &[Component], target: &ConcreteGroupoid) -> Option<u64> {
    let target_groups: Vec<FiniteGroup> = target.component_representatives().into_iter().map(|x| target.vertex_group(x)).collect();
    let mut total = 1u64;
    for c in source {
        let mut sum = 0u64;
        for t in &target_groups {
            sum += hom_classes(c, t)?;
        }
        total = total.checked_mul(sum)?;
    }
    Some(total)
}

const HOM_SEARCH_LIMIT: u128 = 5_000_000;

fn hom_classes(c: &Component, t: &FiniteGroup) -> Option<u64> {
    let (rank, relators, finite_gens): (usize, Vec<Vec<SignedGen>>, Option<(FiniteGroup, Vec<usize>)>) = match (&c.presentation, &c.known) {
        (Some(p), _) => (p.rank(), p.relators.clone(), None),
        (None, Known::Finite(g)) => {
            let gens = g.generating_set();
            (gens.len(), Vec::new(), Some((g.clone(), gens)))
        }
        _ => return None,
    };
    if (t.order() as u128).checked_pow(rank as u32)? > HOM_SEARCH_LIMIT {
        return None;
    }
    let mut homs: Vec<Vec<usize>> = Vec::new();
    let mut images = vec![0usize; rank];
    loop {
        let ok = match &finite_gens {
            Some((g, gens)) => g.homomorphism_from_generators(t, gens, &images).is_some(),
            None => relators.iter().all(|r| t.eval_word(&images, r) == t.identity()),
        };
        if ok {
            homs.push(images.clone());
        }
        let mut k = 0;
        while k < rank {
            images[k] += 1;
            if images[k] < t.order() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == rank {
            break;
        }
    }
    // orbits under simultaneous conjugation
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut classes = 0u64;
    for h in homs {
        if seen.contains(&h) {
            continue;
        }
        classes += 1;
        for x in 0..t.order() {
            let conj: Vec<usize> = h.iter().map(|&y| t.mul(t.mul(t.inv(x), y), x)).collect();
            seen.insert(conj);
        }
    }
    Some(classes)
}

/// Decides equality of parallel words in a presented groupoid whose vertex
/// groups simplify to free groups or enumerate as finite groups.
#[derive(Clone, Debug)]
pub struct WordEquality {
    component_of: Vec<usize>,
    components: Vec<(Collapse, Vec<Vec<SignedGen>>, Solver)>,
}

#[derive(Clone, Debug)]
enum Solver {
    Free,
    Finite(FiniteGroup, Vec<usize>),
    Unknown,
}

impl WordEquality {
    pub fn new(p: &PresentedGroupoid, budget: usize) -> Self {
        let lists = component_vertex_lists(&p.graph);
        let mut component_of = vec![0; p.num_vertices()];
        let mut components = Vec::new();
        for (c, verts) in lists.iter().enumerate() {
            for &v in verts {
                component_of[v] = c;
            }
            let collapse = collapse_component(p, verts[0]);
            let (pres, images) = simplify_tracked(&collapse.presentation);
            let solver = if pres.relators.is_empty() {
                Solver::Free
            } else {
                match enumerate_group(pres.rank(), &pres.relators, budget) {
                    Some((g, gens)) => Solver::Finite(g, gens),
                    None => Solver::Unknown,
                }
            };
            components.push((collapse, images, solver));
        }
        Self { component_of, components }
    }

    /// `Yes` when `a = b` holds, `No` when it fails, `Unknown` otherwise.
    pub fn equal(&self, p: &PresentedGroupoid, a: &Word, b: &Word) -> Verdict {
        let g = &p.graph;
        if a.source() != b.source() || a.target(g) != b.target(g) {
            return Verdict::No;
        }
        let lp = free_reduce(&a.then(&b.inverse(g)));
        if lp.is_empty() {
            return Verdict::Yes;
        }
        let (collapse, images, solver) = &self.components[self.component_of[a.base]];
        let mut word: Vec<SignedGen> = Vec::new();
        for (gen, inv) in collapse.rewrite(&lp) {
            let img = &images[gen];
            if inv {
                word.extend(img.iter().rev().map(|&(x, i)| (x, !i)));
            } else {
                word.extend_from_slice(img);
            }
        }
        match solver {
            Solver::Free => Verdict::from_bool(reduce(word).is_empty()),
            Solver::Finite(group, gens) => Verdict::from_bool(group.eval_word(gens, &word) == group.identity()),
            Solver::Unknown => Verdict::Unknown,
        }
    }
}

fn reduce(word: Vec<SignedGen>) -> Vec<SignedGen> {
    let mut stack: Vec<SignedGen> = Vec::with_capacity(word.len());
    for s in word {
        if stack.last() == Some(&(s.0, !s.1)) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    stack
}
