//! Enumerated finite groupoids, functors between them and natural isomorphisms.
//!
//! Composition is diagrammatic throughout: `compose(f, g)` is defined when
//! `tgt(f) == src(g)` and means "f, then g".

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::util::DisjointSet;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Unchecked description of a finite groupoid, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupoidData {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismData>,
    /// `(f, g, h)`: `f` followed by `g` is `h`.
    pub table: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId(String),
    UnknownObject(String),
    UnknownMorphism(String),
    NotComposable { f: String, g: String },
    ConflictingComposite { f: String, g: String },
    MissingComposite { f: String, g: String },
    CompositeEndpoints { f: String, g: String, h: String },
    NoIdentity { object: String },
    IdentityLaw { object: String, morphism: String },
    NoInverse { morphism: String },
    Associativity { f: String, g: String, h: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId(id) => write!(out, "duplicate identifier `{id}`"),
            Violation::UnknownObject(id) => write!(out, "unknown object `{id}`"),
            Violation::UnknownMorphism(id) => write!(out, "unknown morphism `{id}`"),
            Violation::NotComposable { f, g } => write!(out, "table entry for non-composable pair ({f}, {g})"),
            Violation::ConflictingComposite { f, g } => write!(out, "conflicting composites for ({f}, {g})"),
            Violation::MissingComposite { f, g } => write!(out, "missing composite for ({f}, {g})"),
            Violation::CompositeEndpoints { f, g, h } => {
                write!(out, "composite {h} of ({f}, {g}) has wrong endpoints")
            }
            Violation::NoIdentity { object } => write!(out, "no identity at `{object}`"),
            Violation::IdentityLaw { object, morphism } => {
                write!(out, "identity at `{object}` fails the unit law against `{morphism}`")
            }
            Violation::NoInverse { morphism } => write!(out, "`{morphism}` has no inverse"),
            Violation::Associativity { f, g, h } => write!(out, "associativity fails on ({f}, {g}, {h})"),
        }
    }
}

/// Outcome of an exhaustive axiom check. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_inverse_failure(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::NoInverse { .. }))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

#[derive(Clone, Debug)]
enum Names {
    Explicit(Arc<Vec<String>>),
    Generated(&'static str),
}

impl Names {
    fn get(&self, i: usize) -> String {
        match self {
            Names::Explicit(v) => v[i].clone(),
            Names::Generated(prefix) => format!("{prefix}{i}"),
        }
    }
}

/// Morphisms that are families of morphisms in factor groupoids, composed
/// factor by factor. A morphism is keyed by its source and its components.
#[derive(Debug)]
pub(crate) struct Componentwise {
    factors: Vec<Arc<ConcreteGroupoid>>,
    comps: Vec<MorId>,
    lookup: HashMap<(ObjId, Box<[MorId]>), MorId>,
}

#[derive(Clone, Debug)]
enum Composition {
    Table(Arc<HashMap<(MorId, MorId), MorId>>),
    Componentwise(Arc<Componentwise>),
}

#[derive(Clone, Debug)]
pub struct ConcreteGroupoid {
    objects: Names,
    morphisms: Names,
    num_objects: usize,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    inverse: Vec<MorId>,
    out: Vec<Vec<MorId>>,
    composition: Composition,
}

/// Exhaustive axiom check of raw groupoid data.
pub fn validate_data(data: &GroupoidData) -> ValidationReport {
    match Prepared::new(data) {
        Ok(p) => p.report(),
        Err(report) => report,
    }
}

struct Prepared {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    table: HashMap<(MorId, MorId), MorId>,
    violations: Vec<Violation>,
}

impl Prepared {
    fn new(data: &GroupoidData) -> std::result::Result<Self, ValidationReport> {
        let mut violations = Vec::new();
        let mut obj_index = HashMap::new();
        for (i, o) in data.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                violations.push(Violation::DuplicateId(o.clone()));
            }
        }
        let mut mor_index = HashMap::new();
        let (mut src, mut tgt) = (Vec::new(), Vec::new());
        for (i, m) in data.morphisms.iter().enumerate() {
            if mor_index.insert(m.id.clone(), i).is_some() {
                violations.push(Violation::DuplicateId(m.id.clone()));
            }
            for end in [&m.src, &m.tgt] {
                if !obj_index.contains_key(end) {
                    violations.push(Violation::UnknownObject(end.clone()));
                }
            }
            src.push(obj_index.get(&m.src).copied().unwrap_or(0));
            tgt.push(obj_index.get(&m.tgt).copied().unwrap_or(0));
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }
        let mut table = HashMap::new();
        for (f, g, h) in &data.table {
            let lookup = |id: &String| mor_index.get(id).copied();
            let (Some(fi), Some(gi), Some(hi)) = (lookup(f), lookup(g), lookup(h)) else {
                for id in [f, g, h] {
                    if !mor_index.contains_key(id) {
                        violations.push(Violation::UnknownMorphism(id.clone()));
                    }
                }
                continue;
            };
            if tgt[fi] != src[gi] {
                violations.push(Violation::NotComposable { f: f.clone(), g: g.clone() });
                continue;
            }
            if src[hi] != src[fi] || tgt[hi] != tgt[gi] {
                violations.push(Violation::CompositeEndpoints { f: f.clone(), g: g.clone(), h: h.clone() });
            }
            if let Some(prev) = table.insert((fi, gi), hi) {
                if prev != hi {
                    violations.push(Violation::ConflictingComposite { f: f.clone(), g: g.clone() });
                }
            }
        }
        Ok(Self {
            objects: data.objects.clone(),
            morphisms: data.morphisms.iter().map(|m| m.id.clone()).collect(),
            src,
            tgt,
            table,
            violations,
        })
    }

    fn out(&self) -> Vec<Vec<MorId>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (m, &s) in self.src.iter().enumerate() {
            out[s].push(m);
        }
        out
    }

    /// Identity candidates are idempotent endomorphisms, first in declaration order.
    fn identities(&self, out: &[Vec<MorId>]) -> Vec<Option<MorId>> {
        (0..self.objects.len())
            .map(|x| {
                out[x]
                    .iter()
                    .copied()
                    .find(|&m| self.tgt[m] == x && self.table.get(&(m, m)) == Some(&m))
            })
            .collect()
    }

    fn report(mut self) -> ValidationReport {
        let out = self.out();
        let mut violations = std::mem::take(&mut self.violations);
        let name = |m: MorId| self.morphisms[m].clone();
        for f in 0..self.morphisms.len() {
            for &g in &out[self.tgt[f]] {
                if !self.table.contains_key(&(f, g)) {
                    violations.push(Violation::MissingComposite { f: name(f), g: name(g) });
                }
            }
        }
        let ids = self.identities(&out);
        for (x, id) in ids.iter().enumerate() {
            let Some(e) = *id else {
                violations.push(Violation::NoIdentity { object: self.objects[x].clone() });
                continue;
            };
            for m in 0..self.morphisms.len() {
                let ok_left = self.src[m] != x || self.table.get(&(e, m)) == Some(&m);
                let ok_right = self.tgt[m] != x || self.table.get(&(m, e)) == Some(&m);
                if !(ok_left && ok_right) {
                    violations.push(Violation::IdentityLaw { object: self.objects[x].clone(), morphism: name(m) });
                }
            }
        }
        for f in 0..self.morphisms.len() {
            let (Some(es), Some(et)) = (ids[self.src[f]], ids[self.tgt[f]]) else { continue };
            let has_inverse = out[self.tgt[f]].iter().any(|&g| {
                self.tgt[g] == self.src[f]
                    && self.table.get(&(f, g)) == Some(&es)
                    && self.table.get(&(g, f)) == Some(&et)
            });
            if !has_inverse {
                violations.push(Violation::NoInverse { morphism: name(f) });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &out[self.tgt[f]] {
                for &h in &out[self.tgt[g]] {
                    let left = self.table.get(&(f, g)).and_then(|&fg| self.table.get(&(fg, h)));
                    let right = self.table.get(&(g, h)).and_then(|&gh| self.table.get(&(f, gh)));
                    if left.is_some() && right.is_some() && left != right {
                        violations.push(Violation::Associativity { f: name(f), g: name(g), h: name(h) });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

impl ConcreteGroupoid {
    /// Builds a groupoid from raw data, rejecting it with the full report when invalid.
    pub fn new(data: &GroupoidData) -> Result<Self> {
        let prepared = Prepared::new(data).map_err(|r| Error::InvalidGroupoid(r.to_string()))?;
        let out = prepared.out();
        let ids = prepared.identities(&out);
        let report = Prepared::new(data).expect("checked above").report();
        if !report.is_valid() {
            return Err(Error::InvalidGroupoid(report.to_string()));
        }
        let identity: Vec<MorId> = ids.into_iter().map(|i| i.expect("validated")).collect();
        let inverse = (0..prepared.morphisms.len())
            .map(|f| {
                let e = identity[prepared.src[f]];
                out[prepared.tgt[f]]
                    .iter()
                    .copied()
                    .find(|&g| prepared.table.get(&(f, g)) == Some(&e))
                    .expect("validated")
            })
            .collect();
        Ok(Self {
            num_objects: prepared.objects.len(),
            objects: Names::Explicit(Arc::new(prepared.objects)),
            morphisms: Names::Explicit(Arc::new(prepared.morphisms)),
            src: prepared.src,
            tgt: prepared.tgt,
            identity,
            inverse,
            out,
            composition: Composition::Table(Arc::new(prepared.table)),
        })
    }

    /// Table-backed groupoid from index data already known to be valid.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjId, ObjId)>,
        compose: impl Fn(MorId, MorId) -> MorId,
    ) -> Self {
        let num_objects = objects.len();
        let src: Vec<ObjId> = morphisms.iter().map(|m| m.1).collect();
        let tgt: Vec<ObjId> = morphisms.iter().map(|m| m.2).collect();
        let mut out = vec![Vec::new(); num_objects];
        for (m, &s) in src.iter().enumerate() {
            out[s].push(m);
        }
        let mut table = HashMap::new();
        for f in 0..morphisms.len() {
            for &g in &out[tgt[f]] {
                table.insert((f, g), compose(f, g));
            }
        }
        let identity: Vec<MorId> = (0..num_objects)
            .map(|x| {
                out[x]
                    .iter()
                    .copied()
                    .find(|&m| tgt[m] == x && table[&(m, m)] == m)
                    .expect("identity exists")
            })
            .collect();
        let inverse = (0..morphisms.len())
            .map(|f| {
                out[tgt[f]]
                    .iter()
                    .copied()
                    .find(|&g| table[&(f, g)] == identity[src[f]])
                    .expect("inverse exists")
            })
            .collect();
        Self {
            objects: Names::Explicit(Arc::new(objects)),
            morphisms: Names::Explicit(Arc::new(morphisms.into_iter().map(|m| m.0).collect())),
            num_objects,
            src,
            tgt,
            identity,
            inverse,
            out,
            composition: Composition::Table(Arc::new(table)),
        }
    }

    /// Groupoid whose morphisms are families of factor morphisms.
    ///
    /// `morphisms[m] = (src, tgt, components)`; the set must be closed under
    /// componentwise composition and inversion, and contain the identities
    /// (the family of factor identities over each object).
    pub(crate) fn componentwise(
        num_objects: usize,
        factors: Vec<Arc<ConcreteGroupoid>>,
        morphisms: Vec<(ObjId, ObjId, Vec<MorId>)>,
    ) -> Self {
        let width = factors.len();
        let mut src = Vec::with_capacity(morphisms.len());
        let mut tgt = Vec::with_capacity(morphisms.len());
        let mut comps = Vec::with_capacity(morphisms.len() * width);
        let mut lookup = HashMap::with_capacity(morphisms.len());
        let mut out = vec![Vec::new(); num_objects];
        for (m, (s, t, c)) in morphisms.into_iter().enumerate() {
            debug_assert_eq!(c.len(), width);
            src.push(s);
            tgt.push(t);
            out[s].push(m);
            comps.extend_from_slice(&c);
            lookup.insert((s, c.into_boxed_slice()), m);
        }
        let n = src.len();
        let comp = |m: MorId| &comps[m * width..(m + 1) * width];
        let identity = (0..num_objects)
            .map(|x| {
                out[x]
                    .iter()
                    .copied()
                    .find(|&m| {
                        tgt[m] == x
                            && comp(m)
                                .iter()
                                .zip(&factors)
                                .all(|(&c, fac)| fac.identity(fac.src(c)) == c)
                    })
                    .expect("componentwise groupoid contains identities")
            })
            .collect();
        let inverse = (0..n)
            .map(|m| {
                let inv: Box<[MorId]> = comp(m).iter().zip(&factors).map(|(&c, fac)| fac.inverse(c)).collect();
                *lookup.get(&(tgt[m], inv)).expect("componentwise groupoid closed under inverses")
            })
            .collect();
        Self {
            objects: Names::Generated("o"),
            morphisms: Names::Generated("m"),
            num_objects,
            src,
            tgt,
            identity,
            inverse,
            out,
            composition: Composition::Componentwise(Arc::new(Componentwise { factors, comps, lookup })),
        }
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), |_, _| unreachable!())
    }

    /// The groupoid `1`: one object, one morphism.
    pub fn point() -> Self {
        Self::banal(1)
    }

    /// Simply connected groupoid on `n` objects (`2` is `banal(2)`).
    pub fn banal(n: usize) -> Self {
        Self::banal_group(n, &FiniteGroup::trivial())
    }

    /// One-object groupoid of a finite group.
    pub fn from_group(group: &FiniteGroup) -> Self {
        let names = (0..group.order()).map(|g| format!("g{g}")).collect();
        Self::from_named_group(group, names)
    }

    pub fn from_named_group(group: &FiniteGroup, names: Vec<String>) -> Self {
        let morphisms = names.into_iter().map(|n| (n, 0, 0)).collect();
        Self::from_parts(vec!["*".into()], morphisms, |a, b| group.mul(a, b))
    }

    /// Connected groupoid on `n` objects with every vertex group `group`:
    /// morphisms are triples `(u, v, g)`, composed by multiplying the labels.
    pub fn banal_group(n: usize, group: &FiniteGroup) -> Self {
        let k = group.order();
        let objects = (0..n).map(|u| format!("x{u}")).collect();
        let mut morphisms = Vec::with_capacity(n * n * k);
        for u in 0..n {
            for v in 0..n {
                for g in 0..k {
                    let name = if k == 1 { format!("x{u}>x{v}") } else { format!("x{u}>x{v}:g{g}") };
                    morphisms.push((name, u, v));
                }
            }
        }
        let idx = |u: usize, v: usize, g: usize| (u * n + v) * k + g;
        Self::from_parts(objects, morphisms, |f, h| {
            let (fu, fg) = (f / k / n, f % k);
            let (hv, hg) = ((h / k) % n, h % k);
            idx(fu, hv, group.mul(fg, hg))
        })
    }

    /// Disjoint union; object and morphism names are prefixed by the part index.
    pub fn disjoint_union(parts: &[&ConcreteGroupoid]) -> Self {
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        let mut obj_off = Vec::new();
        let mut mor_off = Vec::new();
        for (p, g) in parts.iter().enumerate() {
            obj_off.push(objects.len());
            mor_off.push(morphisms.len());
            for x in 0..g.num_objects() {
                objects.push(format!("{p}.{}", g.object_name(x)));
            }
            for m in 0..g.num_morphisms() {
                morphisms.push((format!("{p}.{}", g.morphism_name(m)), obj_off[p] + g.src(m), obj_off[p] + g.tgt(m)));
            }
        }
        let part_of = |m: MorId| mor_off.iter().rposition(|&o| o <= m).unwrap();
        Self::from_parts(objects, morphisms, |f, g| {
            let p = part_of(f);
            let off = mor_off[p];
            off + parts[p].compose(f - off, g - off).expect("composable")
        })
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn object_name(&self, x: ObjId) -> String {
        self.objects.get(x)
    }

    pub fn morphism_name(&self, m: MorId) -> String {
        self.morphisms.get(m)
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        (0..self.num_objects).find(|&x| self.object_name(x) == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        (0..self.num_morphisms()).find(|&m| self.morphism_name(m) == name)
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.src[m]
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.tgt[m]
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identity[x]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.src[m]] == m
    }

    pub fn inverse(&self, m: MorId) -> MorId {
        self.inverse[m]
    }

    /// `f` then `g`; `None` when not composable.
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        if self.tgt[f] != self.src[g] {
            return None;
        }
        match &self.composition {
            Composition::Table(t) => t.get(&(f, g)).copied(),
            Composition::Componentwise(cw) => {
                let w = cw.factors.len();
                let key: Box<[MorId]> = (0..w)
                    .map(|k| {
                        cw.factors[k]
                            .compose(cw.comps[f * w + k], cw.comps[g * w + k])
                            .expect("factor components compose")
                    })
                    .collect();
                cw.lookup.get(&(self.src[f], key)).copied()
            }
        }
    }

    /// `compose` for pairs known to be composable.
    pub fn then(&self, f: MorId, g: MorId) -> MorId {
        self.compose(f, g).expect("morphisms are composable")
    }

    /// Morphisms with source `x`, in id order.
    pub fn out(&self, x: ObjId) -> &[MorId] {
        &self.out[x]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.out[a].iter().copied().filter(|&m| self.tgt[m] == b).collect()
    }

    pub fn automorphisms(&self, x: ObjId) -> Vec<MorId> {
        self.hom(x, x)
    }

    /// Componentwise morphisms expose their factor components.
    pub fn components_of(&self, m: MorId) -> Option<&[MorId]> {
        match &self.composition {
            Composition::Componentwise(cw) => {
                let w = cw.factors.len();
                Some(&cw.comps[m * w..(m + 1) * w])
            }
            Composition::Table(_) => None,
        }
    }

    pub(crate) fn lookup_componentwise(&self, src: ObjId, comps: &[MorId]) -> Option<MorId> {
        match &self.composition {
            Composition::Componentwise(cw) => cw.lookup.get(&(src, comps.into())).copied(),
            Composition::Table(_) => None,
        }
    }

    /// Connected components: class index per object and the class count.
    pub fn connected_components(&self) -> (Vec<usize>, usize) {
        let mut ds = DisjointSet::new(self.num_objects);
        for m in 0..self.num_morphisms() {
            ds.union(self.src[m], self.tgt[m]);
        }
        ds.classes()
    }

    /// Least object of each connected component.
    pub fn component_representatives(&self) -> Vec<ObjId> {
        let (cls, n) = self.connected_components();
        let mut reps = vec![usize::MAX; n];
        for (x, &c) in cls.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    pub fn is_simply_connected(&self) -> bool {
        let (_, n) = self.connected_components();
        n <= 1 && (0..self.num_objects).all(|x| self.automorphisms(x).len() == 1)
    }

    /// Vertex group at `x`; element `i` is `automorphisms(x)[i]`.
    pub fn vertex_group(&self, x: ObjId) -> FiniteGroup {
        let autos = self.automorphisms(x);
        let index: HashMap<MorId, usize> = autos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let table = autos
            .iter()
            .map(|&a| autos.iter().map(|&b| index[&self.then(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(table).expect("vertex group of a groupoid is a group")
    }

    /// Exhaustive axiom check of the constructed value.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let name = |m: MorId| self.morphism_name(m);
        for f in 0..self.num_morphisms() {
            for &g in &self.out[self.tgt[f]] {
                match self.compose(f, g) {
                    None => violations.push(Violation::MissingComposite { f: name(f), g: name(g) }),
                    Some(h) if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] => {
                        violations.push(Violation::CompositeEndpoints { f: name(f), g: name(g), h: name(h) })
                    }
                    _ => {}
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for x in 0..self.num_objects {
            let e = self.identity[x];
            for &m in &self.out[x] {
                if self.then(e, m) != m || self.then(self.inverse[m], e) != self.inverse[m] {
                    violations.push(Violation::IdentityLaw { object: self.object_name(x), morphism: name(m) });
                }
            }
        }
        for f in 0..self.num_morphisms() {
            let g = self.inverse[f];
            if self.compose(f, g) != Some(self.identity[self.src[f]]) || self.compose(g, f) != Some(self.identity[self.tgt[f]]) {
                violations.push(Violation::NoInverse { morphism: name(f) });
            }
            for &g in &self.out[self.tgt[f]] {
                for &h in &self.out[self.tgt[g]] {
                    if self.then(self.then(f, g), h) != self.then(f, self.then(g, h)) {
                        violations.push(Violation::Associativity { f: name(f), g: name(g), h: name(h) });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Raw data with an explicit composition table.
    pub fn to_data(&self) -> GroupoidData {
        let objects: Vec<String> = (0..self.num_objects).map(|x| self.object_name(x)).collect();
        let morphisms = (0..self.num_morphisms())
            .map(|m| MorphismData {
                id: self.morphism_name(m),
                src: objects[self.src[m]].clone(),
                tgt: objects[self.tgt[m]].clone(),
            })
            .collect();
        let mut table = Vec::new();
        for f in 0..self.num_morphisms() {
            for &g in &self.out[self.tgt[f]] {
                table.push((self.morphism_name(f), self.morphism_name(g), self.morphism_name(self.then(f, g))));
            }
        }
        GroupoidData { objects, morphisms, table }
    }

    /// Cheap structural identity test used to match functor endpoints.
    pub fn same_shape(&self, other: &ConcreteGroupoid) -> bool {
        std::ptr::eq(self, other)
            || (self.num_objects == other.num_objects && self.src == other.src && self.tgt == other.tgt)
    }
}

/// Functor between concrete groupoids.
#[derive(Clone, Debug)]
pub struct ConcreteFunctor {
    pub domain: Arc<ConcreteGroupoid>,
    pub codomain: Arc<ConcreteGroupoid>,
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

impl ConcreteFunctor {
    /// Builds and exhaustively checks a functor.
    pub fn new(
        domain: Arc<ConcreteGroupoid>,
        codomain: Arc<ConcreteGroupoid>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self> {
        let f = Self {
            domain,
            codomain,
            object_map,
            morphism_map,
        };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        domain: Arc<ConcreteGroupoid>,
        codomain: Arc<ConcreteGroupoid>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Self {
        Self {
            domain,
            codomain,
            object_map,
            morphism_map,
        }
    }

    pub fn identity(g: Arc<ConcreteGroupoid>) -> Self {
        let object_map = (0..g.num_objects()).collect();
        let morphism_map = (0..g.num_morphisms()).collect();
        Self::new_unchecked(g.clone(), g, object_map, morphism_map)
    }

    /// Preservation of endpoints, identities and composition, checked exhaustively.
    pub fn check(&self) -> Result<()> {
        let (d, c) = (&self.domain, &self.codomain);
        if self.object_map.len() != d.num_objects() || self.morphism_map.len() != d.num_morphisms() {
            return Err(Error::InvalidFunctor("map sizes do not match the domain".into()));
        }
        if self.object_map.iter().any(|&y| y >= c.num_objects()) || self.morphism_map.iter().any(|&m| m >= c.num_morphisms()) {
            return Err(Error::InvalidFunctor("image outside the codomain".into()));
        }
        for m in 0..d.num_morphisms() {
            let fm = self.morphism_map[m];
            if c.src(fm) != self.object_map[d.src(m)] || c.tgt(fm) != self.object_map[d.tgt(m)] {
                return Err(Error::InvalidFunctor(format!("endpoints of `{}` not preserved", d.morphism_name(m))));
            }
        }
        for x in 0..d.num_objects() {
            if self.morphism_map[d.identity(x)] != c.identity(self.object_map[x]) {
                return Err(Error::InvalidFunctor(format!("identity at `{}` not preserved", d.object_name(x))));
            }
        }
        for f in 0..d.num_morphisms() {
            for &g in d.out(d.tgt(f)) {
                if self.morphism_map[d.then(f, g)] != c.then(self.morphism_map[f], self.morphism_map[g]) {
                    return Err(Error::InvalidFunctor(format!(
                        "composite of `{}` and `{}` not preserved",
                        d.morphism_name(f),
                        d.morphism_name(g)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self` then `next`.
    pub fn then(&self, next: &ConcreteFunctor) -> Result<ConcreteFunctor> {
        if !self.codomain.same_shape(&next.domain) {
            return Err(Error::ShapeMismatch("functors are not composable".into()));
        }
        Ok(Self::new_unchecked(
            self.domain.clone(),
            next.codomain.clone(),
            self.object_map.iter().map(|&x| next.object_map[x]).collect(),
            self.morphism_map.iter().map(|&m| next.morphism_map[m]).collect(),
        ))
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.codomain.num_objects()];
        self.object_map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn agrees_with(&self, other: &ConcreteFunctor) -> bool {
        self.object_map == other.object_map && self.morphism_map == other.morphism_map
    }

    /// Every hom-set maps bijectively. Returns the first failing pair.
    pub fn full_and_faithful_witness(&self) -> Option<(ObjId, ObjId)> {
        let (d, c) = (&self.domain, &self.codomain);
        for a in 0..d.num_objects() {
            for b in 0..d.num_objects() {
                let images: HashSet<MorId> = d.hom(a, b).into_iter().map(|m| self.morphism_map[m]).collect();
                let homs = d.hom(a, b).len();
                if images.len() != homs || homs != c.hom(self.object_map[a], self.object_map[b]).len() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_full_and_faithful(&self) -> bool {
        self.full_and_faithful_witness().is_none()
    }

    /// Every codomain object is isomorphic to an image object.
    pub fn is_essentially_surjective(&self) -> bool {
        let (cls, n) = self.codomain.connected_components();
        let mut hit = vec![false; n];
        for &y in &self.object_map {
            hit[cls[y]] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_essentially_surjective() && self.is_full_and_faithful()
    }
}

/// Natural isomorphism between two parallel functors.
#[derive(Clone, Debug)]
pub struct NatIso {
    pub source: ConcreteFunctor,
    pub target: ConcreteFunctor,
    /// Component at each object of the common domain.
    pub components: Vec<MorId>,
}

impl NatIso {
    pub fn new(source: ConcreteFunctor, target: ConcreteFunctor, components: Vec<MorId>) -> Result<Self> {
        let t = Self {
            source,
            target,
            components,
        };
        t.check()?;
        Ok(t)
    }

    pub fn identity(f: &ConcreteFunctor) -> Self {
        let components = f.object_map.iter().map(|&y| f.codomain.identity(y)).collect();
        Self {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    /// Endpoints of every component and every naturality square.
    pub fn check(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        if !f.domain.same_shape(&g.domain) || !f.codomain.same_shape(&g.codomain) {
            return Err(Error::ShapeMismatch("transformation between non-parallel functors".into()));
        }
        let (d, c) = (&f.domain, &f.codomain);
        if self.components.len() != d.num_objects() {
            return Err(Error::ShapeMismatch("one component per object required".into()));
        }
        for x in 0..d.num_objects() {
            let t = self.components[x];
            if t >= c.num_morphisms() || c.src(t) != f.object_map[x] || c.tgt(t) != g.object_map[x] {
                return Err(Error::InvalidFunctor(format!("component at `{}` has wrong endpoints", d.object_name(x))));
            }
        }
        for m in 0..d.num_morphisms() {
            let lhs = c.then(f.morphism_map[m], self.components[d.tgt(m)]);
            let rhs = c.then(self.components[d.src(m)], g.morphism_map[m]);
            if lhs != rhs {
                return Err(Error::InvalidFunctor(format!("naturality fails at `{}`", d.morphism_name(m))));
            }
        }
        Ok(())
    }

    /// Vertical composite: `self` then `next`.
    pub fn then(&self, next: &NatIso) -> Result<NatIso> {
        if !self.target.agrees_with(&next.source) {
            return Err(Error::ShapeMismatch("vertical composite of non-matching transformations".into()));
        }
        let c = &self.source.codomain;
        let components = self.components.iter().zip(&next.components).map(|(&a, &b)| c.then(a, b)).collect();
        Ok(NatIso {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }

    pub fn inverse(&self) -> NatIso {
        let c = &self.source.codomain;
        NatIso {
            source: self.target.clone(),
            target: self.source.clone(),
            components: self.components.iter().map(|&a| c.inverse(a)).collect(),
        }
    }

    /// `self ⋆ pre`: components `self(pre(a))`, a transformation `G1∘pre ⇒ G2∘pre`.
    pub fn whisker_before(&self, pre: &ConcreteFunctor) -> Result<NatIso> {
        Ok(NatIso {
            source: pre.then(&self.source)?,
            target: pre.then(&self.target)?,
            components: pre.object_map.iter().map(|&b| self.components[b]).collect(),
        })
    }

    /// `post ⋆ self`: components `post(self(b))`.
    pub fn whisker_after(&self, post: &ConcreteFunctor) -> Result<NatIso> {
        Ok(NatIso {
            source: self.source.then(post)?,
            target: self.target.then(post)?,
            components: self.components.iter().map(|&m| post.morphism_map[m]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        let c = &self.source.codomain;
        self.components.iter().all(|&m| c.is_identity(m))
    }

    pub fn agrees_with(&self, other: &NatIso) -> bool {
        self.components == other.components
            && self.source.agrees_with(&other.source)
            && self.target.agrees_with(&other.target)
    }
}
