//! JSON file formats. Every file may carry a `schema` tag such as
//! `costack/groupoid@1`; a tag that is present must match.

use crate::diagrams::{presented_diagram, ConcreteDiagram, FinitePoset, PresentedDiagram, Variance};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{ConcreteFunctor, ConcreteGroupoid, GroupoidData, MorphismData, NatIso};
use crate::presentation::{Edge, GenGraph, PresFunctor, PresentedGroupoid, Word};
use crate::space::{Complex2, Subcomplex};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const GROUPOID_SCHEMA: &str = "costack/groupoid@1";
pub const PRESENTATION_SCHEMA: &str = "costack/presentation@1";
pub const COMPLEX_SCHEMA: &str = "costack/complex@1";
pub const COVER_SCHEMA: &str = "costack/cover@1";
pub const DIAGRAM_SCHEMA: &str = "costack/diagram@1";
pub const SQUARE_SCHEMA: &str = "costack/square@1";
pub const REPORT_SCHEMA: &str = "costack/report@1";

pub const GENERATE_FROM_GROUP: &str = "generate-from-group";

fn check_schema(found: &Option<String>, expected: &str) -> Result<()> {
    match found {
        Some(s) if s != expected => Err(Error::Parse(format!("schema `{s}`, expected `{expected}`"))),
        _ => Ok(()),
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Error::Parse(format!("{}: {}", path.display(), strip_parse(e))))
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn from_value<T: DeserializeOwned>(v: serde_json::Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn strip_parse(e: Error) -> String {
    match e {
        Error::Parse(s) => s,
        other => other.to_string(),
    }
}

/// The `schema` tag of an arbitrary JSON document, if any.
pub fn schema_of(v: &serde_json::Value) -> Option<&str> {
    v.get("schema").and_then(|s| s.as_str())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableSpec {
    /// Triples `[f, g, h]`: `f` followed by `g` is `h`.
    Entries(Vec<[String; 3]>),
    Marker(String),
}

/// A finite group by its Cayley table over named elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    pub cayley: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidFile {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<ArrowRecord>,
    pub table: TableSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
}

impl GroupoidFile {
    pub fn from_groupoid(g: &ConcreteGroupoid) -> Self {
        let data = g.to_data();
        Self {
            schema: Some(GROUPOID_SCHEMA.into()),
            objects: data.objects,
            morphisms: data
                .morphisms
                .into_iter()
                .map(|m| ArrowRecord {
                    id: m.id,
                    src: m.src,
                    tgt: m.tgt,
                })
                .collect(),
            table: TableSpec::Entries(data.table.into_iter().map(|(f, g, h)| [f, g, h]).collect()),
            group: None,
        }
    }

    /// The unchecked data, expanding a group marker into a full table.
    pub fn data(&self) -> Result<GroupoidData> {
        check_schema(&self.schema, GROUPOID_SCHEMA)?;
        match &self.table {
            TableSpec::Entries(entries) => Ok(GroupoidData {
                objects: self.objects.clone(),
                morphisms: self
                    .morphisms
                    .iter()
                    .map(|m| MorphismData {
                        id: m.id.clone(),
                        src: m.src.clone(),
                        tgt: m.tgt.clone(),
                    })
                    .collect(),
                table: entries.iter().map(|[f, g, h]| (f.clone(), g.clone(), h.clone())).collect(),
            }),
            TableSpec::Marker(m) if m == GENERATE_FROM_GROUP => self.group_data(),
            TableSpec::Marker(m) => Err(Error::Parse(format!("unknown table marker `{m}`"))),
        }
    }

    fn group_data(&self) -> Result<GroupoidData> {
        let spec = self
            .group
            .as_ref()
            .ok_or_else(|| Error::Parse("`generate-from-group` needs a `group` field".into()))?;
        let object = match self.objects.as_slice() {
            [] => "*".to_string(),
            [o] => o.clone(),
            _ => return Err(Error::Parse("a group gives a one-object groupoid".into())),
        };
        if !self.morphisms.is_empty() {
            return Err(Error::Parse("morphisms are generated from the group".into()));
        }
        let index: HashMap<&str, usize> = spec.elements.iter().enumerate().map(|(k, e)| (e.as_str(), k)).collect();
        let n = spec.elements.len();
        if index.len() != n || spec.cayley.len() != n || spec.cayley.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("Cayley table must be square over distinct elements".into()));
        }
        let table = spec
            .cayley
            .iter()
            .map(|row| row.iter().map(|e| index.get(e.as_str()).copied().ok_or_else(|| Error::UnknownId(e.clone()))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let group = FiniteGroup::from_table(table).ok_or_else(|| Error::InvalidGroupoid("Cayley table is not a group".into()))?;
        let name = |k: usize| spec.elements[k].clone();
        Ok(GroupoidData {
            objects: vec![object.clone()],
            morphisms: (0..n)
                .map(|k| MorphismData {
                    id: name(k),
                    src: object.clone(),
                    tgt: object.clone(),
                })
                .collect(),
            table: (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| (name(a), name(b), name(group.mul(a, b))))
                .collect(),
        })
    }

    pub fn build(&self) -> Result<ConcreteGroupoid> {
        ConcreteGroupoid::new(&self.data()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelationRecord {
    Pair([Vec<String>; 2]),
    /// Needed only when both sides are empty.
    Based { lhs: Vec<String>, rhs: Vec<String>, base: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<ArrowRecord>,
    #[serde(default)]
    pub relations: Vec<RelationRecord>,
}

fn graph_from_records(vertices: &[String], edges: &[ArrowRecord]) -> Result<GenGraph> {
    let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
    let lookup = |v: &str| index.get(v).copied().ok_or_else(|| Error::UnknownId(v.to_string()));
    let edges = edges
        .iter()
        .map(|e| {
            Ok(Edge {
                id: e.id.clone(),
                src: lookup(&e.src)?,
                tgt: lookup(&e.tgt)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GenGraph::new(vertices.to_vec(), edges)
}

fn edge_records(graph: &GenGraph) -> Vec<ArrowRecord> {
    graph
        .edges
        .iter()
        .map(|e| ArrowRecord {
            id: e.id.clone(),
            src: graph.vertices[e.src].clone(),
            tgt: graph.vertices[e.tgt].clone(),
        })
        .collect()
}

impl PresentationFile {
    pub fn from_presented(p: &PresentedGroupoid) -> Self {
        let relations = p
            .relations
            .iter()
            .map(|(l, r)| {
                let (lhs, rhs) = (l.render(&p.graph), r.render(&p.graph));
                if lhs.is_empty() && rhs.is_empty() {
                    RelationRecord::Based {
                        lhs,
                        rhs,
                        base: p.graph.vertices[l.base].clone(),
                    }
                } else {
                    RelationRecord::Pair([lhs, rhs])
                }
            })
            .collect();
        Self {
            schema: Some(PRESENTATION_SCHEMA.into()),
            vertices: p.graph.vertices.clone(),
            edges: edge_records(&p.graph),
            relations,
        }
    }

    pub fn build(&self) -> Result<PresentedGroupoid> {
        check_schema(&self.schema, PRESENTATION_SCHEMA)?;
        let graph = graph_from_records(&self.vertices, &self.edges)?;
        let relations = self
            .relations
            .iter()
            .map(|r| match r {
                RelationRecord::Pair([l, r]) => {
                    if l.is_empty() {
                        let rw = graph.parse_word(r, None)?;
                        Ok((graph.parse_word(l, Some(rw.base))?, rw))
                    } else {
                        let lw = graph.parse_word(l, None)?;
                        let rw = graph.parse_word(r, Some(lw.base))?;
                        Ok((lw, rw))
                    }
                }
                RelationRecord::Based { lhs, rhs, base } => {
                    let b = graph.vertex_index(base).ok_or_else(|| Error::UnknownId(base.clone()))?;
                    Ok((graph.parse_word(lhs, Some(b))?, graph.parse_word(rhs, Some(b))?))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PresentedGroupoid::new(graph, relations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellRecord {
    pub id: String,
    pub boundary: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<ArrowRecord>,
    #[serde(default)]
    pub cells: Vec<CellRecord>,
}

impl ComplexFile {
    pub fn from_complex(c: &Complex2) -> Self {
        Self {
            schema: Some(COMPLEX_SCHEMA.into()),
            vertices: c.graph.vertices.clone(),
            edges: edge_records(&c.graph),
            cells: c
                .cells
                .iter()
                .map(|cell| CellRecord {
                    id: cell.id.clone(),
                    boundary: cell.boundary.render(&c.graph),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<Complex2> {
        check_schema(&self.schema, COMPLEX_SCHEMA)?;
        let graph = graph_from_records(&self.vertices, &self.edges)?;
        let cells = self.cells.iter().map(|c| (c.id.clone(), c.boundary.clone())).collect();
        Complex2::new(graph.vertices, graph.edges, cells)
    }
}

/// Cover members as lists of element ids; each member is closed up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub members: Vec<Vec<String>>,
}

impl CoverFile {
    pub fn from_cover(cover: &[Subcomplex]) -> Self {
        Self {
            schema: Some(COVER_SCHEMA.into()),
            members: cover.iter().map(|m| m.element_names()).collect(),
        }
    }

    pub fn build(&self, parent: &Arc<Complex2>) -> Result<Vec<Subcomplex>> {
        check_schema(&self.schema, COVER_SCHEMA)?;
        self.members.iter().map(|ids| Subcomplex::from_ids(parent.clone(), ids)).collect()
    }
}

/// A functor by names. Concrete functors use `objects`/`morphisms`,
/// presented ones `vertices`/`edges` (edges map to letter lists).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorRecord {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertices: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edges: BTreeMap<String, Vec<String>>,
}

fn mapped<'a>(map: &'a BTreeMap<String, String>, key: &str, what: &str) -> Result<&'a str> {
    map.get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| Error::InvalidFunctor(format!("{what} `{key}` is not mapped")))
}

impl FunctorRecord {
    pub fn from_concrete(f: &ConcreteFunctor) -> Self {
        let (d, c) = (&f.domain, &f.codomain);
        Self {
            objects: (0..d.num_objects()).map(|x| (d.object_name(x), c.object_name(f.object_map[x]))).collect(),
            morphisms: (0..d.num_morphisms()).map(|m| (d.morphism_name(m), c.morphism_name(f.morphism_map[m]))).collect(),
            ..Self::default()
        }
    }

    pub fn from_presented(f: &PresFunctor) -> Self {
        let (d, c) = (&f.domain.graph, &f.codomain.graph);
        Self {
            vertices: d.vertices.iter().zip(&f.vertex_map).map(|(v, &y)| (v.clone(), c.vertices[y].clone())).collect(),
            edges: d.edges.iter().zip(&f.edge_map).map(|(e, w)| (e.id.clone(), w.render(c))).collect(),
            ..Self::default()
        }
    }

    pub fn concrete(&self, domain: Arc<ConcreteGroupoid>, codomain: Arc<ConcreteGroupoid>) -> Result<ConcreteFunctor> {
        let object_map = (0..domain.num_objects())
            .map(|x| {
                let y = mapped(&self.objects, &domain.object_name(x), "object")?;
                codomain.object_by_name(y).ok_or_else(|| Error::UnknownId(y.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let morphism_map = (0..domain.num_morphisms())
            .map(|m| {
                let y = mapped(&self.morphisms, &domain.morphism_name(m), "morphism")?;
                codomain.morphism_by_name(y).ok_or_else(|| Error::UnknownId(y.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        ConcreteFunctor::new(domain, codomain, object_map, morphism_map)
    }

    pub fn presented(&self, domain: Arc<PresentedGroupoid>, codomain: Arc<PresentedGroupoid>) -> Result<PresFunctor> {
        let (d, c) = (&domain.graph, &codomain.graph);
        let vertex_map = d
            .vertices
            .iter()
            .map(|v| {
                let y = mapped(&self.vertices, v, "vertex")?;
                c.vertex_index(y).ok_or_else(|| Error::UnknownId(y.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let edge_map = d
            .edges
            .iter()
            .map(|e| {
                let letters = self
                    .edges
                    .get(&e.id)
                    .ok_or_else(|| Error::InvalidFunctor(format!("edge `{}` is not mapped", e.id)))?;
                c.parse_word(letters, Some(vertex_map[e.src]))
            })
            .collect::<Result<Vec<Word>>>()?;
        PresFunctor::new(domain, codomain, vertex_map, edge_map)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    Concrete,
    Presented,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetRecord {
    pub elements: Vec<String>,
    /// `[a, b]` with `a < b`; the order is their transitive closure.
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
}

impl PosetRecord {
    pub fn build(&self) -> Result<FinitePoset> {
        let index: HashMap<&str, usize> = self.elements.iter().enumerate().map(|(k, e)| (e.as_str(), k)).collect();
        let lookup = |e: &str| index.get(e).copied().ok_or_else(|| Error::UnknownId(e.to_string()));
        let covers = self
            .covers
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        FinitePoset::from_covers(self.elements.clone(), &covers)
    }

    pub fn from_poset(p: &FinitePoset) -> Self {
        let names = p.elements();
        Self {
            elements: names.to_vec(),
            covers: p.covers().into_iter().map(|(a, b)| [names[a].clone(), names[b].clone()]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRecord {
    pub lower: String,
    pub upper: String,
    #[serde(flatten)]
    pub functor: FunctorRecord,
}

/// Values are inline groupoid/presentation documents or `{"file": path}`,
/// resolved relative to the diagram file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub kind: DiagramKind,
    pub variance: Variance,
    pub poset: PosetRecord,
    pub values: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub transitions: Vec<TransitionRecord>,
}

#[derive(Clone, Debug)]
pub enum LoadedDiagram {
    Concrete(ConcreteDiagram),
    Presented(PresentedDiagram),
}

impl LoadedDiagram {
    pub fn presented(&self) -> Result<PresentedDiagram> {
        match self {
            LoadedDiagram::Concrete(d) => presented_diagram(d),
            LoadedDiagram::Presented(d) => Ok(d.clone()),
        }
    }

    pub fn concrete(&self) -> Result<&ConcreteDiagram> {
        match self {
            LoadedDiagram::Concrete(d) => Ok(d),
            LoadedDiagram::Presented(_) => Err(Error::InvalidDiagram("a concrete diagram is required".into())),
        }
    }
}

fn resolve(v: &serde_json::Value, base: Option<&Path>) -> Result<serde_json::Value> {
    match v.get("file").and_then(|f| f.as_str()) {
        Some(f) if v.as_object().is_some_and(|o| o.len() == 1) => {
            let path: PathBuf = base.map(|b| b.join(f)).unwrap_or_else(|| PathBuf::from(f));
            read_json(&path)
        }
        _ => Ok(v.clone()),
    }
}

impl DiagramFile {
    pub fn from_concrete(d: &ConcreteDiagram) -> Self {
        Self::from_parts(d.poset.clone(), d.variance, DiagramKind::Concrete, |i| {
            serde_json::to_value(GroupoidFile::from_groupoid(&d.values[i])).expect("serializable")
        }, d.transitions().map(|(&p, f)| (p, FunctorRecord::from_concrete(f))).collect())
    }

    pub fn from_presented(d: &PresentedDiagram) -> Self {
        Self::from_parts(d.poset.clone(), d.variance, DiagramKind::Presented, |i| {
            serde_json::to_value(PresentationFile::from_presented(&d.values[i])).expect("serializable")
        }, d.transitions().map(|(&p, f)| (p, FunctorRecord::from_presented(f))).collect())
    }

    fn from_parts(
        poset: FinitePoset,
        variance: Variance,
        kind: DiagramKind,
        value: impl Fn(usize) -> serde_json::Value,
        transitions: Vec<((usize, usize), FunctorRecord)>,
    ) -> Self {
        let covers = poset.covers();
        let names = poset.elements().to_vec();
        Self {
            schema: Some(DIAGRAM_SCHEMA.into()),
            kind,
            variance,
            poset: PosetRecord::from_poset(&poset),
            values: (0..names.len()).map(|i| (names[i].clone(), value(i))).collect(),
            transitions: transitions
                .into_iter()
                .filter(|(p, _)| covers.contains(p))
                .map(|((a, b), functor)| TransitionRecord {
                    lower: names[a].clone(),
                    upper: names[b].clone(),
                    functor,
                })
                .collect(),
        }
    }

    /// `base` is the directory that `{"file": ...}` values are relative to.
    pub fn build(&self, base: Option<&Path>) -> Result<LoadedDiagram> {
        check_schema(&self.schema, DIAGRAM_SCHEMA)?;
        let poset = self.poset.build()?;
        let raw = poset
            .elements()
            .iter()
            .map(|e| {
                let v = self.values.get(e).ok_or_else(|| Error::InvalidDiagram(format!("no value for `{e}`")))?;
                resolve(v, base)
            })
            .collect::<Result<Vec<_>>>()?;
        if self.values.len() != poset.len() {
            return Err(Error::InvalidDiagram("values for unknown elements".into()));
        }
        let pair = |t: &TransitionRecord| -> Result<(usize, usize)> {
            let i = poset.index(&t.lower).ok_or_else(|| Error::UnknownId(t.lower.clone()))?;
            let j = poset.index(&t.upper).ok_or_else(|| Error::UnknownId(t.upper.clone()))?;
            if !poset.lt(i, j) {
                return Err(Error::InvalidDiagram(format!("`{}` is not below `{}`", t.lower, t.upper)));
            }
            Ok((i, j))
        };
        // (source, target) of the transition on i < j
        let ends = |(i, j): (usize, usize)| match self.variance {
            Variance::Covariant => (i, j),
            Variance::Contravariant => (j, i),
        };
        match self.kind {
            DiagramKind::Concrete => {
                let values = raw
                    .into_iter()
                    .map(|v| Ok(Arc::new(from_value::<GroupoidFile>(v, "diagram value")?.build()?)))
                    .collect::<Result<Vec<_>>>()?;
                let mut transitions = BTreeMap::new();
                for t in &self.transitions {
                    let p = pair(t)?;
                    let (s, u) = ends(p);
                    transitions.insert(p, t.functor.concrete(values[s].clone(), values[u].clone())?);
                }
                Ok(LoadedDiagram::Concrete(ConcreteDiagram::from_covers(poset, self.variance, values, transitions)?))
            }
            DiagramKind::Presented => {
                let values = raw
                    .into_iter()
                    .map(|v| Ok(Arc::new(from_value::<PresentationFile>(v, "diagram value")?.build()?)))
                    .collect::<Result<Vec<_>>>()?;
                let mut transitions = BTreeMap::new();
                for t in &self.transitions {
                    let p = pair(t)?;
                    let (s, u) = ends(p);
                    transitions.insert(p, t.functor.presented(values[s].clone(), values[u].clone())?);
                }
                Ok(LoadedDiagram::Presented(PresentedDiagram::from_covers(poset, self.variance, values, transitions)?))
            }
        }
    }
}

/// Input to the deformation: `i1 : a -> b`, `i2 : a -> c`, `j1 : b -> d`,
/// `j2 : c -> d` and `lambda : j1∘i1 => j2∘i2` by components at objects of `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub a: serde_json::Value,
    pub b: serde_json::Value,
    pub c: serde_json::Value,
    pub d: serde_json::Value,
    pub i1: FunctorRecord,
    pub i2: FunctorRecord,
    pub j1: FunctorRecord,
    pub j2: FunctorRecord,
    pub lambda: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct Square {
    pub i1: ConcreteFunctor,
    pub i2: ConcreteFunctor,
    pub j1: ConcreteFunctor,
    pub j2: ConcreteFunctor,
    pub lambda: NatIso,
}

impl SquareFile {
    pub fn build(&self, base: Option<&Path>) -> Result<Square> {
        check_schema(&self.schema, SQUARE_SCHEMA)?;
        let load = |v: &serde_json::Value| -> Result<Arc<ConcreteGroupoid>> {
            Ok(Arc::new(from_value::<GroupoidFile>(resolve(v, base)?, "square corner")?.build()?))
        };
        let (a, b, c, d) = (load(&self.a)?, load(&self.b)?, load(&self.c)?, load(&self.d)?);
        let i1 = self.i1.concrete(a.clone(), b.clone())?;
        let i2 = self.i2.concrete(a.clone(), c.clone())?;
        let j1 = self.j1.concrete(b, d.clone())?;
        let j2 = self.j2.concrete(c, d.clone())?;
        let components = (0..a.num_objects())
            .map(|x| {
                let m = mapped(&self.lambda, &a.object_name(x), "object")?;
                d.morphism_by_name(m).ok_or_else(|| Error::UnknownId(m.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let lambda = NatIso::new(i1.then(&j1)?, i2.then(&j2)?, components)?;
        Ok(Square { i1, i2, j1, j2, lambda })
    }

    pub fn from_square(s: &Square) -> Self {
        let g = |x: &ConcreteGroupoid| serde_json::to_value(GroupoidFile::from_groupoid(x)).expect("serializable");
        let a = &s.i1.domain;
        let d = &s.j1.codomain;
        Self {
            schema: Some(SQUARE_SCHEMA.into()),
            a: g(a),
            b: g(&s.i1.codomain),
            c: g(&s.i2.codomain),
            d: g(d),
            i1: FunctorRecord::from_concrete(&s.i1),
            i2: FunctorRecord::from_concrete(&s.i2),
            j1: FunctorRecord::from_concrete(&s.j1),
            j2: FunctorRecord::from_concrete(&s.j2),
            lambda: (0..a.num_objects())
                .map(|x| (a.object_name(x), d.morphism_name(s.lambda.components[x])))
                .collect(),
        }
    }
}

/// Components of a natural isomorphism, by name.
pub fn nat_iso_record(t: &NatIso) -> BTreeMap<String, String> {
    let (a, d) = (&t.source.domain, &t.source.codomain);
    (0..a.num_objects()).map(|x| (a.object_name(x), d.morphism_name(t.components[x]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::build_nerve;

    #[test]
    fn group_marker_expands() {
        let text = r#"{
            "schema": "costack/groupoid@1",
            "table": "generate-from-group",
            "group": {"elements": ["e", "a"], "cayley": [["e", "a"], ["a", "e"]]}
        }"#;
        let g = parse_json::<GroupoidFile>(text).unwrap().build().unwrap();
        assert_eq!((g.num_objects(), g.num_morphisms()), (1, 2));
        assert_eq!(g.object_name(0), "*");
    }

    #[test]
    fn wrong_schema_is_rejected() {
        let text = r#"{"schema": "costack/complex@1", "objects": ["x"], "table": []}"#;
        assert!(matches!(parse_json::<GroupoidFile>(text).unwrap().build(), Err(Error::Parse(_))));
    }

    #[test]
    fn groupoid_round_trip() {
        let g = ConcreteGroupoid::banal_group(2, &FiniteGroup::cyclic(3));
        let file = GroupoidFile::from_groupoid(&g);
        let text = serde_json::to_string(&file).unwrap();
        let back = parse_json::<GroupoidFile>(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.build().unwrap().to_data(), g.to_data());
    }

    #[test]
    fn presentation_round_trip_keeps_empty_relations() {
        let text = r#"{
            "vertices": ["x", "y"],
            "edges": [{"id": "a", "src": "x", "tgt": "y"}, {"id": "b", "src": "x", "tgt": "y"}],
            "relations": [[["a+", "b-"], []], {"lhs": [], "rhs": [], "base": "y"}]
        }"#;
        let p = parse_json::<PresentationFile>(text).unwrap().build().unwrap();
        assert_eq!(p.relations.len(), 2);
        let again = PresentationFile::from_presented(&p).build().unwrap();
        assert_eq!(again.relations, p.relations);
        assert_eq!(again.graph, p.graph);
    }

    #[test]
    fn complex_and_cover_round_trip() {
        let c = Arc::new(Complex2::torus());
        let file = ComplexFile::from_complex(&c);
        let back = Arc::new(file.build().unwrap());
        assert_eq!(back.graph, c.graph);
        let cover = vec![Subcomplex::full(back.clone())];
        let members = CoverFile::from_cover(&cover).build(&back).unwrap();
        assert_eq!(members, cover);
    }

    #[test]
    fn presented_diagram_round_trip() {
        let c = Arc::new(Complex2::cycle(6));
        let cover = ["e0 e1 e2", "e3 e4 e5"].map(|s| Subcomplex::from_ids(c.clone(), &s.split(' ').collect::<Vec<_>>()).unwrap());
        let nerve = build_nerve(&cover).unwrap();
        let file = DiagramFile::from_presented(&nerve.diagram);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let back = parse_json::<DiagramFile>(&text).unwrap().build(None).unwrap().presented().unwrap();
        assert_eq!(back.poset, nerve.diagram.poset);
        for (k, v) in back.values.iter().enumerate() {
            assert_eq!(v.graph, nerve.diagram.values[k].graph);
        }
        for ((p, f), (q, g)) in back.transitions().zip(nerve.diagram.transitions()) {
            assert_eq!(p, q);
            assert!(f.agrees_with(g));
        }
    }

    #[test]
    fn missing_functor_entry_is_reported() {
        let text = r#"{
            "kind": "concrete", "variance": "covariant",
            "poset": {"elements": ["p", "q"], "covers": [["p", "q"]]},
            "values": {
                "p": {"objects": ["x"], "morphisms": [{"id": "1", "src": "x", "tgt": "x"}], "table": [["1", "1", "1"]]},
                "q": {"objects": ["y"], "morphisms": [{"id": "1", "src": "y", "tgt": "y"}], "table": [["1", "1", "1"]]}
            },
            "transitions": [{"lower": "p", "upper": "q", "objects": {"x": "y"}}]
        }"#;
        let r = parse_json::<DiagramFile>(text).unwrap().build(None);
        assert!(matches!(r, Err(Error::InvalidFunctor(_))));
    }

    #[test]
    fn parse_errors_carry_locations() {
        let err = parse_json::<ComplexFile>("{\n  \"vertices\": [1]\n}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
