//! Combinatorial 2-complexes standing in for spaces, subcomplexes standing
//! in for open sets, and nerves of covers.

use crate::diagrams::{FinitePoset, PresentedDiagram, Variance};
use crate::error::{Error, Result};
use crate::presentation::{
    collapse_component, component_vertex_lists, enumerate_group, simplify, Edge, GenGraph, Letter, PresFunctor,
    PresentedGroupoid, Word, DEFAULT_BUDGET,
};
use crate::util::DisjointSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    /// Closed, nonempty boundary word.
    pub boundary: Word,
}

/// Vertices, directed edges and polygonal 2-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex2 {
    pub graph: GenGraph,
    pub cells: Vec<Cell>,
}

impl Complex2 {
    /// Builds a complex; cell boundaries are letter lists like `["a+", "b-"]`.
    pub fn new<S: AsRef<str>>(vertices: Vec<String>, edges: Vec<Edge>, cells: Vec<(String, Vec<S>)>) -> Result<Self> {
        let mut ids = std::collections::HashSet::new();
        for id in vertices.iter().chain(edges.iter().map(|e| &e.id)).chain(cells.iter().map(|c| &c.0)) {
            if !ids.insert(id.as_str()) {
                return Err(Error::InvalidComplex(format!("duplicate id `{id}`")));
            }
        }
        let graph = GenGraph::new(vertices, edges)?;
        let cells = cells
            .into_iter()
            .map(|(id, letters)| {
                if letters.is_empty() {
                    return Err(Error::InvalidComplex(format!("cell `{id}` has an empty boundary")));
                }
                let boundary = graph.parse_word(&letters, None)?;
                if boundary.target(&graph) != boundary.source() {
                    return Err(Error::InvalidComplex(format!("boundary of `{id}` is not closed")));
                }
                Ok(Cell { id, boundary })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { graph, cells })
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.edges.len()
    }

    /// Cycle `v0 -> v1 -> ... -> v(n-1) -> v0` with edges `e0..`.
    pub fn cycle(n: usize) -> Self {
        let vertices = (0..n).map(|i| format!("v{i}")).collect();
        let edges = (0..n)
            .map(|i| Edge {
                id: format!("e{i}"),
                src: i,
                tgt: (i + 1) % n,
            })
            .collect();
        Self::new::<&str>(vertices, edges, vec![]).unwrap()
    }

    /// The `n`-cycle with one cell filling it.
    pub fn disk(n: usize) -> Self {
        let mut c = Self::cycle(n);
        let letters: Vec<String> = (0..n).map(|i| format!("e{i}+")).collect();
        c.cells.push(Cell {
            id: "D".into(),
            boundary: c.graph.parse_word(&letters, None).unwrap(),
        });
        c
    }

    /// Boundary of a tetrahedron: 4 vertices, 6 edges, 4 triangles.
    pub fn tetrahedron_boundary() -> Self {
        let vertices: Vec<String> = (0..4).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push(Edge {
                    id: format!("e{i}{j}"),
                    src: i,
                    tgt: j,
                });
            }
        }
        let cells = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
            .iter()
            .map(|&(i, j, k)| (format!("f{i}{j}{k}"), vec![format!("e{i}{j}+"), format!("e{j}{k}+"), format!("e{i}{k}-")]))
            .collect();
        Self::new(vertices, edges, cells).unwrap()
    }

    /// One vertex, loops `a`, `b`, one cell `a b a⁻¹ b⁻¹`.
    pub fn torus() -> Self {
        let e = |id: &str| Edge { id: id.into(), src: 0, tgt: 0 };
        Self::new(vec!["v".into()], vec![e("a"), e("b")], vec![("T".into(), vec!["a+", "b+", "a-", "b-"])]).unwrap()
    }

    /// Square grid on the torus with `n × m` vertices and one square per cell.
    pub fn torus_grid(n: usize, m: usize) -> Self {
        let v = |i: usize, j: usize| (i % n) * m + (j % m);
        let vertices = (0..n * m).map(|k| format!("v{}_{}", k / m, k % m)).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..m {
                edges.push(Edge { id: format!("h{i}_{j}"), src: v(i, j), tgt: v(i + 1, j) });
                edges.push(Edge { id: format!("w{i}_{j}"), src: v(i, j), tgt: v(i, j + 1) });
            }
        }
        let mut cells = Vec::new();
        for i in 0..n {
            for j in 0..m {
                cells.push((
                    format!("s{i}_{j}"),
                    vec![
                        format!("h{i}_{j}+"),
                        format!("w{}_{j}+", (i + 1) % n),
                        format!("h{i}_{}-", (j + 1) % m),
                        format!("w{i}_{j}-"),
                    ],
                ));
            }
        }
        Self::new(vertices, edges, cells).unwrap()
    }

    /// Two triangles sharing the vertex `v0`.
    pub fn wedge_of_circles() -> Self {
        let e = |id: &str, s, t| Edge { id: id.into(), src: s, tgt: t };
        let vertices = ["v0", "v1", "v2", "v3", "v4"].iter().map(|s| s.to_string()).collect();
        let edges = vec![e("a0", 0, 1), e("a1", 1, 2), e("a2", 2, 0), e("b0", 0, 3), e("b1", 3, 4), e("b2", 4, 0)];
        Self::new::<&str>(vertices, edges, vec![]).unwrap()
    }

    /// Looks up a vertex, edge or cell by id.
    pub fn element(&self, id: &str) -> Option<Element> {
        if let Some(v) = self.graph.vertex_index(id) {
            return Some(Element::Vertex(v));
        }
        if let Some(e) = self.graph.edge_index(id) {
            return Some(Element::Edge(e));
        }
        self.cells.iter().position(|c| c.id == id).map(Element::Cell)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
    Cell(usize),
}

/// A subcomplex, closed under incidence.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    parent: Arc<Complex2>,
    vertices: Vec<bool>,
    edges: Vec<bool>,
    cells: Vec<bool>,
}

impl PartialEq for Subcomplex {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.vertices == other.vertices && self.edges == other.edges && self.cells == other.cells
    }
}

impl Eq for Subcomplex {}

impl Subcomplex {
    /// The smallest subcomplex containing the given elements.
    pub fn closure(parent: Arc<Complex2>, elements: &[Element]) -> Self {
        let mut s = Self::empty(parent);
        for &el in elements {
            match el {
                Element::Vertex(v) => s.vertices[v] = true,
                Element::Edge(e) => s.edges[e] = true,
                Element::Cell(c) => s.cells[c] = true,
            }
        }
        s.close();
        s
    }

    pub fn from_ids<S: AsRef<str>>(parent: Arc<Complex2>, ids: &[S]) -> Result<Self> {
        let elements = ids
            .iter()
            .map(|id| parent.element(id.as_ref()).ok_or_else(|| Error::UnknownId(id.as_ref().to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::closure(parent, &elements))
    }

    fn close(&mut self) {
        let p = self.parent.clone();
        for (c, cell) in p.cells.iter().enumerate() {
            if self.cells[c] {
                for l in &cell.boundary.letters {
                    self.edges[l.edge] = true;
                }
            }
        }
        for (e, edge) in p.graph.edges.iter().enumerate() {
            if self.edges[e] {
                self.vertices[edge.src] = true;
                self.vertices[edge.tgt] = true;
            }
        }
    }

    pub fn full(parent: Arc<Complex2>) -> Self {
        let (v, e, c) = (parent.num_vertices(), parent.num_edges(), parent.cells.len());
        Self {
            parent,
            vertices: vec![true; v],
            edges: vec![true; e],
            cells: vec![true; c],
        }
    }

    pub fn empty(parent: Arc<Complex2>) -> Self {
        let (v, e, c) = (parent.num_vertices(), parent.num_edges(), parent.cells.len());
        Self {
            parent,
            vertices: vec![false; v],
            edges: vec![false; e],
            cells: vec![false; c],
        }
    }

    pub fn parent(&self) -> &Arc<Complex2> {
        &self.parent
    }

    fn same_parent(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent
    }

    pub fn is_empty(&self) -> bool {
        !self.vertices.iter().any(|&v| v)
    }

    pub fn vertex_ids(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v]).collect()
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e]).collect()
    }

    pub fn cell_ids(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| self.cells[c]).collect()
    }

    /// All element names, vertices then edges then cells.
    pub fn element_names(&self) -> Vec<String> {
        let p = &self.parent;
        let mut out: Vec<String> = self.vertex_ids().into_iter().map(|v| p.graph.vertices[v].clone()).collect();
        out.extend(self.edge_ids().into_iter().map(|e| p.graph.edges[e].id.clone()));
        out.extend(self.cell_ids().into_iter().map(|c| p.cells[c].id.clone()));
        out
    }

    fn zip_with(&self, other: &Self, op: fn(bool, bool) -> bool) -> Result<Self> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let z = |a: &[bool], b: &[bool]| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect();
        Ok(Self {
            parent: self.parent.clone(),
            vertices: z(&self.vertices, &other.vertices),
            edges: z(&self.edges, &other.edges),
            cells: z(&self.cells, &other.cells),
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        let le = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
        self.same_parent(other) && le(&self.vertices, &other.vertices) && le(&self.edges, &other.edges) && le(&self.cells, &other.cells)
    }

    /// Connected components of the 1-skeleton, named by least vertex.
    pub fn pi0(&self) -> Pi0 {
        let verts = self.vertex_ids();
        let local: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut ds = DisjointSet::new(verts.len());
        for e in self.edge_ids() {
            let edge = &self.parent.graph.edges[e];
            ds.union(local[&edge.src], local[&edge.tgt]);
        }
        let (cls, n) = ds.classes();
        let mut names = vec![String::new(); n];
        for (i, &v) in verts.iter().enumerate().rev() {
            names[cls[i]] = self.parent.graph.vertices[v].clone();
        }
        let mut of_vertex = vec![None; self.vertices.len()];
        for (i, &v) in verts.iter().enumerate() {
            of_vertex[v] = Some(cls[i]);
        }
        Pi0 { components: names, of_vertex }
    }

    /// One subcomplex per connected component, in `pi0` order.
    pub fn components(&self) -> Vec<Subcomplex> {
        let pi0 = self.pi0();
        let mut out = vec![Subcomplex::empty(self.parent.clone()); pi0.len()];
        for v in self.vertex_ids() {
            out[pi0.of_vertex[v].unwrap()].vertices[v] = true;
        }
        for e in self.edge_ids() {
            let c = pi0.of_vertex[self.parent.graph.edges[e].src].unwrap();
            out[c].edges[e] = true;
        }
        for c in self.cell_ids() {
            let k = pi0.of_vertex[self.parent.cells[c].boundary.base].unwrap();
            out[k].cells[c] = true;
        }
        out
    }

    /// Edge-path groupoid: vertices, edges, and one relation per cell.
    pub fn pi1(&self) -> PresentedGroupoid {
        let p = &self.parent;
        let verts = self.vertex_ids();
        let edges = self.edge_ids();
        let vloc: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let eloc: BTreeMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let graph = GenGraph::new(
            verts.iter().map(|&v| p.graph.vertices[v].clone()).collect(),
            edges
                .iter()
                .map(|&e| {
                    let edge = &p.graph.edges[e];
                    Edge {
                        id: edge.id.clone(),
                        src: vloc[&edge.src],
                        tgt: vloc[&edge.tgt],
                    }
                })
                .collect(),
        )
        .expect("subcomplex is closed");
        let relations = self
            .cell_ids()
            .into_iter()
            .map(|c| {
                let b = &p.cells[c].boundary;
                let w = Word {
                    base: vloc[&b.base],
                    letters: b.letters.iter().map(|l| Letter { edge: eloc[&l.edge], inverse: l.inverse }).collect(),
                };
                let base = w.base;
                (w, Word::empty(base))
            })
            .collect();
        PresentedGroupoid::new(graph, relations).expect("cell boundaries are closed")
    }

    /// The functor `pi1(self) -> pi1(other)` induced by inclusion.
    pub fn inclusion(&self, other: &Self, own: Arc<PresentedGroupoid>, theirs: Arc<PresentedGroupoid>) -> Result<PresFunctor> {
        if !self.is_subcomplex_of(other) {
            return Err(Error::InvalidFunctor("not a subcomplex".into()));
        }
        let vloc: BTreeMap<usize, usize> = other.vertex_ids().into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let eloc: BTreeMap<usize, usize> = other.edge_ids().into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        let vertex_map = self.vertex_ids().iter().map(|v| vloc[v]).collect();
        let edge_map = self
            .edge_ids()
            .iter()
            .map(|e| Word::letter(&theirs.graph, Letter::fwd(eloc[e])))
            .collect();
        PresFunctor::new(own, theirs, vertex_map, edge_map)
    }
}

/// Components of a subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi0 {
    /// Component names (least vertex), in order of least vertex.
    pub components: Vec<String>,
    /// Component of each parent vertex, when present.
    pub of_vertex: Vec<Option<usize>>,
}

impl Pi0 {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn pi0(c: &Subcomplex) -> Pi0 {
    c.pi0()
}

pub fn pi1(c: &Subcomplex) -> PresentedGroupoid {
    c.pi1()
}

/// How to read "simply connected" for disconnected pieces of a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoodReading {
    /// Every nonempty piece is connected and simply connected.
    Strict,
    /// Every component of every piece is simply connected.
    #[default]
    Componentwise,
}

/// Nerve of a cover: the nonempty intersections `U_S`, `|S| <= depth`,
/// ordered by reverse inclusion of `S`, with their edge-path groupoids.
#[derive(Clone, Debug)]
pub struct CoverNerve {
    pub total: Subcomplex,
    pub cover: Vec<Subcomplex>,
    pub depth: usize,
    /// Index set of each poset element.
    pub index_sets: Vec<Vec<usize>>,
    pub pieces: Vec<Subcomplex>,
    /// Covariant: `U_S <= U_T` goes `pi1(U_S) -> pi1(U_T)`.
    pub diagram: PresentedDiagram,
}

/// Nerve of a cover of the whole parent complex, up to triple intersections.
pub fn build_nerve(cover: &[Subcomplex]) -> Result<CoverNerve> {
    let parent = cover
        .first()
        .ok_or_else(|| Error::NotCovering("empty cover".into()))?
        .parent()
        .clone();
    build_nerve_of(&Subcomplex::full(parent), cover, 3)
}

/// Nerve of a cover of `total`, with intersections of up to `depth` members.
pub fn build_nerve_of(total: &Subcomplex, cover: &[Subcomplex], depth: usize) -> Result<CoverNerve> {
    let mut union = Subcomplex::empty(total.parent().clone());
    for u in cover {
        if !u.is_subcomplex_of(total) {
            return Err(Error::NotCovering("a member is not inside the covered subcomplex".into()));
        }
        union = union.union(u)?;
    }
    if union != *total {
        return Err(Error::NotCovering("members do not cover".into()));
    }
    let k = cover.len();
    let mut index_sets: Vec<Vec<usize>> = Vec::new();
    let mut pieces = Vec::new();
    for size in 1..=depth.min(k) {
        for s in subsets(k, size) {
            let mut piece = cover[s[0]].clone();
            for &i in &s[1..] {
                piece = piece.intersect(&cover[i])?;
            }
            if !piece.is_empty() {
                index_sets.push(s);
                pieces.push(piece);
            }
        }
    }
    let n = index_sets.len();
    let names = index_sets
        .iter()
        .map(|s| format!("U[{}]", s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let leq = (0..n)
        .map(|a| (0..n).map(|b| index_sets[b].iter().all(|i| index_sets[a].contains(i))).collect())
        .collect();
    let poset = FinitePoset::from_relation(names, leq)?;
    let values: Vec<Arc<PresentedGroupoid>> = pieces.iter().map(|p| Arc::new(p.pi1())).collect();
    let mut transitions = BTreeMap::new();
    for (a, b) in poset.strict_pairs() {
        let f = pieces[a].inclusion(&pieces[b], values[a].clone(), values[b].clone())?;
        transitions.insert((a, b), f);
    }
    let diagram = PresentedDiagram::new(poset, Variance::Covariant, values, transitions)?;
    Ok(CoverNerve {
        total: total.clone(),
        cover: cover.to_vec(),
        depth,
        index_sets,
        pieces,
        diagram,
    })
}

/// Index subsets of `0..k` of the given size, lexicographic.
pub(crate) fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, size, &mut Vec::new(), &mut out);
    out
}

/// Whether every component of `p` has trivial vertex group; `None` when
/// that cannot be settled within the default budget.
pub fn components_simply_connected(p: &PresentedGroupoid) -> Option<bool> {
    for verts in component_vertex_lists(&p.graph) {
        let pres = simplify(&collapse_component(p, verts[0]).presentation);
        if pres.rank() == 0 {
            continue;
        }
        if pres.relators.is_empty() {
            return Some(false);
        }
        match enumerate_group(pres.rank(), &pres.relators, DEFAULT_BUDGET) {
            Some((g, _)) if g.order() == 1 => {}
            Some(_) => return Some(false),
            None => {
                if crate::presentation::abelian_invariants(&pres).is_trivial() {
                    return None;
                }
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Whether all pieces of the nerve are simply connected in the given
/// reading. Undecided pieces count as not simply connected.
pub fn is_good_cover(nerve: &CoverNerve, reading: GoodReading) -> bool {
    nerve.diagram.values.iter().all(|p| {
        let connected = p.graph.components().1 <= 1;
        (reading == GoodReading::Componentwise || connected) && components_simply_connected(p) == Some(true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{abelian_invariants, concretize, tree_collapse};

    fn arcs(c: &Arc<Complex2>, ranges: &[&[&str]]) -> Vec<Subcomplex> {
        ranges.iter().map(|ids| Subcomplex::from_ids(c.clone(), ids).unwrap()).collect()
    }

    fn six_cycle_cover() -> Vec<Subcomplex> {
        let c = Arc::new(Complex2::cycle(6));
        arcs(&c, &[&["e0", "e1", "e2"], &["e3", "e4", "e5"]])
    }

    #[test]
    fn components() {
        let two = Complex2::new::<&str>(
            (0..6).map(|i| format!("v{i}")).collect(),
            (0..6)
                .map(|i| Edge {
                    id: format!("e{i}"),
                    src: i,
                    tgt: 3 * (i / 3) + (i + 1) % 3,
                })
                .collect(),
            vec![],
        )
        .unwrap();
        assert_eq!(Subcomplex::full(Arc::new(two)).pi0().len(), 2);
        assert_eq!(Subcomplex::full(Arc::new(Complex2::cycle(6))).pi0().len(), 1);
        assert!(Subcomplex::empty(Arc::new(Complex2::cycle(6))).pi0().is_empty());
    }

    #[test]
    fn fundamental_groupoids() {
        let tri = Subcomplex::full(Arc::new(Complex2::cycle(3))).pi1();
        assert_eq!(abelian_invariants(&tree_collapse(&tri, 0).unwrap()).free_rank, 1);
        let tet = Subcomplex::full(Arc::new(Complex2::tetrahedron_boundary())).pi1();
        let m = concretize(&tet, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.vertex_groups[0].order(), 1);
        let torus = Subcomplex::full(Arc::new(Complex2::torus())).pi1();
        assert_eq!(abelian_invariants(&tree_collapse(&torus, 0).unwrap()).free_rank, 2);
        let grid = Subcomplex::full(Arc::new(Complex2::torus_grid(2, 2))).pi1();
        assert_eq!(abelian_invariants(&tree_collapse(&grid, 0).unwrap()).free_rank, 2);
        assert_eq!(Subcomplex::empty(Arc::new(Complex2::torus())).pi1().num_vertices(), 0);
    }

    #[test]
    fn set_operations() {
        let cover = six_cycle_cover();
        let (u, v) = (&cover[0], &cover[1]);
        assert_eq!(u.intersect(u).unwrap(), *u);
        let w = u.intersect(v).unwrap();
        assert_eq!(w.pi0().len(), 2);
        let c = u.parent().clone();
        let a = Subcomplex::from_ids(c.clone(), &["e0"]).unwrap();
        let b = Subcomplex::from_ids(c.clone(), &["e3"]).unwrap();
        assert!(a.intersect(&b).unwrap().is_empty());
        let other = Subcomplex::full(Arc::new(Complex2::cycle(5)));
        assert_eq!(a.union(&other).unwrap_err(), Error::ParentMismatch);
        assert_eq!(a.union(&b).unwrap().pi0().len(), 2);
    }

    #[test]
    fn nerves() {
        let nerve = build_nerve(&six_cycle_cover()).unwrap();
        assert_eq!(nerve.diagram.len(), 3);
        let w = &nerve.diagram.values[2];
        assert_eq!(w.graph.components().1, 2);
        assert!(is_good_cover(&nerve, GoodReading::Componentwise));
        assert!(!is_good_cover(&nerve, GoodReading::Strict));

        let c = Arc::new(Complex2::cycle(9));
        let three = arcs(&c, &[&["e0", "e1", "e2"], &["e3", "e4", "e5"], &["e6", "e7", "e8"]]);
        let nerve = build_nerve(&three).unwrap();
        assert_eq!(nerve.diagram.len(), 6);
        assert!(is_good_cover(&nerve, GoodReading::Strict));

        let single = build_nerve(&[Subcomplex::full(c.clone())]).unwrap();
        assert_eq!(single.diagram.len(), 1);
        assert!(!is_good_cover(&single, GoodReading::Componentwise));
    }

    #[test]
    fn non_covering_is_rejected() {
        let c = Arc::new(Complex2::cycle(6));
        let partial = arcs(&c, &[&["e0"]]);
        assert!(matches!(build_nerve(&partial), Err(Error::NotCovering(_))));
    }
}
