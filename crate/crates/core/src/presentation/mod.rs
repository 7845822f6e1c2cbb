//! Finitely presented groupoids.
//!
//! A presentation is a graph of generating arrows together with relations,
//! each relation a pair of parallel words. Only three kinds of equality are
//! offered: free equality (`free_reduce`), evaluation into a concrete
//! groupoid (`PresToConcrete::evaluate`), and equality after a successful
//! `concretize`. Word equality in a presented groupoid is undecidable in
//! general and no procedure for it is provided.

mod collapse;
mod todd_coxeter;

pub use collapse::{
    abelian_invariants, collapse_component, simplify, simplify_tracked, tree_collapse, Collapse, SignedGen, SpanningTree,
    VertexGroupPresentation,
};
pub use todd_coxeter::{concretize, ConcreteModel, DEFAULT_BUDGET};
pub(crate) use collapse::reduce_signed;
pub(crate) use todd_coxeter::enumerate_group;

use crate::error::{Error, Result};
use crate::groupoid::{ConcreteGroupoid, MorId};
use crate::util::DisjointSet;
use std::fmt;
use std::sync::Arc;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl GenGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertices.len();
        if let Some(e) = edges.iter().find(|e| e.src >= n || e.tgt >= n) {
            return Err(Error::UnknownId(e.id.clone()));
        }
        Ok(Self { vertices, edges })
    }

    pub fn vertex_index(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.id == name)
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut ds = DisjointSet::new(self.vertices.len());
        for e in &self.edges {
            ds.union(e.src, e.tgt);
        }
        ds.classes()
    }

    pub fn letter_src(&self, l: Letter) -> VertexId {
        let e = &self.edges[l.edge];
        if l.inverse {
            e.tgt
        } else {
            e.src
        }
    }

    pub fn letter_tgt(&self, l: Letter) -> VertexId {
        let e = &self.edges[l.edge];
        if l.inverse {
            e.src
        } else {
            e.tgt
        }
    }

    /// Parses letters of the form `"a+"` / `"a-"`. `base` is required for
    /// the empty word and checked against the source otherwise.
    pub fn parse_word<S: AsRef<str>>(&self, letters: &[S], base: Option<VertexId>) -> Result<Word> {
        let mut parsed = Vec::with_capacity(letters.len());
        for raw in letters {
            let raw = raw.as_ref();
            let (name, inverse) = match raw.strip_suffix('+') {
                Some(n) => (n, false),
                None => match raw.strip_suffix('-') {
                    Some(n) => (n, true),
                    None => return Err(Error::MalformedWord(format!("letter `{raw}` needs a +/- suffix"))),
                },
            };
            let edge = self.edge_index(name).ok_or_else(|| Error::UnknownId(name.to_string()))?;
            parsed.push(Letter { edge, inverse });
        }
        let base = match (parsed.first(), base) {
            (Some(&l), Some(b)) if self.letter_src(l) != b => {
                return Err(Error::MalformedWord("word does not start at its base".into()))
            }
            (Some(&l), _) => self.letter_src(l),
            (None, Some(b)) => b,
            (None, None) => return Err(Error::MalformedWord("empty word needs a base vertex".into())),
        };
        let w = Word { base, letters: parsed };
        if !w.is_chained(self) {
            return Err(Error::MalformedWord(format!("letters {:?} do not chain", w.render(self))));
        }
        Ok(w)
    }
}

/// A generating arrow or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: EdgeId,
    pub inverse: bool,
}

impl Letter {
    pub fn fwd(edge: EdgeId) -> Self {
        Self { edge, inverse: false }
    }

    pub fn inv(edge: EdgeId) -> Self {
        Self { edge, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Self {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }
}

/// Path of letters; `base` is the source (and the vertex of the empty word).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub base: VertexId,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty(base: VertexId) -> Self {
        Self { base, letters: Vec::new() }
    }

    pub fn letter(graph: &GenGraph, l: Letter) -> Self {
        Self {
            base: graph.letter_src(l),
            letters: vec![l],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn source(&self) -> VertexId {
        self.base
    }

    pub fn target(&self, graph: &GenGraph) -> VertexId {
        self.letters.last().map_or(self.base, |&l| graph.letter_tgt(l))
    }

    pub fn is_chained(&self, graph: &GenGraph) -> bool {
        let mut at = self.base;
        for &l in &self.letters {
            if l.edge >= graph.edges.len() || graph.letter_src(l) != at {
                return false;
            }
            at = graph.letter_tgt(l);
        }
        true
    }

    /// Concatenation `self` then `next`; the caller guarantees chaining.
    pub fn then(&self, next: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&next.letters);
        Word { base: self.base, letters }
    }

    pub fn inverse(&self, graph: &GenGraph) -> Word {
        Word {
            base: self.target(graph),
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn render(&self, graph: &GenGraph) -> Vec<String> {
        self.letters
            .iter()
            .map(|l| format!("{}{}", graph.edges[l.edge].id, if l.inverse { '-' } else { '+' }))
            .collect()
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        if stack.last() == Some(&l.inverted()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word { base: w.base, letters: stack }
}

pub fn freely_equal(a: &Word, b: &Word) -> bool {
    a.base == b.base && free_reduce(a).letters == free_reduce(b).letters
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresentedGroupoid {
    pub graph: GenGraph,
    pub relations: Vec<(Word, Word)>,
}

impl PresentedGroupoid {
    pub fn new(graph: GenGraph, relations: Vec<(Word, Word)>) -> Result<Self> {
        for (a, b) in &relations {
            if !a.is_chained(&graph) || !b.is_chained(&graph) {
                return Err(Error::MalformedWord("relation word does not chain".into()));
            }
            if a.source() != b.source() || a.target(&graph) != b.target(&graph) {
                return Err(Error::MalformedWord(format!(
                    "relation {:?} = {:?} is not parallel",
                    a.render(&graph),
                    b.render(&graph)
                )));
            }
        }
        Ok(Self { graph, relations })
    }

    /// Free groupoid on a graph.
    pub fn free(graph: GenGraph) -> Self {
        Self {
            graph,
            relations: Vec::new(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.components().1 == 1
    }

    /// Presentation of a concrete groupoid: one generator per non-identity
    /// morphism, one relation per composable pair of them.
    pub fn from_concrete(g: &ConcreteGroupoid) -> (Self, Vec<Option<EdgeId>>) {
        let vertices = (0..g.num_objects()).map(|x| g.object_name(x)).collect();
        let mut edges = Vec::new();
        let mut edge_of = vec![None; g.num_morphisms()];
        for m in 0..g.num_morphisms() {
            if !g.is_identity(m) {
                edge_of[m] = Some(edges.len());
                edges.push(Edge {
                    id: g.morphism_name(m),
                    src: g.src(m),
                    tgt: g.tgt(m),
                });
            }
        }
        let word_of = |m: MorId| match edge_of[m] {
            Some(e) => Word {
                base: g.src(m),
                letters: vec![Letter::fwd(e)],
            },
            None => Word::empty(g.src(m)),
        };
        let mut relations = Vec::new();
        for f in 0..g.num_morphisms() {
            if g.is_identity(f) {
                continue;
            }
            for &h in g.out(g.tgt(f)) {
                if g.is_identity(h) {
                    continue;
                }
                relations.push((word_of(f).then(&word_of(h)), word_of(g.then(f, h))));
            }
        }
        let graph = GenGraph { vertices, edges };
        (Self { graph, relations }, edge_of)
    }

    /// Disjoint union of presentations, names prefixed by part index.
    pub fn disjoint_union(parts: &[&PresentedGroupoid]) -> Self {
        let mut out = PresentedGroupoid::default();
        for (p, part) in parts.iter().enumerate() {
            let (voff, eoff) = (out.graph.vertices.len(), out.graph.edges.len());
            out.graph.vertices.extend(part.graph.vertices.iter().map(|v| format!("{p}.{v}")));
            out.graph.edges.extend(part.graph.edges.iter().map(|e| Edge {
                id: format!("{p}.{}", e.id),
                src: e.src + voff,
                tgt: e.tgt + voff,
            }));
            let shift = |w: &Word| Word {
                base: w.base + voff,
                letters: w.letters.iter().map(|l| Letter { edge: l.edge + eoff, inverse: l.inverse }).collect(),
            };
            out.relations.extend(part.relations.iter().map(|(a, b)| (shift(a), shift(b))));
        }
        out
    }
}

impl fmt::Display for PresentedGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} generators, {} relations",
            self.num_vertices(),
            self.num_edges(),
            self.relations.len()
        )
    }
}

/// Functor between presented groupoids, given on generators by words.
///
/// Relation preservation is a proof obligation: it can be discharged
/// syntactically (`relation_images`) or after concretization of the codomain.
#[derive(Clone, Debug)]
pub struct PresFunctor {
    pub domain: Arc<PresentedGroupoid>,
    pub codomain: Arc<PresentedGroupoid>,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<Word>,
}

impl PresFunctor {
    pub fn new(
        domain: Arc<PresentedGroupoid>,
        codomain: Arc<PresentedGroupoid>,
        vertex_map: Vec<VertexId>,
        edge_map: Vec<Word>,
    ) -> Result<Self> {
        let f = Self {
            domain,
            codomain,
            vertex_map,
            edge_map,
        };
        f.check_endpoints()?;
        Ok(f)
    }

    pub fn identity(p: Arc<PresentedGroupoid>) -> Self {
        let vertex_map = (0..p.num_vertices()).collect();
        let edge_map = (0..p.num_edges()).map(|e| Word::letter(&p.graph, Letter::fwd(e))).collect();
        Self {
            domain: p.clone(),
            codomain: p,
            vertex_map,
            edge_map,
        }
    }

    pub fn check_endpoints(&self) -> Result<()> {
        let (d, c) = (&self.domain.graph, &self.codomain.graph);
        if self.vertex_map.len() != d.vertices.len() || self.edge_map.len() != d.edges.len() {
            return Err(Error::InvalidFunctor("map sizes do not match the domain".into()));
        }
        if self.vertex_map.iter().any(|&v| v >= c.vertices.len()) {
            return Err(Error::InvalidFunctor("vertex image outside the codomain".into()));
        }
        for (e, w) in d.edges.iter().zip(&self.edge_map) {
            if !w.is_chained(c) || w.source() != self.vertex_map[e.src] || w.target(c) != self.vertex_map[e.tgt] {
                return Err(Error::InvalidFunctor(format!("image of `{}` has wrong endpoints", e.id)));
            }
        }
        Ok(())
    }

    pub fn image(&self, w: &Word) -> Word {
        let c = &self.codomain.graph;
        let mut out = Word::empty(self.vertex_map[w.base]);
        for &l in &w.letters {
            let img = &self.edge_map[l.edge];
            if l.inverse {
                out = out.then(&img.inverse(c));
            } else {
                out = out.then(img);
            }
        }
        out
    }

    /// `self` then `next`.
    pub fn then(&self, next: &PresFunctor) -> PresFunctor {
        PresFunctor {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|w| free_reduce(&next.image(w))).collect(),
        }
    }

    /// Images of all domain relations, the obligations for being a functor.
    pub fn relation_images(&self) -> Vec<(Word, Word)> {
        self.domain
            .relations
            .iter()
            .map(|(a, b)| (self.image(a), self.image(b)))
            .collect()
    }

    /// Same vertex map and freely equal generator images.
    pub fn agrees_with(&self, other: &PresFunctor) -> bool {
        self.vertex_map == other.vertex_map
            && self.edge_map.len() == other.edge_map.len()
            && self.edge_map.iter().zip(&other.edge_map).all(|(a, b)| freely_equal(a, b))
    }
}

/// Functor from a presented groupoid into a concrete one.
#[derive(Clone, Debug)]
pub struct PresToConcrete {
    pub domain: Arc<PresentedGroupoid>,
    pub codomain: Arc<ConcreteGroupoid>,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<MorId>,
}

impl PresToConcrete {
    /// Letterwise evaluation; inverse letters use codomain inverses.
    pub fn evaluate(&self, w: &Word) -> MorId {
        let c = &self.codomain;
        w.letters.iter().fold(c.identity(self.vertex_map[w.base]), |acc, &l| {
            let m = self.edge_map[l.edge];
            c.then(acc, if l.inverse { c.inverse(m) } else { m })
        })
    }

    /// Endpoints and every relation, checked by evaluation.
    pub fn check(&self) -> Result<()> {
        let (d, c) = (&self.domain.graph, &self.codomain);
        for (e, &m) in d.edges.iter().zip(&self.edge_map) {
            if c.src(m) != self.vertex_map[e.src] || c.tgt(m) != self.vertex_map[e.tgt] {
                return Err(Error::InvalidFunctor(format!("image of `{}` has wrong endpoints", e.id)));
            }
        }
        for (a, b) in &self.domain.relations {
            if self.evaluate(a) != self.evaluate(b) {
                return Err(Error::InvalidFunctor(format!("relation {:?} not respected", a.render(d))));
            }
        }
        Ok(())
    }
}

/// Index of every vertex of `p` inside its connected component's vertex list.
pub fn component_vertex_lists(graph: &GenGraph) -> Vec<Vec<VertexId>> {
    let (cls, n) = graph.components();
    let mut lists = vec![Vec::new(); n];
    for (v, &c) in cls.iter().enumerate() {
        lists[c].push(v);
    }
    lists
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph() -> GenGraph {
        let e = |id: &str, s, t| Edge { id: id.into(), src: s, tgt: t };
        GenGraph::new(
            vec!["p".into(), "q".into(), "r".into(), "s".into()],
            vec![e("a", 0, 1), e("b", 1, 2), e("c", 1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let g = path_graph();
        let w = g.parse_word(&["a+", "a-"], None).unwrap();
        assert_eq!(free_reduce(&w), Word::empty(0));
        let w = g.parse_word(&["a+", "b+", "b-", "c+"], None).unwrap();
        assert_eq!(free_reduce(&w).render(&g), vec!["a+", "c+"]);
        let reduced = g.parse_word(&["a+", "c+"], None).unwrap();
        assert_eq!(free_reduce(&reduced), reduced);
    }

    #[test]
    fn unchained_word_is_rejected() {
        let g = path_graph();
        assert!(g.parse_word(&["a+", "a+"], None).is_err());
        assert!(g.parse_word(&["zz+"], None).is_err());
        assert!(g.parse_word::<&str>(&[], None).is_err());
    }

    #[test]
    fn non_parallel_relation_is_rejected() {
        let g = path_graph();
        let a = g.parse_word(&["a+"], None).unwrap();
        assert!(PresentedGroupoid::new(g.clone(), vec![(a, Word::empty(0))]).is_err());
    }

    #[test]
    fn evaluation_respects_inverses() {
        use crate::group::FiniteGroup;
        let g = path_graph();
        let p = Arc::new(PresentedGroupoid::free(g.clone()));
        let target = Arc::new(ConcreteGroupoid::banal_group(1, &FiniteGroup::cyclic(3)));
        let f = PresToConcrete {
            domain: p,
            codomain: target.clone(),
            vertex_map: vec![0; 4],
            edge_map: vec![1, 2, 1],
        };
        assert_eq!(f.evaluate(&Word::empty(2)), target.identity(0));
        assert_eq!(f.evaluate(&Word::letter(&g, Letter::fwd(1))), 2);
        let w = g.parse_word(&["a+", "b+", "b-", "a-"], None).unwrap();
        assert_eq!(f.evaluate(&w), target.identity(0));
        assert_eq!(f.evaluate(&w), f.evaluate(&free_reduce(&w)));
    }
}
