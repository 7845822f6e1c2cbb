//! Spanning-tree collapse of a presented groupoid to a presentation of one
//! vertex group, plus Tietze simplification and abelian invariants.

use super::{free_reduce, GenGraph, Letter, PresentedGroupoid, VertexId, Word};
use crate::abelian::{invariants_of_relation_matrix, AbelianInvariant};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, VecDeque};

/// Generator index and whether it appears inverted.
pub type SignedGen = (usize, bool);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexGroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<SignedGen>>,
}

impl VertexGroupPresentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Breadth-first spanning tree of one component, edges scanned in
/// declaration order so the result is reproducible.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub root: VertexId,
    /// Letter from the parent into each reached vertex (`None` at the root
    /// and at unreached vertices).
    pub parent: Vec<Option<Letter>>,
    pub reached: Vec<bool>,
    pub in_tree: Vec<bool>,
    /// Reached vertices in visiting order.
    pub order: Vec<VertexId>,
}

impl SpanningTree {
    pub fn bfs(graph: &GenGraph, root: VertexId) -> Self {
        let n = graph.vertices.len();
        let mut incident = vec![Vec::new(); n];
        for (i, e) in graph.edges.iter().enumerate() {
            incident[e.src].push(Letter::fwd(i));
            if e.tgt != e.src {
                incident[e.tgt].push(Letter::inv(i));
            }
        }
        let mut parent = vec![None; n];
        let mut reached = vec![false; n];
        let mut in_tree = vec![false; graph.edges.len()];
        let mut order = vec![root];
        reached[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            // incident lists are in declaration order already
            for &l in &incident[u] {
                let v = graph.letter_tgt(l);
                if !reached[v] {
                    reached[v] = true;
                    parent[v] = Some(l);
                    in_tree[l.edge] = true;
                    order.push(v);
                    queue.push_back(v);
                }
            }
        }
        Self {
            root,
            parent,
            reached,
            in_tree,
            order,
        }
    }

    /// Tree path from the root to `v`.
    pub fn path(&self, graph: &GenGraph, v: VertexId) -> Word {
        let mut letters = Vec::new();
        let mut at = v;
        while let Some(l) = self.parent[at] {
            letters.push(l);
            at = graph.letter_src(l);
        }
        letters.reverse();
        Word { base: self.root, letters }
    }

    /// Tree path from `a` to `b` (both reached), freely reduced.
    pub fn path_between(&self, graph: &GenGraph, a: VertexId, b: VertexId) -> Word {
        free_reduce(&self.path(graph, a).inverse(graph).then(&self.path(graph, b)))
    }
}

/// Result of collapsing the component of a basepoint.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub presentation: VertexGroupPresentation,
    pub tree: SpanningTree,
    /// Generator index of every non-tree edge in the component.
    pub edge_generator: Vec<Option<usize>>,
}

impl Collapse {
    /// Vertex-group word of a groupoid word inside the component:
    /// tree edges vanish, the rest become generators.
    pub fn rewrite(&self, w: &Word) -> Vec<SignedGen> {
        reduce_signed(
            w.letters
                .iter()
                .filter_map(|l| self.edge_generator[l.edge].map(|g| (g, l.inverse)))
                .collect(),
        )
    }
}

/// Collapses the component of `basepoint`; relations elsewhere are ignored.
pub fn collapse_component(p: &PresentedGroupoid, basepoint: VertexId) -> Collapse {
    let graph = &p.graph;
    let tree = SpanningTree::bfs(graph, basepoint);
    let mut edge_generator = vec![None; graph.edges.len()];
    let mut generators = Vec::new();
    for (i, e) in graph.edges.iter().enumerate() {
        if tree.reached[e.src] && !tree.in_tree[i] {
            edge_generator[i] = Some(generators.len());
            generators.push(e.id.clone());
        }
    }
    let mut collapse = Collapse {
        presentation: VertexGroupPresentation {
            generators,
            relators: Vec::new(),
        },
        tree,
        edge_generator,
    };
    let relators = p
        .relations
        .iter()
        .filter(|(a, _)| collapse.tree.reached[a.base])
        .map(|(a, b)| collapse.rewrite(&a.then(&b.inverse(graph))))
        .collect();
    collapse.presentation.relators = relators;
    collapse
}

/// Vertex group presentation of a connected presented groupoid at `basepoint`.
pub fn tree_collapse(p: &PresentedGroupoid, basepoint: VertexId) -> Result<VertexGroupPresentation> {
    if basepoint >= p.num_vertices() {
        return Err(Error::UnknownId(format!("vertex #{basepoint}")));
    }
    if !p.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(collapse_component(p, basepoint).presentation)
}

pub(crate) fn reduce_signed(word: Vec<SignedGen>) -> Vec<SignedGen> {
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

fn cyclic_reduce(word: Vec<SignedGen>) -> Vec<SignedGen> {
    let mut w = reduce_signed(word);
    while w.len() >= 2 && w[0] == (w[w.len() - 1].0, !w[w.len() - 1].1) {
        w.pop();
        w.remove(0);
    }
    w
}

fn invert(word: &[SignedGen]) -> Vec<SignedGen> {
    word.iter().rev().map(|&(g, i)| (g, !i)).collect()
}

/// Least rotation of the relator or its inverse, used to deduplicate.
fn canonical_relator(word: &[SignedGen]) -> Vec<SignedGen> {
    let inv = invert(word);
    let mut best = word.to_vec();
    for w in [word.to_vec(), inv] {
        for k in 0..w.len().max(1) {
            let mut rot = w[k..].to_vec();
            rot.extend_from_slice(&w[..k]);
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Tietze simplification: drop trivial and duplicate relators, and
/// eliminate any generator that occurs exactly once in some relator.
/// The result presents an isomorphic group.
pub fn simplify(v: &VertexGroupPresentation) -> VertexGroupPresentation {
    simplify_tracked(v).0
}

fn substitute(word: &[SignedGen], g: usize, replacement: &[SignedGen], replacement_inv: &[SignedGen]) -> Vec<SignedGen> {
    let mut out = Vec::with_capacity(word.len());
    for &s in word {
        if s.0 == g {
            out.extend_from_slice(if s.1 { replacement_inv } else { replacement });
        } else {
            out.push(s);
        }
    }
    out
}

/// As `simplify`, also returning each original generator as a word in the
/// remaining ones (the isomorphism on generators).
pub fn simplify_tracked(v: &VertexGroupPresentation) -> (VertexGroupPresentation, Vec<Vec<SignedGen>>) {
    let mut generators = v.generators.clone();
    let mut relators: Vec<Vec<SignedGen>> = v.relators.clone();
    let mut images: Vec<Vec<SignedGen>> = (0..generators.len()).map(|g| vec![(g, false)]).collect();
    loop {
        let mut seen = BTreeSet::new();
        relators = relators
            .into_iter()
            .map(cyclic_reduce)
            .filter(|r| !r.is_empty())
            .filter(|r| seen.insert(canonical_relator(r)))
            .collect();
        relators.sort_by_key(|r| r.len());
        let pick = relators.iter().enumerate().find_map(|(ri, r)| {
            (0..generators.len())
                .find(|&g| r.iter().filter(|s| s.0 == g).count() == 1)
                .map(|g| (ri, g))
        });
        let Some((ri, g)) = pick else { break };
        let r = relators.remove(ri);
        let pos = r.iter().position(|s| s.0 == g).unwrap();
        // rotate so the eliminated generator comes first: r = g^e · rest
        let mut rot = r[pos..].to_vec();
        rot.extend_from_slice(&r[..pos]);
        let inverted = rot[0].1;
        let rest = rot[1..].to_vec();
        // g = rest^-1 (or rest when g appeared inverted)
        let replacement = if inverted { rest } else { invert(&rest) };
        let replacement_inv = invert(&replacement);
        for w in relators.iter_mut().chain(images.iter_mut()) {
            *w = substitute(w, g, &replacement, &replacement_inv);
            for s in w.iter_mut() {
                if s.0 > g {
                    s.0 -= 1;
                }
            }
        }
        generators.remove(g);
    }
    let images = images.into_iter().map(reduce_signed).collect();
    (VertexGroupPresentation { generators, relators }, images)
}

/// Smith normal form of the exponent-sum matrix.
pub fn abelian_invariants(v: &VertexGroupPresentation) -> AbelianInvariant {
    let cols = v.generators.len();
    let matrix: Vec<Vec<i64>> = v
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; cols];
            for &(g, inv) in r {
                row[g] += if inv { -1 } else { 1 };
            }
            row
        })
        .collect();
    invariants_of_relation_matrix(&matrix, cols)
}
