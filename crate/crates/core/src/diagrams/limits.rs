//! Strict limits and 2-limits of contravariant diagrams of finite groupoids.

use super::{ConcreteDiagram, Variance};
use crate::error::{Error, Result};
use crate::functor_groupoid::DEFAULT_MORPHISM_CAP;
use crate::groupoid::{ConcreteFunctor, ConcreteGroupoid, MorId, ObjId};
use crate::util::DisjointSet;
use std::collections::HashMap;
use std::sync::Arc;

fn require_contravariant(d: &ConcreteDiagram) -> Result<()> {
    match d.variance {
        Variance::Contravariant => Ok(()),
        Variance::Covariant => Err(Error::InvalidDiagram("limits need a contravariant diagram".into())),
    }
}

/// Elements ordered so that everything above an element comes before it.
fn top_down(d: &ConcreteDiagram) -> Vec<usize> {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| ((0..n).filter(|&j| d.poset.lt(i, j)).count(), i));
    order
}

fn guard(what: &'static str, needed: u128, limit: usize) -> Result<()> {
    if needed > limit as u128 {
        Err(Error::ResourceLimit {
            what,
            needed,
            limit: limit as u128,
        })
    } else {
        Ok(())
    }
}

/// The strict limit: compatible families of objects and of morphisms.
#[derive(Clone, Debug)]
pub struct Limit {
    pub groupoid: Arc<ConcreteGroupoid>,
    pub families: Vec<Vec<ObjId>>,
    index: HashMap<Vec<ObjId>, ObjId>,
}

impl Limit {
    pub fn new(d: &ConcreteDiagram, cap: usize) -> Result<Self> {
        require_contravariant(d)?;
        let order = top_down(d);
        let n = d.len();
        // object families
        let mut families = Vec::new();
        let mut cur = vec![usize::MAX; n];
        compatible(d, &order, 0, &mut cur, &mut |cur| families.push(cur.to_vec()), &|i| {
            (0..d.values[i].num_objects()).collect()
        }, &|t, x| t.object_map[x]);
        let index: HashMap<Vec<ObjId>, ObjId> = families.iter().cloned().enumerate().map(|(k, f)| (f, k)).collect();
        let mut morphisms = Vec::new();
        for (s, fam) in families.iter().enumerate() {
            let mut cur = vec![usize::MAX; n];
            compatible(
                d,
                &order,
                0,
                &mut cur,
                &mut |f| {
                    let tgt: Vec<ObjId> = f.iter().enumerate().map(|(i, &m)| d.values[i].tgt(m)).collect();
                    morphisms.push((s, index[&tgt], f.to_vec()));
                },
                &|i| d.values[i].out(fam[i]).to_vec(),
                &|t, m| t.morphism_map[m],
            );
            // counted as we go: the naive product overestimates badly
            guard("limit morphisms", morphisms.len() as u128, cap)?;
        }
        let groupoid = Arc::new(ConcreteGroupoid::componentwise(families.len(), d.values.clone(), morphisms));
        Ok(Self { groupoid, families, index })
    }

    pub fn index_of(&self, family: &[ObjId]) -> Option<ObjId> {
        self.index.get(family).copied()
    }

    /// The morphism with the given source and components.
    pub fn morphism(&self, src: ObjId, comps: &[MorId]) -> Option<MorId> {
        self.groupoid.lookup_componentwise(src, comps)
    }
}

/// Backtracking over families `cur[i]` with `ψ_ij(cur[j]) = cur[i]`.
fn compatible(
    d: &ConcreteDiagram,
    order: &[usize],
    k: usize,
    cur: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
    candidates: &dyn Fn(usize) -> Vec<usize>,
    apply: &dyn Fn(&ConcreteFunctor, usize) -> usize,
) {
    if k == order.len() {
        emit(cur);
        return;
    }
    let i = order[k];
    let above: Vec<usize> = order[..k].iter().copied().filter(|&j| d.poset.lt(i, j)).collect();
    let options = match above.first() {
        Some(&j) => vec![apply(d.transition(i, j), cur[j])],
        None => candidates(i),
    };
    for c in options {
        if above.iter().all(|&j| apply(d.transition(i, j), cur[j]) == c) && candidates_contain(candidates, i, c, &above) {
            cur[i] = c;
            compatible(d, order, k + 1, cur, emit, candidates, apply);
        }
    }
    cur[i] = usize::MAX;
}

fn candidates_contain(candidates: &dyn Fn(usize) -> Vec<usize>, i: usize, c: usize, above: &[usize]) -> bool {
    // forced values must still be admissible (e.g. leave the right source)
    above.is_empty() || candidates(i).contains(&c)
}

/// The 2-limit, kept implicit: objects are enumerated, morphisms are
/// generated on demand. An object is stored as its coordinates `x_i`
/// followed by one coherence morphism `ξ_ij : ψ_ij(x_j) -> x_i` per strict
/// pair, subject to `ξ_ik = ψ_ij(ξ_jk) ; ξ_ij` on every chain.
#[derive(Clone, Debug)]
pub struct TwoLimit {
    diagram: ConcreteDiagram,
    pairs: Vec<(usize, usize)>,
    chains: Vec<(usize, usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    objects: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TwoLimit {
    /// Enumerates objects, refusing beyond `object_cap` partial candidates.
    pub fn new(d: &ConcreteDiagram, object_cap: usize) -> Result<Self> {
        require_contravariant(d)?;
        let pairs = d.poset.strict_pairs();
        let chains = d.poset.strict_chains();
        let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut t = Self {
            diagram: d.clone(),
            pairs,
            chains,
            pair_index,
            objects: Vec::new(),
            index: HashMap::new(),
        };
        let n = d.len();
        let mut cur = vec![usize::MAX; n + t.pairs.len()];
        let mut visited = 0usize;
        let mut objects = Vec::new();
        t.search_objects(0, &mut cur, &mut visited, object_cap, &mut objects)?;
        t.objects = objects;
        t.index = t.objects.iter().cloned().enumerate().map(|(k, o)| (o, k)).collect();
        Ok(t)
    }

    fn search_objects(
        &self,
        k: usize,
        cur: &mut Vec<usize>,
        visited: &mut usize,
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        *visited += 1;
        guard("2-limit objects", *visited as u128, cap)?;
        let d = &self.diagram;
        let n = d.len();
        if k == n + self.pairs.len() {
            out.push(cur.clone());
            return Ok(());
        }
        if k < n {
            for x in 0..d.values[k].num_objects() {
                cur[k] = x;
                // every pair with both ends assigned needs a connecting morphism
                let ok = (0..=k).all(|i| {
                    let (a, b) = (i.min(k), i.max(k));
                    !d.poset.lt(a, b) || !d.values[a].hom(d.transition(a, b).object_map[cur[b]], cur[a]).is_empty()
                });
                if ok {
                    self.search_objects(k + 1, cur, visited, cap, out)?;
                }
            }
        } else {
            let p = k - n;
            let (i, j) = self.pairs[p];
            let src = d.transition(i, j).object_map[cur[j]];
            for m in d.values[i].hom(src, cur[i]) {
                cur[k] = m;
                let ok = self.chains.iter().all(|&(a, b, c)| {
                    let (ab, bc, ac) = (self.pair_index[&(a, b)], self.pair_index[&(b, c)], self.pair_index[&(a, c)]);
                    if ab.max(bc).max(ac) != p {
                        return true;
                    }
                    let lhs = cur[n + ac];
                    let rhs = d.values[a].then(d.transition(a, b).morphism_map[cur[n + bc]], cur[n + ab]);
                    lhs == rhs
                });
                if ok {
                    self.search_objects(k + 1, cur, visited, cap, out)?;
                }
            }
        }
        cur[k] = usize::MAX;
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// Coordinates then coherence morphisms of object `k`.
    pub fn object(&self, k: usize) -> &[usize] {
        &self.objects[k]
    }

    pub fn index_of(&self, coords: &[usize]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The object `(x_i, id)` over a strictly compatible family.
    pub fn identity_cocycle(&self, family: &[ObjId]) -> Option<usize> {
        let d = &self.diagram;
        let mut key = family.to_vec();
        key.extend(self.pairs.iter().map(|&(i, _)| d.values[i].identity(family[i])));
        self.index_of(&key)
    }

    /// Target of the family `f` (with `f_i` leaving `x_i`) out of object `a`:
    /// `η_ij = ψ_ij(f_j)⁻¹ ; ξ_ij ; f_i`.
    pub fn act(&self, a: usize, f: &[MorId]) -> Vec<usize> {
        let d = &self.diagram;
        let n = d.len();
        let obj = &self.objects[a];
        let mut out: Vec<usize> = f.iter().enumerate().map(|(i, &m)| d.values[i].tgt(m)).collect();
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            let g = &d.values[i];
            let pf = d.transition(i, j).morphism_map[f[j]];
            out.push(g.then(g.then(g.inverse(pf), obj[n + p]), f[i]));
        }
        out
    }

    /// Connected components, via moves that change one coordinate.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let d = &self.diagram;
        let n = d.len();
        let mut ds = DisjointSet::new(self.objects.len());
        for a in 0..self.objects.len() {
            let obj = &self.objects[a];
            let mut f: Vec<MorId> = (0..n).map(|i| d.values[i].identity(obj[i])).collect();
            for i in 0..n {
                let id = f[i];
                for &m in d.values[i].out(obj[i]) {
                    f[i] = m;
                    let b = self.index[&self.act(a, &f)];
                    ds.union(a, b);
                }
                f[i] = id;
            }
        }
        ds.classes()
    }

    /// All morphisms `a -> b`, as families of components.
    pub fn hom(&self, a: usize, b: usize) -> Vec<Vec<MorId>> {
        let d = &self.diagram;
        let n = d.len();
        let (x, y) = (&self.objects[a], &self.objects[b]);
        let mut out = Vec::new();
        let mut f = vec![usize::MAX; n];
        self.search_hom(0, x, y, &mut f, &mut out);
        out
    }

    fn search_hom(&self, i: usize, x: &[usize], y: &[usize], f: &mut Vec<MorId>, out: &mut Vec<Vec<MorId>>) {
        let d = &self.diagram;
        let n = d.len();
        if i == n {
            out.push(f.clone());
            return;
        }
        for m in d.values[i].hom(x[i], y[i]) {
            f[i] = m;
            // squares whose both ends are now assigned
            let ok = self.pairs.iter().enumerate().all(|(p, &(a, b))| {
                if a.max(b) != i {
                    return true;
                }
                let g = &d.values[a];
                let pf = d.transition(a, b).morphism_map[f[b]];
                g.then(x[n + p], f[a]) == g.then(pf, y[n + p])
            });
            if ok {
                self.search_hom(i + 1, x, y, f, out);
            }
        }
        f[i] = usize::MAX;
    }

    /// Automorphisms of object `a`.
    pub fn stabilizer(&self, a: usize) -> Vec<Vec<MorId>> {
        self.hom(a, a)
    }

    /// Materializes the 2-limit as a concrete groupoid.
    pub fn materialize(&self, cap: usize) -> Result<Arc<ConcreteGroupoid>> {
        let d = &self.diagram;
        let n = d.len();
        let needed: u128 = self
            .objects
            .iter()
            .map(|o| (0..n).map(|i| d.values[i].out(o[i]).len() as u128).product::<u128>())
            .sum();
        guard("2-limit morphisms", needed, cap)?;
        let mut morphisms = Vec::with_capacity(needed as usize);
        for a in 0..self.objects.len() {
            let obj = &self.objects[a];
            let outs: Vec<&[MorId]> = (0..n).map(|i| d.values[i].out(obj[i])).collect();
            let mut digits = vec![0usize; n];
            loop {
                let f: Vec<MorId> = (0..n).map(|i| outs[i][digits[i]]).collect();
                let b = self.index[&self.act(a, &f)];
                morphisms.push((a, b, f));
                let mut i = 0;
                while i < n {
                    digits[i] += 1;
                    if digits[i] < outs[i].len() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        Ok(Arc::new(ConcreteGroupoid::componentwise(self.objects.len(), d.values.clone(), morphisms)))
    }
}

pub fn diagram_lim(d: &ConcreteDiagram) -> Result<ConcreteGroupoid> {
    Ok((*Limit::new(d, DEFAULT_MORPHISM_CAP)?.groupoid).clone())
}

pub fn diagram_tl(d: &ConcreteDiagram) -> Result<ConcreteGroupoid> {
    let tl = TwoLimit::new(d, DEFAULT_MORPHISM_CAP)?;
    Ok((*tl.materialize(DEFAULT_MORPHISM_CAP)?).clone())
}

/// The embedding of the strict limit into the 2-limit, with both sides.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub lim: Limit,
    pub tl: TwoLimit,
    pub tl_groupoid: Arc<ConcreteGroupoid>,
    pub functor: ConcreteFunctor,
}

/// Sends a compatible family `(x_i)` to `(x_i, id)`.
pub fn gamma_embedding(d: &ConcreteDiagram) -> Result<Gamma> {
    let lim = Limit::new(d, DEFAULT_MORPHISM_CAP)?;
    let tl = TwoLimit::new(d, DEFAULT_MORPHISM_CAP)?;
    let tl_groupoid = tl.materialize(DEFAULT_MORPHISM_CAP)?;
    let object_map: Vec<ObjId> = lim
        .families
        .iter()
        .map(|f| tl.identity_cocycle(f).expect("identity cocycle is an object"))
        .collect();
    let g = &lim.groupoid;
    let morphism_map = (0..g.num_morphisms())
        .map(|m| {
            let comps = g.components_of(m).expect("componentwise");
            tl_groupoid
                .lookup_componentwise(object_map[g.src(m)], comps)
                .expect("compatible family is a 2-limit morphism")
        })
        .collect();
    let functor = ConcreteFunctor::new_unchecked(lim.groupoid.clone(), tl_groupoid.clone(), object_map, morphism_map);
    Ok(Gamma {
        lim,
        tl,
        tl_groupoid,
        functor,
    })
}

#[cfg(test)]
mod tests {
    use super::super::FinitePoset;
    use super::*;
    use crate::group::FiniteGroup;
    use std::collections::BTreeMap;

    fn z(n: usize) -> Arc<ConcreteGroupoid> {
        Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(n)))
    }

    fn z2_chain() -> ConcreteDiagram {
        let v = z(2);
        let id = ConcreteFunctor::identity(v.clone());
        ConcreteDiagram::new(FinitePoset::chain(2), Variance::Contravariant, vec![v.clone(), v], BTreeMap::from([((0, 1), id)]))
            .unwrap()
    }

    #[test]
    fn single_element_limits_copy_the_value() {
        let v = Arc::new(ConcreteGroupoid::banal_group(2, &FiniteGroup::cyclic(2)));
        let d = ConcreteDiagram::new(FinitePoset::chain(1), Variance::Contravariant, vec![v.clone()], BTreeMap::new()).unwrap();
        let lim = diagram_lim(&d).unwrap();
        let tl = diagram_tl(&d).unwrap();
        for g in [&lim, &tl] {
            assert_eq!((g.num_objects(), g.num_morphisms()), (2, 8));
            assert!(g.validate().is_valid());
        }
    }

    #[test]
    fn discrete_pair_is_a_product() {
        let d = ConcreteDiagram::new(
            FinitePoset::discrete(vec!["a".into(), "b".into()]),
            Variance::Contravariant,
            vec![z(2), z(3)],
            BTreeMap::new(),
        )
        .unwrap();
        let lim = diagram_lim(&d).unwrap();
        assert_eq!(lim.num_objects(), 1);
        assert_eq!(lim.automorphisms(0).len(), 6);
    }

    #[test]
    fn z2_chain_limits() {
        let d = z2_chain();
        let lim = diagram_lim(&d).unwrap();
        assert_eq!((lim.num_objects(), lim.automorphisms(0).len()), (1, 2));
        let tl = diagram_tl(&d).unwrap();
        assert_eq!(tl.num_objects(), 2);
        assert_eq!(tl.connected_components().1, 1);
        assert_eq!(tl.automorphisms(0).len(), 2);
        assert!(tl.validate().is_valid());
        let gamma = gamma_embedding(&d).unwrap();
        gamma.functor.check().unwrap();
        assert!(gamma.functor.is_injective_on_objects());
        assert!(gamma.functor.is_equivalence());
    }

    #[test]
    fn implicit_two_limit_agrees_with_materialized() {
        let d = z2_chain();
        let tl = TwoLimit::new(&d, 1000).unwrap();
        let g = tl.materialize(1000).unwrap();
        assert_eq!(tl.components().1, g.connected_components().1);
        for a in 0..tl.num_objects() {
            assert_eq!(tl.stabilizer(a).len(), g.automorphisms(a).len());
            for b in 0..tl.num_objects() {
                assert_eq!(tl.hom(a, b).len(), g.hom(a, b).len());
            }
        }
    }

    #[test]
    fn simply_connected_chain_gives_simply_connected_limits() {
        let v = Arc::new(ConcreteGroupoid::banal(2));
        let id = ConcreteFunctor::identity(v.clone());
        let d = ConcreteDiagram::from_covers(
            FinitePoset::chain(3),
            Variance::Contravariant,
            vec![v.clone(), v.clone(), v],
            BTreeMap::from([((0, 1), id.clone()), ((1, 2), id)]),
        )
        .unwrap();
        assert!(diagram_tl(&d).unwrap().is_simply_connected());
        assert!(diagram_lim(&d).unwrap().is_simply_connected());
    }

    #[test]
    fn covariant_input_is_rejected() {
        let mut d = z2_chain();
        d.variance = Variance::Covariant;
        assert!(diagram_lim(&d).is_err());
    }
}
