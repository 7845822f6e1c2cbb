//! Set-valued assignments on subcomplexes and the cosheaf condition.

use crate::error::{Error, Result};
use crate::space::Subcomplex;
use crate::util::DisjointSet;
use serde::Serialize;

/// A covariant set-valued assignment on subcomplexes.
pub trait SetFunctor {
    /// Elements of the set at `u`, by name.
    fn value(&self, u: &Subcomplex) -> Vec<String>;
    /// Map induced by `u ⊆ v`, by element index.
    fn map(&self, u: &Subcomplex, v: &Subcomplex) -> Vec<usize>;
}

/// Connected components.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pi0Functor;

fn component_map(u: &Subcomplex, v: &Subcomplex) -> Vec<usize> {
    let (pu, pv) = (u.pi0(), v.pi0());
    let mut out = vec![0; pu.len()];
    for x in u.vertex_ids() {
        out[pu.of_vertex[x].unwrap()] = pv.of_vertex[x].expect("inclusion");
    }
    out
}

impl SetFunctor for Pi0Functor {
    fn value(&self, u: &Subcomplex) -> Vec<String> {
        u.pi0().components
    }
    fn map(&self, u: &Subcomplex, v: &Subcomplex) -> Vec<usize> {
        component_map(u, v)
    }
}

/// `π₀(U) × {0, .., k-1}`, mapping the second factor identically.
#[derive(Clone, Copy, Debug)]
pub struct Pi0Times(pub usize);

impl SetFunctor for Pi0Times {
    fn value(&self, u: &Subcomplex) -> Vec<String> {
        u.pi0()
            .components
            .iter()
            .flat_map(|c| (0..self.0).map(move |t| format!("{c}#{t}")))
            .collect()
    }
    fn map(&self, u: &Subcomplex, v: &Subcomplex) -> Vec<usize> {
        let k = self.0;
        component_map(u, v).iter().flat_map(|&c| (0..k).map(move |t| c * k + t)).collect()
    }
}

/// `U ↦ π₀(U ∩ A)` for a fixed subcomplex `A`.
#[derive(Clone, Debug)]
pub struct RestrictedPi0(pub Subcomplex);

impl SetFunctor for RestrictedPi0 {
    fn value(&self, u: &Subcomplex) -> Vec<String> {
        u.intersect(&self.0).expect("same parent").pi0().components
    }
    fn map(&self, u: &Subcomplex, v: &Subcomplex) -> Vec<usize> {
        let (a, b) = (u.intersect(&self.0).unwrap(), v.intersect(&self.0).unwrap());
        component_map(&a, &b)
    }
}

/// A fixed set on every nonempty subcomplex, empty on the empty one,
/// with identity maps.
#[derive(Clone, Debug)]
pub struct ConstantSet(pub Vec<String>);

impl SetFunctor for ConstantSet {
    fn value(&self, u: &Subcomplex) -> Vec<String> {
        if u.is_empty() {
            Vec::new()
        } else {
            self.0.clone()
        }
    }
    fn map(&self, u: &Subcomplex, _: &Subcomplex) -> Vec<usize> {
        if u.is_empty() {
            Vec::new()
        } else {
            (0..self.0.len()).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosheafReport {
    pub pass: bool,
    pub coequalizer_size: usize,
    pub value_size: usize,
    /// Why the canonical map fails to be a bijection.
    pub witness: Option<String>,
}

/// Coequalizer of `⊔ f(U_i ∩ U_j) ⇉ ⊔ f(U_i)` (diagonal pairs included),
/// compared with `f(u)` through the canonical map.
pub fn check_cosheaf_sets(f: &dyn SetFunctor, u: &Subcomplex, cover: &[Subcomplex]) -> Result<CosheafReport> {
    let mut union = Subcomplex::empty(u.parent().clone());
    for c in cover {
        if !c.is_subcomplex_of(u) {
            return Err(Error::NotCovering("member outside the covered subcomplex".into()));
        }
        union = union.union(c)?;
    }
    if union != *u {
        return Err(Error::NotCovering("members do not cover".into()));
    }
    let sizes: Vec<usize> = cover.iter().map(|c| f.value(c).len()).collect();
    let mut offset = vec![0usize];
    for s in &sizes {
        offset.push(offset.last().unwrap() + s);
    }
    let mut ds = DisjointSet::new(*offset.last().unwrap());
    for i in 0..cover.len() {
        for j in i..cover.len() {
            let w = cover[i].intersect(&cover[j])?;
            let (to_i, to_j) = (f.map(&w, &cover[i]), f.map(&w, &cover[j]));
            for (a, b) in to_i.into_iter().zip(to_j) {
                ds.union(offset[i] + a, offset[j] + b);
            }
        }
    }
    let (cls, n) = ds.classes();
    let target = f.value(u);
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut witness = None;
    for (i, c) in cover.iter().enumerate() {
        for (a, b) in f.map(c, u).into_iter().enumerate() {
            let k = cls[offset[i] + a];
            match image[k] {
                Some(prev) if prev != b => {
                    witness.get_or_insert_with(|| format!("class of an element over member {i} has two images"));
                }
                _ => image[k] = Some(b),
            }
        }
    }
    let mut hit = vec![0usize; target.len()];
    for b in image.iter().flatten() {
        hit[*b] += 1;
    }
    if witness.is_none() {
        if let Some(b) = hit.iter().position(|&h| h != 1) {
            witness = Some(if hit[b] == 0 {
                format!("`{}` is not in the image", target[b])
            } else {
                format!("`{}` has {} preimages", target[b], hit[b])
            });
        }
    }
    Ok(CosheafReport {
        pass: witness.is_none(),
        coequalizer_size: n,
        value_size: target.len(),
        witness,
    })
}

/// The map `f(u) -> π₀(u)` induced through the cover of `u` by its
/// components; each piece has one component, so each `f(U_c)` goes to `c`.
pub fn terminal_cosheaf_map(f: &dyn SetFunctor, u: &Subcomplex) -> Result<Vec<usize>> {
    let comps = u.components();
    if !check_cosheaf_sets(f, u, &comps)?.pass {
        return Err(Error::NotCosheaf);
    }
    let mut out = vec![usize::MAX; f.value(u).len()];
    for (c, piece) in comps.iter().enumerate() {
        for b in f.map(piece, u) {
            out[b] = c;
        }
    }
    Ok(out)
}

/// Every map `f(u) -> π₀(u)` compatible with the component cover, found by
/// exhaustive search.
pub fn compatible_maps_to_pi0(f: &dyn SetFunctor, u: &Subcomplex) -> Vec<Vec<usize>> {
    let comps = u.components();
    let (n, k) = (f.value(u).len(), comps.len());
    let legs: Vec<Vec<usize>> = comps.iter().map(|c| f.map(c, u)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    if k == 0 && n > 0 {
        return out;
    }
    loop {
        if legs.iter().enumerate().all(|(c, leg)| leg.iter().all(|&b| cur[b] == c)) {
            out.push(cur.clone());
        }
        let mut i = 0;
        while i < n {
            cur[i] += 1;
            if cur[i] < k {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}
