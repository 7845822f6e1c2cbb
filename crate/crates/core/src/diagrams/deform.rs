//! Deforming one leg of a square that commutes up to a natural isomorphism
//! into a strictly commuting one.

use crate::error::{Error, Result};
use crate::groupoid::{ConcreteFunctor, MorId, NatIso, ObjId};

#[derive(Clone, Debug)]
pub struct Deformation {
    /// The deformed leg, with `j1' ∘ i1 = j2 ∘ i2` on the nose.
    pub j1_prime: ConcreteFunctor,
    /// `j1 => j1'`, restricting to `λ` along `i1`.
    pub kappa: NatIso,
}

/// Given `λ : j1∘i1 => j2∘i2` with `i1` injective on objects, builds `j1'`
/// and `κ : j1 => j1'` with `j1'∘i1 = j2∘i2` and `κ⋆i1 = λ`.
pub fn deform(
    i1: &ConcreteFunctor,
    i2: &ConcreteFunctor,
    j1: &ConcreteFunctor,
    j2: &ConcreteFunctor,
    lambda: &NatIso,
) -> Result<Deformation> {
    if !i1.is_injective_on_objects() {
        return Err(Error::NotInjectiveOnObjects);
    }
    let (a, b, d) = (&i1.domain, &i1.codomain, &j1.codomain);
    if !i2.domain.same_shape(a) || !j1.domain.same_shape(b) || !j2.domain.same_shape(&i2.codomain) || !j2.codomain.same_shape(d) {
        return Err(Error::ShapeMismatch("the four functors do not form a square".into()));
    }
    let top = i1.then(j1)?;
    let bottom = i2.then(j2)?;
    if !lambda.source.agrees_with(&top) || !lambda.target.agrees_with(&bottom) {
        return Err(Error::ShapeMismatch("λ must go from j1∘i1 to j2∘i2".into()));
    }
    let mut obj_pre: Vec<Option<ObjId>> = vec![None; b.num_objects()];
    for (x, &y) in i1.object_map.iter().enumerate() {
        obj_pre[y] = Some(x);
    }
    let mut mor_pre: Vec<Vec<MorId>> = vec![Vec::new(); b.num_morphisms()];
    for (m, &n) in i1.morphism_map.iter().enumerate() {
        mor_pre[n].push(m);
    }
    let lam = |x: ObjId| lambda.components[x];
    let object_map: Vec<ObjId> = (0..b.num_objects())
        .map(|y| match obj_pre[y] {
            None => j1.object_map[y],
            Some(x) => bottom.object_map[x],
        })
        .collect();
    let mut morphism_map = Vec::with_capacity(b.num_morphisms());
    for beta in 0..b.num_morphisms() {
        let jb = j1.morphism_map[beta];
        let image = match (obj_pre[b.src(beta)], obj_pre[b.tgt(beta)]) {
            (Some(_), Some(_)) if !mor_pre[beta].is_empty() => {
                let choice = bottom.morphism_map[mor_pre[beta][0]];
                if mor_pre[beta].iter().any(|&alt| bottom.morphism_map[alt] != choice) {
                    return Err(Error::InvalidFunctor("choice of preimage changes the image; λ is not natural".into()));
                }
                choice
            }
            (Some(a1), Some(a2)) => d.then(d.then(d.inverse(lam(a1)), jb), lam(a2)),
            (Some(a1), None) => d.then(d.inverse(lam(a1)), jb),
            (None, Some(a2)) => d.then(jb, lam(a2)),
            (None, None) => jb,
        };
        morphism_map.push(image);
    }
    let j1_prime = ConcreteFunctor::new(b.clone(), d.clone(), object_map, morphism_map)?;
    let components = (0..b.num_objects())
        .map(|y| match obj_pre[y] {
            None => d.identity(j1.object_map[y]),
            Some(x) => lam(x),
        })
        .collect();
    let kappa = NatIso::new(j1.clone(), j1_prime.clone(), components)?;
    Ok(Deformation { j1_prime, kappa })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::ConcreteGroupoid;
    use std::sync::Arc;

    /// `1 ⊔ 1 -> 2` on top, `1 ⊔ 1 -> 1` on the left, into one-object `Z/2`.
    fn circle_square(twist: usize) -> (ConcreteFunctor, ConcreteFunctor, ConcreteFunctor, ConcreteFunctor, NatIso) {
        let two_points = Arc::new(ConcreteGroupoid::banal(1));
        let a = Arc::new(ConcreteGroupoid::disjoint_union(&[&two_points, &two_points]));
        let b = Arc::new(ConcreteGroupoid::banal(2));
        let c = Arc::new(ConcreteGroupoid::point());
        let d = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let id_b = |x: usize| b.identity(x);
        let i1 = ConcreteFunctor::new(a.clone(), b.clone(), vec![0, 1], vec![id_b(0), id_b(1)]).unwrap();
        let i2 = ConcreteFunctor::new(a.clone(), c.clone(), vec![0, 0], vec![0, 0]).unwrap();
        let j1 = ConcreteFunctor::new(b.clone(), d.clone(), vec![0, 0], vec![0; 4]).unwrap();
        let j2 = ConcreteFunctor::new(c, d, vec![0], vec![0]).unwrap();
        let lambda = NatIso::new(i1.then(&j1).unwrap(), i2.then(&j2).unwrap(), vec![0, twist]).unwrap();
        (i1, i2, j1, j2, lambda)
    }

    fn postconditions(i1: &ConcreteFunctor, i2: &ConcreteFunctor, j2: &ConcreteFunctor, lambda: &NatIso, out: &Deformation) {
        out.j1_prime.check().unwrap();
        assert!(i1.then(&out.j1_prime).unwrap().agrees_with(&i2.then(j2).unwrap()));
        assert!(out.kappa.whisker_before(i1).unwrap().agrees_with(lambda));
    }

    #[test]
    fn identity_lambda_changes_nothing_on_the_image() {
        let (i1, i2, j1, j2, lambda) = circle_square(0);
        let out = deform(&i1, &i2, &j1, &j2, &lambda).unwrap();
        postconditions(&i1, &i2, &j2, &lambda, &out);
        assert!(out.kappa.is_identity());
        assert!(out.j1_prime.agrees_with(&j1));
    }

    #[test]
    fn twisted_lambda_moves_the_edge() {
        let (i1, i2, j1, j2, lambda) = circle_square(1);
        let out = deform(&i1, &i2, &j1, &j2, &lambda).unwrap();
        postconditions(&i1, &i2, &j2, &lambda, &out);
        // the edge 0 -> 1 of the interval now carries the generator
        let edge = i1.codomain.hom(0, 1)[0];
        assert_eq!(out.j1_prime.morphism_map[edge], 1);
    }

    #[test]
    fn edge_leaving_the_image_uses_inverse_lambda() {
        // B = 2 objects, only object 0 in the image of A = point
        let a = Arc::new(ConcreteGroupoid::point());
        let b = Arc::new(ConcreteGroupoid::banal(2));
        let d = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let i1 = ConcreteFunctor::new(a.clone(), b.clone(), vec![0], vec![b.identity(0)]).unwrap();
        let i2 = ConcreteFunctor::identity(a.clone());
        let j1 = ConcreteFunctor::new(b.clone(), d.clone(), vec![0, 0], vec![0; 4]).unwrap();
        let j2 = ConcreteFunctor::new(a, d.clone(), vec![0], vec![0]).unwrap();
        let lambda = NatIso::new(i1.then(&j1).unwrap(), i2.then(&j2).unwrap(), vec![1]).unwrap();
        let out = deform(&i1, &i2, &j1, &j2, &lambda).unwrap();
        postconditions(&i1, &i2, &j2, &lambda, &out);
        let beta = b.hom(0, 1)[0];
        let expected = d.then(d.inverse(lambda.components[0]), j1.morphism_map[beta]);
        assert_eq!(out.j1_prime.morphism_map[beta], expected);
    }

    #[test]
    fn non_injective_i1_is_rejected() {
        let (_, i2, _, _, _) = circle_square(0);
        let c = i2.codomain.clone();
        let d = Arc::new(ConcreteGroupoid::point());
        let j = ConcreteFunctor::new(c.clone(), d.clone(), vec![0], vec![0]).unwrap();
        let lambda = NatIso::identity(&i2.then(&j).unwrap());
        assert_eq!(deform(&i2, &i2, &j, &j, &lambda).unwrap_err(), Error::NotInjectiveOnObjects);
    }
}
