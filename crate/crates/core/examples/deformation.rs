//! Straightening a square that commutes up to a natural isomorphism.

use costack::diagrams::deform;
use costack::group::FiniteGroup;
use costack::groupoid::{ConcreteFunctor, ConcreteGroupoid, NatIso};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    // two points into the interval (i1) and into a point (i2), both into Z/2
    let a = Arc::new(ConcreteGroupoid::disjoint_union(&[&ConcreteGroupoid::point(), &ConcreteGroupoid::point()]));
    let b = Arc::new(ConcreteGroupoid::banal(2));
    let c = Arc::new(ConcreteGroupoid::point());
    let d = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)));
    let i1 = ConcreteFunctor::new(a.clone(), b.clone(), vec![0, 1], vec![b.identity(0), b.identity(1)])?;
    let i2 = ConcreteFunctor::new(a.clone(), c.clone(), vec![0, 0], vec![0, 0])?;
    let j1 = ConcreteFunctor::new(b.clone(), d.clone(), vec![0, 0], vec![0; 4])?;
    let j2 = ConcreteFunctor::new(c, d.clone(), vec![0], vec![0])?;
    // twist at the second point
    let lambda = NatIso::new(i1.then(&j1)?, i2.then(&j2)?, vec![0, 1])?;
    let out = deform(&i1, &i2, &j1, &j2, &lambda)?;
    for m in 0..b.num_morphisms() {
        println!(
            "{}: {} -> {}",
            b.morphism_name(m),
            d.morphism_name(j1.morphism_map[m]),
            d.morphism_name(out.j1_prime.morphism_map[m])
        );
    }
    println!("strictly commutes: {}", i1.then(&out.j1_prime)?.agrees_with(&i2.then(&j2)?));
    println!("kappa restricts to lambda: {}", out.kappa.whisker_before(&i1)?.agrees_with(&lambda));
    Ok(())
}
