//! Strict limit and 2-limit of a contravariant diagram, and the embedding
//! of one into the other.

use costack::diagrams::{diagram_lim, diagram_tl, gamma_embedding, ConcreteDiagram, FinitePoset, Variance};
use costack::group::FiniteGroup;
use costack::groupoid::{ConcreteFunctor, ConcreteGroupoid};
use std::collections::BTreeMap;
use std::sync::Arc;

fn main() -> costack::Result<()> {
    // pullback of Z/4 -> Z/2 <- Z/2 over the span c < a, c < b
    let z4 = FiniteGroup::cyclic(4);
    let (g4, g2) = (Arc::new(ConcreteGroupoid::from_group(&z4)), Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2))));
    let reduce = ConcreteFunctor::new(g4.clone(), g2.clone(), vec![0], (0..4).map(|k| k % 2).collect())?;
    let id = ConcreteFunctor::identity(g2.clone());
    // contravariant: the transition on c < a goes value(a) -> value(c)
    let d = ConcreteDiagram::new(
        FinitePoset::span(),
        Variance::Contravariant,
        vec![g4, g2.clone(), g2],
        BTreeMap::from([((2, 0), reduce), ((2, 1), id)]),
    )?;
    let lim = diagram_lim(&d)?;
    let tl = diagram_tl(&d)?;
    println!("lim: {} objects, {} morphisms", lim.num_objects(), lim.num_morphisms());
    println!("2-lim: {} objects, {} morphisms, {} components", tl.num_objects(), tl.num_morphisms(), tl.connected_components().1);
    let gamma = gamma_embedding(&d)?;
    println!("lim -> 2-lim full and faithful: {}", gamma.functor.is_full_and_faithful());
    println!("lim -> 2-lim an equivalence: {}", gamma.functor.is_equivalence());
    Ok(())
}
