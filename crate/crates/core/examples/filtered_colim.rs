//! Colimit over a filtered poset: Z/2 -> Z/4 -> Z/8 by doubling.

use costack::diagrams::{delta_comparison, filtered_colim, presented_diagram, ConcreteDiagram, FinitePoset, Variance};
use costack::group::FiniteGroup;
use costack::groupoid::{ConcreteFunctor, ConcreteGroupoid};
use costack::presentation::DEFAULT_BUDGET;
use std::collections::BTreeMap;
use std::sync::Arc;

fn main() -> costack::Result<()> {
    let z = |n| Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(n)));
    let (z2, z4, z8) = (z(2), z(4), z(8));
    let double = |a: &Arc<ConcreteGroupoid>, b: &Arc<ConcreteGroupoid>| {
        ConcreteFunctor::new(a.clone(), b.clone(), vec![0], (0..a.num_morphisms()).map(|k| 2 * k).collect())
    };
    let covers = BTreeMap::from([((0, 1), double(&z2, &z4)?), ((1, 2), double(&z4, &z8)?)]);
    let d = ConcreteDiagram::from_covers(FinitePoset::chain(3), Variance::Covariant, vec![z2, z4, z8], covers)?;
    let colim = filtered_colim(&d)?;
    println!("filtered colimit: {} object(s), {} morphisms", colim.num_objects(), colim.num_morphisms());
    let verdict = delta_comparison(&presented_diagram(&d)?, DEFAULT_BUDGET)?.verdict;
    println!("2-colimit -> colimit an equivalence: {verdict}");
    Ok(())
}
