//! Functors from a presented groupoid into a finite one, and the
//! groupoid they form.

use costack::functor_groupoid::FunctorGroupoid;
use costack::group::FiniteGroup;
use costack::groupoid::ConcreteGroupoid;
use costack::presentation::{Edge, GenGraph, PresentedGroupoid};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    // one free loop: functors are elements, isomorphisms are conjugations
    let g = GenGraph::new(vec!["*".into()], vec![Edge { id: "t".into(), src: 0, tgt: 0 }])?;
    let circle = Arc::new(PresentedGroupoid::free(g));
    let s3 = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::symmetric(3)));
    let fun = FunctorGroupoid::new(circle, s3, 1_000_000)?;
    let (_, classes) = fun.groupoid.connected_components();
    println!(
        "Fun(circle, S3): {} functors, {} transformations, {} isomorphism classes",
        fun.groupoid.num_objects(),
        fun.groupoid.num_morphisms(),
        classes
    );
    for x in fun.groupoid.component_representatives() {
        println!("  class of t ↦ {} with {} automorphisms", fun.assignments[x].edge_map[0], fun.groupoid.automorphisms(x).len());
    }
    Ok(())
}
