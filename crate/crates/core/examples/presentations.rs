//! Presented groupoids: spanning-tree collapse, abelian invariants and
//! bounded coset enumeration.

use costack::presentation::{abelian_invariants, collapse_component, concretize, Edge, GenGraph, PresentedGroupoid, DEFAULT_BUDGET};

fn main() -> costack::Result<()> {
    // a triangle of edges with the loop cubed set to the identity
    let e = |id: &str, s, t| Edge { id: id.into(), src: s, tgt: t };
    let graph = GenGraph::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![e("x", 0, 1), e("y", 1, 2), e("z", 2, 0)],
    )?;
    let lp = ["x+", "y+", "z+"];
    let cubed: Vec<&str> = lp.iter().cycle().take(9).copied().collect();
    let rel = (graph.parse_word(&cubed, None)?, graph.parse_word::<&str>(&[], Some(0))?);
    let p = PresentedGroupoid::new(graph, vec![rel])?;
    println!("{p}");

    let c = collapse_component(&p, 0);
    println!("vertex group: {} generator(s), {} relator(s)", c.presentation.rank(), c.presentation.relators.len());
    println!("abelian invariants: {}", abelian_invariants(&c.presentation));

    match concretize(&p, DEFAULT_BUDGET) {
        Some(model) => println!(
            "enumerated: {} objects, {} morphisms",
            model.groupoid.num_objects(),
            model.groupoid.num_morphisms()
        ),
        None => println!("not finite within the budget"),
    }
    Ok(())
}
