//! The functor from a diagram over a good cover's nerve into the
//! 2-colimit of the edge-path groupoids of the pieces.

use costack::costack::induced_map_to_terminal;
use costack::diagrams::{diagram_tc, PresentedDiagram, Variance};
use costack::presentation::{Edge, GenGraph, PresFunctor, PresentedGroupoid, DEFAULT_BUDGET};
use costack::space::{build_nerve, Complex2, GoodReading, Subcomplex};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    let c = Arc::new(Complex2::cycle(9));
    let arcs = [["e0", "e1", "e2"], ["e3", "e4", "e5"], ["e6", "e7", "e8"]]
        .iter()
        .map(|ids| Subcomplex::from_ids(c.clone(), ids))
        .collect::<costack::Result<Vec<_>>>()?;
    let nerve = build_nerve(&arcs)?;

    // a Z/2 loop everywhere: the loop has nowhere to go but the identity
    let g = GenGraph::new(vec!["*".into()], vec![Edge { id: "t".into(), src: 0, tgt: 0 }])?;
    let t2 = (g.parse_word(&["t+", "t+"], None)?, g.parse_word::<&str>(&[], Some(0))?);
    let z2 = Arc::new(PresentedGroupoid::new(g, vec![t2])?);
    let poset = nerve.diagram.poset.clone();
    let transitions = poset.strict_pairs().into_iter().map(|p| (p, PresFunctor::identity(z2.clone()))).collect();
    let q = PresentedDiagram::new(poset, Variance::Covariant, vec![z2; nerve.diagram.len()], transitions)?;

    let m = induced_map_to_terminal(&q, &nerve, GoodReading::Componentwise, DEFAULT_BUDGET)?;
    let tc = diagram_tc(&q)?;
    let loops: Vec<String> = (0..q.len()).map(|s| m.functor.edge_map[s].len().to_string()).collect();
    println!("source 2-colimit: {}", tc.groupoid);
    println!("target 2-colimit: {}", m.functor.codomain);
    println!("loop images have lengths {}", loops.join(" "));
    println!("relations respected: {}", m.relations);
    Ok(())
}
