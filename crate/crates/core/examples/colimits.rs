//! Colimit and 2-colimit of a span, and the comparison between them. The
//! circle appears as two points glued to an interval and to a point.

use costack::diagrams::{delta_comparison, diagram_colim, diagram_tc, FinitePoset, PresentedDiagram, Variance};
use costack::equivalence::equivalence_fingerprint;
use costack::presentation::{Edge, GenGraph, PresFunctor, PresentedGroupoid, DEFAULT_BUDGET};
use std::collections::BTreeMap;
use std::sync::Arc;

fn points(n: usize) -> Arc<PresentedGroupoid> {
    Arc::new(PresentedGroupoid::free(GenGraph::new((0..n).map(|i| format!("p{i}")).collect(), vec![]).unwrap()))
}

fn span(a: Arc<PresentedGroupoid>, amap: Vec<usize>, b: Arc<PresentedGroupoid>, bmap: Vec<usize>) -> costack::Result<PresentedDiagram> {
    let c = points(2);
    let legs = BTreeMap::from([
        ((2, 0), PresFunctor::new(c.clone(), a.clone(), amap, vec![])?),
        ((2, 1), PresFunctor::new(c.clone(), b.clone(), bmap, vec![])?),
    ]);
    PresentedDiagram::new(FinitePoset::span(), Variance::Covariant, vec![a, b, c], legs)
}

fn report(name: &str, d: &PresentedDiagram) -> costack::Result<()> {
    let colim = diagram_colim(d)?;
    let tc = diagram_tc(d)?;
    println!("{name}");
    println!("  colim: {} -> {}", colim.groupoid, equivalence_fingerprint(&*colim.groupoid, DEFAULT_BUDGET));
    println!("  2-colim: {} -> {}", tc.groupoid, equivalence_fingerprint(&*tc.groupoid, DEFAULT_BUDGET));
    println!("  comparison is an equivalence: {}", delta_comparison(d, DEFAULT_BUDGET)?.verdict);
    Ok(())
}

fn main() -> costack::Result<()> {
    let interval = GenGraph::new(vec!["0".into(), "1".into()], vec![Edge { id: "m".into(), src: 0, tgt: 1 }])?;
    let circle = span(Arc::new(PresentedGroupoid::free(interval)), vec![0, 1], points(1), vec![0, 0])?;
    report("two points into an interval and a point", &circle)?;
    let collapsing = span(points(1), vec![0, 0], points(1), vec![0, 0])?;
    report("two points into two points", &collapsing)?;
    Ok(())
}
