//! Writes the sample inputs used by the command-line tool and checks that
//! each one parses back. Pass a directory to write elsewhere.

use costack::diagrams::{FinitePoset, PresentedDiagram, Variance};
use costack::group::FiniteGroup;
use costack::groupoid::{ConcreteFunctor, ConcreteGroupoid, NatIso};
use costack::io::{read_json, ComplexFile, CoverFile, DiagramFile, GroupoidFile, GroupSpec, Square, SquareFile, TableSpec, GENERATE_FROM_GROUP};
use costack::presentation::{Edge, GenGraph, PresFunctor, PresentedGroupoid};
use costack::space::{build_nerve, Complex2, Subcomplex};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

fn write(dir: &Path, name: &str, v: &impl Serialize) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap() + "\n").unwrap();
    println!("wrote {}", p.display());
    p
}

fn arcs(c: &Arc<Complex2>, parts: &[&[&str]]) -> costack::Result<Vec<Subcomplex>> {
    parts.iter().map(|ids| Subcomplex::from_ids(c.clone(), ids)).collect()
}

fn span(legs: [Vec<usize>; 2], interval: bool) -> costack::Result<PresentedDiagram> {
    let points = |n: usize| Arc::new(PresentedGroupoid::free(GenGraph::new((0..n).map(|i| format!("p{i}")).collect(), vec![]).unwrap()));
    let a = if interval {
        let g = GenGraph::new(vec!["0".into(), "1".into()], vec![Edge { id: "m".into(), src: 0, tgt: 1 }])?;
        Arc::new(PresentedGroupoid::free(g))
    } else {
        points(1)
    };
    let (b, c) = (points(1), points(2));
    let [la, lb] = legs;
    let t = BTreeMap::from([
        ((2, 0), PresFunctor::new(c.clone(), a.clone(), la, vec![])?),
        ((2, 1), PresFunctor::new(c.clone(), b.clone(), lb, vec![])?),
    ]);
    PresentedDiagram::new(FinitePoset::span(), Variance::Covariant, vec![a, b, c], t)
}

fn square() -> costack::Result<Square> {
    let a = Arc::new(ConcreteGroupoid::disjoint_union(&[&ConcreteGroupoid::point(), &ConcreteGroupoid::point()]));
    let b = Arc::new(ConcreteGroupoid::banal(2));
    let c = Arc::new(ConcreteGroupoid::point());
    let d = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)));
    let i1 = ConcreteFunctor::new(a.clone(), b.clone(), vec![0, 1], vec![b.identity(0), b.identity(1)])?;
    let i2 = ConcreteFunctor::new(a, c.clone(), vec![0, 0], vec![0, 0])?;
    let j1 = ConcreteFunctor::new(b, d.clone(), vec![0, 0], vec![0; 4])?;
    let j2 = ConcreteFunctor::new(c, d, vec![0], vec![0])?;
    let lambda = NatIso::identity(&i1.then(&j1)?);
    Ok(Square { i1, i2, j1, j2, lambda })
}

fn main() -> costack::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data"));
    std::fs::create_dir_all(&dir).unwrap();

    let c6 = Arc::new(Complex2::cycle(6));
    let p = write(&dir, "circle6.json", &ComplexFile::from_complex(&c6));
    let back = Arc::new(read_json::<ComplexFile>(&p)?.build()?);
    let p = write(&dir, "arcs2.json", &CoverFile::from_cover(&arcs(&c6, &[&["e0", "e1", "e2"], &["e3", "e4", "e5"]])?));
    read_json::<CoverFile>(&p)?.build(&back)?;

    let c9 = Arc::new(Complex2::cycle(9));
    write(&dir, "circle9.json", &ComplexFile::from_complex(&c9));
    let three = arcs(&c9, &[&["e0", "e1", "e2"], &["e3", "e4", "e5"], &["e6", "e7", "e8"]])?;
    write(&dir, "arcs3.json", &CoverFile::from_cover(&three));
    // a diagram over the nerve poset, for the terminal map
    let p = write(&dir, "nerve9.json", &DiagramFile::from_presented(&build_nerve(&three)?.diagram));
    read_json::<DiagramFile>(&p)?.build(Some(&dir))?;
    write(&dir, "torus.json", &ComplexFile::from_complex(&Complex2::torus()));

    let z2 = GroupoidFile {
        schema: Some(costack::io::GROUPOID_SCHEMA.into()),
        objects: vec![],
        morphisms: vec![],
        table: TableSpec::Marker(GENERATE_FROM_GROUP.into()),
        group: Some(GroupSpec {
            elements: vec!["e".into(), "t".into()],
            cayley: vec![vec!["e".into(), "t".into()], vec!["t".into(), "e".into()]],
        }),
    };
    let p = write(&dir, "z2.json", &z2);
    read_json::<GroupoidFile>(&p)?.build()?;

    for (name, d) in [("circle_span.json", span([vec![0, 1], vec![0, 0]], true)?), ("collapsing_span.json", span([vec![0, 0], vec![0, 0]], false)?)] {
        let p = write(&dir, name, &DiagramFile::from_presented(&d));
        read_json::<DiagramFile>(&p)?.build(Some(&dir))?;
    }

    let p = write(&dir, "square.json", &SquareFile::from_square(&square()?));
    read_json::<SquareFile>(&p)?.build(Some(&dir))?;
    println!("all files parse back");
    Ok(())
}
