//! Complexes, components, edge-path groupoids and cover nerves.

use costack::equivalence::equivalence_fingerprint;
use costack::presentation::DEFAULT_BUDGET;
use costack::space::{build_nerve, is_good_cover, Complex2, GoodReading, Subcomplex};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    let examples = [
        ("6-cycle", Complex2::cycle(6)),
        ("disk", Complex2::disk(4)),
        ("tetrahedron boundary", Complex2::tetrahedron_boundary()),
        ("torus", Complex2::torus()),
        ("wedge of two circles", Complex2::wedge_of_circles()),
    ];
    for (name, c) in examples {
        let full = Subcomplex::full(Arc::new(c));
        println!("{name}: {} component(s), {}", full.pi0().len(), equivalence_fingerprint(&full.pi1(), DEFAULT_BUDGET));
    }

    let c = Arc::new(Complex2::cycle(6));
    let arcs = [
        Subcomplex::from_ids(c.clone(), &["e0", "e1", "e2"])?,
        Subcomplex::from_ids(c, &["e3", "e4", "e5"])?,
    ];
    let nerve = build_nerve(&arcs)?;
    for (k, name) in nerve.diagram.poset.elements().iter().enumerate() {
        println!("{name}: {}", nerve.pieces[k].element_names().join(" "));
    }
    println!("good, strictly: {}", is_good_cover(&nerve, GoodReading::Strict));
    println!("good, componentwise: {}", is_good_cover(&nerve, GoodReading::Componentwise));
    Ok(())
}
