//! Gluing edge-path groupoids along two-member covers.

use costack::costack::check_vankampen;
use costack::equivalence::Battery;
use costack::presentation::DEFAULT_BUDGET;
use costack::space::{Complex2, Subcomplex};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    let cases: [(&str, Complex2, &[&str], &[&str]); 3] = [
        ("circle", Complex2::cycle(6), &["e0", "e1", "e2", "e3"], &["e3", "e4", "e5", "e0"]),
        ("wedge", Complex2::wedge_of_circles(), &["a0", "a1", "a2"], &["b0", "b1", "b2"]),
        ("torus", Complex2::torus(), &["T"], &["a"]),
    ];
    for (name, c, u, v) in cases {
        let c = Arc::new(c);
        let whole = Subcomplex::full(c.clone());
        let (u, v) = (Subcomplex::from_ids(c.clone(), u)?, Subcomplex::from_ids(c, v)?);
        let r = check_vankampen(&whole, &u, &v, &Battery::default(), DEFAULT_BUDGET)?;
        println!("{name}: whole {}", r.whole);
        println!("  pushout {} (certified {}), 2-pushout {} (certified {})", r.pushout, r.pushout_certified, r.two_pushout, r.two_pushout_certified);
    }
    Ok(())
}
