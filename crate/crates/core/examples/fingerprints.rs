//! Equivalence invariants, functor counts and equivalence verdicts.

use costack::equivalence::{are_equivalent, equivalence_fingerprint, Battery};
use costack::group::FiniteGroup;
use costack::groupoid::ConcreteGroupoid;
use costack::presentation::{PresentedGroupoid, DEFAULT_BUDGET};
use costack::space::{Complex2, Subcomplex};
use std::sync::Arc;

fn main() {
    let battery = Battery::default();
    let torus = Subcomplex::full(Arc::new(Complex2::torus_grid(2, 2))).pi1();
    let s3 = ConcreteGroupoid::banal_group(3, &FiniteGroup::symmetric(3));
    let (s3p, _) = PresentedGroupoid::from_concrete(&ConcreteGroupoid::from_group(&FiniteGroup::symmetric(3)));
    println!("torus grid: {}", equivalence_fingerprint(&torus, DEFAULT_BUDGET));
    println!("  battery {:?}", battery.counts(&torus, DEFAULT_BUDGET));
    println!("S3 on three objects: {}", equivalence_fingerprint(&s3, DEFAULT_BUDGET));
    println!("  battery {:?}", battery.counts(&s3, DEFAULT_BUDGET));
    println!("equivalent to one-object S3: {}", are_equivalent(&s3, &s3p, DEFAULT_BUDGET));
    println!("equivalent to the torus: {}", are_equivalent(&s3, &torus, DEFAULT_BUDGET));
}
