//! Sheaf and stack conditions for functors into Z/2 over a 3-member cover.

use costack::costack::{check_sh, check_st};
use costack::group::FiniteGroup;
use costack::groupoid::ConcreteGroupoid;
use costack::space::{build_nerve, Complex2, Subcomplex};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    let c = Arc::new(Complex2::cycle(9));
    let arcs = [["e0", "e1", "e2"], ["e3", "e4", "e5"], ["e6", "e7", "e8"]]
        .iter()
        .map(|ids| Subcomplex::from_ids(c.clone(), ids))
        .collect::<costack::Result<Vec<_>>>()?;
    let nerve = build_nerve(&arcs)?;
    let z2 = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)));
    for r in [check_sh(&nerve, &z2, 1_000_000)?, check_st(&nerve, &z2, 1_000_000)?] {
        println!("{} on {}: {}", r.condition, r.cover, r.verdict);
    }
    Ok(())
}
