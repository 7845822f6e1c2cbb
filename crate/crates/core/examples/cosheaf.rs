//! Connected components as a cosheaf, and the map from another cosheaf.

use costack::cosheaf::{check_cosheaf_sets, terminal_cosheaf_map, ConstantSet, Pi0Functor, Pi0Times};
use costack::space::{Complex2, Subcomplex};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    let c = Arc::new(Complex2::cycle(8));
    let whole = Subcomplex::full(c.clone());
    let cover = [
        Subcomplex::from_ids(c.clone(), &["e0", "e1", "e2", "e3"])?,
        Subcomplex::from_ids(c.clone(), &["e4", "e5", "e6", "e7"])?,
    ];
    let r = check_cosheaf_sets(&Pi0Functor, &whole, &cover)?;
    println!("pi0: coequalizer {} vs value {} -> {}", r.coequalizer_size, r.value_size, r.pass);

    let doubled = Pi0Times(2);
    let r = check_cosheaf_sets(&doubled, &whole, &cover)?;
    println!("pi0 x 2: {}", r.pass);
    println!("unique map to pi0: {:?}", terminal_cosheaf_map(&doubled, &whole)?);

    // a constant two-element set is not a cosheaf on a disjoint cover
    let two_arcs = Subcomplex::from_ids(c.clone(), &["e0", "e1", "e4", "e5"])?;
    let parts = [Subcomplex::from_ids(c.clone(), &["e0", "e1"])?, Subcomplex::from_ids(c, &["e4", "e5"])?];
    let constant = ConstantSet(vec!["*".into(), "**".into()]);
    let r = check_cosheaf_sets(&constant, &two_arcs, &parts)?;
    println!("constant {{*, **}}: coequalizer {} vs value {} -> {}", r.coequalizer_size, r.value_size, r.pass);
    Ok(())
}
