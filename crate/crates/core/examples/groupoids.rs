//! Finite groupoids from tables and groups, functors and natural isomorphisms.

use costack::group::FiniteGroup;
use costack::groupoid::{validate_data, ConcreteFunctor, ConcreteGroupoid, GroupoidData, MorphismData, NatIso};
use std::sync::Arc;

fn main() -> costack::Result<()> {
    // the interval: two objects, one isomorphism between them
    let m = |id: &str, s: &str, t: &str| MorphismData { id: id.into(), src: s.into(), tgt: t.into() };
    let t = |f: &str, g: &str, h: &str| (f.to_string(), g.to_string(), h.to_string());
    let data = GroupoidData {
        objects: vec!["x".into(), "y".into()],
        morphisms: vec![m("1x", "x", "x"), m("1y", "y", "y"), m("f", "x", "y"), m("g", "y", "x")],
        table: vec![
            t("1x", "1x", "1x"),
            t("1x", "f", "f"),
            t("1y", "1y", "1y"),
            t("1y", "g", "g"),
            t("f", "1y", "f"),
            t("g", "1x", "g"),
            t("f", "g", "1x"),
            t("g", "f", "1y"),
        ],
    };
    println!("validation: {}", validate_data(&data));
    let interval = Arc::new(ConcreteGroupoid::new(&data)?);

    let s3 = Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::symmetric(3)));
    println!("S3 as a groupoid: {} object, {} morphisms", s3.num_objects(), s3.num_morphisms());

    // collapse the interval onto the identity of S3
    let e = s3.identity(0);
    let f = ConcreteFunctor::new(interval.clone(), s3.clone(), vec![0, 0], vec![e; 4])?;
    // conjugating by any element gives an isomorphic functor
    let sigma = 1;
    let conj = |m| s3.then(s3.then(s3.inverse(sigma), m), sigma);
    let g = ConcreteFunctor::new(interval.clone(), s3.clone(), vec![0, 0], f.morphism_map.iter().map(|&m| conj(m)).collect())?;
    let alpha = NatIso::new(f.clone(), g, vec![sigma, sigma])?;
    println!("natural isomorphism at every object: {:?}", alpha.components);
    println!("F full and faithful: {}", f.is_full_and_faithful());
    println!("interval → point an equivalence: {}", {
        let point = Arc::new(ConcreteGroupoid::point());
        ConcreteFunctor::new(interval, point, vec![0, 0], vec![0; 4])?.is_equivalence()
    });
    Ok(())
}
