//! Builds a tower of three point blow-ups over a boundary curve by hand and
//! contracts it back with the log minimal model loop.

use std::collections::BTreeMap;

use miranda::kodaira::FiberType;
use miranda::logsurface::{lambda_of, mmp_drive, MarkedComponent, QDivisor, Surface};
use miranda::rational::int;

fn main() {
    // a germ with one boundary curve C of square 0 and zero canonical class
    let s = Surface::new(vec!["[C]".into()], vec![vec![0]], QDivisor::zero())
        .unwrap()
        .with_curve("C", QDivisor::single("[C]", int(1)))
        .unwrap();
    let through = |pairs: &[(&str, i64)]| -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, m)| (k.to_string(), *m)).collect()
    };
    let s = s.blow_up("E1", &through(&[("C", 2)])).unwrap();
    let s = s.blow_up("E2", &through(&[("C", 1), ("E1", 1)])).unwrap();
    let s = s.blow_up("E3", &through(&[("C", 1), ("E1", 1), ("E2", 1)])).unwrap();

    let parts = [("C", "I1"), ("E1", "II"), ("E2", "III"), ("E3", "I0*")];
    let lambda = lambda_of(
        &parts
            .iter()
            .map(|(c, t)| MarkedComponent::new(c, t.parse::<FiberType>().unwrap()))
            .collect::<Vec<_>>(),
    );
    println!("lambda = {lambda}");
    for name in ["C", "E1", "E2", "E3"] {
        println!("{name}^2 = {}", s.self_intersection(name).unwrap());
    }
    let out = mmp_drive(&s, &lambda).unwrap();
    for step in &out.steps {
        println!("contract {}: (K+lambda).E = {}, delta = {}", step.class, step.log_canonical_degree, step.delta);
    }
    println!("remaining basis {:?}, lambda = {}", out.surface.basis(), out.lambda);
}
