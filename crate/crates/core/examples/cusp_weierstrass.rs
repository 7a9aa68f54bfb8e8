//! Resolves the discriminant of y^2 = x^3 + s x + t, a cuspidal curve, to
//! normal crossings and reads off the fiber types on the exceptional curves.
//! Other models can be passed as two arguments, e.g.
//! `cargo run --example cusp_weierstrass -- "-3" "2 + s*t"`.

use miranda::weierstrass::{analyze, parse_poly, DEFAULT_MAX_BLOWUPS};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match &args[..] {
        [a, b] => (a.as_str(), b.as_str()),
        _ => ("s", "t"),
    };
    let r = analyze(&parse_poly(a).unwrap(), &parse_poly(b).unwrap(), DEFAULT_MAX_BLOWUPS).unwrap();
    println!("discriminant {}", r.discriminant);
    for d in &r.divisors {
        println!("{}: type {}, coefficient {}", d.name, d.fiber_type, d.lambda_coefficient);
    }
    for s in &r.steps {
        println!("{} from {}: pullback identity {}", s.exceptional, s.center, s.lambda_pullback_holds);
    }
    for c in &r.collisions {
        let verdict = c.class.map_or_else(|| c.error.clone().unwrap_or_default(), |k| format!("{k:?}"));
        println!("{} x {} at {}: {verdict}", c.left_type, c.right_type, c.location);
    }
    println!("blow-ups {}, normal crossings {}", r.blowups(), r.snc);
}
