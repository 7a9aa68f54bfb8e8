//! Kodaira's table: boundary coefficient, Euler number, monodromy, its
//! order and the behavior of J, plus classification from vanishing orders.

use miranda::kodaira::{classify_from_orders, fiber_data, FiberType};
use miranda::monodromy::{order_of, MatrixOrder};

fn main() {
    let names = ["I0", "I3", "I0*", "I2*", "II", "III", "IV", "IV*", "III*", "II*"];
    println!("{:6} {:5} {:3} {:16} {:8} J", "type", "a", "χ", "monodromy", "order");
    for name in names {
        let t: FiberType = name.parse().expect("valid type");
        let d = fiber_data(t);
        let order = match order_of(&d.monodromy) {
            MatrixOrder::Finite(k) => k.to_string(),
            MatrixOrder::Infinite => "∞".to_string(),
        };
        println!(
            "{:6} {:5} {:3} {:16} {:8} {:?}",
            name,
            d.a_coeff.to_string(),
            d.euler,
            d.monodromy.to_string(),
            order,
            d.j_behavior
        );
    }

    println!();
    for (a, b, d) in [(0, 0, 4), (1, 1, 2), (1, 2, 3), (2, 2, 4), (2, 3, 6), (2, 3, 9), (3, 4, 8), (4, 5, 10), (4, 6, 12)] {
        match classify_from_orders(a, b, d) {
            Ok(t) => println!("orders ({a}, {b}, {d}) -> {t}"),
            Err(e) => println!("orders ({a}, {b}, {d}) -> error: {e}"),
        }
    }
}
