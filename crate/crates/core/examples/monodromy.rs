//! Monodromy under a base blow-up: the exceptional curve over a crossing
//! carries the product of the two branch monodromies.

use miranda::kodaira::{automorphy_factor, classify_from_monodromy, elliptic_fixed_point, monodromy_of, FiberType};
use miranda::monodromy::{blowup_monodromy, order_of};

fn main() {
    let pairs = [("II", "IV"), ("II*", "IV"), ("III", "I0*"), ("I2", "I3"), ("I1*", "I2")];
    for (l, r) in pairs {
        let (l, r): (FiberType, FiberType) = (l.parse().unwrap(), r.parse().unwrap());
        let m = blowup_monodromy(&monodromy_of(l), &monodromy_of(r)).unwrap();
        let pole = l.pole_order() + r.pole_order();
        let gamma = classify_from_monodromy(&m, pole).unwrap();
        println!("{l} x {r}: {} * {} = {m}, order {:?}, type on the exceptional curve {gamma}",
            monodromy_of(l), monodromy_of(r), order_of(&m));
    }

    println!();
    // elliptic elements fix a point of the upper half-plane; c*tau + d there is exp(-2 pi i a)
    for t in FiberType::all_elliptic() {
        let m = monodromy_of(t);
        let tau = elliptic_fixed_point(&m).unwrap();
        let f = automorphy_factor(&m, &tau);
        println!(
            "{t}: tau = {} + i*sqrt({}), c*tau + d = {} {} i*sqrt({})",
            tau.re, tau.im_sq, f.re, if f.im_positive { "+" } else { "-" }, f.im_sq
        );
    }
}
