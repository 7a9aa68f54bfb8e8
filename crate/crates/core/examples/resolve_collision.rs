//! Resolves bad collisions by repeated blow-ups, printing the tree for one
//! pair and blow-up counts for every pair of elliptic types.

use miranda::collision::{collide, resolve, CollisionInput};
use miranda::kodaira::FiberType;

fn main() {
    let l: FiberType = "II*".parse().unwrap();
    let r: FiberType = "IV*".parse().unwrap();
    let tree = resolve(&CollisionInput::section(l, r)).unwrap();
    print!("{}", tree.render());
    let chain: Vec<String> = tree.chain_along(l).iter().map(ToString::to_string).collect();
    println!("types met along {l}: {}", chain.join(", "));

    println!();
    let types = FiberType::all_elliptic();
    print!("{:5}", "");
    for c in &types {
        print!("{:>6}", c.to_string());
    }
    println!();
    for a in &types {
        print!("{:5}", a.to_string());
        for b in &types {
            let input = CollisionInput::section(*a, *b);
            let cell = match collide(&input) {
                Ok(_) => resolve(&input).unwrap().blowup_count().to_string(),
                Err(_) => "-".to_string(),
            };
            print!("{cell:>6}");
        }
        println!();
    }
}
