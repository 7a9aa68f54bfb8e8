//! Regenerates the collision tables from the collision calculus.

use miranda::tables::{cor46_j_one, cor46_j_zero, miranda_table};

fn main() {
    println!("{}", cor46_j_one().unwrap());
    println!("{}", cor46_j_zero().unwrap());
    print!("{}", miranda_table().unwrap());
}
