//! Singular fibers and collisions of elliptic threefolds.
//!
//! The crate mechanizes Kodaira fiber arithmetic, `SL(2, Z)` monodromy under
//! blow-ups of the base, Miranda's collision resolution and the
//! `(K + Lambda)`-contraction tests that decide whether a flat model exists
//! over a given base surface.

pub mod rational;
pub mod monodromy;
pub mod kodaira;
pub mod collision;
pub mod tables;
pub mod logsurface;
pub mod scenario;
pub mod weierstrass;
pub mod cli;
