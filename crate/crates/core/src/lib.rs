//! Topological-vertex partition functions of toric Calabi–Yau threefolds in
//! exact arithmetic.

pub mod error;
pub mod qcore;

pub use error::{Error, Result};
pub mod partitions;
pub mod schur;
pub mod vertex;
pub mod localflop;
pub mod toricgeom;
pub mod partfun;
pub mod nekrasov;
pub mod identities;
