//! Kac polynomials, DT-invariants and generic multiplicities of finite
//! quivers, computed through plethystic Log over types of conjugacy classes
//! and checked against brute-force character sums over finite fields.

pub mod cli;
pub mod error;
pub mod fforacle;
pub mod invariants;
pub mod numkernel;
pub mod parttype;
pub mod plethys;
pub mod quivermod;

pub use error::{Error, Result};
