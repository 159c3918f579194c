//! Exact computations with Hochschild cochains, Gerstenhaber structures and
//! minimal A-infinity algebras.

pub mod error;
pub mod exactlin;

pub use error::{Error, Result};
pub mod galg;
pub mod hochschild;
pub mod ainfty;
pub mod bimres;
pub mod transfer;
pub mod zoo;
pub mod cli;
