//! Flip graphs of finite-type cluster complexes and related models: polygon
//! triangulations (types A, B), type D pseudotriangulations, k-triangulations
//! and graph associahedra, with exact diameters, geodesics and the
//! non-leaving-face check.

pub mod engine;
pub mod error;
pub mod export;
pub mod graphassoc;
pub mod model;
pub mod multiassoc;
pub mod normalization;
mod par;
pub mod polygon;
pub mod set;
pub mod stars;
pub mod typed;

pub use error::{Error, Result};
pub use model::{CompatComplex, Flip, FlipModel};
pub use set::{ElementId, ElementSet};
