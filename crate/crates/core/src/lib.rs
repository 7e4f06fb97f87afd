//! Optimal individual eavesdropping on the six-state QKD protocol with
//! white-noise (depolarized) signals.
//!
//! Eve's optimal information is available in closed form and is re-derived
//! independently by density-matrix simulation and by brute-force search.
//! On top of that sit the information curves and the key-feasibility threshold.

pub mod analysis;
pub mod attack;
pub mod cli;
pub mod error;
pub mod info;
pub mod optimize;
pub mod protocol;
pub mod qmath;
pub mod verify;

pub use error::{Error, Result};
