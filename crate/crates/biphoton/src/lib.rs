//! Two-photon interactions with broadband down-converted light.
//!
//! Models a chaotic or pulsed pump driving parametric down-conversion in a
//! dispersive crystal, and the sum-frequency, two-photon-absorption, and
//! coincidence signals the down-converted light produces. Internal units are
//! SI with angular frequencies (rad/s) throughout.

pub mod config;
pub mod crystal;
pub mod error;
pub mod grid;
pub mod kernels;
pub mod pump;
pub mod scans;
pub mod signals;
pub mod units;

pub use error::{Error, Result};
