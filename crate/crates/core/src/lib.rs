//! Energy spectra and Stark shifts of linear potentials from Airy-function
//! machinery.

pub mod airy;
pub mod bouncer;
pub mod error;
pub mod expansion;
pub mod oracle;
pub mod perturbation;
pub mod scales;
pub mod symlin;
pub mod verify;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use scales::{PhysicalScales, StarkInput};

/// The two linear potentials: F z above a hard wall, and F |z|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    Bouncer,
    Symmetric,
}

/// Parity of a symmetric-well state: even states sit at zeros of Ai',
/// odd states at zeros of Ai.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}
