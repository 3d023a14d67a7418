//! Entanglement-assisted quantum error correction: Pauli algebra, stabilizer
//! and assisted codes, channel capacities, and Monte-Carlo decoding studies.

pub mod capacity;
pub mod cli;
pub mod channel;
pub mod eacode;
pub mod error;
pub mod gf2;
pub mod pauli;
pub mod rng;
pub mod simulate;
pub mod stabilizer;

pub use eacode::EACode;
pub use error::{Error, Result};
pub use pauli::{Pauli, PauliOperator, Sign};
pub use stabilizer::{StabilizerCode, Syndrome};
