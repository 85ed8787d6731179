//! Construction and classification of generalized Hadamard codes over the
//! mixed alphabet `Z_p x Z_{p^2}`.
//!
//! The crate builds recursive generator matrices for additive codes living
//! in `Z_p^alpha1 x Z_{p^2}^alpha2`, maps them to codes over `Z_p` through a
//! generalized Gray map, verifies the generalized Hadamard property, and
//! computes the invariants used to tell the resulting codes apart: minimum
//! distance, rank, kernel dimension, and linearity.

pub mod arith;
pub mod code;
pub mod construct;
pub mod error;
pub mod export;
pub mod gray;
pub mod invariants;
pub mod table;

pub use arith::{MixedWord, Prime};
pub use code::{AdditiveCode, Budget, GhMode, GhVerdict, GrayCode, Zp2Code};
pub use construct::{CodeType, GeneratorMatrix};
pub use error::{Error, Result};
pub use invariants::{InvariantReport, SignatureVerdict};
