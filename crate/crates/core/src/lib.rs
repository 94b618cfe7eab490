//! Exact linear algebra over division rings: rings of finitary endomorphisms
//! presented by a dual pairing, sandwich maps between them, conjugator
//! recovery, and a brute-force oracle over small prime fields.

pub mod cli;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod ring;
pub mod sandwich;
pub mod scalar;
pub mod session;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::{DualSystem, RingElement, Transvection};
pub use sandwich::SandwichMap;
pub use scalar::{RingDescriptor, Scalar};
