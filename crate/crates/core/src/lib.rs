//! Exact jet algebra for germs of holomorphic diffeomorphisms of (C^2, 0)
//! tangent to the identity: Lie series, blow-ups, dicritic normal forms,
//! local invariants at characteristic directions and orbit diagnostics.

pub mod blowup;
pub mod dynamics;
pub mod error;
pub mod jets;
pub mod lie;
pub mod normalform;
pub mod scalar;
pub mod text;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Poly1, RatFunc};
