//! Knot groups of the twisted torus knots `T(l, m; p, pk ± 1)`: presentations,
//! Fox-calculus Alexander polynomials, genera and surgery thresholds, certified
//! word identities, and a small kernel that checks order-inequality proofs.

pub mod alexander;
pub mod error;
pub mod group_ring;
pub mod kernel;
pub mod knot;
pub mod laurent;
pub mod oracle;
pub mod presentation;
pub mod word;

pub use error::{Error, Result};
