//! Exact finite-group machinery for checking exponent bounds on automorphism
//! groups of compact Riemann surfaces.
//!
//! Everything here is integer or exact-rational arithmetic; there is no
//! floating point anywhere in the crate. The modules layer as follows:
//!
//! ```text
//!   arith      small number theory (primes, divisors, valuations)
//!   fq         finite fields F_q and the 2x2 matrix groups over them
//!   group      group specs, element enumeration, order profiles,
//!              Sylow subgroups, Z-group structure
//!   hurwitz    (2,3,7)-generation searches and the Macbeath criterion
//!   fuchsian   signatures, the Riemann-Hurwitz identity, generating vectors
//!   atlas      bound checks, attaining-group tables, report records
//!   catalog    the deterministic built-in group catalog
//!   verify     the acceptance checklist run by `verify all`
//! ```

pub mod arith;
pub mod error;
pub mod atlas;
pub mod catalog;
pub mod fq;
pub mod fuchsian;
pub mod group;
pub mod hurwitz;
pub mod verify;

pub use error::{Error, Result};

/// Bump when the shape of serialized reports or cached profiles changes.
pub const SCHEMA_VERSION: &str = "1";
