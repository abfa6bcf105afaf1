//! Exact-arithmetic toolkit for the classical obstruction layer of knot
//! concordance: Levine-Tristram signature functions and their jump functions,
//! abelian rho-invariants, Blanchfield self-pairings and branched double cover
//! linking forms, satellite-operator calculus on signature data, and
//! machine-checkable linear-independence certificates for satellite families.
//!
//! Everything is computed exactly. Angles on the unit circle carry either a
//! rational multiple of pi or a real-algebraic cosine with a certified
//! isolating interval, and every comparison is decided symbolically where a
//! closed form exists, by certified interval refinement otherwise. No
//! floating-point number enters any pipeline; floats appear only in test
//! oracles.

pub mod blanchfield;
pub mod config;
pub mod error;
pub mod exact;
pub mod independence;
pub mod io;
pub mod jump;
pub mod satellite;
pub mod seifert;
pub mod signature;

pub use config::Config;
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
