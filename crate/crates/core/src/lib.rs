//! Exact harmonic analysis on Heisenberg groups.
//!
//! The crate builds homogeneous sub-Laplacian-harmonic polynomials on the
//! Heisenberg groups `H_k` (and on user-supplied stratified groups), splits
//! polynomials against the polynomial gauge `η₊² = |z|² + 4t`, verifies
//! identities involving the Korányi gauge `ρ = (|z|⁴ + t²)^{1/4}` exactly,
//! and integrates polynomial traces over the Korányi unit sphere.
//!
//! Everything algebraic is exact over the rationals; floating point only
//! appears in [`sphere`].

pub mod error;
pub mod eta;
pub mod gauge;
pub mod group;
pub mod harmonic;
pub mod linalg;
pub mod poly;
pub mod sample;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{parse_poly, Monomial, Polynomial, Rational, Signature};
