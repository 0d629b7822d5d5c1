//! Normalized Hamiltonians of `n` oscillators with a `p:q` resonance between
//! the first two: exact polynomial algebra on `z, z*`, the Hilbert basis of
//! `H0`-invariants, enumeration and counting of the expansion monomials, and
//! the quantum polyad spectrum.

pub mod audit;
pub mod counting;
pub mod error;
pub mod hilbert;
pub mod poly;
pub mod quantum;
pub mod resonance;
pub mod tables;
pub mod terms;

pub use error::{Error, Result};
pub use poly::{ComplexRational, Var, ZMonomial, ZPolynomial};
pub use resonance::ResonanceSpec;
