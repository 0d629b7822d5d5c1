//! Quantum Hamiltonian on Fock states, conserved polyads and block spectra.
//!
//! `N̂_k^r` acts as `n_k^r` on `|n⟩`. There is no constant term, so the
//! vacuum energy is zero.

pub mod block;
pub mod cloh;
pub mod fock;
pub mod lattice;
pub mod model;

pub use block::{
    assemble_matrix, blocks, build_block, eigh, levels_of, polyad_number, spectrum,
    write_spectrum_csv, Level, PolyadBlock, Truncation,
};
pub use cloh::cloh_model;
pub use fock::FockState;
pub use lattice::{conserved_lattice, integer_kernel, label_of};
pub use model::{apply_term, HamiltonianModel, TermKind};
