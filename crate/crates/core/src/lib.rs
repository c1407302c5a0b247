//! Genuine multipartite entanglement and frustration in quantum spin models.
//!
//! The crate computes the generalized geometric measure (GGM) of sparse
//! multi-qubit pure states — one minus the largest squared Schmidt
//! coefficient over all bipartitions — together with the classical
//! frustration degree of Isingized spin Hamiltonians, and provides exact
//! builders for six frustrated models: the long-range antiferromagnetic
//! Ising gas, the resonating-valence-bond gas, a plaquette-dimer J1-J2-J3
//! lattice, the Majumdar–Ghosh chain, the Shastry–Sutherland lattice, and
//! the one-defect ferromagnetic Ising ring.
//!
//! Core numerics are generic over the amplitude scalar (`f32`/`f64`) via
//! [`Scalar`]; Hamiltonian couplings use exact rational arithmetic
//! ([`Rational`]) wherever degeneracy counting matters. Concrete `f64`
//! aliases are exported at the crate root.

pub mod bipartition;
pub mod cooling;
pub mod error;
pub mod frustration;
mod linalg;
pub mod models;
pub mod scalar;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Coupling, Rational, Scalar};

pub use bipartition::{
    dominant_partition_size_scan, enumerate_bipartitions, ggm, ggm_capped, ggm_over, ggm_with,
    Bipartition, GgmResult, ScanOptions, DEFAULT_SITE_CAP,
};
pub use state::{
    basis_state, dump, inner_product, load, product_state, singlet_product, superpose, BasisIndex,
    Pairing, PureState, SiteState,
};

/// Double-precision aliases; every tolerance quoted in the documentation
/// refers to this instantiation.
pub type PureState64 = state::PureState<f64>;
pub type SiteState64 = state::SiteState<f64>;
pub type GgmResult64 = bipartition::GgmResult<f64>;

/// Single-precision aliases for quick scans at relaxed tolerances.
pub type PureState32 = state::PureState<f32>;
pub type SiteState32 = state::SiteState<f32>;
