//! Split-step quantum walk on ℤⁿ with a single coin defect.
//!
//! The evolution operator U = SC factors into a self-adjoint unitary shift
//! S (per-axis 2×2 blocks mixing the two components of each axis pair while
//! translating) and a self-adjoint unitary coin C, the sitewise reflection
//! 2|χ(x)⟩⟨χ(x)| − 1 with χ ≡ Φ except χ(0) = 0, so the origin carries the
//! coin −1. The crate provides:
//!
//! - matrix-free application of S, C, U and exact light-cone time evolution
//!   ([`walk`]),
//! - the spectral-mapping operator zoo d̃, d, ι and the discriminants
//!   T̃, T̃₀, T ([`smt`]), with dense finite-torus stand-ins ([`dense`]),
//! - closed-form spectral predictions (band, arc, multiplicities), torus
//!   spectra, band-coverage metrics, and resolvent/divergence quadrature
//!   probes ([`spectral`]),
//! - the birth eigenspaces B± = ker(S±1) ∩ ker(C+1): multiplicity
//!   classification, explicit normalized eigenvectors with closed-form
//!   site profiles, and the finite-support families that witness infinite
//!   multiplicity for n ≥ 2 ([`birth`]),
//! - the time-averaged limit measure and its empirical Cesàro average
//!   ([`measure`]).

pub mod birth;
pub mod dense;
pub mod error;
pub mod lattice;
pub mod measure;
pub mod params;
pub mod smt;
pub mod spectral;
pub mod state;
pub mod walk;

pub use error::{Error, Result};
pub use lattice::LatticeWindow;
pub use params::{Sign, WalkParameters};
pub use state::{FieldSpace, ScalarField, WaveFunction};

pub use num_complex::Complex64;
