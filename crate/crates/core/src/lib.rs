//! Numerical simulator of quantum-state transfer between a two-level atom
//! and a cavity field in the resonant Jaynes-Cummings model.
//!
//! The building blocks:
//! - [`fock`]: truncated Fock-basis field states and (modified) boson
//!   operators, including the modified coherent states `|alpha, gamma>`;
//! - [`dynamics`]: closed-form block propagation of the single-cavity JC
//!   system, time-dependent couplings, and the effective separated dynamics;
//! - [`protocol`]: the write (qubit to field cat) and spin-echo read
//!   protocols;
//! - [`phase_space`]: momentum distributions and Wigner functions;
//! - [`two_cavity`]: entanglement transfer between two JC cells and its
//!   purity diagnostics;
//! - [`metrics`]: fidelities, the Loschmidt echo, and the dissipation factor.
//!
//! All math is generic over the scalar type via [`real::Real`]; the `*64`
//! aliases below fix `f64`, which every shipped tolerance assumes.

pub mod dynamics;
pub mod error;
pub mod fock;
pub mod io;
pub mod metrics;
pub mod phase_space;
pub mod protocol;
pub mod real;
pub mod two_cavity;

pub use error::{Error, Result};
pub use real::{Real, C};

/// Complex scalar at the default precision.
pub type C64 = num_complex::Complex<f64>;

pub type FockBasisSpec64 = fock::FockBasisSpec<f64>;
pub type FieldState64 = fock::FieldState<f64>;
pub type McsLabel64 = fock::McsLabel<f64>;
pub type JcParams64 = dynamics::JcParams<f64>;
pub type AtomFieldState64 = dynamics::AtomFieldState<f64>;
pub type CouplingSchedule64 = dynamics::CouplingSchedule<f64>;
pub type QubitState64 = protocol::QubitState<f64>;
pub type TwoCavityState64 = two_cavity::TwoCavityState<f64>;
pub type DissipationParams64 = metrics::DissipationParams<f64>;
