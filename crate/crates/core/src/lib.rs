//! Simulation core for a tunable two-photon polarization conversion gate.
//!
//! The gate is two polarizing beamsplitters with tunable half-wave plates in
//! between, post-selected on one photon per output port. Its effective action
//! on two polarization qubits is a single Kraus operator parametrized by two
//! wave-plate angles. This crate builds that operator analytically
//! ([`gate`]) and from an explicit two-photon Fock-space propagation
//! ([`fock`]), applies it inside small multi-qubit registers, and evaluates
//! the resulting entanglement and discord ([`measures`]), graph-network
//! rewirings ([`graph`]) and angle-tolerance statistics ([`robustness`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod density;
pub mod error;
pub mod fock;
pub mod gate;
pub mod graph;
pub mod local;
pub mod measures;
mod optimize;
pub mod register;
pub mod robustness;
pub mod states;

pub use density::DensityOperator;
pub use error::{Error, Result};

pub use gate::{GateParams, Preset, TwoQubitKraus};
pub use local::LocalOperator;
pub use register::QubitRegister;

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

/// Largest supported register.
pub const MAX_QUBITS: usize = 8;

#[inline]
pub(crate) const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
