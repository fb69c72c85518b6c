//! Adiabatic sweep schedules for small driven quantum systems.
//!
//! The crate builds the Landau-Zener, single-qubit interpolation and
//! three-qubit `N = 21` factoring Hamiltonians, drives them with linear,
//! quadratic and exponential-like sweeps, and measures how much ground-state
//! population survives at the end of the sweep.
//!
//! Everything here is allocation-only (`no_std` + `alloc`); IO, CSV and the
//! command line live in the `adiasweep` crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod evolve;
pub mod hermlin;
pub mod models;
pub mod schedules;
pub mod search;

pub use error::{Error, Result};
pub use hermlin::{apply, eig_hermitian, eig_hermitian_near, kron, unitary_step, ComplexMatrix, EigenSystem, StateVector};
pub use models::{Aqc1Params, Factor21Params, LzParams, ModelSpec, RotatedFrame};
pub use schedules::{Schedule, ScheduleKind};

pub use num_complex::Complex64;
