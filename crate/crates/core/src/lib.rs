//! Simulation of non-signaling oracles — small quantum and classical
//! circuits queried with classical inputs — whose outputs reproduce
//! Popescu–Rohrlich (PR) box correlations.
//!
//! The crate is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`); the `*64` aliases below fix `f64`.
//!
//! ```
//! use nsbox::{behavior, circuits::OracleSpec, measurement::{BlochDirection, PartySettings}};
//!
//! let z = PartySettings::same_for_both(BlochDirection::<f64>::z());
//! let b = behavior::behavior_from_oracle(&OracleSpec::bipartite(true), &[z.clone(), z]).unwrap();
//! assert!((behavior::chsh_score(&b).unwrap() - 4.0).abs() < 1e-9);
//! ```

pub mod behavior;
pub mod circuits;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod noise;
pub mod prbases;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Real, Tolerances};

pub type CMatrix64 = linalg::CMatrix<f64>;
pub type StateVector64 = linalg::StateVector<f64>;
pub type DensityMatrix64 = linalg::DensityMatrix<f64>;
pub type Unitary64 = linalg::Unitary<f64>;
pub type ClassicalState64 = circuits::ClassicalState<f64>;
pub type PrimedState64 = circuits::PrimedState<f64>;
pub type BlochDirection64 = measurement::BlochDirection<f64>;
pub type PartySettings64 = measurement::PartySettings<f64>;
pub type Behavior64 = behavior::Behavior<f64>;

pub type StateVector32 = linalg::StateVector<f32>;
pub type DensityMatrix32 = linalg::DensityMatrix<f32>;
pub type Behavior32 = behavior::Behavior<f32>;
