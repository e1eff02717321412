//! One-dimensional few-body scattering and correlated interference.
//!
//! Two superposition models for a particle retro-reflecting from a pair of
//! uncoupled scatterers are implemented side by side:
//!
//! * **SQI** (standard): each amplitude has the particle exchanging momentum
//!   with exactly one scatterer, which alone recoils.
//! * **CQI** (collective): every amplitude has all scatterers recoiling
//!   together, with phases fixed by collective energy-momentum conservation.
//!
//! The crate provides the elastic-recoil kinematics behind both models
//! ([`kinematics`]), the closed-form correlated probability densities in
//! coordinate ([`coordinate`]) and momentum ([`momentum`]) space, the
//! coherent-to-incoherent transition calculators ([`transitions`]), and an
//! independent brute-force scattering oracle ([`oracle`]) — exact
//! transfer-matrix scattering from a double delta potential plus split-step
//! Fourier wavepacket evolution — used to validate the closed forms.

pub mod coordinate;
pub mod error;
pub mod fringe;
pub mod grid;
pub mod kinematics;
pub mod momentum;
pub mod oracle;
pub mod scenario;
pub mod transitions;
pub mod units;

pub use error::{Error, Result};
pub use grid::{Axis, PdfGrid};
pub use scenario::{Body, Model, ScatteringScenario};
pub use units::{make_unit_system, UnitMode, UnitSystem};
