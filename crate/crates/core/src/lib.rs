//! Success-probability × fidelity-enhancement analysis for photon-subtracted
//! two-mode squeezed vacuum resources in continuous-variable teleportation.
//!
//! The crate has two independent evaluation routes:
//!
//! - [`closed_form`]: analytic fidelities, heralding probabilities, photon
//!   numbers and the figure of merit R = P·ΔF as pure functions of the
//!   parameters (squeezing λ, tap transmissivity T, detector efficiency η,
//!   detector kind);
//! - [`fock`]: a truncated Fock-basis simulator that builds the heralded
//!   resource ensemble outright and integrates the teleportation fidelity
//!   from its characteristic function.
//!
//! [`optimize`] maximizes R over (λ, T), [`sweep`]/[`contour`] generate grid
//! and level-set data, and [`validate`] drives the closed-form ↔ simulator
//! comparison.

pub mod closed_form;
pub mod contour;
pub mod error;
pub mod fock;
pub mod optimize;
pub mod params;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
pub use params::{DetectorKind, Metrics, ResourceParams};
