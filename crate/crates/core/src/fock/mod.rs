//! Brute-force validator in a truncated Fock basis: builds the squeezed
//! vacuum, taps both modes through beam splitters, conditions on detector
//! POVMs and evaluates heralding probability, teleportation fidelity and
//! mean photon number numerically, independent of every closed form.

pub mod beam_splitter;
pub mod cutoff;
mod displacement;
pub mod fidelity;
pub mod povm;
pub mod quadrature;
pub mod state;
pub mod subtract;

pub use beam_splitter::BeamSplitterKernel;
pub use cutoff::FockCutoff;
pub use fidelity::{teleport_fidelity, teleport_fidelity_with, FidelityOptions, FidelityOutcome};
pub use povm::{build_povm, DetectorPovm};
pub use state::{
    mean_photon, sps_limit_coeffs, tmsv_coeffs, FockResource, ResourceComponent, TwoModeState,
};
pub use subtract::subtract_photons;
