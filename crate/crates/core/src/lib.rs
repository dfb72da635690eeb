//! Squeezing spectra of the resonance fluorescence of a J=1/2 -> J=1/2 atom
//! driven by a linearly and a circularly polarized field, with and without
//! vacuum-induced coherence between the two pi transitions.
//!
//! The crate is `no_std` (it needs `alloc`). Quantities are dimensionless,
//! measured in units of the total excited-state decay rate.

#![no_std]
// `!(a < b)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub type C64 = nalgebra::Complex<f64>;

pub mod dressed;
pub mod error;
pub mod grid;
pub mod liouville;
pub mod model;
pub mod oracle;
pub mod params;
pub mod spectra;

pub use dressed::{
    dressed_basis, dressed_populations, dressed_rates, sideband_spectrum_pi, sideband_spectrum_sigma,
    sideband_weights_pi, sideband_weights_sigma, transition_frequencies, DressedBasis, DressedModel, DressedState,
    PiQuadrature, WidthPair,
};
pub use error::{Error, Result};
pub use grid::FrequencyGrid;
pub use liouville::{DensityMatrix, Label, LiouvilleIndex, LiouvilleVector};
pub use model::{analytic_steady_state, build_hamiltonian, build_liouvillian, steady_state};
pub use oracle::{time_domain_spectrum_oracle, two_level_spectrum_oracle};
pub use params::{CrossDamping, ParamsBuilder, SystemParams};
pub use spectra::{
    initial_covariances, resolvent, squeezing_spectrum_pi, squeezing_spectrum_sigma, Method, Sample, SpectrumEngine,
    SpectrumResult, Transition, Vic,
};
