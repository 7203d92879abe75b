//! Interacting multipartite discrete-time quantum walks on a ring.
//!
//! `N` distinguishable walkers hop on `d` sites according to a two-level
//! coin. Walkers that meet interact through a generalized Grover operator
//! with phase `φ`. The crate builds the GHZ-coin bound states of this walk
//! (dimers, Borromean trimers, Brunnian quadrimers), checks the eigenstate
//! condition that selects them, follows what remains after a walker is
//! removed, and computes exact composite-boson normalizations.
//!
//! Floating-point code is generic over [`Real`] (`f32`, `f64`); the aliases
//! below fix the common double-precision instantiations.

pub mod bound;
pub mod coboson;
pub mod error;
pub mod fidelity;
pub mod lattice;
pub mod linalg;
pub mod scalar;
pub mod spectral;
pub mod state;
pub mod walk;

pub use bound::{
    bound_state, chi_state, collective_mixture, ghz_coin, ghz_condition, ghz_condition_closed, phase_grid,
    remove_particle, scan_conditions, verify_eigenstate, ConditionPoint, EigenReport, GhzSign, GhzSpec,
};
pub use coboson::{
    b2_closed, coboson_norm, coboson_report, depleted_norm, ratio_approx, Cluster, CobosonReport,
};
pub use error::{Result, WalkError};
pub use fidelity::{fidelity_sweep, persistence_closed, persistence_numeric, FidelityCoefficients};
pub use lattice::{BasisLabel, Coin, FreeCoin, LatticeConfig};
pub use scalar::Real;
pub use spectral::{
    block_eigenvalues, momentum_block, spectrum_norms, survival_probability, MomentumBlock, SurvivalMethod,
    SurvivalSeries,
};
pub use state::{ensemble_overlap, inner_product, Ensemble, PureState};
pub use walk::{apply_interaction, apply_shift, project_bound, projected_step, step, StepOperator};

pub type LatticeConfig64 = LatticeConfig<f64>;
pub type PureState64 = PureState<f64>;
pub type Ensemble64 = Ensemble<f64>;
pub type StepOperator64 = StepOperator<f64>;
pub type GhzSpec64 = GhzSpec<f64>;
pub type MomentumBlock64 = MomentumBlock<f64>;
pub type FreeCoin64 = FreeCoin<f64>;

pub type LatticeConfig32 = LatticeConfig<f32>;
pub type PureState32 = PureState<f32>;
pub type Ensemble32 = Ensemble<f32>;
