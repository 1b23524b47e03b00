//! Exact bright and dark solitons of the one-dimensional nonlinear
//! Schrödinger equation
//!
//! ```text
//! iΨ_t = −Ψ_xx + v(x,t)Ψ + g₃(x,t)|Ψ|²Ψ + g₅(x,t)|Ψ|⁴Ψ
//! ```
//!
//! with a harmonic trap whose frequency `ω(t)` swings between attractive
//! and expulsive, and cubic/quintic couplings modulated in space and time.
//!
//! The solutions come from the similarity map `Ψ = ρ e^{iφ} Φ(ζ)` that
//! reduces the equation to a stationary one with constant couplings
//! ([`similarity`], [`stationary`]). The rest of the crate checks those
//! closed forms: finite-difference residuals, split-step and
//! Crank–Nicolson evolution ([`evolver`]), convergence and sweep studies
//! ([`diagnostics`]), and a scenario/CSV front end ([`scenario`],
//! [`cli`]).

pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod evolver;
pub mod field;
pub mod scenario;
pub mod similarity;
pub mod stationary;

pub use error::{Error, Result};
pub use evolver::{
    evolve, integrate, AnalyticSoliton, Boundary, Evolver, EvolverConfig, Problem, Scheme,
    Trajectory,
};
pub use field::{compute_observables, FieldState, Grid1D, Observables};
pub use scenario::{parse_scenario, Scenario};
pub use similarity::{
    CouplingConstants, Frame, Lattice, ModulationShape, PotentialForm, SimilarityMap, WidthProfile,
};
pub use stationary::{stationary_residual, ProfileKind, StationaryProfile};
