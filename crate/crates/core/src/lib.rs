//! Spectral numerics for quantum trapping models: the one-parameter family
//! of self-adjoint momentum operators on an interval, the infinite well and
//! its finite-well limit, singular barrier Hamiltonians (centrifugal and
//! Calogero), multi-trap enclosures, a deficiency-index classifier, and
//! spectral-theorem time evolution.
//!
//! Units: hbar = 1 and hbar^2/2m = 1 throughout; Hamiltonians act as
//! -d^2/dx^2 + V. Hot loops (momentum quadrature, evolution snapshots) run
//! on rayon with the default `parallel` feature and fall back to sequential
//! code without it.

pub mod deficiency;
pub mod error;
pub mod evolution;
pub mod extension;
pub mod finite_well;
pub mod fourier;
pub mod grid;
pub mod model;
pub mod multitrap;
mod parallel;
pub mod singular;
pub mod special;
pub mod tridiag;
pub mod well;

pub use error::{Error, Result};
pub use grid::{inner_product, l2_distance, Direction, Grid, IntervalSpec, WaveFunction};

pub use fourier::{
    default_p_grid, fourier_transform, fourier_transform_serial, uniform_p_grid,
    MomentumDistribution,
};

pub use extension::{
    apply_extension_operator, apply_momentum_fd, commutator_residual, domain_diagnostic,
    energy_eigenvalue_alpha, momentum_eigenvalue, project_onto_alpha_basis, AlphaBasis,
    AlphaBasisState, CoefficientSequence, DomainReport, DomainVerdict, ExtensionParameter,
    OperatorPower,
};

pub use well::{
    default_well_grid, localization_probability, momentum_probability, well_energy,
    well_momentum_density, WellBasis, WellEigenstate,
};

pub use finite_well::{
    asymptotic_eigenfunction, asymptotic_energy, convergence_study, solve_bound_states,
    BoundState, ConvergenceData, ConvergenceRow, FiniteWellSpec, Parity,
};

pub use singular::{
    calogero_eigenstate, calogero_energy, centrifugal_ground, half_line_invariance, laguerre,
    radial_grid, regularized_spectrum, residual, CalogeroEigenstate, CalogeroPairBasis,
    CalogeroSpec, HalfLineRow,
};

pub use multitrap::{segment_confinement_check, segment_energy, MultiTrapSpec, SegmentBasis};

pub use deficiency::{
    classify, extension_family_size, reference_cases, DeficiencyReport, DeficiencySolution,
    Expression, ExtensionFamilyInfo, Verdict,
};

pub use evolution::{
    confinement_verdict, evolve, evolve_serial, probability_current, ConfinementVerdict,
    EigenBasis, EvolutionResult, SpectralDecomposition,
};

pub use model::ModelSpec;
