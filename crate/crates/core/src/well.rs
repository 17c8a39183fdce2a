//! The Dirichlet (infinite-well) Hamiltonian on [0, pi]: exact eigenpairs,
//! momentum-space densities through the full-line Fourier transform, and
//! position/momentum localization probabilities.
//!
//! Eigenstates are kept analytic and sampled on demand; sampling on a grid
//! wider than [0, pi] extends them by zero, so a well state is always a
//! full-line object supported by the well.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, MomentumDistribution};
use crate::grid::{Grid, WaveFunction};

/// Default position resolution on the working interval.
pub const DEFAULT_GRID_POINTS: usize = 2001;

pub fn default_well_grid() -> Grid {
    Grid::bounded(0.0, PI, DEFAULT_GRID_POINTS).expect("valid default grid")
}

/// n-th eigenstate of the infinite well, psi_n(x) = sqrt(2/pi) sin(n x) on
/// [0, pi] and identically zero outside.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WellEigenstate {
    n: u32,
}

impl WellEigenstate {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "well eigenstates are indexed by n >= 1".into(),
            ));
        }
        Ok(WellEigenstate { n })
    }

    pub fn index(&self) -> u32 {
        self.n
    }

    pub fn energy(&self) -> f64 {
        (self.n as u64 * self.n as u64) as f64
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= PI {
            0.0
        } else {
            (2.0 / PI).sqrt() * (self.n as f64 * x).sin()
        }
    }

    pub fn sample(&self, grid: Grid) -> WaveFunction {
        WaveFunction::from_real_fn(grid, |x| self.evaluate(x))
    }

    /// Closed-form momentum amplitude of the zero-extended eigenstate,
    ///   phi_n(p) = (n / pi) (1 - (-1)^n exp(-i p pi)) / (n^2 - p^2),
    /// with the removable singularity at p = +-n replaced by its limit
    /// (-+ i / 2) inside a 1e-6 window.
    pub fn momentum_amplitude(&self, p: f64) -> Complex64 {
        let n = self.n as f64;
        if (p.abs() - n).abs() < 1e-6 {
            return Complex64::new(0.0, -0.5 * p.signum());
        }
        let sign = if self.n % 2 == 0 { -1.0 } else { 1.0 };
        let numer = Complex64::new(1.0, 0.0) + sign * Complex64::from_polar(1.0, -p * PI);
        (n / PI) * numer / (n * n - p * p)
    }

    /// |phi_n(p)|^2 in closed form.
    pub fn momentum_density_exact(&self, p: f64) -> f64 {
        self.momentum_amplitude(p).norm_sqr()
    }
}

/// Infinite-well energy E_n = n^2 (n >= 1).
pub fn well_energy(n: u32) -> Result<f64> {
    Ok(WellEigenstate::new(n)?.energy())
}

/// Dirichlet eigenbasis {psi_1, ..., psi_modes} for spectral evolution.
pub struct WellBasis {
    modes: usize,
}

impl WellBasis {
    pub fn new(modes: usize) -> Self {
        WellBasis { modes: modes.max(1) }
    }
}

impl crate::evolution::EigenBasis for WellBasis {
    fn len(&self) -> usize {
        self.modes
    }

    fn eigenvalue(&self, k: usize) -> f64 {
        let n = (k + 1) as u64;
        (n * n) as f64
    }

    fn evaluate(&self, k: usize, x: f64) -> Complex64 {
        let state = WellEigenstate { n: (k + 1) as u32 };
        Complex64::new(state.evaluate(x), 0.0)
    }
}

/// Momentum density of psi_n by direct quadrature of the Fourier transform
/// on the default position grid.
pub fn well_momentum_density(n: u32, p_grid: &[f64]) -> Result<MomentumDistribution> {
    let state = WellEigenstate::new(n)?;
    let sampled = state.sample(default_well_grid());
    fourier_transform(&sampled, p_grid)
}

/// Probability of finding the particle in (x1, x2): quadrature of |f|^2,
/// clipped to the sampled span.
pub fn localization_probability(f: &WaveFunction, x1: f64, x2: f64) -> Result<f64> {
    if x1 >= x2 {
        return Err(Error::InvalidArgument(format!(
            "localization range needs x1 < x2, got [{x1}, {x2}]"
        )));
    }
    Ok(f.abs2_integral_between(x1, x2))
}

/// Probability of a momentum measurement in (p1, p2) for a sampled momentum
/// distribution. Both ends must lie inside the sampled window.
pub fn momentum_probability(dist: &MomentumDistribution, p1: f64, p2: f64) -> Result<f64> {
    dist.probability(p1, p2)
}
