//! Spectral-theorem time evolution: expand a state in a model's eigenbasis,
//! attach unimodular phases exp(-i E_k t), and reconstruct snapshots. No
//! time-stepping is involved, so unitarity holds exactly at the coefficient
//! level and the only error sources are truncation and quadrature.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, IntervalSpec, WaveFunction};
use crate::model::ModelSpec;
use crate::parallel;

/// Threshold on the coefficient-mass deficit above which an expansion is
/// rejected as unfaithful.
pub const FAITHFUL_DEFICIT: f64 = 1e-6;

/// Default truncation for eigenbasis expansions.
pub const DEFAULT_MODES: usize = 128;

/// An orthonormal eigenbasis with real spectrum, indexed by k.
pub trait EigenBasis: Send + Sync {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Eigenvalues in nondecreasing order.
    fn eigenvalue(&self, k: usize) -> f64;
    fn evaluate(&self, k: usize, x: f64) -> Complex64;
}

/// A state resolved in an eigenbasis: eigenvalues, sampled modes and
/// expansion coefficients c_k = <psi_k, f>.
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    coefficients: Vec<Complex64>,
    modes: Vec<Vec<Complex64>>,
    grid: Grid,
    initial_norm_sq: f64,
}

impl SpectralDecomposition {
    pub fn expand(basis: &dyn EigenBasis, initial: &WaveFunction) -> Self {
        let grid = initial.grid().clone();
        let weights = grid.quadrature_weights();
        let points: Vec<f64> = grid.points().collect();
        let k_count = basis.len();
        let modes: Vec<Vec<Complex64>> = parallel::map_indexed(k_count, |k| {
            points.iter().map(|&x| basis.evaluate(k, x)).collect()
        });
        let coefficients = modes
            .iter()
            .map(|mode| {
                mode.iter()
                    .zip(initial.samples())
                    .zip(&weights)
                    .map(|((m, s), w)| w * m.conj() * s)
                    .sum()
            })
            .collect();
        let eigenvalues = (0..k_count).map(|k| basis.eigenvalue(k)).collect();
        SpectralDecomposition {
            eigenvalues,
            coefficients,
            modes,
            grid,
            initial_norm_sq: initial.norm_sq(),
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// sum |c_k|^2 of the truncated expansion.
    pub fn coefficient_mass(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// ||f||^2 - sum |c_k|^2 (Bessel: nonnegative up to quadrature noise).
    pub fn deficit(&self) -> f64 {
        self.initial_norm_sq - self.coefficient_mass()
    }

    pub fn is_faithful(&self) -> bool {
        self.deficit() <= FAITHFUL_DEFICIT
    }

    fn reconstruct_at(&self, t: f64) -> (WaveFunction, f64, f64) {
        let phased: Vec<Complex64> = self
            .coefficients
            .iter()
            .zip(&self.eigenvalues)
            .map(|(c, e)| c * Complex64::from_polar(1.0, -e * t))
            .collect();
        let n = self.grid.len();
        let mut samples = vec![Complex64::new(0.0, 0.0); n];
        for (c, mode) in phased.iter().zip(&self.modes) {
            for (s, m) in samples.iter_mut().zip(mode) {
                *s += c * m;
            }
        }
        let norm = phased.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let mass = self.coefficient_mass();
        let autocorr = if mass > 0.0 {
            self.coefficients
                .iter()
                .zip(&phased)
                .map(|(c0, ct)| c0.conj() * ct)
                .sum::<Complex64>()
                .norm()
                / mass
        } else {
            0.0
        };
        let wf = WaveFunction::new(self.grid.clone(), samples).expect("grid-sized snapshot");
        (wf, norm, autocorr)
    }
}

/// Evolution snapshots with the conserved traces.
#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub snapshots: Vec<WaveFunction>,
    /// Coefficient-space norm at each time; constant because the phases are
    /// unimodular.
    pub norm_trace: Vec<f64>,
    /// |<psi(0)|psi(t)>| in the eigenbasis, normalized by the coefficient
    /// mass so a stationary state reads exactly 1.
    pub autocorrelation: Vec<f64>,
}

/// exp(-i H t) through the spectral expansion; snapshots at distinct times
/// are computed in parallel when the `parallel` feature is on.
pub fn evolve(decomp: &SpectralDecomposition, times: &[f64]) -> Result<EvolutionResult> {
    let deficit = decomp.deficit();
    if deficit > FAITHFUL_DEFICIT {
        return Err(Error::UnfaithfulExpansion { deficit });
    }
    let rows = parallel::map_indexed(times.len(), |i| decomp.reconstruct_at(times[i]));
    Ok(collect_rows(times, rows))
}

/// Sequential twin of [`evolve`]; same arithmetic, one thread.
pub fn evolve_serial(decomp: &SpectralDecomposition, times: &[f64]) -> Result<EvolutionResult> {
    let deficit = decomp.deficit();
    if deficit > FAITHFUL_DEFICIT {
        return Err(Error::UnfaithfulExpansion { deficit });
    }
    let rows = parallel::map_indexed_serial(times.len(), |i| decomp.reconstruct_at(times[i]));
    Ok(collect_rows(times, rows))
}

fn collect_rows(times: &[f64], rows: Vec<(WaveFunction, f64, f64)>) -> EvolutionResult {
    let mut snapshots = Vec::with_capacity(rows.len());
    let mut norm_trace = Vec::with_capacity(rows.len());
    let mut autocorrelation = Vec::with_capacity(rows.len());
    for (wf, norm, auto) in rows {
        snapshots.push(wf);
        norm_trace.push(norm);
        autocorrelation.push(auto);
    }
    EvolutionResult { times: times.to_vec(), snapshots, norm_trace, autocorrelation }
}

/// Probability current j(x0) = 2 Im(conj(f) f') with a centered difference,
/// at the grid point nearest to x0. This is the flux satisfying the
/// continuity equation for H = -d^2/dx^2 + V in the hbar = 2m = 1 scaling.
pub fn probability_current(f: &WaveFunction, x0: f64) -> Result<f64> {
    let g = f.grid();
    let j = g.nearest_index(x0);
    if j == 0 || j == g.len() - 1 {
        return Err(Error::OutOfRange(format!(
            "current probe {x0} lands on a grid edge"
        )));
    }
    let h = g.spacing();
    let s = f.samples();
    let deriv = (s[j + 1] - s[j - 1]) / (2.0 * h);
    Ok(2.0 * (s[j].conj() * deriv).im)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfinementVerdict {
    Confined,
    Leaked { max_leak: f64 },
}

/// Evolve trial states supported inside the model's invariant region and
/// measure the probability mass that ever appears outside it.
pub fn confinement_verdict(
    model: &ModelSpec,
    trials: &[WaveFunction],
    times: &[f64],
) -> Result<ConfinementVerdict> {
    let region = model.invariant_region().ok_or_else(|| {
        Error::InvalidArgument("model has no impenetrable-barrier region".into())
    })?;
    let mut max_leak = 0.0f64;
    for trial in trials {
        let outside = trial.mass_outside(&region);
        if outside > 1e-12 {
            return Err(Error::PreconditionViolated(format!(
                "trial carries {outside:.3e} probability outside the invariant region"
            )));
        }
        let basis = model.basis(DEFAULT_MODES)?;
        let decomp = SpectralDecomposition::expand(basis.as_ref(), trial);
        let result = evolve(&decomp, times)?;
        for snap in &result.snapshots {
            max_leak = max_leak.max(snap.mass_outside(&region));
        }
    }
    if max_leak <= 1e-9 {
        Ok(ConfinementVerdict::Confined)
    } else {
        Ok(ConfinementVerdict::Leaked { max_leak })
    }
}

/// Shorthand for the region check in tests and the CLI.
pub fn region_probability(f: &WaveFunction, region: &IntervalSpec) -> f64 {
    let total = f.norm_sq();
    if total == 0.0 {
        return 0.0;
    }
    (total - f.mass_outside(region)) / total
}
