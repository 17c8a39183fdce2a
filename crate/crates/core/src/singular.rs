//! Singular barrier Hamiltonians on the line: the centrifugal model
//! -d^2/dx^2 + n(n-1)/x^2 and the Calogero model -d^2/dx^2 + x^2 + gamma/x^2,
//! their exact Laguerre eigenfunctions, residual verification, half-line
//! decoupling checks, and the epsilon-regularized spectrum.

use num_complex::Complex64;


use crate::error::{Error, Result};
use crate::evolution::{self, EigenBasis, SpectralDecomposition};
use crate::grid::{Grid, IntervalSpec, WaveFunction};
use crate::model::ModelSpec;
use crate::special::ln_gamma;
use crate::tridiag::smallest_eigenvalues;

/// Radial domain (0, X_MAX]; the Gaussian factor is below 1e-31 at the cut.
pub const X_MAX: f64 = 12.0;
pub const RADIAL_POINTS: usize = 8001;

/// Radial grid on (0, X_MAX]: n points from X_MAX/n to X_MAX, spacing
/// exactly X_MAX/n, so the excluded origin sits one step below the first
/// sample.
pub fn radial_grid(n_points: usize) -> Grid {
    let h = X_MAX / n_points as f64;
    Grid::bounded(h, X_MAX, n_points).expect("valid radial grid")
}

/// Calogero coupling gamma > -1/4 with optional regularization
/// x^2 -> x^2 + epsilon in the potential denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalogeroSpec {
    gamma: f64,
    epsilon: f64,
}

impl CalogeroSpec {
    pub fn new(gamma: f64, epsilon: f64) -> Result<Self> {
        if !(gamma > -0.25) {
            return Err(Error::InvalidArgument(format!(
                "Calogero coupling needs gamma > -1/4, got {gamma}"
            )));
        }
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "regularization must be nonnegative, got {epsilon}"
            )));
        }
        Ok(CalogeroSpec { gamma, epsilon })
    }

    /// The singular model (epsilon = 0).
    pub fn singular(gamma: f64) -> Result<Self> {
        CalogeroSpec::new(gamma, 0.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Laguerre order alpha = (1/2) sqrt(1 + 4 gamma).
    pub fn alpha_exp(&self) -> f64 {
        0.5 * (1.0 + 4.0 * self.gamma).sqrt()
    }

    pub fn potential(&self, x: f64) -> f64 {
        x * x + self.gamma / (x * x + self.epsilon)
    }
}

/// E_n = 4n + 2 + sqrt(1 + 4 gamma), n >= 0.
pub fn calogero_energy(n: u32, gamma: f64) -> Result<f64> {
    if !(gamma > -0.25) {
        return Err(Error::InvalidArgument(format!(
            "Calogero coupling needs gamma > -1/4, got {gamma}"
        )));
    }
    Ok(4.0 * n as f64 + 2.0 + (1.0 + 4.0 * gamma).sqrt())
}

/// Generalized Laguerre polynomial L_n^alpha(u) by the three-term recurrence
///   (k+1) L_{k+1} = (2k + 1 + alpha - u) L_k - (k + alpha) L_{k-1}.
pub fn laguerre(n: u32, alpha: f64, u: f64) -> f64 {
    debug_assert!(alpha > -1.0, "Laguerre order must exceed -1");
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - u;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - u) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact eigenstate of the singular Calogero model on the right half-line:
///   f_n(x) = N x^((2 alpha + 1)/2) exp(-x^2/2) L_n^alpha(x^2),
/// normalized over (0, inf) with N^2 = 2 n! / Gamma(n + alpha + 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalogeroEigenstate {
    n: u32,
    gamma: f64,
    alpha: f64,
    norm_const: f64,
}

impl CalogeroEigenstate {
    pub fn index(&self) -> u32 {
        self.n
    }

    pub fn energy(&self) -> f64 {
        4.0 * self.n as f64 + 2.0 + (1.0 + 4.0 * self.gamma).sqrt()
    }

    pub fn normalization(&self) -> f64 {
        self.norm_const
    }

    /// Right-branch value; identically zero for x <= 0.
    pub fn evaluate(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let exponent = (2.0 * self.alpha + 1.0) / 2.0;
        self.norm_const
            * x.powf(exponent)
            * (-x * x / 2.0).exp()
            * laguerre(self.n, self.alpha, x * x)
    }

    /// Mirror image supported on the negative half-line, positive leading
    /// coefficient near the origin.
    pub fn evaluate_left(&self, x: f64) -> f64 {
        self.evaluate(-x)
    }

    pub fn sample(&self, grid: Grid) -> WaveFunction {
        WaveFunction::from_real_fn(grid, |x| self.evaluate(x))
    }
}

/// Closed-form eigenstate of the singular model; rejects epsilon > 0.
pub fn calogero_eigenstate(n: u32, spec: &CalogeroSpec) -> Result<CalogeroEigenstate> {
    if spec.epsilon != 0.0 {
        return Err(Error::UnsupportedForRegularized);
    }
    let alpha = spec.alpha_exp();
    let nf = n as f64;
    let norm_const = (0.5 * (2.0f64.ln() + ln_gamma(nf + 1.0) - ln_gamma(nf + alpha + 1.0))).exp();
    Ok(CalogeroEigenstate { n, gamma: spec.gamma, alpha, norm_const })
}

/// Relative eigen-residual || H f - E f || / || f || with a centered
/// second difference and the model's exact potential. The first two interior
/// points are excluded from both norms: the potential is unbounded there and
/// the stencil is invalid. Second-order: scales as spacing^2.
pub fn residual(model: &ModelSpec, state: &WaveFunction, energy: f64) -> f64 {
    let g = state.grid();
    let h = g.spacing();
    let s = state.samples();
    let n = g.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 3..n - 1 {
        let lap = (s[j + 1] - 2.0 * s[j] + s[j - 1]) / (h * h);
        let x = g.point(j);
        let r = -lap + (model.potential(x) - energy) * s[j];
        num += r.norm_sqr();
        den += s[j].norm_sqr();
    }
    (num / den).sqrt()
}

/// Generalized ground state |x|^n_exp of the centrifugal model; vanishes at
/// the origin together with its derivative.
pub fn centrifugal_ground(n_exp: u32, x: f64) -> f64 {
    assert!(n_exp >= 2, "centrifugal exponent must be at least 2");
    x.abs().powi(n_exp as i32)
}

/// One probe of the half-line invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineRow {
    pub t: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub current_at_origin: f64,
}

/// Interleaved left/right eigenbasis of the singular Calogero model; each
/// energy appears twice (barrier degeneracy).
pub struct CalogeroPairBasis {
    states: Vec<CalogeroEigenstate>,
}

/// Cap on the pair count: keeps every mode's turning point well inside the
/// sampled radial window.
pub const MAX_PAIRS: usize = 24;

impl CalogeroPairBasis {
    pub fn new(gamma: f64, pairs: usize) -> Result<Self> {
        let spec = CalogeroSpec::singular(gamma)?;
        let pairs = pairs.clamp(1, MAX_PAIRS);
        let states = (0..pairs as u32)
            .map(|n| calogero_eigenstate(n, &spec))
            .collect::<Result<Vec<_>>>()?;
        Ok(CalogeroPairBasis { states })
    }
}

impl EigenBasis for CalogeroPairBasis {
    fn len(&self) -> usize {
        2 * self.states.len()
    }

    fn eigenvalue(&self, k: usize) -> f64 {
        self.states[k / 2].energy()
    }

    fn evaluate(&self, k: usize, x: f64) -> Complex64 {
        let state = &self.states[k / 2];
        let v = if k % 2 == 0 { state.evaluate(x) } else { state.evaluate_left(x) };
        Complex64::new(v, 0.0)
    }
}

/// Evolve a state straddling the origin (gamma >= 3/4) and report the
/// half-line localization probabilities and the probability current at the
/// first grid point right of the origin.
pub fn half_line_invariance(
    spec: &CalogeroSpec,
    initial: &WaveFunction,
    times: &[f64],
) -> Result<Vec<HalfLineRow>> {
    if spec.gamma < 0.75 {
        return Err(Error::UnsupportedRange(format!(
            "half-line decoupling is asserted for gamma >= 3/4, got {}",
            spec.gamma
        )));
    }
    if spec.epsilon != 0.0 {
        return Err(Error::UnsupportedForRegularized);
    }
    let basis = CalogeroPairBasis::new(spec.gamma, 16)?;
    let decomp = SpectralDecomposition::expand(&basis, initial);
    let result = evolution::evolve(&decomp, times)?;

    let right = IntervalSpec::half_line(0.0, crate::grid::Direction::Positive);
    let left = IntervalSpec::half_line(0.0, crate::grid::Direction::Negative);
    let grid = initial.grid();
    let probe = grid
        .points()
        .position(|x| x > 0.0)
        .ok_or_else(|| Error::InvalidArgument("grid has no positive points".into()))?;
    let probe_x = grid.point(probe.max(1).min(grid.len() - 2));

    Ok(times
        .iter()
        .zip(&result.snapshots)
        .map(|(&t, snap)| {
            let total = snap.norm_sq();
            let p_plus = (total - snap.mass_outside(&right)) / total;
            let p_minus = (total - snap.mass_outside(&left)) / total;
            let current = evolution::probability_current(snap, probe_x)
                .expect("probe is an interior point");
            HalfLineRow { t, p_plus, p_minus, current_at_origin: current }
        })
        .collect())
}

/// Smallest eigenvalues of the regularized model
///   -u'' + (x^2 + gamma/(x^2 + epsilon)) u = E u
/// on [-X_MAX, X_MAX] with Dirichlet walls, by finite differences and Sturm
/// bisection. As epsilon -> 0 the low levels pair up around the singular
/// eigenvalues 4n + 2 + sqrt(1 + 4 gamma).
pub fn regularized_spectrum(spec: &CalogeroSpec, n_states: usize) -> Result<Vec<f64>> {
    if spec.epsilon <= 0.0 {
        return Err(Error::InvalidArgument(
            "regularized solver needs epsilon > 0; the singular model has closed-form levels"
                .into(),
        ));
    }
    if n_states == 0 {
        return Err(Error::InvalidArgument("need at least one state".into()));
    }
    let n_interior = RADIAL_POINTS - 2;
    let h = 2.0 * X_MAX / (RADIAL_POINTS - 1) as f64;
    let diag: Vec<f64> = (0..n_interior)
        .map(|i| {
            let x = -X_MAX + (i + 1) as f64 * h;
            2.0 / (h * h) + spec.potential(x)
        })
        .collect();
    let off = vec![-1.0 / (h * h); n_interior - 1];
    Ok(smallest_eigenvalues(&diag, &off, n_states))
}
