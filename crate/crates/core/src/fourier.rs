//! Full-line Fourier transform of compactly supported sampled states,
//! evaluated by direct quadrature at arbitrary momenta (hbar = 1):
//!
//!   phi(p) = (2 pi)^(-1/2) * integral exp(-i p x) f(x) dx

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{integrate_samples, WaveFunction};
use crate::parallel;

/// Default momentum window and resolution: 1201 points on [-60, 60].
pub const DEFAULT_P_POINTS: usize = 1201;
pub const DEFAULT_P_MAX: f64 = 60.0;

pub fn default_p_grid() -> Vec<f64> {
    uniform_p_grid(DEFAULT_P_MAX, DEFAULT_P_POINTS)
}

/// Symmetric uniform momentum grid on [-p_max, p_max].
pub fn uniform_p_grid(p_max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && p_max > 0.0);
    let h = 2.0 * p_max / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { p_max } else { -p_max + i as f64 * h })
        .collect()
}

/// Momentum-space amplitudes and probability density on a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumDistribution {
    p_grid: Vec<f64>,
    amplitude: Vec<Complex64>,
    density: Vec<f64>,
}

impl MomentumDistribution {
    pub fn new(p_grid: Vec<f64>, amplitude: Vec<Complex64>) -> Result<Self> {
        if p_grid.is_empty() {
            return Err(Error::InvalidArgument("empty momentum grid".into()));
        }
        if p_grid.len() != amplitude.len() {
            return Err(Error::InvalidArgument(
                "momentum grid and amplitude lengths differ".into(),
            ));
        }
        let density = amplitude.iter().map(|a| a.norm_sqr()).collect();
        Ok(MomentumDistribution { p_grid, amplitude, density })
    }

    pub fn p_grid(&self) -> &[f64] {
        &self.p_grid
    }

    pub fn amplitude(&self) -> &[Complex64] {
        &self.amplitude
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn len(&self) -> usize {
        self.p_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p_grid.is_empty()
    }

    fn uniform_spacing(&self) -> Result<f64> {
        if self.p_grid.len() < 3 {
            return Err(Error::InvalidArgument(
                "momentum quadrature needs at least 3 grid points".into(),
            ));
        }
        let h = self.p_grid[1] - self.p_grid[0];
        let ok = self
            .p_grid
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1.0));
        if !ok {
            return Err(Error::InvalidArgument(
                "momentum quadrature needs a uniform grid".into(),
            ));
        }
        Ok(h)
    }

    /// Integral of the density over the whole sampled momentum window.
    pub fn total_probability(&self) -> Result<f64> {
        let h = self.uniform_spacing()?;
        Ok(integrate_samples(h, &self.density))
    }

    /// Integral of the density over [p1, p2]; both ends must lie inside the
    /// sampled window.
    pub fn probability(&self, p1: f64, p2: f64) -> Result<f64> {
        if p1 >= p2 {
            return Err(Error::InvalidArgument(format!(
                "momentum range needs p1 < p2, got [{p1}, {p2}]"
            )));
        }
        let (lo, hi) = (self.p_grid[0], self.p_grid[self.p_grid.len() - 1]);
        if p1 < lo - 1e-12 || p2 > hi + 1e-12 {
            return Err(Error::OutOfRange(format!(
                "[{p1}, {p2}] is outside the sampled window [{lo}, {hi}]"
            )));
        }
        let h = self.uniform_spacing()?;
        let snap = 1e-9 * h;
        let j_lo = (((p1 - lo) / h) - snap).ceil().max(0.0) as usize;
        let j_hi = ((((p2 - lo) / h) + snap).floor() as usize).min(self.p_grid.len() - 1);
        if j_hi <= j_lo {
            return Ok(0.0);
        }
        let mut total = if j_hi - j_lo >= 2 {
            integrate_samples(h, &self.density[j_lo..=j_hi])
        } else {
            0.5 * h * (self.density[j_lo] + self.density[j_hi])
        };
        // linear slivers at off-grid ends
        let interp = |p: f64| -> f64 {
            let t = (p - lo) / h;
            let j = (t.floor() as usize).min(self.p_grid.len() - 2);
            let frac = t - j as f64;
            self.density[j] + frac * (self.density[j + 1] - self.density[j])
        };
        let lg = self.p_grid[j_lo] - p1;
        if lg > snap {
            total += 0.5 * lg * (interp(p1) + self.density[j_lo]);
        }
        let rg = p2 - self.p_grid[j_hi];
        if rg > snap {
            total += 0.5 * rg * (self.density[j_hi] + interp(p2));
        }
        Ok(total)
    }
}

/// One amplitude phi(p): quadrature of exp(-i p x) f(x) over the grid.
///
/// The unit phasor exp(-i p h) is applied recursively along the grid; the
/// accumulated rounding over n points is O(n eps), far below quadrature error.
fn amplitude_at(weighted: &[Complex64], x0: f64, h: f64, p: f64) -> Complex64 {
    let mut phase = Complex64::from_polar(1.0, -p * x0);
    let step = Complex64::from_polar(1.0, -p * h);
    let mut acc = Complex64::new(0.0, 0.0);
    for wf in weighted {
        acc += wf * phase;
        phase *= step;
    }
    acc / (2.0 * std::f64::consts::PI).sqrt()
}

fn weighted_samples(f: &WaveFunction) -> Vec<Complex64> {
    f.grid()
        .quadrature_weights()
        .iter()
        .zip(f.samples())
        .map(|(w, s)| w * s)
        .collect()
}

/// Fourier transform of a compactly supported state at the requested momenta.
///
/// Evaluates the momenta in parallel when the `parallel` feature is enabled.
pub fn fourier_transform(f: &WaveFunction, p_grid: &[f64]) -> Result<MomentumDistribution> {
    if p_grid.is_empty() {
        return Err(Error::InvalidArgument("empty momentum grid".into()));
    }
    let weighted = weighted_samples(f);
    let (x0, h) = (f.grid().lower(), f.grid().spacing());
    let amps = parallel::map_indexed(p_grid.len(), |i| amplitude_at(&weighted, x0, h, p_grid[i]));
    MomentumDistribution::new(p_grid.to_vec(), amps)
}

/// Sequential twin of [`fourier_transform`]; same arithmetic, one thread.
pub fn fourier_transform_serial(f: &WaveFunction, p_grid: &[f64]) -> Result<MomentumDistribution> {
    if p_grid.is_empty() {
        return Err(Error::InvalidArgument("empty momentum grid".into()));
    }
    let weighted = weighted_samples(f);
    let (x0, h) = (f.grid().lower(), f.grid().spacing());
    let amps =
        parallel::map_indexed_serial(p_grid.len(), |i| amplitude_at(&weighted, x0, h, p_grid[i]));
    MomentumDistribution::new(p_grid.to_vec(), amps)
}
