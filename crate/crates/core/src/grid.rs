//! Intervals, uniform grids, sampled complex-valued functions and their
//! L2 geometry (quadrature, inner products, distances).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Orientation of a half-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Positive,
    Negative,
}

/// The underlying subset of the real line carrying a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntervalSpec {
    Bounded { a: f64, b: f64 },
    HalfLine { origin: f64, direction: Direction },
    FullLine,
}

impl IntervalSpec {
    /// Bounded interval (a, b); requires a < b.
    pub fn bounded(a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidArgument(format!(
                "bounded interval needs a < b, got a = {a}, b = {b}"
            )));
        }
        Ok(IntervalSpec::Bounded { a, b })
    }

    pub fn half_line(origin: f64, direction: Direction) -> Self {
        IntervalSpec::HalfLine { origin, direction }
    }

    /// Indicator function of the closed set: 1 inside, 0 outside.
    pub fn indicator(&self, x: f64) -> f64 {
        if self.contains(x) {
            1.0
        } else {
            0.0
        }
    }

    /// Membership in the closure (endpoints included).
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            IntervalSpec::Bounded { a, b } => x >= a && x <= b,
            IntervalSpec::HalfLine { origin, direction } => match direction {
                Direction::Positive => x >= origin,
                Direction::Negative => x <= origin,
            },
            IntervalSpec::FullLine => true,
        }
    }

    /// Length of a bounded interval.
    pub fn length(&self) -> Option<f64> {
        match *self {
            IntervalSpec::Bounded { a, b } => Some(b - a),
            _ => None,
        }
    }
}

/// Uniform grid over a bounded interval, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    n_points: usize,
}

impl Grid {
    /// Uniform grid with `n_points >= 3` over a bounded interval.
    pub fn new(interval: IntervalSpec, n_points: usize) -> Result<Self> {
        let (a, b) = match interval {
            IntervalSpec::Bounded { a, b } => (a, b),
            _ => {
                return Err(Error::InvalidArgument(
                    "only bounded intervals can be sampled on a grid".into(),
                ))
            }
        };
        if n_points < 3 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 3 points, got {n_points}"
            )));
        }
        Ok(Grid { a, b, n_points })
    }

    pub fn bounded(a: f64, b: f64, n_points: usize) -> Result<Self> {
        Grid::new(IntervalSpec::bounded(a, b)?, n_points)
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    pub fn interval(&self) -> IntervalSpec {
        IntervalSpec::Bounded { a: self.a, b: self.b }
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / (self.n_points - 1) as f64
    }

    /// The i-th grid point; the last index returns the upper endpoint exactly.
    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_points);
        if i == self.n_points - 1 {
            self.b
        } else {
            self.a + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }

    /// Index of the grid point closest to `x`.
    pub fn nearest_index(&self, x: f64) -> usize {
        let raw = ((x - self.a) / self.spacing()).round();
        (raw.max(0.0) as usize).min(self.n_points - 1)
    }

    /// Quadrature weights: composite Simpson, closed with a 3/8 rule on the
    /// last three cells when the cell count is odd. Exact for cubics.
    pub fn quadrature_weights(&self) -> Vec<f64> {
        quadrature_weights(self.n_points, self.spacing())
    }
}

pub(crate) fn quadrature_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 3, "quadrature needs at least 3 points");
    let cells = n - 1;
    let mut w = vec![0.0; n];
    let simpson_end = if cells % 2 == 0 { n } else { n - 3 };
    if simpson_end >= 3 {
        // Simpson over points [0, simpson_end)
        w[0] += h / 3.0;
        w[simpson_end - 1] += h / 3.0;
        for j in 1..simpson_end - 1 {
            w[j] += if j % 2 == 1 { 4.0 * h / 3.0 } else { 2.0 * h / 3.0 };
        }
    }
    if cells % 2 != 0 {
        // 3/8 closure over the final three cells
        let base = n - 4;
        let c = 3.0 * h / 8.0;
        w[base] += c;
        w[base + 1] += 3.0 * c;
        w[base + 2] += 3.0 * c;
        w[base + 3] += c;
    }
    w
}

/// Integrate samples on a uniform grid with the composite Simpson/3-8 rule.
pub fn integrate_samples(h: f64, values: &[f64]) -> f64 {
    let w = quadrature_weights(values.len(), h);
    w.iter().zip(values).map(|(wi, vi)| wi * vi).sum()
}

/// Complex-valued function sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: Grid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a {}-point grid",
                samples.len(),
                grid.len()
            )));
        }
        Ok(WaveFunction { grid, samples })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.points().map(f).collect();
        WaveFunction { grid, samples }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        WaveFunction::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    /// Squared L2 norm by quadrature.
    pub fn norm_sq(&self) -> f64 {
        let w = self.grid.quadrature_weights();
        w.iter()
            .zip(&self.samples)
            .map(|(wi, s)| wi * s.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Rescale to unit L2 norm.
    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            for s in &mut self.samples {
                *s /= n;
            }
        }
        self
    }

    pub fn scaled(mut self, c: Complex64) -> Self {
        for s in &mut self.samples {
            *s *= c;
        }
        self
    }

    /// Largest |sample| outside the closed interval [a, b].
    pub fn max_abs_outside(&self, a: f64, b: f64) -> f64 {
        self.grid
            .points()
            .zip(&self.samples)
            .filter(|(x, _)| *x < a || *x > b)
            .map(|(_, s)| s.norm())
            .fold(0.0, f64::max)
    }

    /// Probability mass on grid points outside the closed region.
    pub fn mass_outside(&self, region: &IntervalSpec) -> f64 {
        let w = self.grid.quadrature_weights();
        self.grid
            .points()
            .zip(&self.samples)
            .zip(&w)
            .map(|((x, s), wi)| wi * (1.0 - region.indicator(x)) * s.norm_sqr())
            .sum()
    }

    /// Quadrature of |f|^2 over [x1, x2] (clipped to the grid span).
    pub(crate) fn abs2_integral_between(&self, x1: f64, x2: f64) -> f64 {
        let g = &self.grid;
        let h = g.spacing();
        let lo = x1.max(g.lower());
        let hi = x2.min(g.upper());
        if lo >= hi {
            return 0.0;
        }
        let snap = 1e-9 * h;
        let j_lo = (((lo - g.lower()) / h) - snap).ceil().max(0.0) as usize;
        let j_hi = ((((hi - g.lower()) / h) + snap).floor() as usize).min(g.len() - 1);
        let dens: Vec<f64> = self.samples[j_lo..=j_hi].iter().map(|s| s.norm_sqr()).collect();
        let mut total = if dens.len() >= 3 {
            integrate_samples(h, &dens)
        } else if dens.len() == 2 {
            0.5 * h * (dens[0] + dens[1])
        } else {
            0.0
        };
        // trapezoid slivers for ends that fall between grid points
        let d_at = |x: f64| -> f64 {
            let t = (x - g.lower()) / h;
            let j = (t.floor() as usize).min(g.len() - 2);
            let frac = t - j as f64;
            let a = self.samples[j].norm_sqr();
            let b = self.samples[j + 1].norm_sqr();
            a + frac * (b - a)
        };
        let left_gap = g.point(j_lo) - lo;
        if left_gap > snap {
            total += 0.5 * left_gap * (d_at(lo) + dens[0]);
        }
        let right_gap = hi - g.point(j_hi);
        if right_gap > snap {
            total += 0.5 * right_gap * (dens[dens.len() - 1] + d_at(hi));
        }
        total
    }
}

fn check_same_grid(f: &WaveFunction, g: &WaveFunction) -> Result<()> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch(
            "operands are sampled on different grids".into(),
        ));
    }
    Ok(())
}

/// L2 inner product <f, g> = integral of conj(f) g, by quadrature.
///
/// Conjugate-symmetric: `inner_product(f, g) == conj(inner_product(g, f))`.
pub fn inner_product(f: &WaveFunction, g: &WaveFunction) -> Result<Complex64> {
    check_same_grid(f, g)?;
    let w = f.grid.quadrature_weights();
    Ok(w.iter()
        .zip(f.samples.iter().zip(&g.samples))
        .map(|(wi, (fs, gs))| wi * fs.conj() * gs)
        .sum())
}

/// L2 distance ||f - g|| on a common grid.
pub fn l2_distance(f: &WaveFunction, g: &WaveFunction) -> Result<f64> {
    check_same_grid(f, g)?;
    let w = f.grid.quadrature_weights();
    let sq: f64 = w
        .iter()
        .zip(f.samples.iter().zip(&g.samples))
        .map(|(wi, (fs, gs))| wi * (fs - gs).norm_sqr())
        .sum();
    Ok(sq.sqrt())
}
