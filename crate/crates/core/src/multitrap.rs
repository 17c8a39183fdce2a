//! The multi-trap Hamiltonian H_q = -d^2/dx^2 - q^2, whose generalized
//! ground state sin(qx) has nodes at m pi / q acting as impenetrable
//! barriers: per-segment Dirichlet spectra and segment-confined evolution.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::evolution::{self, EigenBasis, SpectralDecomposition};
use crate::grid::{IntervalSpec, WaveFunction};

/// Node spacing parameter q and a segment index m; the segment is
/// [(m-1) pi / q, m pi / q].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiTrapSpec {
    q: f64,
    segment: i64,
}

impl MultiTrapSpec {
    pub fn new(q: f64, segment: i64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "node spacing parameter must be positive, got q = {q}"
            )));
        }
        Ok(MultiTrapSpec { q, segment })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn segment_index(&self) -> i64 {
        self.segment
    }

    pub fn segment_bounds(&self) -> (f64, f64) {
        let lo = (self.segment - 1) as f64 * PI / self.q;
        (lo, lo + PI / self.q)
    }

    pub fn segment_interval(&self) -> IntervalSpec {
        let (lo, hi) = self.segment_bounds();
        IntervalSpec::Bounded { a: lo, b: hi }
    }

    /// n-th Dirichlet mode of the segment, sqrt(2q/pi) sin(n q (x - lo)),
    /// identically zero outside.
    pub fn mode(&self, n: u32, x: f64) -> f64 {
        let (lo, hi) = self.segment_bounds();
        if x <= lo || x >= hi {
            return 0.0;
        }
        (2.0 * self.q / PI).sqrt() * (n as f64 * self.q * (x - lo)).sin()
    }

    /// Eigenvalue of H_q on the segment: n^2 q^2 - q^2.
    pub fn hamiltonian_eigenvalue(&self, n: u32) -> f64 {
        segment_energy(n, self.q) - self.q * self.q
    }
}

/// Dirichlet spectrum of a width pi/q segment: n^2 q^2. Coincides with the
/// infinite-well spectrum at q = 1.
pub fn segment_energy(n: u32, q: f64) -> f64 {
    assert!(n >= 1, "segment modes are indexed by n >= 1");
    assert!(q > 0.0, "q must be positive");
    let nq = n as f64 * q;
    nq * nq
}

/// Segment eigenbasis of H_q (the additive -q^2 only shifts all phases).
pub struct SegmentBasis {
    spec: MultiTrapSpec,
    modes: usize,
}

impl SegmentBasis {
    pub fn new(spec: MultiTrapSpec, modes: usize) -> Self {
        SegmentBasis { spec, modes: modes.max(1) }
    }
}

impl EigenBasis for SegmentBasis {
    fn len(&self) -> usize {
        self.modes
    }

    fn eigenvalue(&self, k: usize) -> f64 {
        self.spec.hamiltonian_eigenvalue(k as u32 + 1)
    }

    fn evaluate(&self, k: usize, x: f64) -> Complex64 {
        Complex64::new(self.spec.mode(k as u32 + 1, x), 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentRow {
    pub t: f64,
    pub p_in_segment: f64,
}

/// Evolve a state supported in segment m and report the in-segment
/// probability over time. Confinement is structural: every basis mode is
/// segment-supported.
pub fn segment_confinement_check(
    spec: &MultiTrapSpec,
    initial: &WaveFunction,
    times: &[f64],
) -> Result<Vec<SegmentRow>> {
    let region = spec.segment_interval();
    let outside = initial.mass_outside(&region);
    if outside > 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "initial state carries {outside:.3e} probability outside segment {}",
            spec.segment
        )));
    }
    let basis = SegmentBasis::new(*spec, 128);
    let decomp = SpectralDecomposition::expand(&basis, initial);
    let result = evolution::evolve(&decomp, times)?;
    Ok(times
        .iter()
        .zip(&result.snapshots)
        .map(|(&t, snap)| SegmentRow {
            t,
            p_in_segment: evolution::region_probability(snap, &region),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::model::ModelSpec;
    use approx::assert_abs_diff_eq;

    #[test]
    fn segment_energies_scale_with_width() {
        assert_eq!(segment_energy(1, 1.0), crate::well::well_energy(1).unwrap());
        assert_eq!(segment_energy(2, 1.0), crate::well::well_energy(2).unwrap());
        assert_eq!(segment_energy(1, 2.0), 4.0);
        assert_eq!(segment_energy(3, 2.0), 36.0);
    }

    #[test]
    fn modes_solve_the_segment_dirichlet_problem() {
        // independent width-scaling check: finite differences reproduce
        // n^2 q^2 on the segment
        let spec = MultiTrapSpec::new(2.0, 1).unwrap();
        let (lo, hi) = spec.segment_bounds();
        let grid = Grid::bounded(lo, hi, 4001).unwrap();
        let h = grid.spacing();
        for n in [1u32, 3] {
            let f = WaveFunction::from_real_fn(grid.clone(), |x| spec.mode(n, x));
            let s = f.samples();
            let e = segment_energy(n, 2.0);
            let mut num = 0.0;
            let mut den = 0.0;
            for j in 1..grid.len() - 1 {
                let lap = (s[j + 1] - 2.0 * s[j] + s[j - 1]) / (h * h);
                num += (-lap - e * s[j]).norm_sqr();
                den += (e * s[j]).norm_sqr();
            }
            assert!((num / den).sqrt() <= 1e-5, "n={n}");
        }
    }

    #[test]
    fn sin_qx_is_annihilated_by_h_q() {
        // the generalized ground state: (-d^2/dx^2 - q^2) sin(qx) = 0
        for (q, m) in [(2.0, 1i64), (0.7, 3)] {
            let spec = MultiTrapSpec::new(q, m).unwrap();
            let (lo, hi) = spec.segment_bounds();
            let grid = Grid::bounded(lo, hi, 4001).unwrap();
            let state = WaveFunction::from_real_fn(grid, |x| (q * x).sin());
            let model = ModelSpec::MultiTrap { q, segment: m };
            let r = crate::singular::residual(&model, &state, 0.0);
            assert!(r <= 1e-6, "q={q} m={m}: residual {r:.3e}");
        }
    }

    #[test]
    fn single_mode_stays_in_its_segment() {
        let spec = MultiTrapSpec::new(2.0, 1).unwrap();
        let (lo, hi) = spec.segment_bounds();
        let grid = Grid::bounded(lo - 0.5, hi + 0.5, 3001).unwrap();
        let initial = WaveFunction::from_real_fn(grid, |x| spec.mode(1, x));
        let times: Vec<f64> = (0..30).map(|i| 0.21 * i as f64).collect();
        let rows = segment_confinement_check(&spec, &initial, &times).unwrap();
        for row in rows {
            assert_abs_diff_eq!(row.p_in_segment, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn two_mode_packet_is_confined_with_exact_revival() {
        let q = 2.0;
        let spec = MultiTrapSpec::new(q, 1).unwrap();
        let (lo, hi) = spec.segment_bounds();
        let grid = Grid::bounded(lo - 0.5, hi + 0.5, 3001).unwrap();
        let initial = WaveFunction::from_fn(grid, |x| {
            Complex64::new(0.6 * spec.mode(1, x) + 0.8 * spec.mode(2, x), 0.0)
        });
        let revival = 2.0 * PI / (q * q);
        let times = [0.0, 0.3 * revival, revival];
        let rows = segment_confinement_check(&spec, &initial, &times).unwrap();
        for row in &rows {
            assert_abs_diff_eq!(row.p_in_segment, 1.0, epsilon = 1e-10);
        }
        // common phase period of the n^2 q^2 - q^2 spectrum
        let basis = SegmentBasis::new(spec, 16);
        let decomp = SpectralDecomposition::expand(&basis, &initial);
        let result = evolution::evolve(&decomp, &times).unwrap();
        assert_abs_diff_eq!(result.autocorrelation[2], 1.0, epsilon = 1e-10);
        assert!(result.autocorrelation[1] < 1.0 - 1e-3);
    }

    #[test]
    fn leaking_initial_state_is_rejected() {
        let spec = MultiTrapSpec::new(2.0, 1).unwrap();
        let (lo, hi) = spec.segment_bounds();
        let grid = Grid::bounded(lo - 0.5, hi + 0.5, 3001).unwrap();
        let wide = WaveFunction::from_real_fn(grid, |x| (-(x - 0.5).powi(2) / 0.5).exp());
        assert!(matches!(
            segment_confinement_check(&spec, &wide, &[0.0]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn dynamics_is_translation_covariant() {
        // identical spectra and autocorrelation traces in every segment
        let q = 2.0;
        let times: Vec<f64> = (0..25).map(|i| 0.13 * i as f64).collect();
        let mut traces: Vec<Vec<f64>> = Vec::new();
        for m in [0i64, 1, 5] {
            let spec = MultiTrapSpec::new(q, m).unwrap();
            for n in 1..=8 {
                assert_eq!(
                    spec.hamiltonian_eigenvalue(n),
                    MultiTrapSpec::new(q, 1).unwrap().hamiltonian_eigenvalue(n)
                );
            }
            let (lo, hi) = spec.segment_bounds();
            let grid = Grid::bounded(lo - 0.25, hi + 0.25, 2501).unwrap();
            let initial = WaveFunction::from_fn(grid, |x| {
                Complex64::new(0.6 * spec.mode(1, x) + 0.8 * spec.mode(3, x), 0.0)
            });
            let basis = SegmentBasis::new(spec, 16);
            let decomp = SpectralDecomposition::expand(&basis, &initial);
            let result = evolution::evolve(&decomp, &times).unwrap();
            traces.push(result.autocorrelation);
        }
        for trace in &traces[1..] {
            for (a, b) in trace.iter().zip(&traces[0]) {
                assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
            }
        }
    }
}
