//! Deficiency-index classifier for the first-order (-i d/dx) and
//! second-order (-d^2/dx^2) differential expressions on bounded intervals,
//! half-lines and the full line, with the resulting self-adjoint-extension
//! verdict.
//!
//! The kernels of (A* -+ i) are pure exponentials exp(omega x); everything
//! reduces to whether each exponent is square integrable on the interval.
//! L2 membership is decided analytically from the sign of Re(omega) and
//! cross-checked numerically by quadrature with a tail-decay test.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::grid::{Direction, IntervalSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expression {
    /// -i d/dx
    FirstOrder,
    /// -d^2/dx^2
    SecondOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    EssentiallySelfAdjoint,
    ExtensionFamily(u32),
    NoExtension,
}

/// Closed-form deficiency exponents: solutions exp(omega x) of the two
/// kernel equations, with the labeling that matches the reference
/// classification table (for the first order, the m index counts the
/// growing exponential exp(+x), the n index the decaying exp(-x)).
#[derive(Debug, Clone, PartialEq)]
pub struct DeficiencySolution {
    pub m_exponents: Vec<Complex64>,
    pub n_exponents: Vec<Complex64>,
}

pub fn deficiency_exponents(expression: Expression) -> DeficiencySolution {
    match expression {
        Expression::FirstOrder => DeficiencySolution {
            m_exponents: vec![Complex64::new(1.0, 0.0)],
            n_exponents: vec![Complex64::new(-1.0, 0.0)],
        },
        Expression::SecondOrder => {
            // g'' = -+ i g: exponents are the square roots of -+ i, all with
            // |Re omega| = 1/sqrt(2)
            let root_minus_i = Complex64::from_polar(1.0, -FRAC_PI_4);
            let root_plus_i = Complex64::from_polar(1.0, FRAC_PI_4);
            DeficiencySolution {
                m_exponents: vec![root_minus_i, -root_minus_i],
                n_exponents: vec![root_plus_i, -root_plus_i],
            }
        }
    }
}

/// Analytic L2 membership of exp(omega x) on the interval: bounded intervals
/// admit everything, half-lines only decay toward the open end, the full
/// line nothing with Re omega != 0.
pub fn analytic_membership(omega: Complex64, interval: &IntervalSpec) -> bool {
    match interval {
        IntervalSpec::Bounded { .. } => true,
        IntervalSpec::HalfLine { direction, .. } => match direction {
            Direction::Positive => omega.re < 0.0,
            Direction::Negative => omega.re > 0.0,
        },
        IntervalSpec::FullLine => false,
    }
}

/// Numeric L2 membership: |exp(omega x)|^2 integrated on a 50-unit truncated
/// domain; an unbounded end is classified decaying when the density drops by
/// at least 1e6 between the midpoint and the cut.
pub fn numeric_membership(omega: Complex64, interval: &IntervalSpec) -> bool {
    const SPAN: f64 = 50.0;
    let density = |x: f64| (2.0 * omega.re * x).exp();
    let decays = |origin: f64, sign: f64| -> bool {
        let far = density(origin + sign * SPAN);
        let mid = density(origin + sign * SPAN / 2.0);
        far / mid < 1e-6
    };
    match interval {
        IntervalSpec::Bounded { a, b } => {
            // finite quadrature on the interval itself
            let g = crate::grid::Grid::bounded(*a, *b, 2001).expect("valid interval");
            let vals: Vec<f64> = g.points().map(density).collect();
            crate::grid::integrate_samples(g.spacing(), &vals).is_finite()
        }
        IntervalSpec::HalfLine { origin, direction } => match direction {
            Direction::Positive => decays(*origin, 1.0),
            Direction::Negative => decays(*origin, -1.0),
        },
        IntervalSpec::FullLine => decays(0.0, 1.0) && decays(0.0, -1.0),
    }
}

/// Deficiency indices and the resulting extension verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct DeficiencyReport {
    pub expression: Expression,
    pub interval: IntervalSpec,
    pub m: u32,
    pub n: u32,
    pub verdict: Verdict,
}

/// Count L2-members of each kernel and classify. The numeric membership
/// check must agree with the analytic one; a disagreement is a bug.
pub fn classify(expression: Expression, interval: IntervalSpec) -> DeficiencyReport {
    let sol = deficiency_exponents(expression);
    let count = |exps: &[Complex64]| -> u32 {
        exps.iter()
            .filter(|&&w| {
                let analytic = analytic_membership(w, &interval);
                let numeric = numeric_membership(w, &interval);
                assert_eq!(
                    analytic, numeric,
                    "membership checks disagree for exponent {w} on {interval:?}"
                );
                analytic
            })
            .count() as u32
    };
    let m = count(&sol.m_exponents);
    let n = count(&sol.n_exponents);
    let verdict = if m == 0 && n == 0 {
        Verdict::EssentiallySelfAdjoint
    } else if m == n {
        Verdict::ExtensionFamily(m)
    } else {
        Verdict::NoExtension
    };
    DeficiencyReport { expression, interval, m, n, verdict }
}

/// Description of the unitary family parametrizing the extensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionFamilyInfo {
    pub order: u32,
    /// Real dimension of U(k), k^2.
    pub real_dimension: u32,
    pub description: String,
}

pub fn extension_family_size(report: &DeficiencyReport) -> Result<ExtensionFamilyInfo> {
    match report.verdict {
        Verdict::ExtensionFamily(k) => Ok(ExtensionFamilyInfo {
            order: k,
            real_dimension: k * k,
            description: if k == 1 {
                "U(1): circle of boundary phases exp(i alpha)".to_string()
            } else {
                format!("U({k})")
            },
        }),
        _ => Err(Error::InvalidArgument(
            "extension family size is defined only for the ExtensionFamily verdict".into(),
        )),
    }
}

/// The five reference cases, in table order.
pub fn reference_cases() -> Vec<(Expression, IntervalSpec)> {
    let bounded = IntervalSpec::Bounded { a: 0.0, b: std::f64::consts::PI };
    let half = IntervalSpec::half_line(0.0, Direction::Positive);
    vec![
        (Expression::FirstOrder, bounded),
        (Expression::FirstOrder, half),
        (Expression::SecondOrder, bounded),
        (Expression::SecondOrder, half),
        (Expression::FirstOrder, IntervalSpec::FullLine),
    ]
}
