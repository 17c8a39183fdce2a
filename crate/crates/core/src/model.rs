//! Tagged description of the Hamiltonians under study, with the shared
//! hooks used by the residual and evolution machinery: the potential, the
//! invariant (impenetrable-barrier) region, and a discrete eigenbasis when
//! one exists.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::evolution::EigenBasis;
use crate::extension::{AlphaBasis, ExtensionParameter};
use crate::grid::{Direction, IntervalSpec};
use crate::multitrap::{MultiTrapSpec, SegmentBasis};
use crate::singular::CalogeroPairBasis;
use crate::well::WellBasis;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    /// H_alpha = P_alpha^2 on [0, pi] with the boundary twist alpha.
    ExtensionFamily { alpha: ExtensionParameter },
    /// Dirichlet Hamiltonian on [0, pi].
    InfiniteWell,
    /// V = 0 on (0, pi), V0 outside.
    FiniteWell { v0: f64 },
    /// -d^2/dx^2 + n(n-1)/x^2.
    Centrifugal { n_exp: u32 },
    /// -d^2/dx^2 + x^2 + gamma/(x^2 + epsilon).
    Calogero { gamma: f64, epsilon: f64 },
    /// H_q = -d^2/dx^2 - q^2 restricted to one segment between nodes.
    MultiTrap { q: f64, segment: i64 },
}

impl ModelSpec {
    /// The potential term of the differential expression.
    pub fn potential(&self, x: f64) -> f64 {
        match *self {
            ModelSpec::ExtensionFamily { .. } | ModelSpec::InfiniteWell => 0.0,
            ModelSpec::FiniteWell { v0 } => {
                if x > 0.0 && x < PI {
                    0.0
                } else {
                    v0
                }
            }
            ModelSpec::Centrifugal { n_exp } => {
                let c = (n_exp as f64) * (n_exp as f64 - 1.0);
                c / (x * x)
            }
            ModelSpec::Calogero { gamma, epsilon } => x * x + gamma / (x * x + epsilon),
            ModelSpec::MultiTrap { q, .. } => -q * q,
        }
    }

    /// The closed region left invariant by the evolution, when the model
    /// confines.
    pub fn invariant_region(&self) -> Option<IntervalSpec> {
        match *self {
            ModelSpec::ExtensionFamily { .. } | ModelSpec::InfiniteWell => {
                Some(IntervalSpec::Bounded { a: 0.0, b: PI })
            }
            ModelSpec::FiniteWell { .. } => None,
            ModelSpec::Centrifugal { .. } | ModelSpec::Calogero { .. } => {
                Some(IntervalSpec::half_line(0.0, Direction::Positive))
            }
            ModelSpec::MultiTrap { q, segment } => {
                let spec = MultiTrapSpec::new(q, segment).ok()?;
                Some(spec.segment_interval())
            }
        }
    }

    /// Discrete eigenbasis with about `modes` members, for spectral-theorem
    /// evolution. The Calogero pair count is capped so every mode decays
    /// inside the sampled radial window.
    pub fn basis(&self, modes: usize) -> Result<Box<dyn EigenBasis>> {
        match *self {
            ModelSpec::InfiniteWell => Ok(Box::new(WellBasis::new(modes))),
            ModelSpec::ExtensionFamily { alpha } => {
                Ok(Box::new(AlphaBasis::new(alpha, modes / 2)))
            }
            ModelSpec::MultiTrap { q, segment } => {
                let spec = MultiTrapSpec::new(q, segment)?;
                Ok(Box::new(SegmentBasis::new(spec, modes)))
            }
            ModelSpec::Calogero { gamma, epsilon } => {
                if epsilon != 0.0 {
                    return Err(Error::UnsupportedForRegularized);
                }
                Ok(Box::new(CalogeroPairBasis::new(gamma, modes / 2)?))
            }
            ModelSpec::FiniteWell { .. } => Err(Error::InvalidArgument(
                "the finite well has a scattering continuum; its bound states alone are not a basis"
                    .into(),
            )),
            ModelSpec::Centrifugal { .. } => Err(Error::InvalidArgument(
                "the centrifugal model has a continuous spectrum; no discrete eigenbasis".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potentials_match_the_defining_expressions() {
        assert_eq!(ModelSpec::InfiniteWell.potential(1.0), 0.0);
        let fw = ModelSpec::FiniteWell { v0: 100.0 };
        assert_eq!(fw.potential(1.0), 0.0);
        assert_eq!(fw.potential(-0.1), 100.0);
        assert_eq!(fw.potential(PI + 0.1), 100.0);
        let cf = ModelSpec::Centrifugal { n_exp: 2 };
        assert_eq!(cf.potential(1.0), 2.0);
        let ca = ModelSpec::Calogero { gamma: 2.0, epsilon: 0.0 };
        assert_eq!(ca.potential(1.0), 3.0);
        let ca_eps = ModelSpec::Calogero { gamma: 2.0, epsilon: 1.0 };
        assert_eq!(ca_eps.potential(1.0), 2.0);
        let mt = ModelSpec::MultiTrap { q: 3.0, segment: 1 };
        assert_eq!(mt.potential(5.0), -9.0);
    }

    #[test]
    fn invariant_regions() {
        assert_eq!(
            ModelSpec::InfiniteWell.invariant_region(),
            Some(IntervalSpec::Bounded { a: 0.0, b: PI })
        );
        assert!(ModelSpec::FiniteWell { v0: 10.0 }.invariant_region().is_none());
        let mt = ModelSpec::MultiTrap { q: 2.0, segment: 2 };
        let region = mt.invariant_region().unwrap();
        assert!(region.contains(PI / 2.0 + 0.1));
        assert!(!region.contains(0.1));
    }

    #[test]
    fn basis_availability_follows_the_spectral_structure() {
        assert!(ModelSpec::InfiniteWell.basis(8).is_ok());
        assert!(ModelSpec::MultiTrap { q: 1.0, segment: 0 }.basis(8).is_ok());
        assert!(ModelSpec::Calogero { gamma: 2.0, epsilon: 0.0 }.basis(8).is_ok());
        assert!(matches!(
            ModelSpec::Calogero { gamma: 2.0, epsilon: 1e-4 }.basis(8),
            Err(Error::UnsupportedForRegularized)
        ));
        assert!(ModelSpec::FiniteWell { v0: 10.0 }.basis(8).is_err());
        assert!(ModelSpec::Centrifugal { n_exp: 2 }.basis(8).is_err());
    }
}
