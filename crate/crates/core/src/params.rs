//! Physical inputs of the driven J=1/2 -> J=1/2 atom.
//!
//! All rates and frequencies are in units of the total excited-state decay
//! rate `gamma`. The branching of the decay is fixed by the Clebsch-Gordan
//! structure of the transition: each pi channel carries `gamma / 3`, each
//! sigma channel `2 gamma / 3`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Cross-damping between the two antiparallel pi dipoles.
///
/// Switching VIC on or off goes through this one value, so the Liouvillian
/// and the spectrum weights can never disagree about it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossDamping {
    /// `-sqrt(gamma1 * gamma2)`, the value set by antiparallel dipoles.
    Auto,
    /// No vacuum-induced coherence.
    Off,
    Explicit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    gamma: f64,
    cross_damping: CrossDamping,
    omega_a: f64,
    omega_b: f64,
    delta: f64,
    phi: f64,
    theta: f64,
}

impl SystemParams {
    pub fn builder() -> ParamsBuilder {
        ParamsBuilder::default()
    }

    /// Total decay rate of each excited state.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Decay rate of the |1> -> |3> pi transition.
    pub fn gamma1(&self) -> f64 {
        self.gamma / 3.0
    }

    /// Decay rate of the |2> -> |4> pi transition.
    pub fn gamma2(&self) -> f64 {
        self.gamma / 3.0
    }

    /// Decay rate of either sigma transition.
    pub fn gamma_sigma(&self) -> f64 {
        2.0 * self.gamma / 3.0
    }

    pub fn cross_damping(&self) -> CrossDamping {
        self.cross_damping
    }

    /// Resolved cross-damping rate gamma12.
    pub fn gamma12(&self) -> f64 {
        match self.cross_damping {
            CrossDamping::Auto => -(self.gamma1() * self.gamma2()).sqrt(),
            CrossDamping::Off => 0.0,
            CrossDamping::Explicit(x) => x,
        }
    }

    pub fn vic_enabled(&self) -> bool {
        self.gamma12() != 0.0
    }

    /// Rabi frequency of the linearly polarized field.
    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    /// Rabi frequency of the circularly polarized field.
    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }

    /// Laser detuning from the atomic resonance.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Relative phase of the two driving fields.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Quadrature phase of the local oscillator.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_builder(&self) -> ParamsBuilder {
        ParamsBuilder {
            gamma: self.gamma,
            cross_damping: self.cross_damping,
            omega_a: self.omega_a,
            omega_b: self.omega_b,
            delta: self.delta,
            phi: self.phi,
            theta: self.theta,
        }
    }

    pub fn with_cross_damping(&self, cross_damping: CrossDamping) -> Result<Self> {
        self.to_builder().cross_damping(cross_damping).build()
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        self.to_builder().theta(theta).build()
    }

    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        self.to_builder().phi(phi).build()
    }
}

/// Builder for [`SystemParams`]; `build` enforces every invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamsBuilder {
    gamma: f64,
    cross_damping: CrossDamping,
    omega_a: f64,
    omega_b: f64,
    delta: f64,
    phi: f64,
    theta: f64,
}

impl Default for ParamsBuilder {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            cross_damping: CrossDamping::Auto,
            omega_a: 0.0,
            omega_b: 0.0,
            delta: 0.0,
            phi: 0.0,
            theta: 0.0,
        }
    }
}

impl ParamsBuilder {
    pub fn gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn cross_damping(mut self, cross_damping: CrossDamping) -> Self {
        self.cross_damping = cross_damping;
        self
    }

    pub fn omega_a(mut self, omega_a: f64) -> Self {
        self.omega_a = omega_a;
        self
    }

    pub fn omega_b(mut self, omega_b: f64) -> Self {
        self.omega_b = omega_b;
        self
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    pub fn theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn build(self) -> Result<SystemParams> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(invalid("gamma", "must be finite and positive"));
        }
        if !(self.omega_a.is_finite() && self.omega_a >= 0.0) {
            return Err(invalid("omega_a", "must be finite and non-negative"));
        }
        if !(self.omega_b.is_finite() && self.omega_b >= 0.0) {
            return Err(invalid("omega_b", "must be finite and non-negative"));
        }
        if !self.delta.is_finite() {
            return Err(invalid("delta", "must be finite"));
        }
        if !self.phi.is_finite() {
            return Err(invalid("phi", "must be finite"));
        }
        if !self.theta.is_finite() {
            return Err(invalid("theta", "must be finite"));
        }
        if let CrossDamping::Explicit(x) = self.cross_damping {
            // |gamma12| <= sqrt(gamma1 gamma2) = gamma / 3
            let bound = self.gamma / 3.0;
            if !x.is_finite() || x.abs() > bound * (1.0 + 1e-12) {
                return Err(invalid(
                    "gamma12",
                    "must be finite with |gamma12| <= sqrt(gamma1 * gamma2)",
                ));
            }
        }
        Ok(SystemParams {
            gamma: self.gamma,
            cross_damping: self.cross_damping,
            omega_a: self.omega_a,
            omega_b: self.omega_b,
            delta: self.delta,
            phi: self.phi,
            theta: self.theta,
        })
    }
}

fn invalid(name: &'static str, reason: &'static str) -> Error {
    Error::InvalidParameter { name, reason }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branching_ratios_are_fixed() {
        let p = SystemParams::builder().gamma(3.0).build().unwrap();
        assert_eq!(p.gamma1(), 1.0);
        assert_eq!(p.gamma2(), 1.0);
        assert_eq!(p.gamma_sigma(), 2.0);
        assert_eq!(p.gamma1() + p.gamma_sigma(), p.gamma());
    }

    #[test]
    fn auto_cross_damping_is_antiparallel_bound() {
        let p = SystemParams::builder().build().unwrap();
        assert!((p.gamma12() + 1.0 / 3.0).abs() < 1e-15);
        assert!(p.vic_enabled());
        let off = p.with_cross_damping(CrossDamping::Off).unwrap();
        assert_eq!(off.gamma12(), 0.0);
        assert!(!off.vic_enabled());
    }

    #[test]
    fn rejects_out_of_bound_cross_damping() {
        let err = SystemParams::builder()
            .cross_damping(CrossDamping::Explicit(-0.34))
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "gamma12", .. }));
        assert!(SystemParams::builder()
            .cross_damping(CrossDamping::Explicit(0.2))
            .build()
            .is_ok());
    }

    #[test]
    fn rejects_bad_rates() {
        assert!(SystemParams::builder().gamma(0.0).build().is_err());
        assert!(SystemParams::builder().omega_a(-1.0).build().is_err());
        assert!(SystemParams::builder().omega_b(f64::NAN).build().is_err());
        assert!(SystemParams::builder().delta(f64::INFINITY).build().is_err());
    }
}
