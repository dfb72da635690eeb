//! Dressed-state (secular) description of the strongly driven atom.
//!
//! The eigenstates `|alpha>, |beta>, |kappa>, |mu>` of the interaction
//! Hamiltonian have closed-form energies and real expansion coefficients.
//! Spectral sidebands sit at differences of the energies; in the secular
//! limit each sideband is a sum of Lorentzians whose widths and weights are
//! algebraic in the coefficients, the decay constants and the dressed
//! populations.
//!
//! The coupled widths come out of a quadratic and are used with the sign it
//! produces. They are typically negative, and the printed weights carry the
//! compensating sign, so the product `W * Gamma` is what must agree with the
//! exact spectrum.

use alloc::vec::Vec;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::liouville::{DensityMatrix, LiouvilleVector};
use crate::model::{build_hamiltonian, build_liouvillian, steady_state};
use crate::params::SystemParams;
use crate::spectra::{Method, SpectrumResult, Transition};
use crate::C64;

/// The secular description is refused when `Omega_1` is below this many `gamma`.
pub const MIN_SECULAR_RABI: f64 = 5.0;

/// Dressed states in ascending energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DressedState {
    Alpha = 0,
    Beta = 1,
    Kappa = 2,
    Mu = 3,
}

impl DressedState {
    pub const ALL: [DressedState; 4] = [Self::Alpha, Self::Beta, Self::Kappa, Self::Mu];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Dressed energies and real expansion coefficients over `|1>..|4>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedBasis {
    pub omega1: f64,
    pub omega2: f64,
    /// `lambda_alpha <= lambda_beta < lambda_kappa <= lambda_mu`.
    pub eigenvalues: [f64; 4],
    /// `coeffs[state][k]` is the amplitude on bare level `k + 1`.
    pub coeffs: [[f64; 4]; 4],
}

impl DressedBasis {
    pub fn eigenvalue(&self, state: DressedState) -> f64 {
        self.eigenvalues[state.index()]
    }

    pub fn vector(&self, state: DressedState) -> Vector4<f64> {
        Vector4::from(self.coeffs[state.index()])
    }

    /// `||H v - lambda v||` maximized over the four states.
    pub fn eigen_residual(&self, params: &SystemParams) -> f64 {
        let h = build_hamiltonian(params).map(|z| z.re);
        DressedState::ALL
            .iter()
            .map(|&s| (h * self.vector(s) - self.vector(s) * self.eigenvalue(s)).norm())
            .fold(0.0, f64::max)
    }

    /// Defects of the twelve coefficient identities relating `mu` to `alpha`,
    /// `kappa` to `beta`, and the products within and across `alpha`, `beta`.
    pub fn relation_defects(&self) -> [f64; 12] {
        let [a, b, k, m] = self.coeffs;
        [
            m[0] + a[3],
            m[1] - a[2],
            m[2] + a[1],
            m[3] - a[0],
            k[0] - b[3],
            k[1] + b[2],
            k[2] - b[1],
            k[3] + b[0],
            a[1] * a[3] + a[0] * a[2],
            b[1] * b[3] + b[0] * b[2],
            a[1] * b[1] + a[0] * b[0],
            a[3] * b[3] + a[2] * b[2],
        ]
    }
}

/// Closed-form dressed energies and coefficients.
///
/// Coefficient denominators that vanish fall back to numerical eigenvectors,
/// normalized with the same sign choice (`c3 > 0`, else `c1` with the sign of `lambda`).
pub fn dressed_basis(params: &SystemParams) -> Result<DressedBasis> {
    let (oa, ob, d) = (params.omega_a(), params.omega_b(), params.delta());
    if ob == 0.0 {
        return Err(Error::DegenerateDressedBasis);
    }
    let r = (4.0 * oa * oa + ob * ob).sqrt();
    let (omega1, omega2) = (r + ob, r - ob);
    let s1 = (d * d + omega1 * omega1).sqrt();
    let s2 = (d * d + omega2 * omega2).sqrt();
    let eigenvalues = [-(s1 + d) / 2.0, -(s2 + d) / 2.0, (s2 - d) / 2.0, (s1 - d) / 2.0];

    let mut numeric: Option<SymmetricEigen<f64, nalgebra::U4>> = None;
    let mut coeffs = [[0.0; 4]; 4];
    for (i, &lambda) in eigenvalues.iter().enumerate() {
        let den = lambda * (d + lambda) - oa * oa;
        let scale = lambda * lambda + (lambda * d).abs() + oa * oa;
        let v = if den.abs() > 1e-12 * scale {
            Vector4::new(lambda, lambda * oa * ob / den, oa, -lambda * ob * (d + lambda) / den)
        } else {
            let eig = numeric.get_or_insert_with(|| SymmetricEigen::new(build_hamiltonian(params).map(|z| z.re)));
            numerical_vector(eig, lambda)?
        };
        let v = orient(v.normalize(), lambda);
        coeffs[i] = [v[0], v[1], v[2], v[3]];
    }
    Ok(DressedBasis {
        omega1,
        omega2,
        eigenvalues,
        coeffs,
    })
}

fn numerical_vector(eig: &SymmetricEigen<f64, nalgebra::U4>, lambda: f64) -> Result<Vector4<f64>> {
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| {
        (eig.eigenvalues[i] - lambda)
            .abs()
            .total_cmp(&(eig.eigenvalues[j] - lambda).abs())
    });
    let (best, next) = (order[0], order[1]);
    let gap = (eig.eigenvalues[next] - eig.eigenvalues[best]).abs();
    if gap <= 1e-9 * (1.0 + lambda.abs()) {
        return Err(Error::DegenerateDressedBasis);
    }
    Ok(eig.eigenvectors.column(best).into_owned())
}

fn orient(v: Vector4<f64>, lambda: f64) -> Vector4<f64> {
    const TINY: f64 = 1e-12;
    let flip = if v[2].abs() > TINY {
        v[2] < 0.0
    } else if v[0].abs() > TINY && lambda != 0.0 {
        (v[0] < 0.0) != (lambda < 0.0)
    } else {
        let k = v.iamax();
        v[k] < 0.0
    };
    if flip {
        -v
    } else {
        v
    }
}

/// Sideband positions `omega_ij = lambda_i - lambda_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionFrequencies {
    pub mu_alpha: f64,
    pub mu_beta: f64,
    pub mu_kappa: f64,
    pub kappa_alpha: f64,
    pub kappa_beta: f64,
    pub beta_alpha: f64,
    /// `omega_mu_kappa - omega_beta_alpha`; zero by construction of the energies.
    pub coincidence: f64,
}

pub fn transition_frequencies(basis: &DressedBasis) -> TransitionFrequencies {
    let [a, b, k, m] = basis.eigenvalues;
    TransitionFrequencies {
        mu_alpha: m - a,
        mu_beta: m - b,
        mu_kappa: m - k,
        kappa_alpha: k - a,
        kappa_beta: k - b,
        beta_alpha: b - a,
        coincidence: (m - k) - (b - a),
    }
}

/// Roots `[-(p + q) +- sqrt((p - q)^2 + 4 r s)] / 2` of a coupled pair of coherences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WidthPair {
    Real {
        plus: f64,
        minus: f64,
    },
    /// Negative discriminant: `re +- i im`.
    Complex {
        re: f64,
        im: f64,
    },
}

impl WidthPair {
    fn from_coupling(p: f64, q: f64, r: f64, s: f64) -> Self {
        let disc = (p - q) * (p - q) + 4.0 * r * s;
        let centre = -(p + q) / 2.0;
        if disc >= 0.0 {
            let half = disc.sqrt() / 2.0;
            WidthPair::Real {
                plus: centre + half,
                minus: centre - half,
            }
        } else {
            WidthPair::Complex {
                re: centre,
                im: (-disc).sqrt() / 2.0,
            }
        }
    }

    /// `(plus, minus)`, refusing a complex pair.
    pub fn real(self) -> Result<(f64, f64)> {
        match self {
            WidthPair::Real { plus, minus } => Ok((plus, minus)),
            WidthPair::Complex { .. } => Err(Error::ComplexWidths),
        }
    }

    /// Largest magnitude, or `|re| + im` for a complex pair.
    pub fn max_abs(self) -> f64 {
        match self {
            WidthPair::Real { plus, minus } => plus.abs().max(minus.abs()),
            WidthPair::Complex { re, im } => re.abs() + im,
        }
    }
}

/// Secular decay constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedRates {
    /// `rates[0]` is Gamma_1, ..., `rates[9]` is Gamma_10.
    pub rates: [f64; 10],
    /// Widths of the sidebands at `omega_mu_kappa` (from Gamma_7..Gamma_10).
    pub mu_kappa: WidthPair,
    /// Widths of the sidebands at `omega_mu_beta` (from Gamma_3..Gamma_6).
    pub mu_beta: WidthPair,
}

impl DressedRates {
    /// `Gamma_n` with `n` in `1..=10`.
    pub fn rate(&self, n: usize) -> f64 {
        self.rates[n - 1]
    }
}

pub fn dressed_rates(basis: &DressedBasis, params: &SystemParams) -> DressedRates {
    let (g, g12) = (params.gamma(), params.gamma12());
    let [a1, a2, a3, a4] = basis.coeffs[DressedState::Alpha.index()];
    let [b1, b2, b3, b4] = basis.coeffs[DressedState::Beta.index()];
    let sq = |x: f64| x * x;
    let x = a1 * a3 * b1 * b3;
    let mixed = 3.0 * sq(a4 * b1 - a3 * b2) + 3.0 * sq(a2 * b3 - a1 * b4);

    let rates = [
        g / 6.0 * (4.0 * (sq(a1 * a3) + sq(a2 * a3) + sq(a1 * a4)) + 3.0) - 2.0 * g12 * sq(a1 * a3),
        g / 6.0 * (4.0 * (sq(b1 * b3) + sq(b2 * b3) + sq(b1 * b4)) + 3.0) - 2.0 * g12 * sq(b1 * b3),
        g / 6.0 * (3.0 * (sq(b1) + sq(b2) + sq(a3) + sq(a4)) - 4.0 * x) - 2.0 * g12 * x,
        2.0 * g / 3.0 * (sq(a1 * b4) + sq(a2 * b3) - a1 * a2 * b3 * b4) - g12 * (sq(a1 * b3) + sq(a2 * b4)),
        g / 6.0 * (3.0 * (sq(a1) + sq(a2) + sq(b3) + sq(b4)) - 4.0 * x) - 2.0 * g12 * x,
        2.0 * g / 3.0 * (sq(a3 * b2) + sq(a4 * b1) - a3 * a4 * b1 * b2) - g12 * (sq(a3 * b1) + sq(a4 * b2)),
        g / 6.0 * (3.0 * (sq(a3) + sq(a4) + sq(b3) + sq(b4)) + 4.0 * x) + 2.0 * g12 * x,
        -g / 6.0 * (4.0 * sq(a1 * b1) + mixed) + g12 * (sq(a1 * b2) + sq(a2 * b1)),
        g / 6.0 * (3.0 * (sq(a1) + sq(a2) + sq(b1) + sq(b2)) + 4.0 * x) + 2.0 * g12 * x,
        -g / 6.0 * (4.0 * sq(a3 * b3) + mixed) + g12 * (sq(a3 * b4) + sq(a4 * b3)),
    ];
    let r = |n: usize| rates[n - 1];
    DressedRates {
        rates,
        mu_kappa: WidthPair::from_coupling(r(7), r(9), r(8), r(10)),
        mu_beta: WidthPair::from_coupling(r(3), r(5), r(4), r(6)),
    }
}

/// `<Phi| rho |Phi>` for each dressed state, in `DressedState` order.
pub fn dressed_populations(basis: &DressedBasis, rho: &DensityMatrix) -> [f64; 4] {
    core::array::from_fn(|i| {
        let v = Vector4::from(basis.coeffs[i]).map(|x| C64::new(x, 0.0));
        (v.transpose() * rho.0 * v)[(0, 0)].re
    })
}

/// Weights of the two Lorentzians in each pi sideband.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiWeights {
    /// `(W_+, W_-)` at `omega_mu_kappa`, in-phase quadrature.
    pub mu_kappa: (f64, f64),
    /// `(W~_+, W~_-)` at `omega_mu_beta`, out-of-phase quadrature.
    pub mu_beta: (f64, f64),
}

/// Weights of the sigma sidebands at a given relative phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaWeights {
    pub mu_alpha: f64,
    pub kappa_beta: f64,
    /// `(W_+, W_-)` at `omega_mu_kappa`.
    pub mu_kappa: (f64, f64),
}

/// Population combinations `F_+-`, `G_+-` entering the weights at `omega_mu_kappa`.
fn coupled_sources(rates: &DressedRates, pops: &[f64; 4]) -> Result<[(f64, f64); 2]> {
    let (gp, gm) = rates.mu_kappa.real()?;
    let r = |n: usize| rates.rate(n);
    let [pa, pb, pk, pm] = *pops;
    let u = r(7) - r(9) + 2.0 * r(8);
    let v = r(9) - r(7) + 2.0 * r(10);
    let f = |s: f64| s * u * pa + s * v * pk + (gp - gm) * (pa + pk);
    let g = |s: f64| s * u * pb + s * v * pm + (gp - gm) * (pb + pm);
    Ok([(f(1.0), g(1.0)), (f(-1.0), g(-1.0))])
}

fn split(pair: WidthPair) -> Result<f64> {
    let (plus, minus) = pair.real()?;
    let split = minus - plus;
    if split.abs() <= 1e-14 * (plus.abs() + minus.abs()).max(f64::MIN_POSITIVE) {
        return Err(Error::CoincidentWidths);
    }
    Ok(split)
}

pub fn sideband_weights_pi(
    basis: &DressedBasis,
    rates: &DressedRates,
    pops: &[f64; 4],
    gamma: f64,
) -> Result<PiWeights> {
    let [a1, a2, a3, a4] = basis.coeffs[DressedState::Alpha.index()];
    let [b1, b2, b3, b4] = basis.coeffs[DressedState::Beta.index()];
    let r = |n: usize| rates.rate(n);
    let [pa, pb, pk, pm] = *pops;

    let split_mk = split(rates.mu_kappa)?;
    let fg = coupled_sources(rates, pops)?;
    let lead = gamma / (6.0 * split_mk) * (a1 * b3 + a3 * b1 - a2 * b4 - a4 * b2);
    let w = |(f, g): (f64, f64)| lead * ((a1 * b3 - a2 * b4) * f + (a3 * b1 - a4 * b2) * g);

    let split_mb = split(rates.mu_beta)?;
    let (tp, tm) = rates.mu_beta.real()?;
    let u = r(3) - r(5) - 2.0 * r(4);
    let v = r(5) - r(3) - 2.0 * r(6);
    let ft = |s: f64| s * u * pa + s * v * pb + (tp - tm) * (pa + pb);
    let gt = |s: f64| s * u * pk + s * v * pm + (tp - tm) * (pk + pm);
    let lead_t = gamma / (6.0 * split_mb) * (a2 * b1 + a1 * b2 - a4 * b3 - a3 * b4);
    let wt = |s: f64| lead_t * ((a2 * b1 + a1 * b2) * ft(s) - (a4 * b3 + a3 * b4) * gt(s));

    Ok(PiWeights {
        mu_kappa: (w(fg[0]), w(fg[1])),
        mu_beta: (wt(1.0), wt(-1.0)),
    })
}

pub fn sideband_weights_sigma(
    basis: &DressedBasis,
    rates: &DressedRates,
    pops: &[f64; 4],
    gamma_sigma: f64,
    phi: f64,
) -> Result<SigmaWeights> {
    let [a1, a2, a3, a4] = basis.coeffs[DressedState::Alpha.index()];
    let [b1, b2, b3, b4] = basis.coeffs[DressedState::Beta.index()];
    let [pa, pb, pk, pm] = *pops;
    let sq = |x: f64| x * x;
    let (c2, c4, cos_sq) = ((2.0 * phi).cos(), (4.0 * phi).cos(), sq(phi.cos()));

    // Same shape for the alpha/mu and beta/kappa pairs.
    let single = |[c1, c2_, c3, c4_]: [f64; 4], lower: f64, upper: f64| {
        gamma_sigma
            * ((sq(sq(c1)) + sq(sq(c2_))) * lower + (sq(sq(c3)) + sq(sq(c4_))) * upper
                - sq(c1 * c4_) * (lower + upper)
                - 2.0 * c2 * (sq(c1 * c2_) * lower + sq(c3 * c4_) * upper - sq(c1 * c3) * (lower + upper))
                - c4 * sq(c2_ * c3) * (lower + upper))
    };
    let mu_alpha = single([a1, a2, a3, a4], pa, pm);
    let kappa_beta = single([b1, b2, b3, b4], pb, pk);

    let split_mk = split(rates.mu_kappa)?;
    let fg = coupled_sources(rates, pops)?;
    let x = a1 * a3 * b1 * b3;
    let w = |(f, g): (f64, f64)| {
        gamma_sigma / (2.0 * split_mk)
            * ((sq(a1 * b4) + sq(a2 * b3) + 2.0 * c2 * a1 * a2 * b3 * b4) * f
                + (sq(a3 * b2) + sq(a4 * b1) + 2.0 * c2 * a3 * a4 * b1 * b2) * g
                - 4.0 * cos_sq * c2 * x * (f + g))
    };
    Ok(SigmaWeights {
        mu_alpha,
        kappa_beta,
        mu_kappa: (w(fg[0]), w(fg[1])),
    })
}

/// `W Gamma / (Gamma^2 + (omega - centre)^2)`.
pub fn lorentzian(weight: f64, width: f64, omega: f64, centre: f64) -> f64 {
    let dw = omega - centre;
    weight * width / (width * width + dw * dw)
}

/// Which pi quadrature has a sideband formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiQuadrature {
    /// `theta = 0`, sidebands at `omega_mu_kappa`.
    InPhase,
    /// `theta = pi/2`, sidebands at `omega_mu_beta`.
    OutOfPhase,
}

impl PiQuadrature {
    /// Maps `theta` (mod pi) onto a quadrature with a formula.
    pub fn from_theta(theta: f64) -> Result<Self> {
        let t = theta - core::f64::consts::PI * (theta / core::f64::consts::PI).floor();
        let near = |x: f64| (t - x).abs() < 1e-9;
        if near(0.0) || near(core::f64::consts::PI) {
            Ok(PiQuadrature::InPhase)
        } else if near(core::f64::consts::FRAC_PI_2) {
            Ok(PiQuadrature::OutOfPhase)
        } else {
            Err(Error::InvalidParameter {
                name: "theta",
                reason: "dressed sidebands exist only for theta = 0 or pi/2",
            })
        }
    }

    pub fn theta(self) -> f64 {
        match self {
            PiQuadrature::InPhase => 0.0,
            PiQuadrature::OutOfPhase => core::f64::consts::FRAC_PI_2,
        }
    }
}

/// Everything the sideband formulas need, for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedModel {
    pub params: SystemParams,
    pub basis: DressedBasis,
    pub frequencies: TransitionFrequencies,
    pub rates: DressedRates,
    /// Steady-state populations in `DressedState` order.
    pub populations: [f64; 4],
}

impl DressedModel {
    /// Refuses parameters with `Omega_1 < 5 gamma`.
    pub fn build(params: &SystemParams) -> Result<Self> {
        let model = Self::build_unguarded(params)?;
        let minimum = MIN_SECULAR_RABI * params.gamma();
        if model.basis.omega1 < minimum {
            return Err(Error::OutsideSecularRegime {
                omega1: model.basis.omega1,
                minimum,
            });
        }
        Ok(model)
    }

    /// No secular-regime check.
    pub fn build_unguarded(params: &SystemParams) -> Result<Self> {
        let basis = dressed_basis(params)?;
        let rho = steady_state(&build_liouvillian(params))?.density;
        Ok(Self {
            params: *params,
            basis,
            frequencies: transition_frequencies(&basis),
            rates: dressed_rates(&basis, params),
            populations: dressed_populations(&basis, &rho),
        })
    }

    pub fn pi_weights(&self) -> Result<PiWeights> {
        sideband_weights_pi(&self.basis, &self.rates, &self.populations, self.params.gamma())
    }

    pub fn sigma_weights(&self, phi: f64) -> Result<SigmaWeights> {
        sideband_weights_sigma(
            &self.basis,
            &self.rates,
            &self.populations,
            self.params.gamma_sigma(),
            phi,
        )
    }

    /// Pi sideband value; the upper sign applies for `omega >= 0`.
    pub fn pi_sideband(&self, quadrature: PiQuadrature, omega: f64) -> Result<f64> {
        let w = self.pi_weights()?;
        let ((wp, wm), widths, centre) = match quadrature {
            PiQuadrature::InPhase => (w.mu_kappa, self.rates.mu_kappa, self.frequencies.mu_kappa),
            PiQuadrature::OutOfPhase => (w.mu_beta, self.rates.mu_beta, self.frequencies.mu_beta),
        };
        let (gp, gm) = widths.real()?;
        let c = centre.copysign(omega);
        Ok(lorentzian(wp, gp, omega, c) + lorentzian(wm, gm, omega, c))
    }

    /// In-phase sigma sideband value; the upper sign applies for `omega >= 0`.
    pub fn sigma_sideband(&self, phi: f64, omega: f64) -> Result<f64> {
        let w = self.sigma_weights(phi)?;
        let (gp, gm) = self.rates.mu_kappa.real()?;
        let sign = 1.0f64.copysign(omega);
        let f = &self.frequencies;
        Ok(lorentzian(w.mu_alpha, self.rates.rate(1), omega, sign * f.mu_alpha)
            + lorentzian(w.kappa_beta, self.rates.rate(2), omega, sign * f.kappa_beta)
            + lorentzian(w.mu_kappa.0, gp, omega, sign * f.mu_kappa)
            + lorentzian(w.mu_kappa.1, gm, omega, sign * f.mu_kappa))
    }

    fn result(
        &self,
        grid: &FrequencyGrid,
        values: Vec<f64>,
        transition: Transition,
        theta: f64,
        phi: f64,
    ) -> SpectrumResult {
        SpectrumResult {
            omega: grid.points().to_vec(),
            values,
            max_imag_residue: 0.0,
            theta,
            phi,
            transition,
            params: Some(self.params),
            method: Method::DressedApproximation,
        }
    }
}

pub fn sideband_spectrum_pi(model: &DressedModel, grid: &FrequencyGrid, theta: f64) -> Result<SpectrumResult> {
    let quadrature = PiQuadrature::from_theta(theta)?;
    let values = grid
        .points()
        .iter()
        .map(|&w| model.pi_sideband(quadrature, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(model.result(grid, values, Transition::Pi, theta, model.params.phi()))
}

pub fn sideband_spectrum_sigma(model: &DressedModel, grid: &FrequencyGrid, phi: f64) -> Result<SpectrumResult> {
    let values = grid
        .points()
        .iter()
        .map(|&w| model.sigma_sideband(phi, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(model.result(grid, values, Transition::Sigma, 0.0, phi))
}

/// Rebuilds the full 4x4 rate of change from `d/dt psi` of a traceless
/// perturbation (the `rho_22` rate restores trace conservation).
pub fn traceless_rate(params: &SystemParams, rho: &Matrix4<C64>) -> Matrix4<C64> {
    let sys = build_liouvillian(params);
    let psi = LiouvilleVector::from_density(&DensityMatrix(*rho));
    let mut rate = LiouvilleVector(sys.m * psi.0).to_density().0;
    rate[(1, 1)] = -(rate[(0, 0)] + rate[(2, 2)] + rate[(3, 3)]);
    rate
}
