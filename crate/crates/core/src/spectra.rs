//! Squeezing spectra from the quantum regression theorem in resolvent form.
//!
//! Every spectrum here is `Re Z(omega)` with
//! `Z = sum_k w_k [N(omega) U_k]_row_k` and `N = (i omega - M)^-1 + (-i omega - M)^-1`.
//! Each weighted combination is evaluated twice: once as written and once
//! through the Hermiticity involution (conjugated weights, adjoint rows,
//! mirrored sources). In exact arithmetic the second copy is `conj(Z)`, so
//! the imaginary part of their mean measures how far the numerics are from a
//! real spectrum. That residue is reported with every sample.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::liouville::{pos, DensityMatrix, Label, LiouvilleIndex, Mat15, Vec15, DIM};
use crate::model::{build_liouvillian, steady_state};
use crate::params::{CrossDamping, SystemParams};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transition {
    /// Fluorescence of the |1>-|3> and |2>-|4> dipoles.
    Pi,
    /// Fluorescence of the |1>-|4> and |2>-|3> dipoles.
    Sigma,
    /// The reference driven two-level atom.
    TwoLevel,
}

impl Transition {
    pub fn name(self) -> &'static str {
        match self {
            Transition::Pi => "pi",
            Transition::Sigma => "sigma",
            Transition::TwoLevel => "twolevel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactResolvent,
    TimeDomainOracle,
    DressedApproximation,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactResolvent => "exact",
            Method::TimeDomainOracle => "oracle",
            Method::DressedApproximation => "dressed",
        }
    }
}

/// Vacuum-induced coherence in the pi spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vic {
    /// Use the cross-damping carried by the parameters.
    On,
    /// Zero the cross-damping in both the Liouvillian and the spectrum weights.
    Off,
}

/// Equal-time fluctuation columns `U^mn(tau = 0)` for the four emitting dipoles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceSet {
    pub u31: Vec15,
    pub u42: Vec15,
    pub u41: Vec15,
    pub u32: Vec15,
}

/// Entry `j` is `<dA_pq dA_mn>` with `(p, q)` the `j`-th label and `A_mn = source`.
pub fn covariance_column(rho: &DensityMatrix, source: Label) -> Vec15 {
    let mean = rho.expectation(source);
    Vec15::from_fn(|j, _| {
        let label = LiouvilleIndex::label(j);
        let product = if label.n == source.m {
            rho.expectation(Label::new(label.m, source.n))
        } else {
            C64::new(0.0, 0.0)
        };
        product - rho.expectation(label) * mean
    })
}

pub fn initial_covariances(rho: &DensityMatrix) -> CovarianceSet {
    CovarianceSet {
        u31: covariance_column(rho, Label::new(3, 1)),
        u42: covariance_column(rho, Label::new(4, 2)),
        u41: covariance_column(rho, Label::new(4, 1)),
        u32: covariance_column(rho, Label::new(3, 2)),
    }
}

/// `N(omega) = (i omega - M)^-1 + (-i omega - M)^-1`.
pub fn resolvent(m: &Mat15, omega: f64) -> Result<Mat15> {
    let shifted = |w: f64| -> Result<Mat15> {
        let a = Mat15::from_diagonal_element(C64::new(0.0, w)) - m;
        a.lu()
            .try_inverse()
            .filter(|inv| inv.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
            .ok_or(Error::SingularShift { omega })
    };
    Ok(shifted(omega)? + shifted(-omega)?)
}

/// One term `weight * [X source]_row` of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub row: usize,
    pub source: usize,
    pub weight: C64,
}

/// A spectrum sample and the imaginary part discarded to get it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub value: f64,
    pub residue: f64,
}

impl Sample {
    fn from_complex(z: C64) -> Self {
        Self {
            value: z.re,
            residue: z.im.abs(),
        }
    }
}

/// Regression generator, source columns and output terms of one spectrum.
///
/// Dimension-agnostic so the reference two-level atom runs through the same code.
#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    generator: DMatrix<C64>,
    /// Source columns followed by their mirror images.
    stacked: DMatrix<C64>,
    terms: Vec<Term>,
    mirror: Vec<usize>,
    sources: usize,
}

impl Correlation {
    /// `mirror` is the adjoint-label permutation of the vector positions.
    pub fn new(generator: DMatrix<C64>, sources: &[DVector<C64>], terms: Vec<Term>, mirror: Vec<usize>) -> Self {
        let n = generator.nrows();
        assert_eq!(generator.ncols(), n, "generator must be square");
        assert_eq!(mirror.len(), n, "mirror permutation has the wrong length");
        let k = sources.len();
        let mut stacked = DMatrix::zeros(n, 2 * k);
        for (s, u) in sources.iter().enumerate() {
            assert_eq!(u.len(), n, "source has the wrong length");
            for i in 0..n {
                stacked[(i, s)] = u[i];
                stacked[(i, k + s)] = u[mirror[i]].conj();
            }
        }
        for t in &terms {
            assert!(t.row < n && t.source < k, "term out of range");
        }
        Self {
            generator,
            stacked,
            terms,
            mirror,
            sources: k,
        }
    }

    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &DMatrix<C64> {
        &self.generator
    }

    /// Sources and mirrored sources side by side, `dim x 2k`.
    pub fn stacked_sources(&self) -> &DMatrix<C64> {
        &self.stacked
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Mean of the weighted combination and its mirror copy, given the
    /// image `x` of the stacked sources under some linear map commuting
    /// with the involution.
    pub fn combine(&self, x: &DMatrix<C64>) -> C64 {
        let k = self.sources;
        let (mut direct, mut mirrored) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for t in &self.terms {
            direct += t.weight * x[(t.row, t.source)];
            mirrored += t.weight.conj() * x[(self.mirror[t.row], k + t.source)];
        }
        (direct + mirrored) * 0.5
    }

    fn shifted_solve(&self, shift: f64, omega: f64) -> Result<DMatrix<C64>> {
        let n = self.dim();
        let mut a = -self.generator.clone();
        for i in 0..n {
            a[(i, i)] += C64::new(0.0, shift);
        }
        a.lu()
            .solve(&self.stacked)
            .filter(|x| x.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
            .ok_or(Error::SingularShift { omega })
    }

    /// Spectrum at `omega`; even in `omega` bit for bit.
    pub fn evaluate(&self, omega: f64) -> Result<Sample> {
        let up = self.shifted_solve(omega, omega)?;
        let down = self.shifted_solve(-omega, omega)?;
        Ok(Sample::from_complex(self.combine(&(up + down))))
    }

    /// The combination at zero delay, `Re g(0)`; equals `(1/2pi) * integral of S`.
    pub fn zero_delay(&self) -> f64 {
        self.combine(&self.stacked).re
    }

    /// `d/dtau g` at zero delay (complex, mirror-averaged).
    pub fn zero_delay_slope(&self) -> C64 {
        self.combine(&(&self.generator * &self.stacked))
    }
}

fn to_dynamic(m: &Mat15) -> DMatrix<C64> {
    DMatrix::from_column_slice(DIM, DIM, m.as_slice())
}

fn to_dynamic_vec(v: &Vec15) -> DVector<C64> {
    DVector::from_column_slice(v.as_slice())
}

fn term(row: (u8, u8), source: usize, weight: C64) -> Term {
    Term {
        row: pos(row.0, row.1),
        source,
        weight,
    }
}

fn unit_phase(angle: f64) -> C64 {
    C64::new(angle.cos(), angle.sin())
}

/// Terms of the pi spectrum over the sources `[U31, U42]`.
pub fn pi_terms(params: &SystemParams, theta: f64) -> Vec<Term> {
    let (g1, g2, g12) = (params.gamma1(), params.gamma2(), params.gamma12());
    let lo = unit_phase(2.0 * theta);
    let one = C64::new(1.0, 0.0);
    let mut terms = Vec::with_capacity(8);
    for (phase, lower, upper) in [(lo, (3, 1), (4, 2)), (one, (1, 3), (2, 4))] {
        terms.push(term(lower, 0, phase * g1));
        terms.push(term(upper, 1, phase * g2));
        if g12 != 0.0 {
            terms.push(term(lower, 1, phase * g12));
            terms.push(term(upper, 0, phase * g12));
        }
    }
    terms
}

/// Terms of the sigma spectrum over the sources `[U41, U32]`.
pub fn sigma_terms(params: &SystemParams, theta: f64, phi: f64) -> Vec<Term> {
    let gs = params.gamma_sigma();
    let lo = unit_phase(2.0 * theta) * gs;
    let one = C64::new(gs, 0.0);
    let (m2, m4, p2) = (unit_phase(-2.0 * phi), unit_phase(-4.0 * phi), unit_phase(2.0 * phi));
    alloc::vec![
        term((4, 1), 0, lo),
        term((4, 1), 1, lo * m2),
        term((3, 2), 0, lo * m2),
        term((3, 2), 1, lo * m4),
        term((1, 4), 0, one),
        term((1, 4), 1, one * m2),
        term((2, 3), 0, one * p2),
        term((2, 3), 1, one),
    ]
}

/// Sampled spectrum with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub omega: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest discarded imaginary part over the grid.
    pub max_imag_residue: f64,
    pub theta: f64,
    pub phi: f64,
    pub transition: Transition,
    /// `None` for the reference two-level atom.
    pub params: Option<SystemParams>,
    pub method: Method,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(omega, S)` at the smallest sample; the first one on ties.
    pub fn minimum(&self) -> (f64, f64) {
        let mut best = (self.omega[0], self.values[0]);
        for (&w, &s) in self.omega.iter().zip(&self.values).skip(1) {
            if s < best.1 {
                best = (w, s);
            }
        }
        best
    }
}

/// Exact resolvent evaluation of one spectrum, reusable across frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEngine {
    correlation: Correlation,
    params: SystemParams,
    transition: Transition,
    theta: f64,
    phi: f64,
}

impl SpectrumEngine {
    pub fn pi(params: &SystemParams, theta: f64, vic: Vic) -> Result<Self> {
        let params = match vic {
            Vic::On => *params,
            Vic::Off => params.with_cross_damping(CrossDamping::Off)?,
        };
        let params = params.with_theta(theta)?;
        let sys = build_liouvillian(&params);
        let cov = initial_covariances(&steady_state(&sys)?.density);
        let correlation = Correlation::new(
            to_dynamic(&sys.m),
            &[to_dynamic_vec(&cov.u31), to_dynamic_vec(&cov.u42)],
            pi_terms(&params, theta),
            LiouvilleIndex::mirror_permutation().to_vec(),
        );
        Ok(Self {
            correlation,
            params,
            transition: Transition::Pi,
            theta,
            phi: params.phi(),
        })
    }

    pub fn sigma(params: &SystemParams, theta: f64, phi: f64) -> Result<Self> {
        let params = params.with_theta(theta)?.with_phi(phi)?;
        let sys = build_liouvillian(&params);
        let cov = initial_covariances(&steady_state(&sys)?.density);
        let correlation = Correlation::new(
            to_dynamic(&sys.m),
            &[to_dynamic_vec(&cov.u41), to_dynamic_vec(&cov.u32)],
            sigma_terms(&params, theta, phi),
            LiouvilleIndex::mirror_permutation().to_vec(),
        );
        Ok(Self {
            correlation,
            params,
            transition: Transition::Sigma,
            theta,
            phi,
        })
    }

    /// Pi spectra take their cross-damping from `params`; sigma spectra ignore it only through the Liouvillian.
    pub fn new(params: &SystemParams, transition: Transition, theta: f64, phi: f64) -> Result<Self> {
        match transition {
            Transition::Pi => Self::pi(&params.with_phi(phi)?, theta, Vic::On),
            Transition::Sigma => Self::sigma(params, theta, phi),
            Transition::TwoLevel => Err(Error::InvalidParameter {
                name: "transition",
                reason: "the two-level reference has its own oracle",
            }),
        }
    }

    pub fn correlation(&self) -> &Correlation {
        &self.correlation
    }

    /// Parameters actually used, including the resolved cross-damping, theta and phi.
    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn transition(&self) -> Transition {
        self.transition
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn evaluate(&self, omega: f64) -> Result<Sample> {
        self.correlation.evaluate(omega)
    }

    pub fn zero_delay(&self) -> f64 {
        self.correlation.zero_delay()
    }

    /// Packages externally computed samples (e.g. evaluated in parallel).
    pub fn assemble(&self, grid: &FrequencyGrid, samples: &[Sample], method: Method) -> SpectrumResult {
        assert_eq!(grid.len(), samples.len(), "one sample per grid point");
        SpectrumResult {
            omega: grid.points().to_vec(),
            values: samples.iter().map(|s| s.value).collect(),
            max_imag_residue: samples.iter().fold(0.0, |acc, s| acc.max(s.residue)),
            theta: self.theta,
            phi: self.phi,
            transition: self.transition,
            params: Some(self.params),
            method,
        }
    }

    pub fn spectrum(&self, grid: &FrequencyGrid) -> Result<SpectrumResult> {
        let samples = grid
            .points()
            .iter()
            .map(|&w| self.evaluate(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(grid, &samples, Method::ExactResolvent))
    }
}

pub fn squeezing_spectrum_pi(
    params: &SystemParams,
    grid: &FrequencyGrid,
    theta: f64,
    vic: Vic,
) -> Result<SpectrumResult> {
    SpectrumEngine::pi(params, theta, vic)?.spectrum(grid)
}

pub fn squeezing_spectrum_sigma(
    params: &SystemParams,
    grid: &FrequencyGrid,
    theta: f64,
    phi: f64,
) -> Result<SpectrumResult> {
    SpectrumEngine::sigma(params, theta, phi)?.spectrum(grid)
}
