//! Independent reference spectra.
//!
//! The time-domain oracle integrates the regression equation `dU/dtau = M U`
//! with classical RK4 and Fourier-transforms the weighted correlation; it
//! never forms a resolvent. The two-level oracle runs the resolvent pipeline
//! on the standard driven two-level atom.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, Matrix3, Schur, Vector3};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::params::SystemParams;
use crate::spectra::{Correlation, Method, Sample, SpectrumEngine, SpectrumResult, Term, Transition};
use crate::C64;

/// Integration controls for [`time_domain_spectrum_oracle_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeDomainOptions {
    /// Step is `step_scale / max(spectral radius of M, max |omega|)`.
    pub step_scale: f64,
    /// Integration stops once every correlation entry is below this.
    pub tolerance: f64,
    pub max_steps: usize,
    /// Slowest admissible decay rate.
    pub min_decay_rate: f64,
}

impl Default for TimeDomainOptions {
    fn default() -> Self {
        Self {
            step_scale: 0.02,
            tolerance: 1e-10,
            max_steps: 20_000_000,
            min_decay_rate: 1e-8,
        }
    }
}

/// Same spectrum as the exact engine, from direct time integration.
pub fn time_domain_spectrum_oracle(
    params: &SystemParams,
    grid: &FrequencyGrid,
    theta: f64,
    phi: f64,
    transition: Transition,
) -> Result<SpectrumResult> {
    time_domain_spectrum_oracle_with(params, grid, theta, phi, transition, TimeDomainOptions::default())
}

pub fn time_domain_spectrum_oracle_with(
    params: &SystemParams,
    grid: &FrequencyGrid,
    theta: f64,
    phi: f64,
    transition: Transition,
    options: TimeDomainOptions,
) -> Result<SpectrumResult> {
    let engine = SpectrumEngine::new(params, transition, theta, phi)?;
    let samples = fourier_samples(engine.correlation(), grid.points(), options)?;
    Ok(engine.assemble(grid, &samples, Method::TimeDomainOracle))
}

/// Sampled correlation `g(k h)` (mirror-averaged) and the step `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTrace {
    pub step: f64,
    pub values: Vec<C64>,
}

/// Integrates the sources until they decay below `options.tolerance`.
pub fn correlation_trace(
    correlation: &Correlation,
    max_omega: f64,
    options: TimeDomainOptions,
) -> Result<CorrelationTrace> {
    let m = correlation.generator();
    let n = correlation.dim();
    let eigenvalues = Schur::new(m.clone())
        .eigenvalues()
        .ok_or(Error::NonDecaying { rate: 0.0 })?;
    let slowest = eigenvalues.iter().fold(f64::INFINITY, |acc, z| acc.min(-z.re));
    if !(slowest > options.min_decay_rate) {
        return Err(Error::NonDecaying { rate: slowest });
    }
    let radius = eigenvalues.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let step = options.step_scale / radius.max(max_omega.abs()).max(f64::MIN_POSITIVE);

    // One RK4 step of a linear system is multiplication by this polynomial in hM.
    let hm = m * C64::new(step, 0.0);
    let mut propagator = DMatrix::<C64>::identity(n, n);
    let mut power = DMatrix::<C64>::identity(n, n);
    for k in 1..=4 {
        power = &power * &hm * C64::new(1.0 / k as f64, 0.0);
        propagator += &power;
    }

    let mut state = correlation.stacked_sources().clone();
    let mut values = Vec::new();
    values.push(correlation.combine(&state));
    loop {
        if values.len() > options.max_steps {
            return Err(Error::NonDecaying { rate: slowest });
        }
        state = &propagator * &state;
        values.push(correlation.combine(&state));
        let largest = state.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        if largest < options.tolerance {
            break;
        }
    }
    Ok(CorrelationTrace { step, values })
}

const REANCHOR: usize = 512;

/// `integral_0^inf 2 cos(omega tau) g(tau) dtau` by trapezoid with the
/// first Euler-Maclaurin end correction.
fn cosine_transform(trace: &CorrelationTrace, slope0: C64, omega: f64) -> C64 {
    let h = trace.step;
    let x = omega * h;
    let two_cos = 2.0 * x.cos();
    let last = trace.values.len() - 1;
    let (mut prev, mut cur) = ((-x).cos(), 1.0);
    let mut sum = C64::new(0.0, 0.0);
    for (k, g) in trace.values.iter().enumerate() {
        if k > 0 {
            let next = two_cos * cur - prev;
            prev = cur;
            cur = next;
            if k % REANCHOR == 0 {
                prev = ((k - 1) as f64 * x).cos();
                cur = (k as f64 * x).cos();
            }
        }
        let edge = if k == 0 || k == last { 0.5 } else { 1.0 };
        sum += g * (edge * cur);
    }
    // f(tau) = 2 cos(omega tau) g(tau); f'(0) = 2 g'(0), f'(end) ~ 0.
    sum * (2.0 * h) + slope0 * (2.0 * h * h / 12.0)
}

fn fourier_samples(correlation: &Correlation, omegas: &[f64], options: TimeDomainOptions) -> Result<Vec<Sample>> {
    let max_omega = omegas.iter().fold(0.0f64, |acc, w| acc.max(w.abs()));
    let trace = correlation_trace(correlation, max_omega, options)?;
    let slope0 = correlation.zero_delay_slope();
    Ok(omegas
        .iter()
        .map(|&w| {
            let z = cosine_transform(&trace, slope0, w);
            Sample {
                value: z.re,
                residue: z.im.abs(),
            }
        })
        .collect())
}

/// Liouville vector order of the two-level atom: `<A_ee>, <A_eg>, <A_ge>`.
const TWO_LEVEL_MIRROR: [usize; 3] = [0, 2, 1];

/// Generator and inhomogeneous term for `H = -delta A_ee + (rabi/2)(A_eg + A_ge)`.
pub fn two_level_liouvillian(rabi: f64, delta: f64, gamma: f64) -> (Matrix3<C64>, Vector3<C64>) {
    let i = C64::new(0.0, 1.0);
    let half = i * (rabi / 2.0);
    let m = Matrix3::new(
        C64::new(-gamma, 0.0),
        -half,
        half,
        -i * rabi,
        C64::new(-gamma / 2.0, -delta),
        C64::new(0.0, 0.0),
        i * rabi,
        C64::new(0.0, 0.0),
        C64::new(-gamma / 2.0, delta),
    );
    (m, Vector3::new(C64::new(0.0, 0.0), half, -half))
}

/// Quadrature spectrum of the driven two-level atom with the same conventions.
pub fn two_level_spectrum_oracle(
    omega_rabi: f64,
    delta: f64,
    gamma_tl: f64,
    theta: f64,
    grid: &FrequencyGrid,
) -> Result<SpectrumResult> {
    if !(gamma_tl.is_finite() && gamma_tl > 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            reason: "must be finite and positive",
        });
    }
    if !(omega_rabi.is_finite() && delta.is_finite() && theta.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "omega_rabi",
            reason: "drive, detuning and quadrature must be finite",
        });
    }
    let (m, c) = two_level_liouvillian(omega_rabi, delta, gamma_tl);
    let condition = m
        .lu()
        .try_inverse()
        .map_or(f64::INFINITY, |inv| norm1(&m) * norm1(&inv));
    if !(condition <= crate::model::MAX_CONDITION) {
        return Err(Error::NoUniqueSteadyState { condition });
    }
    let psi = m.lu().solve(&(-c)).ok_or(Error::NoUniqueSteadyState { condition })?;
    let (ee, eg, ge) = (psi[0], psi[1], psi[2]);
    // <dA_pq dA_ge> with A_pq A_ge = delta_{q,g} A_pe
    let source = DVector::from_vec(alloc::vec![-ee * ge, ee - eg * ge, -ge * ge]);
    let terms = alloc::vec![
        Term {
            row: 2,
            source: 0,
            weight: C64::new((2.0 * theta).cos(), (2.0 * theta).sin()) * gamma_tl,
        },
        Term {
            row: 1,
            source: 0,
            weight: C64::new(gamma_tl, 0.0),
        },
    ];
    let correlation = Correlation::new(
        DMatrix::from_column_slice(3, 3, m.as_slice()),
        &[source],
        terms,
        TWO_LEVEL_MIRROR.to_vec(),
    );
    let samples = grid
        .points()
        .iter()
        .map(|&w| correlation.evaluate(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumResult {
        omega: grid.points().to_vec(),
        values: samples.iter().map(|s| s.value).collect(),
        max_imag_residue: samples.iter().fold(0.0, |acc, s| acc.max(s.residue)),
        theta,
        phi: 0.0,
        transition: Transition::TwoLevel,
        params: None,
        method: Method::ExactResolvent,
    })
}

fn norm1(m: &Matrix3<C64>) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
