//! Interaction-picture Hamiltonian, the Liouvillian `d/dt psi = M psi + C`
//! and its steady state.

use nalgebra::{Matrix4, Schur};

use crate::error::{Error, Result};
use crate::liouville::{pos, DensityMatrix, LiouvilleVector, Mat15, Vec15};
use crate::params::SystemParams;
use crate::C64;

/// Steady-state solves are rejected above this 1-norm condition estimate.
pub const MAX_CONDITION: f64 = 1e12;

const I: C64 = C64::new(0.0, 1.0);

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `H_I / hbar`: diagonal `(-Delta, -Delta, 0, 0)`, couplings `+Omega_a` on
/// 1-3, `-Omega_a` on 2-4 and `-Omega_b` on 1-4.
pub fn build_hamiltonian(params: &SystemParams) -> Matrix4<C64> {
    let (oa, ob, d) = (params.omega_a(), params.omega_b(), params.delta());
    let mut h = Matrix4::<C64>::zeros();
    h[(0, 0)] = re(-d);
    h[(1, 1)] = re(-d);
    for &(i, j, v) in &[(0, 2, oa), (1, 3, -oa), (0, 3, -ob)] {
        h[(i, j)] = re(v);
        h[(j, i)] = re(v);
    }
    h
}

/// The 15x15 evolution matrix and the inhomogeneous term left by eliminating `rho_22`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvillianSystem {
    pub m: Mat15,
    pub c: Vec15,
    pub params: SystemParams,
}

/// Accumulates `coeff * rho_ij` terms of `d/dt rho_target` into `(M, C)`.
struct Assembler {
    m: Mat15,
    c: Vec15,
}

impl Assembler {
    fn add(&mut self, target: (u8, u8), coeff: C64, element: (u8, u8)) {
        // <A_mn> = rho_nm, so d/dt rho_ij lives in the row of A_ji.
        let row = pos(target.1, target.0);
        if element == (2, 2) {
            self.c[row] += coeff;
            for k in 0..3 {
                self.m[(row, k)] -= coeff;
            }
        } else {
            self.m[(row, pos(element.1, element.0))] += coeff;
        }
    }

    fn population(&mut self, target: u8, terms: &[(C64, (u8, u8))]) {
        for &(coeff, element) in terms {
            self.add((target, target), coeff, element);
        }
    }

    /// Adds the equation for `rho_ij` and its complex conjugate for `rho_ji`.
    fn coherence(&mut self, target: (u8, u8), terms: &[(C64, (u8, u8))]) {
        for &(coeff, (a, b)) in terms {
            self.add(target, coeff, (a, b));
            self.add((target.1, target.0), coeff.conj(), (b, a));
        }
    }
}

pub fn build_liouvillian(params: &SystemParams) -> LiouvillianSystem {
    let (g1, g2, gs, g12) = (params.gamma1(), params.gamma2(), params.gamma_sigma(), params.gamma12());
    let (oa, ob, d) = (params.omega_a(), params.omega_b(), params.delta());
    let ia = I * oa;
    let ib = I * ob;

    let mut a = Assembler {
        m: Mat15::zeros(),
        c: Vec15::zeros(),
    };

    a.population(
        1,
        &[
            (re(-(g1 + gs)), (1, 1)),
            (ia, (1, 3)),
            (-ia, (3, 1)),
            (-ib, (1, 4)),
            (ib, (4, 1)),
        ],
    );
    a.population(3, &[(re(g1), (1, 1)), (re(gs), (2, 2)), (-ia, (1, 3)), (ia, (3, 1))]);
    a.population(
        4,
        &[
            (re(gs), (1, 1)),
            (re(g2), (2, 2)),
            (ia, (2, 4)),
            (-ia, (4, 2)),
            (ib, (1, 4)),
            (-ib, (4, 1)),
        ],
    );

    a.coherence(
        (1, 2),
        &[
            (re(-(g1 + g2) / 2.0 - gs), (1, 2)),
            (-ia, (3, 2)),
            (-ia, (1, 4)),
            (ib, (4, 2)),
        ],
    );
    a.coherence(
        (1, 3),
        &[
            (C64::new(-(g1 + gs) / 2.0, d), (1, 3)),
            (ia, (1, 1)),
            (-ia, (3, 3)),
            (ib, (4, 3)),
        ],
    );
    a.coherence(
        (2, 3),
        &[(C64::new(-(g2 + gs) / 2.0, d), (2, 3)), (ia, (2, 1)), (ia, (4, 3))],
    );
    a.coherence(
        (1, 4),
        &[
            (C64::new(-(g1 + gs) / 2.0, d), (1, 4)),
            (-ia, (1, 2)),
            (-ia, (3, 4)),
            (-ib, (1, 1)),
            (ib, (4, 4)),
        ],
    );
    a.coherence(
        (2, 4),
        &[
            (C64::new(-(g2 + gs) / 2.0, d), (2, 4)),
            (-ia, (2, 2)),
            (ia, (4, 4)),
            (-ib, (2, 1)),
        ],
    );
    // The only cross-damping entry of the Liouvillian (and its conjugate).
    a.coherence(
        (3, 4),
        &[(re(g12), (1, 2)), (-ia, (3, 2)), (-ia, (1, 4)), (-ib, (3, 1))],
    );

    LiouvillianSystem {
        m: a.m,
        c: a.c,
        params: *params,
    }
}

impl LiouvillianSystem {
    /// `M psi + C`.
    pub fn rate(&self, psi: &LiouvilleVector) -> LiouvilleVector {
        LiouvilleVector(self.m * psi.0 + self.c)
    }

    /// Eigenvalues of `M` from its complex Schur form.
    pub fn eigenvalues(&self) -> alloc::vec::Vec<C64> {
        let t = Schur::new(self.m).unpack().1;
        (0..t.nrows()).map(|i| t[(i, i)]).collect()
    }

    /// Largest real part over the spectrum of `M`.
    pub fn spectral_abscissa(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .fold(f64::NEG_INFINITY, |acc, z| acc.max(z.re))
    }

    /// `||M||_1 ||M^-1||_1`, infinite when `M` is exactly singular.
    pub fn condition_estimate(&self) -> f64 {
        match self.m.lu().try_inverse() {
            Some(inv) => norm1(&self.m) * norm1(&inv),
            None => f64::INFINITY,
        }
    }
}

fn norm1(m: &Mat15) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub vector: LiouvilleVector,
    pub density: DensityMatrix,
}

/// `psi(inf) = -M^-1 C` by dense LU, refusing ill-conditioned systems.
pub fn steady_state(sys: &LiouvillianSystem) -> Result<SteadyState> {
    let condition = sys.condition_estimate();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::NoUniqueSteadyState { condition });
    }
    let psi = sys
        .m
        .lu()
        .solve(&(-sys.c))
        .ok_or(Error::NoUniqueSteadyState { condition })?;
    let vector = LiouvilleVector(psi);
    Ok(SteadyState {
        vector,
        density: vector.to_density(),
    })
}

/// Closed-form steady state; independent of gamma12 and phi.
pub fn analytic_steady_state(params: &SystemParams) -> Result<DensityMatrix> {
    let (g, d) = (params.gamma(), params.delta());
    let (oa, ob) = (params.omega_a(), params.omega_b());
    let (oa2, ob2) = (oa * oa, ob * ob);
    let lorentz = g * g + 4.0 * d * d;
    let den = 2.0 * oa2 * (lorentz + 8.0 * oa2) + ob2 * lorentz;
    if !(den > 0.0) || !den.is_finite() {
        return Err(Error::VanishingDenominator);
    }

    let excited = 4.0 * oa2 * oa2 / den;
    let rho33 = (4.0 * oa2 * oa2 + (oa2 + ob2) * lorentz) / den;
    let rho44 = oa2 * (lorentz + 4.0 * oa2) / den;
    let detuned = C64::new(d, -g / 2.0);
    let rho13 = detuned * (4.0 * oa2 * oa / den);
    let rho23 = detuned * (-4.0 * oa2 * ob / den);
    let rho34 = oa * ob * lorentz / den;

    let mut rho = Matrix4::<C64>::zeros();
    rho[(0, 0)] = re(excited);
    rho[(1, 1)] = re(excited);
    rho[(2, 2)] = re(rho33);
    rho[(3, 3)] = re(rho44);
    let mut set = |i: usize, j: usize, v: C64| {
        rho[(i, j)] = v;
        rho[(j, i)] = v.conj();
    };
    set(0, 2, rho13);
    set(1, 3, -rho13);
    set(1, 2, rho23);
    set(2, 3, re(rho34));
    Ok(DensityMatrix(rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liouville::{LiouvilleIndex, DIM};
    use crate::params::CrossDamping;

    fn fig3() -> SystemParams {
        SystemParams::builder().omega_a(0.2).omega_b(0.6).build().unwrap()
    }

    #[test]
    fn inhomogeneous_term_has_four_entries() {
        let p = SystemParams::builder()
            .omega_a(1.7)
            .omega_b(0.4)
            .delta(-2.0)
            .build()
            .unwrap();
        let sys = build_liouvillian(&p);
        for i in 0..DIM {
            let expected = match i {
                1 => C64::new(2.0 / 3.0, 0.0),
                2 => C64::new(1.0 / 3.0, 0.0),
                11 => C64::new(0.0, 1.7),
                12 => C64::new(0.0, -1.7),
                _ => C64::new(0.0, 0.0),
            };
            assert!((sys.c[i] - expected).norm() < 1e-15, "C[{}]", i + 1);
        }
    }

    #[test]
    fn excited_population_decays_at_total_rate() {
        let sys = build_liouvillian(&fig3());
        assert!((sys.m[(0, 0)] - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cross_damping_enters_only_two_entries() {
        let on = build_liouvillian(&fig3());
        let off = build_liouvillian(&fig3().with_cross_damping(CrossDamping::Off).unwrap());
        let diff = on.m - off.m;
        let nonzero: alloc::vec::Vec<(usize, usize)> = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |j| (i, j)))
            .filter(|&(i, j)| diff[(i, j)].norm() > 0.0)
            .collect();
        // d/dt rho34 (row <A43>) picks up rho12 (<A21>), and its conjugate
        assert_eq!(nonzero, alloc::vec![(13, 3), (14, 4)]);
    }

    #[test]
    fn undriven_atom_has_no_unique_steady_state() {
        let p = SystemParams::builder().build().unwrap();
        let sys = build_liouvillian(&p);
        assert!(sys.condition_estimate() > MAX_CONDITION);
        assert!(matches!(steady_state(&sys), Err(Error::NoUniqueSteadyState { .. })));
    }

    #[test]
    fn hamiltonian_is_hermitian_and_diagonal_without_drive() {
        let p = SystemParams::builder().delta(2.5).build().unwrap();
        let h = build_hamiltonian(&p);
        assert_eq!(
            h,
            Matrix4::from_diagonal(&nalgebra::Vector4::new(re(-2.5), re(-2.5), re(0.0), re(0.0)))
        );
        let p = SystemParams::builder()
            .omega_a(0.3)
            .omega_b(1.1)
            .delta(-4.0)
            .build()
            .unwrap();
        let h = build_hamiltonian(&p);
        assert_eq!(h, h.adjoint());
    }

    #[test]
    fn hamiltonian_eigenvalues_strong_field() {
        let p = SystemParams::builder()
            .omega_a(4.0)
            .omega_b(12.0)
            .delta(15.0)
            .build()
            .unwrap();
        let h = build_hamiltonian(&p);
        let mut ev: alloc::vec::Vec<f64> = nalgebra::SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        for (got, want) in ev.iter().zip([-22.69, -15.10, 0.10, 7.69]) {
            assert!((got - want).abs() <= 0.01, "{got} vs {want}");
        }
    }

    #[test]
    fn weak_resonant_steady_state_values() {
        let ss = steady_state(&build_liouvillian(&fig3())).unwrap();
        let rho = ss.density;
        let close = |a: C64, b: C64| (a - b).norm() < 1e-6;
        assert!(close(rho.element(1, 1), re(0.013746)));
        assert!(close(rho.element(2, 2), re(0.013746)));
        assert!(close(rho.element(3, 3), re(0.872852)));
        assert!(close(rho.element(4, 4), re(0.099656)));
        assert!(close(rho.element(1, 3), C64::new(0.0, -0.034364)));
        assert!(close(rho.element(2, 3), C64::new(0.0, 0.103093)));
        assert!(close(rho.element(3, 4), re(0.257732)));
        assert!(rho.element(1, 2).norm() < 1e-14);
        assert!(rho.element(1, 4).norm() < 1e-14);
        assert!((rho.element(1, 3) + rho.element(2, 4)).norm() < 1e-14);
        assert!(rho.is_physical());
    }

    #[test]
    fn dark_state_limit() {
        let p = SystemParams::builder().omega_a(1e-4).omega_b(0.8).build().unwrap();
        let rho = steady_state(&build_liouvillian(&p)).unwrap().density;
        assert!((rho.element(3, 3).re - 1.0).abs() < 1e-6);
        for k in [1, 2, 4] {
            assert!(rho.element(k, k).re.abs() < 1e-6);
        }
    }

    #[test]
    fn closed_form_matches_frozen_values() {
        let rho = analytic_steady_state(&fig3()).unwrap();
        // 4 Oa^4 / (2 Oa^2 (1 + 8 Oa^2) + Ob^2) with Oa = 0.2, Ob = 0.6
        let den = 2.0 * 0.04 * (1.0 + 0.32) + 0.36;
        assert!((rho.element(1, 1).re - 4.0 * 0.0016 / den).abs() < 1e-15);
        assert!((rho.element(3, 4).re - 0.12 / den).abs() < 1e-15);
    }

    #[test]
    fn closed_form_ignores_cross_damping_and_phase() {
        let a = analytic_steady_state(&fig3()).unwrap();
        let b = analytic_steady_state(
            &fig3()
                .with_cross_damping(CrossDamping::Off)
                .unwrap()
                .with_phi(1.3)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn closed_form_strong_circular_field_pumps_level_3() {
        let p = SystemParams::builder().omega_a(0.5).omega_b(1e6).build().unwrap();
        let rho = analytic_steady_state(&p).unwrap();
        assert!((rho.element(3, 3).re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn closed_form_rejects_vanishing_denominator() {
        let p = SystemParams::builder().delta(3.0).build().unwrap();
        assert_eq!(analytic_steady_state(&p), Err(Error::VanishingDenominator));
    }

    #[test]
    fn strictly_damped_when_linear_field_is_on() {
        let sys = build_liouvillian(&fig3());
        assert!(sys.spectral_abscissa() < 0.0);
        let _ = LiouvilleIndex::LABELS;
    }
}
