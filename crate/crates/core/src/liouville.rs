//! Ordered Liouville-space representation of the 4x4 density matrix.
//!
//! Populations of |1>, |3>, |4> and all twelve coherences make up a
//! 15-component vector of operator expectations `<A_mn> = rho_nm`; the
//! population of |2> is eliminated through the trace condition.

use core::fmt;

use nalgebra::{Matrix4, SMatrix, SVector, SymmetricEigen};

use crate::C64;

pub const DIM: usize = 15;

pub type Mat15 = SMatrix<C64, DIM, DIM>;
pub type Vec15 = SVector<C64, DIM>;

/// The atomic operator `A_mn = |m><n|`, levels numbered 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label {
    pub m: u8,
    pub n: u8,
}

impl Label {
    pub const fn new(m: u8, n: u8) -> Self {
        Self { m, n }
    }

    /// The label of the Hermitian conjugate operator.
    pub const fn adjoint(self) -> Self {
        Self { m: self.n, n: self.m }
    }

    pub const fn is_population(self) -> bool {
        self.m == self.n
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}{}", self.m, self.n)
    }
}

const fn l(m: u8, n: u8) -> Label {
    Label::new(m, n)
}

/// Bijection between operator labels and vector positions.
pub struct LiouvilleIndex;

impl LiouvilleIndex {
    pub const LABELS: [Label; DIM] = [
        l(1, 1),
        l(3, 3),
        l(4, 4),
        l(1, 2),
        l(2, 1),
        l(1, 3),
        l(3, 1),
        l(2, 3),
        l(3, 2),
        l(1, 4),
        l(4, 1),
        l(2, 4),
        l(4, 2),
        l(3, 4),
        l(4, 3),
    ];

    /// Zero-based position of `label`, `None` for `A22` (eliminated) or out-of-range levels.
    pub const fn position(label: Label) -> Option<usize> {
        let mut i = 0;
        while i < DIM {
            let k = Self::LABELS[i];
            if k.m == label.m && k.n == label.n {
                return Some(i);
            }
            i += 1;
        }
        None
    }

    pub const fn label(position: usize) -> Label {
        Self::LABELS[position]
    }

    /// Position of the adjoint operator; the Hermiticity involution as a permutation.
    pub const fn mirror(position: usize) -> usize {
        match Self::position(Self::LABELS[position].adjoint()) {
            Some(p) => p,
            None => unreachable!(),
        }
    }

    pub fn mirror_permutation() -> [usize; DIM] {
        core::array::from_fn(Self::mirror)
    }
}

/// Position of `label` in the Liouville vector; panics on `A22`.
pub(crate) fn pos(m: u8, n: u8) -> usize {
    LiouvilleIndex::position(Label::new(m, n)).expect("label is part of the Liouville vector")
}

/// 4x4 density matrix over the bare states |1>..|4>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(pub Matrix4<C64>);

impl DensityMatrix {
    /// Element `rho_ij` with 1-based level indices.
    pub fn element(&self, i: u8, j: u8) -> C64 {
        self.0[(usize::from(i) - 1, usize::from(j) - 1)]
    }

    /// Expectation value `<A_mn> = rho_nm`.
    pub fn expectation(&self, label: Label) -> C64 {
        self.element(label.n, label.m)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self.0 - self.0.adjoint()).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (self.0 + self.0.adjoint()) * C64::new(0.5, 0.0);
        SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |acc, &x| acc.min(x))
    }

    /// Hermitian to 1e-12, unit trace to 1e-12, eigenvalues above -1e-10.
    pub fn is_physical(&self) -> bool {
        self.hermiticity_defect() <= 1e-12
            && (self.trace() - C64::new(1.0, 0.0)).norm() <= 1e-12
            && self.min_eigenvalue() >= -1e-10
    }
}

/// The ordered vector of operator expectations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvilleVector(pub Vec15);

impl LiouvilleVector {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self(Vec15::from_fn(|i, _| rho.expectation(LiouvilleIndex::label(i))))
    }

    /// Inverse map; `rho_22` comes from the trace condition.
    pub fn to_density(&self) -> DensityMatrix {
        let mut rho = Matrix4::<C64>::zeros();
        for (i, label) in LiouvilleIndex::LABELS.iter().enumerate() {
            rho[(usize::from(label.n) - 1, usize::from(label.m) - 1)] = self.0[i];
        }
        rho[(1, 1)] = C64::new(1.0, 0.0) - self.0[0] - self.0[1] - self.0[2];
        DensityMatrix(rho)
    }

    pub fn get(&self, label: Label) -> Option<C64> {
        LiouvilleIndex::position(label).map(|p| self.0[p])
    }

    /// Image under the Hermiticity involution: conjugate and swap adjoint pairs.
    pub fn mirrored(&self) -> Self {
        Self(Vec15::from_fn(|i, _| self.0[LiouvilleIndex::mirror(i)].conj()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_matches_operator_list() {
        let names: alloc::vec::Vec<_> = LiouvilleIndex::LABELS.iter().map(|l| alloc::format!("{l}")).collect();
        assert_eq!(
            names.join(","),
            "A11,A33,A44,A12,A21,A13,A31,A23,A32,A14,A41,A24,A42,A34,A43"
        );
    }

    #[test]
    fn position_is_a_bijection() {
        for (i, label) in LiouvilleIndex::LABELS.iter().enumerate() {
            assert_eq!(LiouvilleIndex::position(*label), Some(i));
        }
        assert_eq!(LiouvilleIndex::position(Label::new(2, 2)), None);
        assert_eq!(LiouvilleIndex::position(Label::new(5, 1)), None);
    }

    #[test]
    fn mirror_is_an_involution() {
        for i in 0..DIM {
            let j = LiouvilleIndex::mirror(i);
            assert_eq!(LiouvilleIndex::mirror(j), i);
            assert_eq!(LiouvilleIndex::label(j), LiouvilleIndex::label(i).adjoint());
        }
        assert_eq!(LiouvilleIndex::mirror(0), 0);
        assert_eq!(LiouvilleIndex::mirror(5), 6);
    }

    #[test]
    fn expectation_is_transposed_element() {
        let mut m = Matrix4::<C64>::zeros();
        m[(0, 2)] = C64::new(0.0, -0.25);
        let rho = DensityMatrix(m);
        assert_eq!(rho.expectation(Label::new(3, 1)), C64::new(0.0, -0.25));
        assert_eq!(rho.expectation(Label::new(1, 3)), C64::new(0.0, 0.0));
    }

    #[test]
    fn density_round_trip_restores_trace() {
        let mut m = Matrix4::<C64>::zeros();
        m[(0, 0)] = C64::new(0.1, 0.0);
        m[(1, 1)] = C64::new(0.2, 0.0);
        m[(2, 2)] = C64::new(0.3, 0.0);
        m[(3, 3)] = C64::new(0.4, 0.0);
        m[(2, 3)] = C64::new(0.05, 0.02);
        m[(3, 2)] = C64::new(0.05, -0.02);
        let rho = DensityMatrix(m);
        let back = LiouvilleVector::from_density(&rho).to_density();
        assert!((back.0 - m).norm() < 1e-15);
        assert!(back.is_physical());
        let v = LiouvilleVector::from_density(&rho);
        assert_eq!(v.mirrored(), v);
    }
}
