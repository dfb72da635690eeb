use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Strictly increasing sample frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
}

impl FrequencyGrid {
    /// `n` evenly spaced points from `min` to `max` inclusive.
    ///
    /// A grid symmetric about zero is symmetric bit for bit.
    pub fn uniform(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite"));
        }
        if !(min < max) {
            return Err(Error::InvalidGrid("omega_min must be below omega_max"));
        }
        if n < 2 {
            return Err(Error::InvalidGrid("at least two points are required"));
        }
        let last = (n - 1) as f64;
        let points = (0..n)
            .map(|i| {
                let k = i as f64;
                (min * (last - k) + max * k) / last
            })
            .collect();
        Self::from_points(points)
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid is empty"));
        }
        if points.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidGrid("grid points must be finite"));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid("grid must be strictly increasing"));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }
}
