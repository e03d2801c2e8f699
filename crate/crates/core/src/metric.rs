//! Symmetric distance matrices for the traveling salesman formulation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::sqrt;

/// Asymmetry tolerated between `d[i][j]` and `d[j][i]`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Square, symmetric, nonnegative matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Validates rows. Symmetric pairs are averaged after the tolerance check.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDistanceMatrix("rows are ragged or not square"));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend_from_slice(row);
        }
        Self::from_flat(n, data)
    }

    pub fn from_flat(n: usize, mut data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidDistanceMatrix("entry count is not n*n"));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidDistanceMatrix("diagonal must be zero"));
            }
            for j in 0..n {
                let d = data[i * n + j];
                if !d.is_finite() {
                    return Err(Error::InvalidDistanceMatrix("entries must be finite"));
                }
                if d < 0.0 {
                    return Err(Error::InvalidDistanceMatrix("entries must be nonnegative"));
                }
            }
            for j in i + 1..n {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                if (a - b).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::InvalidDistanceMatrix("matrix is not symmetric"));
                }
                let m = 0.5 * (a + b);
                data[i * n + j] = m;
                data[j * n + i] = m;
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Euclidean distances between planar points.
    pub fn euclidean(points: &[(f64, f64)]) -> Self {
        let n = points.len();
        let mut data = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let dx = points[i].0 - points[j].0;
                let dy = points[i].1 - points[j].1;
                data[i * n + j] = sqrt(dx * dx + dy * dy);
            }
        }
        DistanceMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }
}
