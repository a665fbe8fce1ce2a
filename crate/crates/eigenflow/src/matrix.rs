//! Dense square complex matrices and the eigenvalue kernel.

use ndarray::Array2;
use ndarray_linalg::EigVals;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense n-by-n complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { n, data }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = ComplexMatrix::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.n + j] = value;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `self * other`.
    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    /// `alpha * self + beta * other`, entrywise.
    pub fn linear_combination(&self, alpha: f64, other: &ComplexMatrix, beta: f64) -> ComplexMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in linear combination");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * alpha + b * beta)
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues in the order reported by the solver (unordered contract).
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        if !self.is_finite() {
            return Err(Error::NumericalFailure {
                n: self.n,
                detail: "matrix contains non-finite entries".to_string(),
            });
        }
        let arr = Array2::from_shape_fn((self.n, self.n), |(i, j)| self.get(i, j));
        let vals = arr.eigvals().map_err(|e| Error::NumericalFailure {
            n: self.n,
            detail: e.to_string(),
        })?;
        let out: Vec<Complex64> = vals.to_vec();
        if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NumericalFailure {
                n: self.n,
                detail: "solver returned non-finite eigenvalues".to_string(),
            });
        }
        Ok(out)
    }
}

/// Sorts eigenvalues into the canonical order: by real part, then imaginary
/// part, using total ordering on f64. Every stored eigenvalue list in this
/// crate is canonical unless explicitly documented otherwise.
pub fn canonical_sort(values: &mut [Complex64]) {
    values.sort_by(|a, b| {
        a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
    });
}
