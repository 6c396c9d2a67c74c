//! Dense square complex matrices.
//!
//! Every propagator and operator in this crate is an N×N matrix in the
//! periodic δ-comb basis, stored row-major.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{BakerError, Result};

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        if im.len() != dim {
            return Err(BakerError::DimensionMismatch {
                expected: dim,
                actual: im.len(),
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (rr, ri) in re.iter().zip(im) {
            for row in [rr, ri] {
                if row.len() != dim {
                    return Err(BakerError::DimensionMismatch {
                        expected: dim,
                        actual: row.len(),
                    });
                }
            }
            data.extend(rr.iter().zip(ri).map(|(&a, &b)| Complex64::new(a, b)));
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(BakerError::DimensionMismatch {
                expected: self.dim,
                actual: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(BakerError::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Integer power; negative exponents use the inverse, which callers
    /// must only request for unitary matrices (the adjoint is used).
    pub fn pow_unitary(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.adjoint()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::identity(self.dim);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// `blockdiag(a, b)` with `a` in the upper-left corner.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.dim, b.dim);
        let mut out = Self::zeros(na + nb);
        for r in 0..na {
            for c in 0..na {
                out[(r, c)] = a[(r, c)];
            }
        }
        for r in 0..nb {
            for c in 0..nb {
                out[(na + r, na + c)] = b[(r, c)];
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(BakerError::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |M†M − I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let g = &self.adjoint() * self;
        g.max_abs_diff(&Self::identity(self.dim))
            .expect("square by construction")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for a
/// fallible product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let cells: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_adjoint() {
        let a = ComplexMatrix::from_fn(2, |r, k| c((r + k) as f64, r as f64));
        let b = ComplexMatrix::identity(2);
        assert_eq!(&a * &b, a);
        let ad = a.adjoint();
        assert_eq!(ad[(0, 1)], a[(1, 0)].conj());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = ComplexMatrix::from_fn(3, |r, k| c(r as f64 - k as f64, 0.5));
        let a3 = &(&a * &a) * &a;
        assert!(a.pow_unitary(3).max_abs_diff(&a3).unwrap() < 1e-12);
        assert_eq!(a.pow_unitary(0), ComplexMatrix::identity(3));
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let a = ComplexMatrix::zeros(2);
        let b = ComplexMatrix::zeros(3);
        assert!(matches!(
            a.matmul(&b),
            Err(BakerError::DimensionMismatch { .. })
        ));
        assert!(a.apply(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn parts_round_trip() {
        let re = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let im = vec![vec![0.5, 0.0], vec![0.0, -0.5]];
        let m = ComplexMatrix::from_parts(&re, &im).unwrap();
        assert_eq!(m[(1, 0)], c(3.0, 0.0));
        assert_eq!(m[(1, 1)], c(4.0, -0.5));
        assert!(ComplexMatrix::from_parts(&re, &im[..1]).is_err());
    }
}
