use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{Complex, DMatrix};

use crate::{Error, Real, Result};

/// Tolerance on `max |A - A^H|` relative to `max(1, max |A|)` accepted before symmetrizing.
const HERMITIAN_TOLERANCE: f64 = 1e-9;

/// A dense complex Hermitian matrix.
///
/// Inputs are symmetrized to `(A + A^H)/2` on construction, so the stored
/// entries satisfy `a[i][j] == conj(a[j][i])` exactly.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix<T: Real> {
    data: DMatrix<Complex<T>>,
}

impl<T: Real> HermitianMatrix<T> {
    /// Validates and symmetrizes a square complex matrix.
    pub fn new(data: DMatrix<Complex<T>>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows == 0 || rows != cols {
            return Err(Error::ShapeError {
                expected: "non-empty square matrix".into(),
                found: format!("{rows}x{cols}"),
            });
        }
        let mut scale = T::one();
        let mut deviation = T::zero();
        for i in 0..rows {
            for j in 0..cols {
                let a = data[(i, j)];
                if !(a.re.is_finite() && a.im.is_finite()) {
                    return Err(Error::DomainError(format!("non-finite entry at ({i}, {j})")));
                }
                scale = scale.max(a.norm_sqr().sqrt());
                let d = a - data[(j, i)].conj();
                deviation = deviation.max(d.norm_sqr().sqrt());
            }
        }
        if deviation > T::lit(HERMITIAN_TOLERANCE) * scale {
            return Err(Error::NotHermitian { deviation: deviation.as_f64() });
        }
        Ok(Self::symmetrized(data))
    }

    /// Symmetrizes without validation. Callers guarantee the input is Hermitian up to roundoff.
    pub(crate) fn symmetrized(data: DMatrix<Complex<T>>) -> Self {
        let half = T::lit(0.5);
        let n = data.nrows();
        let mut out = data;
        for i in 0..n {
            out[(i, i)] = Complex::new(out[(i, i)].re, T::zero());
            for j in (i + 1)..n {
                let a = out[(i, j)];
                let b = out[(j, i)].conj();
                let m = Complex::new((a.re + b.re) * half, (a.im + b.im) * half);
                out[(i, j)] = m;
                out[(j, i)] = m.conj();
            }
        }
        Self { data: out }
    }

    pub fn from_real_diagonal(diag: &[T]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::ShapeError { expected: "dim >= 1".into(), found: "0".into() });
        }
        let n = diag.len();
        let mut data = DMatrix::from_element(n, n, Complex::new(T::zero(), T::zero()));
        for (i, &d) in diag.iter().enumerate() {
            data[(i, i)] = Complex::new(d, T::zero());
        }
        Self::new(data)
    }

    /// Builds a matrix from row-major `(re, im)` pairs.
    pub fn from_pairs(dim: usize, entries: &[(T, T)]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::ShapeError {
                expected: format!("{} entries", dim * dim),
                found: entries.len().to_string(),
            });
        }
        Self::new(DMatrix::from_fn(dim, dim, |i, j| {
            let (re, im) = entries[i * dim + j];
            Complex::new(re, im)
        }))
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, T::one())
    }

    pub fn scaled_identity(dim: usize, value: T) -> Self {
        let mut data = DMatrix::from_element(dim, dim, Complex::new(T::zero(), T::zero()));
        for i in 0..dim {
            data[(i, i)] = Complex::new(value, T::zero());
        }
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { data: DMatrix::from_element(dim, dim, Complex::new(T::zero(), T::zero())) }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex<T>> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<Complex<T>> {
        self.data
    }

    pub fn trace(&self) -> T {
        (0..self.dim()).fold(T::zero(), |acc, i| acc + self.data[(i, i)].re)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data.iter().zip(other.data.iter()).fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm_sqr().sqrt()))
    }

    pub fn scale(&self, factor: T) -> Self {
        Self { data: self.data.map(|z| z * factor) }
    }

    /// `self + factor * other`.
    pub fn axpy(&self, factor: T, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self { data: self.data.zip_map(&other.data, |a, b| a + b * factor) }
    }

    /// `U A U^H` for a unitary (or arbitrary) `U`; the result is re-symmetrized.
    pub fn conjugate_by(&self, u: &DMatrix<Complex<T>>) -> Self {
        Self::symmetrized(u * &self.data * u.adjoint())
    }

    pub fn map_entries<F: Fn(Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        Self::symmetrized(self.data.map(f))
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeError {
                expected: format!("{0}x{0}", self.dim()),
                found: format!("{0}x{0}", other.dim()),
            });
        }
        Ok(())
    }
}

impl<T: Real> fmt::Debug for HermitianMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianMatrix{}", self.data)
    }
}

impl<T: Real> Add for &HermitianMatrix<T> {
    type Output = HermitianMatrix<T>;
    fn add(self, rhs: Self) -> HermitianMatrix<T> {
        HermitianMatrix { data: &self.data + &rhs.data }
    }
}

impl<T: Real> Sub for &HermitianMatrix<T> {
    type Output = HermitianMatrix<T>;
    fn sub(self, rhs: Self) -> HermitianMatrix<T> {
        HermitianMatrix { data: &self.data - &rhs.data }
    }
}

impl<T: Real> Mul<T> for &HermitianMatrix<T> {
    type Output = HermitianMatrix<T>;
    fn mul(self, rhs: T) -> HermitianMatrix<T> {
        self.scale(rhs)
    }
}

/// Hilbert–Schmidt inner product `Tr[X^H Y]`.
///
/// For Hermitian arguments the trace is real; only the real part is returned.
pub fn hs_inner<T: Real>(x: &HermitianMatrix<T>, y: &HermitianMatrix<T>) -> Result<T> {
    x.check_same_dim(y)?;
    let (re, im) = x.data.iter().zip(y.data.iter()).fold((T::zero(), T::zero()), |(re, im), (a, b)| {
        let p = a.conj() * *b;
        (re + p.re, im + p.im)
    });
    debug_assert!(
        im.abs() <= T::lit(1e-10) * (T::one() + re.abs()),
        "imaginary residue in Hilbert-Schmidt inner product"
    );
    Ok(re)
}

/// Hilbert–Schmidt (Frobenius) norm.
pub fn hs_norm<T: Real>(x: &HermitianMatrix<T>) -> T {
    x.frobenius_norm()
}
