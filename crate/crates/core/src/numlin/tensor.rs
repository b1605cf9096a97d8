use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::numlin::NumlinError;
use crate::scalar::{cone, czero, is_finite, Real};

/// Dense complex array with an explicit row-major shape.
///
/// Every morphism in the library is carried as a rank-2 tensor: a map
/// `X -> Y` is a `dim(Y) x dim(X)` matrix and elements of a space are
/// column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    shape: Vec<usize>,
    data: Vec<Complex<T>>,
}

impl<T: Real> Tensor<T> {
    pub fn new(shape: Vec<usize>, data: Vec<Complex<T>>) -> Result<Self, NumlinError> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(NumlinError::InvalidShape(shape));
        }
        let len: usize = shape.iter().product();
        if len != data.len() {
            return Err(NumlinError::DataLength {
                expected: len,
                found: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|z| !is_finite(z)) {
            return Err(NumlinError::NonFinite { index });
        }
        Ok(Self { shape, data })
    }

    pub fn matrix(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self, NumlinError> {
        Self::new(vec![rows, cols], data)
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self, NumlinError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(NumlinError::Ragged);
        }
        Self::matrix(rows.len(), cols, rows.concat())
    }

    /// Real-valued convenience constructor, mostly for fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, NumlinError> {
        let rows: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(T::lit(x), T::zero())).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            shape: vec![rows, cols],
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = cone();
        }
        out
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = f(r, c);
            }
        }
        out
    }

    pub fn diag(entries: &[Complex<T>]) -> Self {
        let mut out = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            out[(i, i)] = z;
        }
        out
    }

    /// `n x 1` matrix holding `v`.
    pub fn column(v: &[Complex<T>]) -> Self {
        assert!(!v.is_empty(), "empty column");
        Self {
            shape: vec![v.len(), 1],
            data: v.to_vec(),
        }
    }

    /// `1 x n` matrix holding `v` (no conjugation).
    pub fn row(v: &[Complex<T>]) -> Self {
        assert!(!v.is_empty(), "empty row");
        Self {
            shape: vec![1, v.len()],
            data: v.to_vec(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Complex<T>>]) -> Result<Self, NumlinError> {
        let rows = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != rows) {
            return Err(NumlinError::Ragged);
        }
        if rows == 0 {
            return Err(NumlinError::InvalidShape(vec![0, cols.len()]));
        }
        Ok(Self::from_fn(rows, cols.len(), |r, c| cols[c][r]))
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn is_matrix(&self) -> bool {
        self.shape.len() == 2
    }

    pub fn is_square(&self) -> bool {
        self.is_matrix() && self.shape[0] == self.shape[1]
    }

    /// Row count of a rank-2 tensor.
    pub fn rows(&self) -> usize {
        debug_assert!(self.is_matrix());
        self.shape[0]
    }

    /// Column count of a rank-2 tensor.
    pub fn cols(&self) -> usize {
        debug_assert!(self.is_matrix());
        self.shape[1]
    }

    pub fn column_vec(&self, c: usize) -> Vec<Complex<T>> {
        (0..self.rows()).map(|r| self[(r, c)]).collect()
    }

    pub fn row_vec(&self, r: usize) -> Vec<Complex<T>> {
        let n = self.cols();
        self.data[r * n..(r + 1) * n].to_vec()
    }

    pub fn reshape(&self, shape: Vec<usize>) -> Result<Self, NumlinError> {
        Self::new(shape, self.data.clone())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|z| z * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self, NumlinError> {
        self.zip_with("add", other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NumlinError> {
        self.zip_with("sub", other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        op: &'static str,
        other: &Self,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self, NumlinError> {
        if self.shape != other.shape {
            return Err(NumlinError::ShapeMismatch {
                op,
                left: self.shape.clone(),
                right: other.shape.clone(),
            });
        }
        Ok(Self {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn trace(&self) -> Complex<T> {
        let n = self.rows().min(self.cols());
        (0..n).map(|i| self[(i, i)]).fold(czero(), |acc, z| acc + z)
    }
}

impl<T> Index<(usize, usize)> for Tensor<T> {
    type Output = Complex<T>;

    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        debug_assert!(self.shape.len() == 2 && r < self.shape[0] && c < self.shape[1]);
        &self.data[r * self.shape[1] + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Tensor<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(self.shape.len() == 2 && r < self.shape[0] && c < self.shape[1]);
        &mut self.data[r * self.shape[1] + c]
    }
}
