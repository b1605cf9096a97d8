use num_complex::Complex;

use crate::numlin::{NumlinError, Tensor};
use crate::scalar::{cone, czero, Real};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    n: usize,
    lu: Vec<Complex<T>>,
    perm: Vec<usize>,
    swaps: usize,
}

impl<T: Real> Lu<T> {
    /// Factorizes a square matrix. Fails only on an exactly zero pivot column.
    pub fn new(a: &Tensor<T>) -> Result<Self, NumlinError> {
        if !a.is_square() {
            return Err(NumlinError::NotSquare(a.shape().to_vec()));
        }
        let n = a.rows();
        let mut lu = a.data().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| lu[i * n + k].norm().partial_cmp(&lu[j * n + k].norm()).unwrap())
                .unwrap();
            if lu[pivot * n + k].norm() == T::zero() {
                return Err(NumlinError::Singular);
            }
            if pivot != k {
                for c in 0..n {
                    lu.swap(k * n + c, pivot * n + c);
                }
                perm.swap(k, pivot);
                swaps += 1;
            }
            let p = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / p;
                lu[i * n + k] = f;
                for c in k + 1..n {
                    let t = lu[k * n + c];
                    lu[i * n + c] -= f * t;
                }
            }
        }
        Ok(Self { n, lu, perm, swaps })
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>, NumlinError> {
        let n = self.n;
        if b.len() != n {
            return Err(NumlinError::ShapeMismatch {
                op: "lu_solve",
                left: vec![n, n],
                right: vec![b.len()],
            });
        }
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let t = x[k];
                x[i] -= self.lu[i * n + k] * t;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let t = x[k];
                x[i] -= self.lu[i * n + k] * t;
            }
            x[i] /= self.lu[i * n + i];
        }
        Ok(x)
    }

    pub fn det(&self) -> Complex<T> {
        let mut d = (0..self.n).fold(cone::<T>(), |acc, i| acc * self.lu[i * self.n + i]);
        if self.swaps % 2 == 1 {
            d = -d;
        }
        d
    }

    pub fn inverse(&self) -> Result<Tensor<T>, NumlinError> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![czero(); n];
            e[j] = cone();
            cols.push(self.solve(&e)?);
        }
        Tensor::from_columns(&cols)
    }
}

pub fn inverse<T: Real>(a: &Tensor<T>) -> Result<Tensor<T>, NumlinError> {
    Lu::new(a)?.inverse()
}

pub fn det<T: Real>(a: &Tensor<T>) -> Result<Complex<T>, NumlinError> {
    match Lu::new(a) {
        Ok(lu) => Ok(lu.det()),
        Err(NumlinError::Singular) => Ok(czero()),
        Err(e) => Err(e),
    }
}
