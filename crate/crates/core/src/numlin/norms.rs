use num_complex::Complex;

use crate::numlin::{adjoint, eig_hermitian, matmul, NumlinError, Tensor, Tolerance};
use crate::scalar::{czero, Real};

/// Largest singular value: square root of the top eigenvalue of the smaller
/// of `a a^dagger` and `a^dagger a`, from the Jacobi solver.
///
/// Power iteration from a fixed start stalls on the second eigenvalue when the
/// start has little overlap with the top eigenvector, so it is not used here.
pub fn operator_norm<T: Real>(a: &Tensor<T>, tol: &Tolerance<T>) -> Result<T, NumlinError> {
    if !a.is_matrix() {
        return Err(NumlinError::NotMatrix {
            op: "operator_norm",
            shape: a.shape().to_vec(),
        });
    }
    if a.max_abs() == T::zero() {
        return Ok(T::zero());
    }
    let ah = adjoint(a)?;
    let gram = if a.rows() <= a.cols() {
        matmul(a, &ah)?
    } else {
        matmul(&ah, a)?
    };
    if gram.rows() == 1 {
        return Ok(gram[(0, 0)].re.max(T::zero()).sqrt());
    }
    let sym = Tensor::from_fn(gram.rows(), gram.cols(), |i, j| (gram[(i, j)] + gram[(j, i)].conj()) * T::lit(0.5));
    let eig = eig_hermitian(&sym, tol)?;
    let top = eig.values.last().copied().unwrap_or_else(T::zero);
    Ok(top.max(T::zero()).sqrt())
}

/// Singular values in descending order, read off the Hermitian dilation
/// `[[0, a], [a^dagger, 0]]` so that small values keep absolute accuracy.
pub fn singular_values<T: Real>(a: &Tensor<T>, tol: &Tolerance<T>) -> Result<Vec<T>, NumlinError> {
    if !a.is_matrix() {
        return Err(NumlinError::NotMatrix {
            op: "singular_values",
            shape: a.shape().to_vec(),
        });
    }
    let (r, c) = (a.rows(), a.cols());
    let dilation = Tensor::from_fn(r + c, r + c, |i, j| {
        if i < r && j >= r {
            a[(i, j - r)]
        } else if i >= r && j < r {
            a[(j, i - r)].conj()
        } else {
            czero()
        }
    });
    let eig = eig_hermitian(&dilation, tol)?;
    let k = r.min(c);
    Ok(eig.values.iter().rev().take(k).map(|&s| s.max(T::zero())).collect())
}

/// Rank of the `d x d` reshape of a vector in `C^d (x) C^d`: the number of
/// singular values above `tol.abs()`.
pub fn schmidt_rank<T: Real>(
    v: &[Complex<T>],
    d: usize,
    tol: &Tolerance<T>,
) -> Result<usize, NumlinError> {
    if d == 0 || v.len() != d * d {
        return Err(NumlinError::ShapeMismatch {
            op: "schmidt_rank",
            left: vec![d, d],
            right: vec![v.len()],
        });
    }
    let m = Tensor::matrix(d, d, v.to_vec())?;
    let sv = singular_values(&m, tol)?;
    Ok(sv.iter().filter(|&&s| s > tol.abs()).count())
}
