use num_complex::Complex;

use crate::numlin::{NumlinError, Tensor};
use crate::scalar::{cone, czero, Real};

fn require_matrix<T: Real>(op: &'static str, a: &Tensor<T>) -> Result<(), NumlinError> {
    if a.is_matrix() {
        Ok(())
    } else {
        Err(NumlinError::NotMatrix {
            op,
            shape: a.shape().to_vec(),
        })
    }
}

/// Matrix product `a * b`.
pub fn matmul<T: Real>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>, NumlinError> {
    require_matrix("matmul", a)?;
    require_matrix("matmul", b)?;
    if a.cols() != b.rows() {
        return Err(NumlinError::ShapeMismatch {
            op: "matmul",
            left: a.shape().to_vec(),
            right: b.shape().to_vec(),
        });
    }
    let (n, k, m) = (a.rows(), a.cols(), b.cols());
    let ad = a.data();
    let bd = b.data();
    let mut out = vec![czero::<T>(); n * m];
    for i in 0..n {
        let row = &mut out[i * m..(i + 1) * m];
        for p in 0..k {
            let x = ad[i * k + p];
            // structure maps are mostly kron-with-identity products, so zero skipping pays off
            if x.re == T::zero() && x.im == T::zero() {
                continue;
            }
            let brow = &bd[p * m..(p + 1) * m];
            for (o, &y) in row.iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    }
    Tensor::matrix(n, m, out)
}

/// Chained product `ts[0] * ts[1] * ...`.
pub fn matmul_chain<T: Real>(ts: &[&Tensor<T>]) -> Result<Tensor<T>, NumlinError> {
    let (first, rest) = ts.split_first().ok_or(NumlinError::Ragged)?;
    rest.iter().try_fold((*first).clone(), |acc, t| matmul(&acc, t))
}

/// `a * v` for a column vector `v`.
pub fn matvec<T: Real>(a: &Tensor<T>, v: &[Complex<T>]) -> Result<Vec<Complex<T>>, NumlinError> {
    require_matrix("matvec", a)?;
    if a.cols() != v.len() {
        return Err(NumlinError::ShapeMismatch {
            op: "matvec",
            left: a.shape().to_vec(),
            right: vec![v.len()],
        });
    }
    let n = a.cols();
    Ok(a
        .data()
        .chunks(n)
        .map(|row| row.iter().zip(v).fold(czero(), |acc, (&x, &y)| acc + x * y))
        .collect())
}

/// Kronecker product, left factor major: entry `(i, j)` of `a` and `(k, l)`
/// of `b` land at row `i * rows(b) + k`, column `j * cols(b) + l`.
pub fn kron<T: Real>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>, NumlinError> {
    require_matrix("kron", a)?;
    require_matrix("kron", b)?;
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = Tensor::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a[(i, j)];
            if x.re == T::zero() && x.im == T::zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = x * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Tensor product of vectors, same index convention as [`kron`].
pub fn vec_kron<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Vec<Complex<T>> {
    x.iter().flat_map(|&a| y.iter().map(move |&b| a * b)).collect()
}

/// Conjugate transpose.
pub fn adjoint<T: Real>(a: &Tensor<T>) -> Result<Tensor<T>, NumlinError> {
    require_matrix("adjoint", a)?;
    Ok(Tensor::from_fn(a.cols(), a.rows(), |r, c| a[(c, r)].conj()))
}

/// The symmetry `e_i (x) e_j -> e_j (x) e_i` on `C^d (x) C^d`.
pub fn swap_map<T: Real>(d: usize) -> Tensor<T> {
    assert!(d >= 1, "swap_map needs d >= 1");
    let mut out = Tensor::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            out[(j * d + i, i * d + j)] = cone();
        }
    }
    out
}

/// `<x|y>`, conjugate-linear in `x`.
pub fn inner<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Result<Complex<T>, NumlinError> {
    if x.len() != y.len() {
        return Err(NumlinError::ShapeMismatch {
            op: "inner",
            left: vec![x.len()],
            right: vec![y.len()],
        });
    }
    Ok(x.iter().zip(y).fold(czero(), |acc, (a, &b)| acc + a.conj() * b))
}

pub fn vec_norm<T: Real>(x: &[Complex<T>]) -> T {
    x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

pub fn vec_sub<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Vec<Complex<T>> {
    x.iter().zip(y).map(|(&a, &b)| a - b).collect()
}

pub fn vec_scale<T: Real>(x: &[Complex<T>], c: Complex<T>) -> Vec<Complex<T>> {
    x.iter().map(|&a| a * c).collect()
}

/// Standard basis vector `e_i` of `C^d`.
pub fn basis_vector<T: Real>(d: usize, i: usize) -> Vec<Complex<T>> {
    let mut v = vec![czero(); d];
    v[i] = cone();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn max_diff(a: &Tensor<f64>, b: &Tensor<f64>) -> f64 {
        a.sub(b).unwrap().max_abs()
    }

    #[test]
    fn identity_and_swap_products() {
        let i2 = Tensor::<f64>::identity(2);
        assert_eq!(matmul(&i2, &i2).unwrap(), i2);
        let x = Tensor::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(matmul(&x, &x).unwrap(), i2);
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = Tensor::<f64>::zeros(2, 3);
        assert!(matches!(
            matmul(&a, &a),
            Err(NumlinError::ShapeMismatch { op: "matmul", .. })
        ));
    }

    #[test]
    fn adjoint_reverses_products_entrywise() {
        let mut rng = sample::rng(7);
        let a: Tensor<f64> = sample::random_matrix(&mut rng, 3, 4);
        let b: Tensor<f64> = sample::random_matrix(&mut rng, 4, 2);
        let lhs = adjoint(&matmul(&a, &b).unwrap()).unwrap();
        // entrywise definition of (AB)^dagger
        let oracle = Tensor::from_fn(2, 3, |r, col| {
            (0..4).fold(c(0.0, 0.0), |acc, p| acc + a[(col, p)].conj() * b[(p, r)].conj())
        });
        assert!(max_diff(&lhs, &oracle) < 1e-14);
        let rhs = matmul(&adjoint(&b).unwrap(), &adjoint(&a).unwrap()).unwrap();
        assert!(max_diff(&lhs, &rhs) < 1e-14);
        assert_eq!(adjoint(&adjoint(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn adjoint_of_single_entry() {
        let a = Tensor::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let expected =
            Tensor::from_rows(&[vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, -1.0), c(0.0, 0.0)]])
                .unwrap();
        assert_eq!(adjoint(&a).unwrap(), expected);
        assert_eq!(adjoint(&Tensor::<f64>::identity(2)).unwrap(), Tensor::identity(2));
    }

    #[test]
    fn kron_index_convention() {
        let i2 = Tensor::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), Tensor::identity(4));
        let e11 = Tensor::<f64>::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let e22 = Tensor::<f64>::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]).unwrap();
        let k = kron(&e11, &e22).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let expected = if r == 1 && col == 1 { 1.0 } else { 0.0 };
                assert_eq!(k[(r, col)], c(expected, 0.0));
            }
        }
    }

    #[test]
    fn kron_mixed_product_against_brute_force() {
        let mut rng = sample::rng(11);
        let [a, b, cc, d]: [Tensor<f64>; 4] =
            std::array::from_fn(|_| sample::random_matrix(&mut rng, 2, 2));
        let lhs = matmul(&kron(&a, &b).unwrap(), &kron(&cc, &d).unwrap()).unwrap();
        // brute force: (A(x)B)(C(x)D) entry ((i,k),(j,l)) = sum_{p,q} A_ip B_kq C_pj D_ql
        let oracle = Tensor::from_fn(4, 4, |r, col| {
            let (i, k) = (r / 2, r % 2);
            let (j, l) = (col / 2, col % 2);
            let mut acc = c(0.0, 0.0);
            for p in 0..2 {
                for q in 0..2 {
                    acc += a[(i, p)] * b[(k, q)] * cc[(p, j)] * d[(q, l)];
                }
            }
            acc
        });
        assert!(max_diff(&lhs, &oracle) < 1e-13);
        let rhs = kron(&matmul(&a, &cc).unwrap(), &matmul(&b, &d).unwrap()).unwrap();
        assert!(max_diff(&lhs, &rhs) < 1e-13);
    }

    #[test]
    fn swap_fixtures() {
        assert_eq!(swap_map::<f64>(1), Tensor::identity(1));
        let s = swap_map::<f64>(2);
        let expected = Tensor::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(s, expected);
        let s3 = swap_map::<f64>(3);
        assert_eq!(matmul(&s3, &s3).unwrap(), Tensor::identity(9));
    }

    #[test]
    fn inner_product_convention() {
        let e1 = basis_vector::<f64>(2, 0);
        let e2 = basis_vector::<f64>(2, 1);
        assert_eq!(inner(&e1, &e1).unwrap(), c(1.0, 0.0));
        assert_eq!(inner(&e1, &e2).unwrap(), c(0.0, 0.0));
        let mut rng = sample::rng(3);
        let x: Vec<Complex<f64>> = sample::random_vector(&mut rng, 4);
        let y: Vec<Complex<f64>> = sample::random_vector(&mut rng, 4);
        let ix = vec_scale(&x, c(0.0, 1.0));
        let lhs = inner(&ix, &y).unwrap();
        let rhs = c(0.0, -1.0) * inner(&x, &y).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
        assert!(inner(&x, &e1).is_err());
    }
}
