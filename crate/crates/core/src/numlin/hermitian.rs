use num_complex::Complex;

use crate::numlin::{adjoint, NumlinError, Tensor, Tolerance};
use crate::scalar::{creal, Real};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `A = V diag(values) V^dagger` of a Hermitian matrix.
/// Values are ascending; column `k` of `vectors` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: Tensor<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        self.vectors.column_vec(k)
    }
}

fn off_diagonal_norm<T: Real>(a: &Tensor<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver.
///
/// The input must be Hermitian to `tol` in the max-abs entry norm. Sweeps
/// stop once the off-diagonal Frobenius norm drops below a hundredth of the
/// tolerance bound (or reaches rounding level); at most 100 sweeps are run.
pub fn eig_hermitian<T: Real>(
    a: &Tensor<T>,
    tol: &Tolerance<T>,
) -> Result<HermitianEigen<T>, NumlinError> {
    if !a.is_square() {
        return Err(NumlinError::NotSquare(a.shape().to_vec()));
    }
    let asym = a.sub(&adjoint(a)?)?.max_abs();
    if asym > tol.bound(a.max_abs()) {
        return Err(NumlinError::NotHermitian {
            asymmetry: asym.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = a.rows();
    // symmetrize so rounding in the input does not leak into the rotations
    let half = T::lit(0.5);
    let mut m = Tensor::from_fn(n, n, |r, c| (a[(r, c)] + a[(c, r)].conj()) * half);
    let mut v = Tensor::identity(n);

    let frob = m.frobenius_norm();
    let target = (tol.bound(frob) * T::lit(0.01)).max(T::epsilon() * frob);

    let mut converged = n == 1 || off_diagonal_norm(&m) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(NumlinError::NoConvergence {
                routine: "eig_hermitian",
                iterations: MAX_SWEEPS,
            });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&m) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = Tensor::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `m[p][q]` with a unitary `W = D G`, where `D` removes the
/// phase of the pivot and `G` is the real Jacobi rotation; `m <- W^dagger m W`.
fn rotate<T: Real>(m: &mut Tensor<T>, v: &mut Tensor<T>, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == T::zero() {
        return;
    }
    let phase = apq / r;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (T::lit(2.0) * r);
    let t = if theta == T::zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    let pc = phase.conj();
    let w_pp = creal(c);
    let w_pq = creal(s);
    let w_qp = pc * (-s);
    let w_qq = pc * c;

    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * w_pp + mkq * w_qp;
        m[(k, q)] = mkp * w_pq + mkq * w_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = w_pp.conj() * mpk + w_qp.conj() * mqk;
        m[(q, k)] = w_pq.conj() * mpk + w_qq.conj() * mqk;
    }
    m[(p, q)] = creal(T::zero());
    m[(q, p)] = creal(T::zero());
    m[(p, p)] = creal(m[(p, p)].re);
    m[(q, q)] = creal(m[(q, q)].re);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::{inner, matmul, matvec, vec_norm, vec_sub};
    use crate::sample;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn diagonal_input() {
        let a = Tensor::<f64>::from_real_rows(&[&[3.0, 0.0], &[0.0, 1.0]]).unwrap();
        let e = eig_hermitian(&a, &tol()).unwrap();
        assert_eq!(e.values, vec![1.0, 3.0]);
        assert!((e.vector(0)[1].norm() - 1.0).abs() < 1e-15);
        assert!((e.vector(1)[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_x_by_hand() {
        let a = Tensor::<f64>::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = eig_hermitian(&a, &tol()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvectors (1, -1)/sqrt2 and (1, 1)/sqrt2, up to phase
        let minus = [Complex::new(s, 0.0), Complex::new(-s, 0.0)];
        let plus = [Complex::new(s, 0.0), Complex::new(s, 0.0)];
        assert!((inner(&minus, &e.vector(0)).unwrap().norm() - 1.0).abs() < 1e-14);
        assert!((inner(&plus, &e.vector(1)).unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = sample::rng(21);
        let a: Tensor<f64> = sample::random_hermitian(&mut rng, 6);
        let e = eig_hermitian(&a, &tol()).unwrap();
        let lam: Vec<Complex<f64>> = e.values.iter().map(|&x| Complex::new(x, 0.0)).collect();
        let rec = matmul(
            &matmul(&e.vectors, &Tensor::diag(&lam)).unwrap(),
            &adjoint(&e.vectors).unwrap(),
        )
        .unwrap();
        assert!(rec.sub(&a).unwrap().max_abs() <= 10.0 * 1e-9);
        let gram = matmul(&adjoint(&e.vectors).unwrap(), &e.vectors).unwrap();
        assert!(gram.sub(&Tensor::identity(6)).unwrap().max_abs() <= 1e-9);
        for k in 0..6 {
            let v = e.vector(k);
            let av = matvec(&a, &v).unwrap();
            let lv: Vec<_> = v.iter().map(|z| z * e.values[k]).collect();
            assert!(vec_norm(&vec_sub(&av, &lv)) <= 10.0 * 1e-9);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Tensor::<f64>::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            eig_hermitian(&a, &tol()),
            Err(NumlinError::NotHermitian { .. })
        ));
    }

    #[test]
    fn single_precision() {
        let mut rng = sample::rng(2);
        let a: Tensor<f32> = sample::random_hermitian(&mut rng, 4);
        let e = eig_hermitian(&a, &Tolerance::default()).unwrap();
        let gram = matmul(&adjoint(&e.vectors).unwrap(), &e.vectors).unwrap();
        assert!(gram.sub(&Tensor::identity(4)).unwrap().max_abs() < 1e-5);
    }
}
