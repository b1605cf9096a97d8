//! Seeded random inputs: vectors, matrices, unitaries and bases.
//!
//! All draws go through an explicitly seeded SplitMix64 generator, so every
//! result here is a pure function of the seed.

use num_complex::Complex;
use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;

use crate::frobenius::{BasisKind, BasisSpec, FrobeniusError};
use crate::numlin::{inner, singular_values, Tensor, Tolerance};
use crate::scalar::Real;

pub type Rng = rand_xoshiro::SplitMix64;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Uniform draw from `[-1, 1]`.
pub fn unit_interval<T: Real>(rng: &mut Rng) -> T {
    T::lit(rng.random_range(-1.0..=1.0))
}

pub fn uniform<T: Real>(rng: &mut Rng, lo: f64, hi: f64) -> T {
    T::lit(rng.random_range(lo..=hi))
}

/// Standard complex Gaussian (independent normal real and imaginary parts).
pub fn gaussian<T: Real>(rng: &mut Rng) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

pub fn random_vector<T: Real>(rng: &mut Rng, n: usize) -> Vec<Complex<T>> {
    (0..n).map(|_| gaussian(rng)).collect()
}

pub fn random_matrix<T: Real>(rng: &mut Rng, rows: usize, cols: usize) -> Tensor<T> {
    Tensor::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_hermitian<T: Real>(rng: &mut Rng, n: usize) -> Tensor<T> {
    let a = random_matrix::<T>(rng, n, n);
    let half = T::lit(0.5);
    Tensor::from_fn(n, n, |r, c| (a[(r, c)] + a[(c, r)].conj()) * half)
}

/// Haar-like random unitary: modified Gram-Schmidt on Gaussian columns.
pub fn random_unitary<T: Real>(rng: &mut Rng, n: usize) -> Tensor<T> {
    loop {
        let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|_| random_vector(rng, n)).collect();
        let mut ok = true;
        for k in 0..n {
            for j in 0..k {
                let proj = inner(&cols[j], &cols[k]).expect("equal lengths");
                let (head, tail) = cols.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= y * proj;
                }
            }
            let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
            if norm <= T::lit(1e-6) {
                ok = false;
                break;
            }
            cols[k].iter_mut().for_each(|z| *z /= norm);
        }
        if ok {
            return Tensor::from_columns(&cols).expect("square");
        }
    }
}

/// Orthogonal basis: columns of a random unitary, each scaled by a norm
/// drawn uniformly from `norm_range`.
pub fn random_orthogonal_basis<T: Real>(
    rng: &mut Rng,
    d: usize,
    norm_range: (f64, f64),
) -> Result<BasisSpec<T>, FrobeniusError> {
    let u = random_unitary::<T>(rng, d);
    let vectors = (0..d)
        .map(|k| {
            let s: T = uniform(rng, norm_range.0, norm_range.1);
            u.column_vec(k).into_iter().map(|z| z * s).collect()
        })
        .collect();
    BasisSpec::new(vectors, BasisKind::Orthogonal)
}

pub fn random_orthonormal_basis<T: Real>(rng: &mut Rng, d: usize) -> Result<BasisSpec<T>, FrobeniusError> {
    let u = random_unitary::<T>(rng, d);
    BasisSpec::new((0..d).map(|k| u.column_vec(k)).collect(), BasisKind::Orthonormal)
}

/// Arbitrary basis: Gaussian columns, redrawn until the condition number is
/// at most `max_condition`.
pub fn random_invertible_basis<T: Real>(
    rng: &mut Rng,
    d: usize,
    max_condition: f64,
) -> Result<BasisSpec<T>, FrobeniusError> {
    let tol = Tolerance::default();
    loop {
        let m = random_matrix::<T>(rng, d, d);
        let sv = singular_values(&m, &tol)?;
        let smallest = *sv.last().expect("d >= 1");
        if smallest > T::zero() && (sv[0] / smallest).to_f64().unwrap() <= max_condition {
            let vectors = (0..d).map(|k| m.column_vec(k)).collect();
            return BasisSpec::new(vectors, BasisKind::Arbitrary);
        }
    }
}

/// Conjugates every tensor of a structure by a unitary `U`:
/// `m -> U m (U^dagger (x) U^dagger)`, `u -> U u`, and dually for the comonoid.
pub fn conjugate_structure<T: Real>(
    f: &crate::frobenius::FrobeniusStructure<T>,
    u: &Tensor<T>,
) -> Result<crate::frobenius::FrobeniusStructure<T>, FrobeniusError> {
    use crate::numlin::{adjoint, kron, matmul, matmul_chain, matvec};
    let uh = adjoint(u)?;
    let uu = kron(u, u)?;
    let uhuh = kron(&uh, &uh)?;
    let m = matmul_chain(&[u, f.m(), &uhuh])?;
    let unit = matvec(u, f.unit())?;
    let delta = matmul_chain(&[&uu, f.delta(), &uh])?;
    let eps = matmul(f.eps(), &uh)?;
    crate::frobenius::FrobeniusStructure::new(m, unit, delta, eps, f.dagger(), f.special())
}
