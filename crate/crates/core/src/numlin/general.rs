use num_complex::Complex;

use crate::numlin::{matmul, matvec, vec_norm, Lu, NumlinError, Tensor, Tolerance};
use crate::scalar::{cone, creal, czero, Real};

const ABERTH_MAX_ITERATIONS: usize = 200;
const INVERSE_ITERATIONS: usize = 30;

/// Relative gap below which two eigenvalues are treated as one cluster.
pub const CLUSTER_GAP: f64 = 1e-6;

/// One eigenvalue of a general square matrix, with its unit right
/// eigenvector when the eigenvalue is numerically simple.
#[derive(Clone, Debug)]
pub struct Eigenpair<T> {
    pub value: Complex<T>,
    pub vector: Option<Vec<Complex<T>>>,
    pub clustered: bool,
}

/// Characteristic polynomial `det(zI - a)` by Faddeev-LeVerrier, lowest
/// degree first; the leading coefficient is 1.
pub fn char_poly<T: Real>(a: &Tensor<T>) -> Result<Vec<Complex<T>>, NumlinError> {
    if !a.is_square() {
        return Err(NumlinError::NotSquare(a.shape().to_vec()));
    }
    let n = a.rows();
    let mut coeffs = vec![czero::<T>(); n + 1];
    coeffs[n] = cone();
    let mut m = Tensor::zeros(n, n);
    for k in 1..=n {
        let mut next = matmul(a, &m)?;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        let am = matmul(a, &next)?;
        coeffs[n - k] = -am.trace() / T::from_usize(k).unwrap();
        m = next;
    }
    Ok(coeffs)
}

fn horner<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = czero();
    let mut dp = czero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of the polynomial `sum coeffs[k] z^k` by Aberth-Ehrlich
/// simultaneous iteration (capped at 200 sweeps).
///
/// A root is accepted once its correction is at rounding level or the
/// polynomial value there is; the second test is what lets multiple roots
/// terminate.
pub fn poly_roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>, NumlinError> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == T::zero()) {
        coeffs.pop();
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex<T>> = coeffs.iter().map(|&c| c / lead).collect();
    let abs_coeffs: Vec<T> = monic.iter().map(|c| c.norm()).collect();

    // Fujiwara bound on root moduli
    let radius = (0..n)
        .map(|k| {
            let ratio = abs_coeffs[k];
            let power = T::one() / T::from_usize(n - k).unwrap();
            ratio.powf(power)
        })
        .fold(T::zero(), T::max)
        * T::lit(2.0);
    let radius = if radius > T::zero() { radius } else { T::one() };
    let two_pi = T::TAU();
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let angle = two_pi * T::from_usize(k).unwrap() / T::from_usize(n).unwrap() + T::lit(0.4);
            Complex::from_polar(radius * T::lit(0.5), angle)
        })
        .collect();

    let mut done = vec![false; n];
    for _ in 0..ABERTH_MAX_ITERATIONS {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&monic, z[k]);
            let zk_abs = z[k].norm();
            let scale = abs_coeffs
                .iter()
                .rev()
                .fold(T::zero(), |acc, &c| acc * zk_abs + c);
            if p.norm() <= T::lit(4.0) * T::from_usize(n + 1).unwrap() * T::epsilon() * scale {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion = (0..n)
                .filter(|&j| j != k)
                .fold(czero::<T>(), |acc, j| acc + cone::<T>() / (z[k] - z[j]));
            let w = ratio / (cone::<T>() - ratio * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(NumlinError::NoConvergence {
                    routine: "poly_roots",
                    iterations: 0,
                });
            }
            z[k] -= w;
            if w.norm() <= T::lit(16.0) * T::epsilon() * zk_abs.max(T::one()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(NumlinError::NoConvergence {
        routine: "poly_roots",
        iterations: ABERTH_MAX_ITERATIONS,
    })
}

/// Eigenvalues (with multiplicity) of a general square matrix.
///
/// Eigenvalues are the roots of the characteristic polynomial of the
/// Frobenius-normalized matrix. Each eigenvalue separated from the others by
/// more than `1e-6` times the spectral radius gets a unit eigenvector from
/// inverse iteration on `a - lambda I`, and its value is refined to the
/// Rayleigh quotient of that vector; clustered eigenvalues are flagged and
/// carry no vector. Eigenvalues whose vectors come out parallel are flagged
/// as clustered too.
pub fn eig_general<T: Real>(
    a: &Tensor<T>,
    tol: &Tolerance<T>,
) -> Result<Vec<Eigenpair<T>>, NumlinError> {
    if !a.is_square() {
        return Err(NumlinError::NotSquare(a.shape().to_vec()));
    }
    let n = a.rows();
    let norm = a.frobenius_norm();
    if norm == T::zero() {
        return Ok((0..n)
            .map(|_| Eigenpair {
                value: czero(),
                vector: None,
                clustered: n > 1,
            })
            .collect());
    }
    let scaled = a.scale(creal(T::one() / norm));
    let roots = poly_roots(&char_poly(&scaled)?)?;
    let values: Vec<Complex<T>> = roots.iter().map(|&z| z * norm).collect();
    let radius = values.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let gap = T::lit(CLUSTER_GAP) * radius;

    let mut out = Vec::with_capacity(n);
    for (k, &value) in values.iter().enumerate() {
        let clustered = values
            .iter()
            .enumerate()
            .any(|(j, &other)| j != k && (other - value).norm() < gap);
        if clustered {
            out.push(Eigenpair {
                value,
                vector: None,
                clustered,
            });
            continue;
        }
        let (refined, vector) = inverse_iteration(a, value, tol)?;
        out.push(Eigenpair {
            value: refined,
            vector: Some(vector),
            clustered,
        });
    }
    // a multiple root of the characteristic polynomial can split by more than
    // the gap threshold; inverse iteration then lands on parallel vectors
    let parallel = T::one() - T::lit(CLUSTER_GAP);
    for i in 0..n {
        for j in i + 1..n {
            let overlap = match (&out[i].vector, &out[j].vector) {
                (Some(x), Some(y)) => crate::numlin::inner(x, y)?.norm(),
                _ => continue,
            };
            if overlap > parallel {
                for k in [i, j] {
                    out[k].clustered = true;
                }
            }
        }
    }
    for p in out.iter_mut().filter(|p| p.clustered) {
        p.vector = None;
    }
    Ok(out)
}

fn inverse_iteration<T: Real>(
    a: &Tensor<T>,
    shift: Complex<T>,
    tol: &Tolerance<T>,
) -> Result<(Complex<T>, Vec<Complex<T>>), NumlinError> {
    let n = a.rows();
    let norm = a.frobenius_norm();
    let bound = T::lit(10.0) * tol.bound(norm);
    let lu = factor_shifted(a, shift, norm)?;

    let mut v: Vec<Complex<T>> = (0..n)
        .map(|i| Complex::new(T::one(), T::from_usize(i).unwrap() * T::lit(0.1)))
        .collect();
    normalize(&mut v);
    let floor = T::lit(100.0) * T::epsilon() * norm;
    let mut best: Option<(T, Complex<T>, Vec<Complex<T>>)> = None;
    for _ in 0..INVERSE_ITERATIONS {
        let mut w = lu.solve(&v)?;
        if !normalize(&mut w) {
            break;
        }
        v = w;
        let av = matvec(a, &v)?;
        let lambda = v.iter().zip(&av).fold(czero(), |acc, (x, y)| acc + x.conj() * y);
        let residual: Vec<Complex<T>> = av.iter().zip(&v).map(|(&y, &x)| y - x * lambda).collect();
        let r = vec_norm(&residual);
        let previous = best.as_ref().map_or(T::infinity(), |b| b.0);
        if r < previous {
            best = Some((r, lambda, v.clone()));
        }
        // keep iterating while the residual still halves
        if r <= floor || (r <= bound && r > previous * T::lit(0.5)) {
            break;
        }
    }
    match best {
        Some((r, lambda, v)) if r <= bound => Ok((lambda, v)),
        _ => Err(NumlinError::NoConvergence {
            routine: "eig_general/inverse_iteration",
            iterations: INVERSE_ITERATIONS,
        }),
    }
}

/// Factorizes `a - shift I`, nudging the shift off an exactly singular point.
fn factor_shifted<T: Real>(
    a: &Tensor<T>,
    shift: Complex<T>,
    norm: T,
) -> Result<Lu<T>, NumlinError> {
    let n = a.rows();
    let mut s = shift;
    for attempt in 0..4 {
        let mut b = a.clone();
        for i in 0..n {
            b[(i, i)] -= s;
        }
        match Lu::new(&b) {
            Ok(lu) => return Ok(lu),
            Err(NumlinError::Singular) => {
                let nudge = T::epsilon() * norm * T::from_usize(10usize.pow(attempt)).unwrap();
                s += Complex::new(nudge, nudge);
            }
            Err(e) => return Err(e),
        }
    }
    Err(NumlinError::Singular)
}

fn normalize<T: Real>(v: &mut [Complex<T>]) -> bool {
    let n = vec_norm(v);
    if n == T::zero() || !n.is_finite() {
        return false;
    }
    for z in v.iter_mut() {
        *z /= n;
    }
    true
}
