//! Recovering a basis from a Frobenius structure as its copyable elements.
//!
//! A copyable element is a vector `psi` with `delta(psi) = psi (x) psi`
//! and `eps(psi) = 1`. Every copyable is a joint eigenvector of the right
//! actions `R_alpha`, so a single generic element of the right-action
//! algebra separates them: for dagger structures a random Hermitian element
//! is diagonalized with the Jacobi solver, otherwise a random real
//! combination of the `R_{e_k}` goes through the general eigensolver. Each
//! unit eigenvector `v` is rescaled by the scalar `lambda` with
//! `delta(v) = lambda (v (x) v)`, giving `psi = lambda v`.

use num_complex::Complex;
use thiserror::Error;

use crate::frobenius::{
    check_axioms, classify, classify_report, from_basis, right_action, Axiom, BasisSpec, Classification,
    FrobeniusError, FrobeniusStructure,
};
use crate::numlin::{
    adjoint, basis_vector, eig_general, eig_hermitian, inner, operator_norm, schmidt_rank, vec_kron,
    vec_norm, vec_sub, NumlinError, Tensor, Tolerance,
};
use crate::sample;
use crate::scalar::{creal, Real};

/// Redraws of the generic element before giving up on a degenerate spectrum.
pub const MAX_RETRIES: usize = 16;

/// Eigenvalues closer than this fraction of the spectral radius count as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-6;

fn axiom_list(axioms: &[Axiom]) -> String {
    let names: Vec<&str> = axioms.iter().map(|a| a.name()).collect();
    names.join(", ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error("structure is {class}; failing axioms: {}", axiom_list(failed))]
    NotBasisType {
        class: Classification,
        failed: Vec<Axiom>,
    },
    #[error("degenerate spectrum on all {attempts} draws of the generic element")]
    RetriesExhausted { attempts: usize },
    #[error("eigenvector {index}: comultiplication is not proportional to its square (residual {residual:e})")]
    NotProportional { index: usize, residual: f64 },
    #[error("candidate {index} is not copyable (copy residual {copy:e}, counit residual {counit:e})")]
    NotCopyable { index: usize, copy: f64, counit: f64 },
    #[error("found {found} copyable elements, expected {expected}")]
    Cardinality { expected: usize, found: usize },
    #[error("copyable elements {i} and {j} coincide")]
    Duplicate { i: usize, j: usize },
    #[error("basis vector {index} has no extracted match within {bound:e} (nearest at {distance:e})")]
    NoMatch { index: usize, distance: f64, bound: f64 },
    #[error("a non-copyable witness needs dimension at least 2")]
    DimensionTooSmall,
}

impl From<NumlinError> for SpectrumError {
    fn from(e: NumlinError) -> Self {
        SpectrumError::Frobenius(FrobeniusError::Numlin(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractionPath {
    /// Hermitian generic element, Jacobi eigensolver.
    Dagger,
    /// Real combination of right actions, general eigensolver.
    General,
    /// `d = 1`: the unit rescaled to counit 1.
    OneDimensional,
}

/// Copyable elements of a structure, in canonical order (see [`canonical_order`]).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionResult<T> {
    pub copyables: Vec<Vec<Complex<T>>>,
    /// Per copyable, `lambda` with `psi = lambda v` for the phase-fixed unit vector `v`.
    pub scales: Vec<Complex<T>>,
    /// Per copyable, `||delta(psi) - psi (x) psi||`.
    pub copy_residuals: Vec<T>,
    /// Per copyable, `|eps(psi) - 1|`.
    pub counit_residuals: Vec<T>,
    pub attempts: usize,
    pub seed: u64,
    pub path: ExtractionPath,
    pub classification: Classification,
}

impl<T: Real> ExtractionResult<T> {
    pub fn dim(&self) -> usize {
        self.copyables.len()
    }

    /// Matrix with the copyables as columns.
    pub fn matrix(&self) -> Tensor<T> {
        Tensor::from_columns(&self.copyables).expect("nonempty extraction")
    }

    pub fn max_copy_residual(&self) -> T {
        self.copy_residuals.iter().copied().fold(T::zero(), T::max)
    }

    pub fn max_counit_residual(&self) -> T {
        self.counit_residuals.iter().copied().fold(T::zero(), T::max)
    }
}

/// `||delta(psi) - psi (x) psi||`.
pub fn copy_residual<T: Real>(f: &FrobeniusStructure<T>, psi: &[Complex<T>]) -> Result<T, SpectrumError> {
    let dpsi = f.comultiply(psi)?;
    Ok(vec_norm(&vec_sub(&dpsi, &vec_kron(psi, psi))))
}

pub fn extract_copyables<T: Real>(
    f: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
    seed: u64,
) -> Result<ExtractionResult<T>, SpectrumError> {
    extract_copyables_with(f, tol, seed, MAX_RETRIES)
}

/// [`extract_copyables`] with an explicit retry budget for degenerate draws.
pub fn extract_copyables_with<T: Real>(
    f: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
    seed: u64,
    max_retries: usize,
) -> Result<ExtractionResult<T>, SpectrumError> {
    let report = check_axioms(f, tol)?;
    let classification = classify_report(&report);
    let dagger = match classification {
        Classification::Orthonormal | Classification::Orthogonal => true,
        Classification::Arbitrary => false,
        Classification::Invalid => {
            return Err(SpectrumError::NotBasisType {
                class: classification,
                failed: report.failed(),
            })
        }
    };
    let d = f.dim();

    if d == 1 {
        let u = f.unit();
        let e = f.counit(u)?;
        if e.norm() == T::zero() {
            return Err(SpectrumError::NotCopyable {
                index: 0,
                copy: f64::NAN,
                counit: 1.0,
            });
        }
        let psi = vec![u[0] / e];
        let scale = creal(psi[0].norm());
        return finish(f, vec![psi], vec![scale], tol, 0, seed, ExtractionPath::OneDimensional, classification);
    }

    let actions = (0..d)
        .map(|k| right_action(f, &basis_vector(d, k)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = sample::rng(seed);
    for attempt in 1..=max_retries {
        let candidates = if dagger {
            hermitian_candidates(&actions, &mut rng, tol)?
        } else {
            general_candidates(&actions, &mut rng, tol)?
        };
        let Some(vectors) = candidates else { continue };
        if vectors.len() != d {
            return Err(SpectrumError::Cardinality {
                expected: d,
                found: vectors.len(),
            });
        }
        let mut copyables = Vec::with_capacity(d);
        let mut scales = Vec::with_capacity(d);
        for (index, v) in vectors.iter().enumerate() {
            let (psi, lambda) = rescale(f, index, v, tol)?;
            copyables.push(psi);
            scales.push(lambda);
        }
        let path = if dagger { ExtractionPath::Dagger } else { ExtractionPath::General };
        return finish(f, copyables, scales, tol, attempt, seed, path, classification);
    }
    Err(SpectrumError::RetriesExhausted { attempts: max_retries })
}

/// Eigenvectors of `sum a_k (R_k + R_k^dagger) + b_k i (R_k - R_k^dagger)`,
/// or `None` if the draw has a degenerate spectrum.
fn hermitian_candidates<T: Real>(
    actions: &[Tensor<T>],
    rng: &mut sample::Rng,
    tol: &Tolerance<T>,
) -> Result<Option<Vec<Vec<Complex<T>>>>, SpectrumError> {
    let d = actions[0].rows();
    let mut x = Tensor::zeros(d, d);
    let i = Complex::new(T::zero(), T::one());
    for r in actions {
        let a: T = sample::unit_interval(rng);
        let b: T = sample::unit_interval(rng);
        let rh = adjoint(r)?;
        let sym = r.add(&rh)?.scale(creal(a));
        let anti = r.sub(&rh)?.scale(i * b);
        x = x.add(&sym)?.add(&anti)?;
    }
    let eig = eig_hermitian(&x, tol)?;
    let radius = eig.values.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    let gap = T::lit(DEGENERACY_GAP) * radius;
    if radius == T::zero() || eig.values.windows(2).any(|w| w[1] - w[0] < gap) {
        return Ok(None);
    }
    Ok(Some((0..d).map(|k| eig.vector(k)).collect()))
}

/// Eigenvectors of `sum c_k R_k` with real `c_k`, or `None` if degenerate.
fn general_candidates<T: Real>(
    actions: &[Tensor<T>],
    rng: &mut sample::Rng,
    tol: &Tolerance<T>,
) -> Result<Option<Vec<Vec<Complex<T>>>>, SpectrumError> {
    let d = actions[0].rows();
    let mut x = Tensor::zeros(d, d);
    for r in actions {
        let c: T = sample::unit_interval(rng);
        x = x.add(&r.scale(creal(c)))?;
    }
    let pairs = match eig_general(&x, tol) {
        Ok(p) => p,
        // a draw close to degenerate can stall inverse iteration; redraw
        Err(NumlinError::NoConvergence { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    if pairs.iter().any(|p| p.clustered) {
        return Ok(None);
    }
    Ok(Some(pairs.into_iter().filter_map(|p| p.vector).collect()))
}

/// Rescales a unit vector `v` to the copyable `lambda v`, where
/// `lambda = <v (x) v | delta v>`; the phase of `v` is chosen so that
/// `lambda` is real and positive.
fn rescale<T: Real>(
    f: &FrobeniusStructure<T>,
    index: usize,
    v: &[Complex<T>],
    tol: &Tolerance<T>,
) -> Result<(Vec<Complex<T>>, Complex<T>), SpectrumError> {
    let dv = f.comultiply(v)?;
    let vv = vec_kron(v, v);
    let lambda = inner(&vv, &dv)?;
    let residual = vec_norm(&vec_sub(&dv, &vv.iter().map(|z| z * lambda).collect::<Vec<_>>()));
    if lambda.norm() == T::zero() || residual > T::lit(10.0) * tol.bound(vec_norm(&dv)) {
        return Err(SpectrumError::NotProportional {
            index,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    let psi = v.iter().map(|z| z * lambda).collect();
    Ok((psi, creal(lambda.norm())))
}

#[allow(clippy::too_many_arguments)]
fn finish<T: Real>(
    f: &FrobeniusStructure<T>,
    copyables: Vec<Vec<Complex<T>>>,
    scales: Vec<Complex<T>>,
    tol: &Tolerance<T>,
    attempts: usize,
    seed: u64,
    path: ExtractionPath,
    classification: Classification,
) -> Result<ExtractionResult<T>, SpectrumError> {
    let order = canonical_order(&copyables);
    let copyables: Vec<_> = order.iter().map(|&i| copyables[i].clone()).collect();
    let scales: Vec<_> = order.iter().map(|&i| scales[i]).collect();

    let mut copy_residuals = Vec::with_capacity(copyables.len());
    let mut counit_residuals = Vec::with_capacity(copyables.len());
    let ten = T::lit(10.0);
    for (index, psi) in copyables.iter().enumerate() {
        let copy = copy_residual(f, psi)?;
        let counit = (f.counit(psi)? - creal(T::one())).norm();
        let n = vec_norm(psi);
        if copy > ten * tol.bound(n * n) || counit > ten * tol.bound(T::one()) {
            return Err(SpectrumError::NotCopyable {
                index,
                copy: copy.to_f64().unwrap_or(f64::NAN),
                counit: counit.to_f64().unwrap_or(f64::NAN),
            });
        }
        copy_residuals.push(copy);
        counit_residuals.push(counit);
    }
    let scale = copyables.iter().map(|v| vec_norm(v)).fold(T::zero(), T::max);
    let separation = T::lit(100.0) * tol.bound(scale);
    for i in 0..copyables.len() {
        for j in i + 1..copyables.len() {
            if vec_norm(&vec_sub(&copyables[i], &copyables[j])) <= separation {
                return Err(SpectrumError::Duplicate { i, j });
            }
        }
    }
    Ok(ExtractionResult {
        copyables,
        scales,
        copy_residuals,
        counit_residuals,
        attempts,
        seed,
        path,
        classification,
    })
}

/// Deterministic order on a set of vectors: lexicographic over components,
/// larger real part first, then larger imaginary part, after quantizing to
/// `1e-6` of the largest norm. The standard basis comes out as `e_0, e_1, ...`.
pub fn canonical_order<T: Real>(vectors: &[Vec<Complex<T>>]) -> Vec<usize> {
    let scale = vectors.iter().map(|v| vec_norm(v)).fold(T::zero(), T::max);
    let quantum = if scale > T::zero() { scale * T::lit(1e-6) } else { T::one() };
    let keys: Vec<Vec<(i64, i64)>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|z| {
                    let q = |x: T| (x / quantum).round().to_i64().unwrap_or(0);
                    (q(z.re), q(z.im))
                })
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| keys[b].cmp(&keys[a]).then(a.cmp(&b)));
    order
}

/// Gram matrix of the copyables and whether it is diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Orthogonality<T> {
    pub orthogonal: bool,
    pub gram: Tensor<T>,
}

/// Off-diagonal Gram entries must be within `tol` of zero, relative to the
/// geometric mean of the two diagonal entries involved.
pub fn check_orthogonality<T: Real>(r: &ExtractionResult<T>, tol: &Tolerance<T>) -> Orthogonality<T> {
    let n = r.dim();
    let gram = Tensor::from_fn(n, n, |i, j| inner(&r.copyables[i], &r.copyables[j]).expect("equal lengths"));
    let orthogonal = (0..n).all(|i| {
        (0..n).all(|j| {
            i == j || gram[(i, j)].norm() <= tol.bound((gram[(i, i)].re * gram[(j, j)].re).abs().sqrt())
        })
    });
    Orthogonality { orthogonal, gram }
}

/// Result of matching extracted copyables against the basis they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisMatch<T> {
    /// `permutation[i]` is the index of the extracted copyable matched to basis vector `i`.
    pub permutation: Vec<usize>,
    pub max_distance: T,
}

/// Builds the algebra of `b`, extracts its copyables, and matches them to
/// `b` greedily by nearest neighbour; every match must lie within `100 tol`.
pub fn roundtrip_basis<T: Real>(
    b: &BasisSpec<T>,
    tol: &Tolerance<T>,
    seed: u64,
) -> Result<BasisMatch<T>, SpectrumError> {
    let f = from_basis(b)?;
    let r = extract_copyables(&f, tol, seed)?;
    let mut used = vec![false; r.dim()];
    let mut permutation = Vec::with_capacity(b.dim());
    let mut max_distance = T::zero();
    for (index, phi) in b.vectors().iter().enumerate() {
        let (best, distance) = r
            .copyables
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, psi)| (j, vec_norm(&vec_sub(phi, psi))))
            .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite distances"))
            .ok_or(SpectrumError::Cardinality {
                expected: b.dim(),
                found: r.dim(),
            })?;
        let bound = T::lit(100.0) * tol.bound(vec_norm(phi));
        if distance > bound {
            return Err(SpectrumError::NoMatch {
                index,
                distance: distance.to_f64().unwrap_or(f64::NAN),
                bound: bound.to_f64().unwrap_or(f64::NAN),
            });
        }
        used[best] = true;
        permutation.push(best);
        max_distance = max_distance.max(distance);
    }
    Ok(BasisMatch {
        permutation,
        max_distance,
    })
}

/// Extracts the copyables of `f`, rebuilds the algebra of the matching
/// basis kind, and returns the largest operator-norm difference among
/// `m`, `u`, `delta` and `eps`.
pub fn roundtrip_algebra<T: Real>(
    f: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
    seed: u64,
) -> Result<T, SpectrumError> {
    let class = classify(f, tol)?;
    let kind = class.basis_kind().ok_or_else(|| SpectrumError::NotBasisType {
        class,
        failed: Vec::new(),
    })?;
    let r = extract_copyables(f, tol, seed)?;
    let rebuilt = from_basis(&BasisSpec::with_tolerance(r.copyables, kind, &tol.scaled(T::lit(100.0)))?)?;
    let pairs: [(&Tensor<T>, &Tensor<T>); 3] = [
        (f.m(), rebuilt.m()),
        (f.delta(), rebuilt.delta()),
        (f.eps(), rebuilt.eps()),
    ];
    let mut worst = operator_norm(&f.unit_column().sub(&rebuilt.unit_column())?, tol)?;
    for (a, b) in pairs {
        worst = worst.max(operator_norm(&a.sub(b)?, tol)?);
    }
    Ok(worst)
}

/// A superposition of two copyables together with how far it is from being copyable.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    pub vector: Vec<Complex<T>>,
    pub pair: (usize, usize),
    /// `||delta(psi) - psi (x) psi||`.
    pub residual: T,
    /// Schmidt rank of `delta(psi)`.
    pub schmidt: usize,
}

/// Residual and Schmidt rank of `delta(psi)` for an arbitrary vector.
pub fn superposition_check<T: Real>(
    f: &FrobeniusStructure<T>,
    psi: &[Complex<T>],
    tol: &Tolerance<T>,
) -> Result<(T, usize), SpectrumError> {
    let residual = copy_residual(f, psi)?;
    let schmidt = schmidt_rank(&f.comultiply(psi)?, f.dim(), tol)?;
    Ok((residual, schmidt))
}

/// `psi = phi_a + phi_b` for two distinct copyables chosen from `seed`.
/// The residual exceeds `100 tol` and `delta(psi)` has Schmidt rank 2.
pub fn non_copyable_witness<T: Real>(
    f: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
    seed: u64,
) -> Result<Witness<T>, SpectrumError> {
    let d = f.dim();
    if d < 2 {
        return Err(SpectrumError::DimensionTooSmall);
    }
    let r = extract_copyables(f, tol, seed)?;
    let mut rng = sample::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let a = rand::Rng::random_range(&mut rng, 0..d);
    let b = (a + rand::Rng::random_range(&mut rng, 1..d)) % d;
    let vector: Vec<Complex<T>> = r.copyables[a]
        .iter()
        .zip(&r.copyables[b])
        .map(|(&x, &y)| x + y)
        .collect();
    let (residual, schmidt) = superposition_check(f, &vector, tol)?;
    Ok(Witness {
        vector,
        pair: (a, b),
        residual,
        schmidt,
    })
}
