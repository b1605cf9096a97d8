//! Frobenius structures on `C^d`: representation, construction from a
//! basis, axiom verification, classification, right actions and conjugation.

mod actions;
mod axioms;

use std::fmt;

use num_complex::Complex;
use thiserror::Error;

use crate::numlin::{adjoint, det, inner, inverse, vec_norm, NumlinError, Tensor, Tolerance};
use crate::scalar::{cone, czero, Real};

pub use actions::{conjugate_element, conjugate_morphism, cup, right_action};
pub use axioms::{check_axioms, classify, classify_report, Axiom, AxiomEntry, AxiomReport, Classification};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrobeniusError {
    #[error(transparent)]
    Numlin(#[from] NumlinError),
    #[error("{what}: expected shape {expected:?}, found {found:?}")]
    Shape {
        what: &'static str,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("a basis needs at least one vector")]
    EmptyBasis,
    #[error("basis vector {index} has length {found}, expected {expected}")]
    VectorLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("basis vectors are linearly dependent (|det| = {det:e})")]
    Dependent { det: f64 },
    #[error("basis vectors {i} and {j} are not orthogonal (|<i|j>| = {overlap:e})")]
    NotOrthogonal { i: usize, j: usize, overlap: f64 },
    #[error("basis vector {index} is not normalized (norm = {norm})")]
    NotNormalized { index: usize, norm: f64 },
    #[error("operation needs a dagger structure (comultiplication = adjoint of multiplication)")]
    NotDagger,
    #[error("structure is not of orthogonal or orthonormal type (classified as {0})")]
    NotDaggerType(Classification),
    #[error(transparent)]
    Extraction(Box<crate::spectrum::SpectrumError>),
}

impl From<crate::spectrum::SpectrumError> for FrobeniusError {
    fn from(e: crate::spectrum::SpectrumError) -> Self {
        FrobeniusError::Extraction(Box::new(e))
    }
}

/// Which kind of basis a [`BasisSpec`] claims to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Arbitrary,
    Orthogonal,
    Orthonormal,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Arbitrary => "arbitrary",
            BasisKind::Orthogonal => "orthogonal",
            BasisKind::Orthonormal => "orthonormal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "arbitrary" => Some(BasisKind::Arbitrary),
            "orthogonal" => Some(BasisKind::Orthogonal),
            "orthonormal" => Some(BasisKind::Orthonormal),
            _ => None,
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered basis of `C^d` together with the kind it claims to be.
///
/// Construction validates the claim: the vectors must be independent,
/// pairwise orthogonal for `Orthogonal`, and additionally unit length for
/// `Orthonormal`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisSpec<T> {
    vectors: Vec<Vec<Complex<T>>>,
    kind: BasisKind,
}

impl<T: Real> BasisSpec<T> {
    pub fn new(vectors: Vec<Vec<Complex<T>>>, kind: BasisKind) -> Result<Self, FrobeniusError> {
        Self::with_tolerance(vectors, kind, &Tolerance::default())
    }

    pub fn with_tolerance(
        vectors: Vec<Vec<Complex<T>>>,
        kind: BasisKind,
        tol: &Tolerance<T>,
    ) -> Result<Self, FrobeniusError> {
        let d = vectors.len();
        if d == 0 {
            return Err(FrobeniusError::EmptyBasis);
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(FrobeniusError::VectorLength {
                    index,
                    expected: d,
                    found: v.len(),
                });
            }
        }
        let phi = Tensor::from_columns(&vectors)?;
        let max_norm = vectors.iter().map(|v| vec_norm(v)).fold(T::zero(), T::max);
        let det_abs = det(&phi)?.norm();
        let threshold = T::lit(1e-12) * max_norm.powi(d as i32);
        if det_abs.is_nan() || det_abs < threshold || det_abs == T::zero() {
            return Err(FrobeniusError::Dependent {
                det: det_abs.to_f64().unwrap_or(0.0),
            });
        }
        if kind != BasisKind::Arbitrary {
            let norms: Vec<T> = vectors.iter().map(|v| vec_norm(v)).collect();
            for i in 0..d {
                for j in i + 1..d {
                    let overlap = inner(&vectors[i], &vectors[j])?.norm();
                    if overlap > tol.bound(norms[i] * norms[j]) {
                        return Err(FrobeniusError::NotOrthogonal {
                            i,
                            j,
                            overlap: overlap.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
            }
            if kind == BasisKind::Orthonormal {
                for (index, &n) in norms.iter().enumerate() {
                    if (n * n - T::one()).abs() > tol.bound(T::one()) {
                        return Err(FrobeniusError::NotNormalized {
                            index,
                            norm: n.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
            }
        }
        Ok(Self { vectors, kind })
    }

    /// The standard basis `e_0, ..., e_{d-1}`, tagged orthonormal.
    pub fn standard(d: usize) -> Self {
        let vectors = (0..d).map(|i| crate::numlin::basis_vector(d, i)).collect();
        Self {
            vectors,
            kind: BasisKind::Orthonormal,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex<T>>] {
        &self.vectors
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    /// Matrix with the basis vectors as columns.
    pub fn matrix(&self) -> Tensor<T> {
        Tensor::from_columns(&self.vectors).expect("validated basis")
    }
}

/// A quintuple `(C^d, m, u, delta, eps)` plus the axioms it claims.
///
/// `m` is `d x d^2` with column `i*d + j` holding `m(e_i (x) e_j)`; `delta`
/// is `d^2 x d`; `eps` is `1 x d`. The multiplication is stored even for
/// dagger structures; `delta = m^dagger` is a claim that
/// [`check_axioms`] verifies rather than an identity the type enforces.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusStructure<T> {
    dim: usize,
    m: Tensor<T>,
    unit: Vec<Complex<T>>,
    delta: Tensor<T>,
    eps: Tensor<T>,
    dagger: bool,
    special: bool,
}

fn expect_shape<T: Real>(what: &'static str, t: &Tensor<T>, expected: [usize; 2]) -> Result<(), FrobeniusError> {
    if t.shape() != expected {
        return Err(FrobeniusError::Shape {
            what,
            expected: expected.to_vec(),
            found: t.shape().to_vec(),
        });
    }
    Ok(())
}

impl<T: Real> FrobeniusStructure<T> {
    pub fn new(
        m: Tensor<T>,
        unit: Vec<Complex<T>>,
        delta: Tensor<T>,
        eps: Tensor<T>,
        dagger: bool,
        special: bool,
    ) -> Result<Self, FrobeniusError> {
        let d = unit.len();
        if d == 0 {
            return Err(FrobeniusError::Shape {
                what: "unit",
                expected: vec![1],
                found: vec![0],
            });
        }
        expect_shape("multiplication", &m, [d, d * d])?;
        expect_shape("comultiplication", &delta, [d * d, d])?;
        expect_shape("counit", &eps, [1, d])?;
        Ok(Self {
            dim: d,
            m,
            unit,
            delta,
            eps,
            dagger,
            special,
        })
    }

    /// Dagger structure from a monoid: `delta = m^dagger`, `eps = u^dagger`.
    pub fn from_monoid(m: Tensor<T>, unit: Vec<Complex<T>>, special: bool) -> Result<Self, FrobeniusError> {
        let delta = adjoint(&m)?;
        let eps = Tensor::row(&unit.iter().map(|z| z.conj()).collect::<Vec<_>>());
        Self::new(m, unit, delta, eps, true, special)
    }

    /// The canonical structure on `C` itself, domain of element morphisms.
    pub fn trivial() -> Self {
        let one = Tensor::identity(1);
        Self {
            dim: 1,
            m: one.clone(),
            unit: vec![cone()],
            delta: one.clone(),
            eps: one,
            dagger: true,
            special: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> &Tensor<T> {
        &self.m
    }

    pub fn unit(&self) -> &[Complex<T>] {
        &self.unit
    }

    pub fn delta(&self) -> &Tensor<T> {
        &self.delta
    }

    pub fn eps(&self) -> &Tensor<T> {
        &self.eps
    }

    /// Claims `delta = m^dagger` and `eps = u^dagger`.
    pub fn dagger(&self) -> bool {
        self.dagger
    }

    /// Claims `m delta = id`.
    pub fn special(&self) -> bool {
        self.special
    }

    pub fn unit_column(&self) -> Tensor<T> {
        Tensor::column(&self.unit)
    }

    /// Multiplication of two elements, `m(x (x) y)`.
    pub fn multiply(&self, x: &[Complex<T>], y: &[Complex<T>]) -> Result<Vec<Complex<T>>, FrobeniusError> {
        let xy = crate::numlin::vec_kron(x, y);
        Ok(crate::numlin::matvec(&self.m, &xy)?)
    }

    pub fn comultiply(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>, FrobeniusError> {
        Ok(crate::numlin::matvec(&self.delta, x)?)
    }

    pub fn counit(&self, x: &[Complex<T>]) -> Result<Complex<T>, FrobeniusError> {
        Ok(crate::numlin::matvec(&self.eps, x)?[0])
    }

    /// Copy of this structure with the claimed axioms replaced.
    pub fn with_claims(mut self, dagger: bool, special: bool) -> Self {
        self.dagger = dagger;
        self.special = special;
        self
    }
}

/// Builds the commutative Frobenius algebra whose comultiplication copies
/// the basis: `delta(phi_i) = phi_i (x) phi_i` and `eps(phi_i) = 1`.
///
/// For orthogonal and orthonormal bases the monoid is the adjoint of the
/// comonoid (taken in the standard inner product), which gives
/// `m(phi_i (x) phi_i) = <phi_i|phi_i> phi_i`. For arbitrary bases the
/// monoid is instead `m(phi_i (x) phi_j) = [i = j] phi_i` with
/// `u = sum_i phi_i`, and no adjoints are involved.
pub fn from_basis<T: Real>(b: &BasisSpec<T>) -> Result<FrobeniusStructure<T>, FrobeniusError> {
    let d = b.dim();
    let phi = b.matrix();
    let dual = inverse(&phi)?; // row i is the dual functional of phi_i
    let vs = b.vectors();

    let mut delta = Tensor::zeros(d * d, d);
    for (i, v) in vs.iter().enumerate() {
        for a in 0..d {
            for c in 0..d {
                let vv = v[a] * v[c];
                for k in 0..d {
                    delta[(a * d + c, k)] += vv * dual[(i, k)];
                }
            }
        }
    }
    let eps_row: Vec<Complex<T>> = (0..d)
        .map(|k| (0..d).fold(czero(), |acc, i| acc + dual[(i, k)]))
        .collect();
    let eps = Tensor::row(&eps_row);

    match b.kind() {
        BasisKind::Orthogonal | BasisKind::Orthonormal => {
            let m = adjoint(&delta)?;
            let unit = eps_row.iter().map(|z| z.conj()).collect();
            FrobeniusStructure::new(m, unit, delta, eps, true, b.kind() == BasisKind::Orthonormal)
        }
        BasisKind::Arbitrary => {
            let mut m = Tensor::zeros(d, d * d);
            for (i, v) in vs.iter().enumerate() {
                for a in 0..d {
                    for c in 0..d {
                        let w = dual[(i, a)] * dual[(i, c)];
                        for (r, &vr) in v.iter().enumerate() {
                            m[(r, a * d + c)] += vr * w;
                        }
                    }
                }
            }
            let unit = (0..d)
                .map(|r| vs.iter().fold(czero(), |acc, v| acc + v[r]))
                .collect();
            FrobeniusStructure::new(m, unit, delta, eps, false, true)
        }
    }
}

/// Sorted norms of the copyable elements of an orthogonal- or
/// orthonormal-type structure.
pub fn norm_profile<T: Real>(f: &FrobeniusStructure<T>, tol: &Tolerance<T>) -> Result<Vec<T>, FrobeniusError> {
    let class = classify(f, tol)?;
    if !matches!(class, Classification::Orthonormal | Classification::Orthogonal) {
        return Err(FrobeniusError::NotDaggerType(class));
    }
    let extraction = crate::spectrum::extract_copyables(f, tol, crate::DEFAULT_SEED)?;
    let mut norms: Vec<T> = extraction.copyables.iter().map(|v| vec_norm(v)).collect();
    norms.sort_by(|a, b| a.partial_cmp(b).expect("finite norms"));
    Ok(norms)
}

#[cfg(test)]
mod tests;
