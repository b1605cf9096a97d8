//! Functions between finite sets as comonoid homomorphisms.
//!
//! An algebra stands for the finite set of its copyable elements (in the
//! canonical order produced by extraction). A linear map preserving
//! comultiplication and counit sends copyables to copyables, which gives a
//! function between the two sets; conversely every function extends
//! linearly to such a map. Maps that also preserve the multiplication and
//! unit are unitary and only match copyables of equal norm.

use num_complex::Complex;
use rand::Rng as _;
use thiserror::Error;

use crate::frobenius::{classify, Classification, FrobeniusError, FrobeniusStructure};
use crate::numlin::{adjoint, inverse, kron, matmul, matvec, operator_norm, vec_norm, vec_sub, NumlinError, Tensor, Tolerance};
use crate::sample;
use crate::scalar::Real;
use crate::spectrum::{extract_copyables, ExtractionResult, SpectrumError};
use crate::DEFAULT_SEED;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FinsetError {
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("entry {index} maps to {value}, outside a codomain of size {codomain}")]
    OutOfRange { index: usize, value: usize, codomain: usize },
    #[error("cannot compose: codomain size {codomain} differs from domain size {domain}")]
    NotComposable { codomain: usize, domain: usize },
    #[error("sizes do not match: {what} has size {found}, algebra has dimension {expected}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("morphism has shape {found:?}, expected {expected:?}")]
    Shape { expected: Vec<usize>, found: Vec<usize> },
    #[error("image of copyable {index} matches no copyable of the codomain (nearest at {distance:e})")]
    NoImage { index: usize, distance: f64 },
    #[error("image of copyable {index} matches several copyables of the codomain")]
    Ambiguous { index: usize },
    #[error("map preserves the full Frobenius structure but is not unitary (||g^dagger g - I|| = {residual:e})")]
    ContractViolation { residual: f64 },
    #[error("structure is {0}, expected an orthogonal- or orthonormal-type algebra")]
    NotDaggerType(Classification),
}

impl From<FrobeniusError> for FinsetError {
    fn from(e: FrobeniusError) -> Self {
        FinsetError::Spectrum(SpectrumError::Frobenius(e))
    }
}

impl From<NumlinError> for FinsetError {
    fn from(e: NumlinError) -> Self {
        FinsetError::Spectrum(e.into())
    }
}

/// A function `{0..m-1} -> {0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFunction {
    codomain_size: usize,
    mapping: Vec<usize>,
}

impl SetFunction {
    pub fn new(codomain_size: usize, mapping: Vec<usize>) -> Result<Self, FinsetError> {
        if let Some((index, &value)) = mapping.iter().enumerate().find(|(_, &v)| v >= codomain_size) {
            return Err(FinsetError::OutOfRange {
                index,
                value,
                codomain: codomain_size,
            });
        }
        Ok(Self { codomain_size, mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            codomain_size: n,
            mapping: (0..n).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.mapping.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// `next . self`.
    pub fn then(&self, next: &SetFunction) -> Result<SetFunction, FinsetError> {
        if self.codomain_size != next.domain_size() {
            return Err(FinsetError::NotComposable {
                codomain: self.codomain_size,
                domain: next.domain_size(),
            });
        }
        Ok(SetFunction {
            codomain_size: next.codomain_size,
            mapping: self.mapping.iter().map(|&i| next.mapping[i]).collect(),
        })
    }

    /// Every function from a set of size `m` to one of size `n`, in
    /// lexicographic order of the mapping.
    pub fn all(m: usize, n: usize) -> impl Iterator<Item = SetFunction> {
        let total = if m == 0 { 1 } else if n == 0 { 0 } else { n.pow(m as u32) };
        (0..total).map(move |mut code| {
            let mut mapping = vec![0; m];
            for slot in mapping.iter_mut().rev() {
                *slot = code % n.max(1);
                code /= n.max(1);
            }
            SetFunction { codomain_size: n, mapping }
        })
    }

    pub fn random(rng: &mut sample::Rng, m: usize, n: usize) -> Self {
        assert!(n > 0 || m == 0, "no functions into the empty set");
        SetFunction {
            codomain_size: n,
            mapping: (0..m).map(|_| rng.random_range(0..n)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomCheckReport<T> {
    /// `||delta_B g - (g (x) g) delta_A||`
    pub comult_residual: T,
    /// `||eps_B g - eps_A||`
    pub counit_residual: T,
    pub is_comonoid_hom: bool,
}

fn expect_morphism<T: Real>(
    g: &Tensor<T>,
    a: &FrobeniusStructure<T>,
    b: &FrobeniusStructure<T>,
) -> Result<(), FinsetError> {
    if g.shape() != [b.dim(), a.dim()] {
        return Err(FinsetError::Shape {
            expected: vec![b.dim(), a.dim()],
            found: g.shape().to_vec(),
        });
    }
    Ok(())
}

struct Residual<T> {
    value: T,
    bound: T,
}

fn residual<T: Real>(lhs: &Tensor<T>, rhs: &Tensor<T>, tol: &Tolerance<T>) -> Result<Residual<T>, FinsetError> {
    let value = operator_norm(&lhs.sub(rhs)?, tol)?;
    let bound = T::lit(100.0) * tol.bound(lhs.frobenius_norm().max(rhs.frobenius_norm()));
    Ok(Residual { value, bound })
}

/// Checks that `g: A -> B` preserves comultiplication and counit:
/// `delta_B g = (g (x) g) delta_A` and `eps_B g = eps_A`.
pub fn check_comonoid_hom<T: Real>(
    g: &Tensor<T>,
    a: &FrobeniusStructure<T>,
    b: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
) -> Result<HomCheckReport<T>, FinsetError> {
    expect_morphism(g, a, b)?;
    let comult = residual(&matmul(b.delta(), g)?, &matmul(&kron(g, g)?, a.delta())?, tol)?;
    let counit = residual(&matmul(b.eps(), g)?, a.eps(), tol)?;
    Ok(HomCheckReport {
        comult_residual: comult.value,
        counit_residual: counit.value,
        is_comonoid_hom: comult.value <= comult.bound && counit.value <= counit.bound,
    })
}

fn extract<T: Real>(f: &FrobeniusStructure<T>, tol: &Tolerance<T>) -> Result<ExtractionResult<T>, FinsetError> {
    Ok(extract_copyables(f, tol, DEFAULT_SEED)?)
}

/// The linear map sending the `i`-th copyable of `a` to the `fn(i)`-th
/// copyable of `b`.
pub fn function_to_hom<T: Real>(
    func: &SetFunction,
    a: &FrobeniusStructure<T>,
    b: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
) -> Result<Tensor<T>, FinsetError> {
    if func.domain_size() != a.dim() {
        return Err(FinsetError::SizeMismatch {
            what: "domain",
            expected: a.dim(),
            found: func.domain_size(),
        });
    }
    if func.codomain_size() != b.dim() {
        return Err(FinsetError::SizeMismatch {
            what: "codomain",
            expected: b.dim(),
            found: func.codomain_size(),
        });
    }
    let ra = extract(a, tol)?;
    let rb = extract(b, tol)?;
    let images: Vec<Vec<Complex<T>>> = func.mapping().iter().map(|&j| rb.copyables[j].clone()).collect();
    let targets = Tensor::from_columns(&images)?;
    Ok(matmul(&targets, &inverse(&ra.matrix())?)?)
}

/// Reads off the function induced by a comonoid homomorphism: each copyable
/// of `a` must map onto exactly one copyable of `b`, within `100 tol`.
pub fn hom_to_function<T: Real>(
    g: &Tensor<T>,
    a: &FrobeniusStructure<T>,
    b: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
) -> Result<SetFunction, FinsetError> {
    expect_morphism(g, a, b)?;
    let ra = extract(a, tol)?;
    let rb = extract(b, tol)?;
    let mut mapping = Vec::with_capacity(ra.dim());
    for (index, phi) in ra.copyables.iter().enumerate() {
        let image = matvec(g, phi)?;
        let distances: Vec<T> = rb.copyables.iter().map(|psi| vec_norm(&vec_sub(&image, psi))).collect();
        let matches: Vec<usize> = distances
            .iter()
            .enumerate()
            .filter(|(j, &dist)| dist <= T::lit(100.0) * tol.bound(vec_norm(&rb.copyables[*j])))
            .map(|(j, _)| j)
            .collect();
        match matches.as_slice() {
            [j] => mapping.push(*j),
            [] => {
                let nearest = distances.iter().copied().fold(T::infinity(), T::min);
                return Err(FinsetError::NoImage {
                    index,
                    distance: nearest.to_f64().unwrap_or(f64::NAN),
                });
            }
            _ => return Err(FinsetError::Ambiguous { index }),
        }
    }
    SetFunction::new(rb.dim(), mapping)
}

/// Residuals of a map against all four structure maps, plus the unitarity
/// consequence check.
#[derive(Clone, Debug, PartialEq)]
pub struct FullHomReport<T> {
    /// `||g m_A - m_B (g (x) g)||`
    pub mult_residual: T,
    /// `||g u_A - u_B||`
    pub unit_residual: T,
    pub comult_residual: T,
    pub counit_residual: T,
    pub preserves: bool,
    /// `||g^dagger g - I||`, for square `g`.
    pub unitary_residual: Option<T>,
}

impl<T: Real> FullHomReport<T> {
    pub fn holds(&self) -> bool {
        self.preserves
    }
}

/// Checks whether `g` preserves multiplication, unit, comultiplication and
/// counit. A map that does must be unitary; if it is not, that is reported
/// as [`FinsetError::ContractViolation`].
pub fn check_full_hom_unitary<T: Real>(
    g: &Tensor<T>,
    a: &FrobeniusStructure<T>,
    b: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
) -> Result<FullHomReport<T>, FinsetError> {
    expect_morphism(g, a, b)?;
    let mult = residual(&matmul(g, a.m())?, &matmul(b.m(), &kron(g, g)?)?, tol)?;
    let unit = residual(&matmul(g, &a.unit_column())?, &b.unit_column(), tol)?;
    let comult = residual(&matmul(b.delta(), g)?, &matmul(&kron(g, g)?, a.delta())?, tol)?;
    let counit = residual(&matmul(b.eps(), g)?, a.eps(), tol)?;
    let preserves = [&mult, &unit, &comult, &counit].iter().all(|r| r.value <= r.bound);

    let unitary_residual = if g.is_square() {
        let gram = matmul(&adjoint(g)?, g)?;
        Some(operator_norm(&gram.sub(&Tensor::identity(g.cols()))?, tol)?)
    } else {
        None
    };
    if preserves {
        let bound = T::lit(100.0) * tol.bound(T::one());
        match unitary_residual {
            Some(r) if r <= bound => {}
            other => {
                return Err(FinsetError::ContractViolation {
                    residual: other.map_or(f64::INFINITY, |r| r.to_f64().unwrap_or(f64::NAN)),
                })
            }
        }
    }
    Ok(FullHomReport {
        mult_residual: mult.value,
        unit_residual: unit.value,
        comult_residual: comult.value,
        counit_residual: counit.value,
        preserves,
        unitary_residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoReport<T> {
    pub isomorphic: bool,
    pub profile_a: Vec<T>,
    pub profile_b: Vec<T>,
    /// Structure-preserving unitary `A -> B`, present when isomorphic.
    pub witness: Option<Tensor<T>>,
}

/// Copyable indices sorted by norm; norms equal within `bound` are ordered by index.
fn norm_order<T: Real>(norms: &[T], bound: T) -> Vec<usize> {
    let mut order: Vec<usize> = (0..norms.len()).collect();
    order.sort_by(|&i, &j| norms[i].partial_cmp(&norms[j]).expect("finite norms"));
    let mut out = Vec::with_capacity(order.len());
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && norms[order[end]] - norms[order[end - 1]] <= bound {
            end += 1;
        }
        let mut group = order[start..end].to_vec();
        group.sort_unstable();
        out.extend(group);
        start = end;
    }
    out
}

/// Two dagger-type algebras are isomorphic exactly when their sorted norm
/// profiles agree; the witness maps equal-norm copyables onto each other.
pub fn iso_by_norm_profile<T: Real>(
    a: &FrobeniusStructure<T>,
    b: &FrobeniusStructure<T>,
    tol: &Tolerance<T>,
) -> Result<IsoReport<T>, FinsetError> {
    for f in [a, b] {
        let class = classify(f, tol)?;
        if !matches!(class, Classification::Orthonormal | Classification::Orthogonal) {
            return Err(FinsetError::NotDaggerType(class));
        }
    }
    let ra = extract(a, tol)?;
    let rb = extract(b, tol)?;
    let norms_a: Vec<T> = ra.copyables.iter().map(|v| vec_norm(v)).collect();
    let norms_b: Vec<T> = rb.copyables.iter().map(|v| vec_norm(v)).collect();
    let scale = norms_a.iter().chain(&norms_b).copied().fold(T::zero(), T::max);
    let bound = T::lit(100.0) * tol.bound(scale);
    let order_a = norm_order(&norms_a, bound);
    let order_b = norm_order(&norms_b, bound);
    let profile_a: Vec<T> = order_a.iter().map(|&i| norms_a[i]).collect();
    let profile_b: Vec<T> = order_b.iter().map(|&i| norms_b[i]).collect();

    let isomorphic = profile_a.len() == profile_b.len()
        && profile_a.iter().zip(&profile_b).all(|(x, y)| (*x - *y).abs() <= bound);
    let witness = if isomorphic {
        let source = Tensor::from_columns(&order_a.iter().map(|&i| ra.copyables[i].clone()).collect::<Vec<_>>())?;
        let target = Tensor::from_columns(&order_b.iter().map(|&i| rb.copyables[i].clone()).collect::<Vec<_>>())?;
        Some(matmul(&target, &inverse(&source)?)?)
    } else {
        None
    };
    Ok(IsoReport {
        isomorphic,
        profile_a,
        profile_b,
        witness,
    })
}
