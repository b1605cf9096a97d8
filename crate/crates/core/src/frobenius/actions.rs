use num_complex::Complex;

use crate::frobenius::{FrobeniusError, FrobeniusStructure};
use crate::numlin::{adjoint, kron, matmul_chain, matvec, Tensor};
use crate::scalar::{czero, Real};

fn check_len<T: Real>(what: &'static str, f: &FrobeniusStructure<T>, v: &[Complex<T>]) -> Result<(), FrobeniusError> {
    if v.len() != f.dim() {
        return Err(FrobeniusError::Shape {
            what,
            expected: vec![f.dim()],
            found: vec![v.len()],
        });
    }
    Ok(())
}

/// `R_alpha = m (id (x) alpha)`, i.e. `x -> m(x (x) alpha)`.
pub fn right_action<T: Real>(f: &FrobeniusStructure<T>, alpha: &[Complex<T>]) -> Result<Tensor<T>, FrobeniusError> {
    check_len("element", f, alpha)?;
    let d = f.dim();
    let m = f.m();
    Ok(Tensor::from_fn(d, d, |r, j| {
        alpha
            .iter()
            .enumerate()
            .fold(czero(), |acc, (b, &a)| acc + m[(r, j * d + b)] * a)
    }))
}

/// The cup `eta = m^dagger u`, a vector in `C^d (x) C^d`.
pub fn cup<T: Real>(f: &FrobeniusStructure<T>) -> Result<Vec<Complex<T>>, FrobeniusError> {
    Ok(matvec(&adjoint(f.m())?, f.unit())?)
}

/// `alpha' = (id (x) alpha^dagger) m^dagger u`, the element whose right
/// action is the adjoint of `R_alpha`.
pub fn conjugate_element<T: Real>(
    f: &FrobeniusStructure<T>,
    alpha: &[Complex<T>],
) -> Result<Vec<Complex<T>>, FrobeniusError> {
    if !f.dagger() {
        return Err(FrobeniusError::NotDagger);
    }
    check_len("element", f, alpha)?;
    let d = f.dim();
    let eta = cup(f)?;
    Ok((0..d)
        .map(|i| {
            (0..d).fold(czero(), |acc, j| acc + eta[i * d + j] * alpha[j].conj())
        })
        .collect())
}

/// Conjugate of `g: A -> B` relative to both structures,
/// `(id_B (x) eta_A^dagger)(id_B (x) g^dagger (x) id_A)(eta_B (x) id_A)`,
/// evaluated literally as a composite of Kronecker products.
pub fn conjugate_morphism<T: Real>(
    g: &Tensor<T>,
    a: &FrobeniusStructure<T>,
    b: &FrobeniusStructure<T>,
) -> Result<Tensor<T>, FrobeniusError> {
    if !a.dagger() || !b.dagger() {
        return Err(FrobeniusError::NotDagger);
    }
    let (da, db) = (a.dim(), b.dim());
    if g.shape() != [db, da] {
        return Err(FrobeniusError::Shape {
            what: "morphism",
            expected: vec![db, da],
            found: g.shape().to_vec(),
        });
    }
    let id_a = Tensor::identity(da);
    let id_b = Tensor::identity(db);
    let eta_a = Tensor::column(&cup(a)?);
    let eta_b = Tensor::column(&cup(b)?);

    let open = kron(&eta_b, &id_a)?;
    let middle = kron(&kron(&id_b, &adjoint(g)?)?, &id_a)?;
    let close = kron(&id_b, &adjoint(&eta_a)?)?;
    Ok(matmul_chain(&[&close, &middle, &open])?)
}
