use std::fmt;

use crate::frobenius::{FrobeniusError, FrobeniusStructure};
use crate::numlin::{adjoint, kron, matmul, operator_norm, swap_map, Tensor, Tolerance};
use crate::scalar::Real;

/// The laws a Frobenius structure can be checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Assoc,
    UnitLeft,
    UnitRight,
    Coassoc,
    CounitLeft,
    CounitRight,
    FrobeniusLeft,
    FrobeniusRight,
    Commutative,
    Cocommutative,
    Special,
    DaggerDelta,
    DaggerEps,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::Assoc,
        Axiom::UnitLeft,
        Axiom::UnitRight,
        Axiom::Coassoc,
        Axiom::CounitLeft,
        Axiom::CounitRight,
        Axiom::FrobeniusLeft,
        Axiom::FrobeniusRight,
        Axiom::Commutative,
        Axiom::Cocommutative,
        Axiom::Special,
        Axiom::DaggerDelta,
        Axiom::DaggerEps,
    ];

    /// Monoid, comonoid, Frobenius and commutativity laws: what every
    /// basis-type structure satisfies.
    pub const COMMUTATIVE_FROBENIUS: [Axiom; 10] = [
        Axiom::Assoc,
        Axiom::UnitLeft,
        Axiom::UnitRight,
        Axiom::Coassoc,
        Axiom::CounitLeft,
        Axiom::CounitRight,
        Axiom::FrobeniusLeft,
        Axiom::FrobeniusRight,
        Axiom::Commutative,
        Axiom::Cocommutative,
    ];

    pub const DAGGER: [Axiom; 2] = [Axiom::DaggerDelta, Axiom::DaggerEps];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Assoc => "assoc",
            Axiom::UnitLeft => "unit_left",
            Axiom::UnitRight => "unit_right",
            Axiom::Coassoc => "coassoc",
            Axiom::CounitLeft => "counit_left",
            Axiom::CounitRight => "counit_right",
            Axiom::FrobeniusLeft => "frobenius_left",
            Axiom::FrobeniusRight => "frobenius_right",
            Axiom::Commutative => "commutative",
            Axiom::Cocommutative => "cocommutative",
            Axiom::Special => "special",
            Axiom::DaggerDelta => "dagger_delta",
            Axiom::DaggerEps => "dagger_eps",
        }
    }

    /// Axioms a structure claims: the commutative Frobenius laws always,
    /// plus speciality and the dagger equations when flagged.
    pub fn claimed_by<T: Real>(f: &FrobeniusStructure<T>) -> Vec<Axiom> {
        let mut out = Self::COMMUTATIVE_FROBENIUS.to_vec();
        if f.special() {
            out.push(Axiom::Special);
        }
        if f.dagger() {
            out.extend(Self::DAGGER);
        }
        out
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomEntry<T> {
    pub axiom: Axiom,
    pub residual: T,
    pub bound: T,
    pub passed: bool,
}

/// Operator-norm residual of every axiom, in [`Axiom::ALL`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<T> {
    pub entries: Vec<AxiomEntry<T>>,
}

impl<T: Real> AxiomReport<T> {
    pub fn get(&self, axiom: Axiom) -> &AxiomEntry<T> {
        self.entries
            .iter()
            .find(|e| e.axiom == axiom)
            .expect("report covers every axiom")
    }

    pub fn residual(&self, axiom: Axiom) -> T {
        self.get(axiom).residual
    }

    pub fn passed(&self, axiom: Axiom) -> bool {
        self.get(axiom).passed
    }

    pub fn all_passed(&self, axioms: &[Axiom]) -> bool {
        axioms.iter().all(|&a| self.passed(a))
    }

    pub fn failed(&self) -> Vec<Axiom> {
        self.entries.iter().filter(|e| !e.passed).map(|e| e.axiom).collect()
    }

    pub fn max_residual(&self, axioms: &[Axiom]) -> T {
        axioms.iter().map(|&a| self.residual(a)).fold(T::zero(), T::max)
    }
}

struct Checker<'a, T> {
    tol: &'a Tolerance<T>,
    entries: Vec<AxiomEntry<T>>,
}

impl<T: Real> Checker<'_, T> {
    /// Residual `||lhs - rhs||`; passes when within the tolerance bound
    /// scaled by the larger Frobenius norm of the two sides.
    fn compare(&mut self, axiom: Axiom, lhs: &Tensor<T>, rhs: &Tensor<T>) -> Result<(), FrobeniusError> {
        let residual = operator_norm(&lhs.sub(rhs)?, self.tol)?;
        let bound = self.tol.bound(lhs.frobenius_norm().max(rhs.frobenius_norm()));
        self.entries.push(AxiomEntry {
            axiom,
            residual,
            bound,
            passed: residual <= bound,
        });
        Ok(())
    }
}

/// Evaluates every law on `f`, whether claimed or not.
pub fn check_axioms<T: Real>(f: &FrobeniusStructure<T>, tol: &Tolerance<T>) -> Result<AxiomReport<T>, FrobeniusError> {
    let d = f.dim();
    let id = Tensor::identity(d);
    let m = f.m();
    let delta = f.delta();
    let eps = f.eps();
    let u = f.unit_column();
    let sigma = swap_map(d);
    let mut ck = Checker {
        tol,
        entries: Vec::with_capacity(Axiom::ALL.len()),
    };

    let m_id = kron(m, &id)?;
    let id_m = kron(&id, m)?;
    ck.compare(Axiom::Assoc, &matmul(m, &m_id)?, &matmul(m, &id_m)?)?;
    ck.compare(Axiom::UnitLeft, &matmul(m, &kron(&u, &id)?)?, &id)?;
    ck.compare(Axiom::UnitRight, &matmul(m, &kron(&id, &u)?)?, &id)?;

    let delta_id = kron(delta, &id)?;
    let id_delta = kron(&id, delta)?;
    ck.compare(Axiom::Coassoc, &matmul(&delta_id, delta)?, &matmul(&id_delta, delta)?)?;
    ck.compare(Axiom::CounitLeft, &matmul(&kron(eps, &id)?, delta)?, &id)?;
    ck.compare(Axiom::CounitRight, &matmul(&kron(&id, eps)?, delta)?, &id)?;

    let delta_m = matmul(delta, m)?;
    ck.compare(Axiom::FrobeniusLeft, &matmul(&m_id, &id_delta)?, &delta_m)?;
    ck.compare(Axiom::FrobeniusRight, &matmul(&id_m, &delta_id)?, &delta_m)?;

    ck.compare(Axiom::Commutative, &matmul(m, &sigma)?, m)?;
    ck.compare(Axiom::Cocommutative, &matmul(&sigma, delta)?, delta)?;
    ck.compare(Axiom::Special, &matmul(m, delta)?, &id)?;

    ck.compare(Axiom::DaggerDelta, delta, &adjoint(m)?)?;
    ck.compare(Axiom::DaggerEps, eps, &adjoint(&u)?)?;

    Ok(AxiomReport { entries: ck.entries })
}

/// Which kind of basis a structure encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Commutative special dagger-Frobenius algebra.
    Orthonormal,
    /// Commutative dagger-Frobenius algebra that is not special.
    Orthogonal,
    /// Commutative special Frobenius algebra that is not dagger.
    Arbitrary,
    Invalid,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Orthonormal => "orthonormal-type",
            Classification::Orthogonal => "orthogonal-type",
            Classification::Arbitrary => "arbitrary-type",
            Classification::Invalid => "invalid",
        }
    }

    pub fn structure(self) -> &'static str {
        match self {
            Classification::Orthonormal => "commutative special dagger-Frobenius algebra",
            Classification::Orthogonal => "commutative dagger-Frobenius algebra",
            Classification::Arbitrary => "commutative special Frobenius algebra",
            Classification::Invalid => "not a basis-type Frobenius algebra",
        }
    }

    pub fn basis_kind(self) -> Option<crate::frobenius::BasisKind> {
        use crate::frobenius::BasisKind;
        match self {
            Classification::Orthonormal => Some(BasisKind::Orthonormal),
            Classification::Orthogonal => Some(BasisKind::Orthogonal),
            Classification::Arbitrary => Some(BasisKind::Arbitrary),
            Classification::Invalid => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classification from an existing report; total.
pub fn classify_report<T: Real>(report: &AxiomReport<T>) -> Classification {
    if !report.all_passed(&Axiom::COMMUTATIVE_FROBENIUS) {
        return Classification::Invalid;
    }
    let dagger = report.all_passed(&Axiom::DAGGER);
    let special = report.passed(Axiom::Special);
    match (dagger, special) {
        (true, true) => Classification::Orthonormal,
        (true, false) => Classification::Orthogonal,
        (false, true) => Classification::Arbitrary,
        (false, false) => Classification::Invalid,
    }
}

/// Places `f` in the basis-type table. Errors only if the residual
/// computation itself fails numerically.
pub fn classify<T: Real>(f: &FrobeniusStructure<T>, tol: &Tolerance<T>) -> Result<Classification, FrobeniusError> {
    Ok(classify_report(&check_axioms(f, tol)?))
}
