//! Bases of finite-dimensional complex inner-product spaces as commutative
//! Frobenius algebras.
//!
//! [`frobenius`] builds the algebra whose comultiplication copies a given
//! basis and checks every Frobenius-algebra law numerically. [`spectrum`]
//! goes the other way, recovering the basis as the copyable elements of an
//! algebra. [`finset`] turns comonoid homomorphisms between such algebras
//! into functions between their copyable sets and back.
//!
//! The numerics are generic over the real scalar type (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod finset;
pub mod frobenius;
pub mod numlin;
pub mod sample;
pub mod scalar;
pub mod spectrum;

pub use num_complex::Complex;
pub use scalar::Real;

pub type C64 = Complex<f64>;
pub type Tensor64 = numlin::Tensor<f64>;
pub type Tolerance64 = numlin::Tolerance<f64>;
pub type Frobenius64 = frobenius::FrobeniusStructure<f64>;
pub type Basis64 = frobenius::BasisSpec<f64>;
pub type Extraction64 = spectrum::ExtractionResult<f64>;

pub type C32 = Complex<f32>;
pub type Tensor32 = numlin::Tensor<f32>;
pub type Tolerance32 = numlin::Tolerance<f32>;
pub type Frobenius32 = frobenius::FrobeniusStructure<f32>;
pub type Basis32 = frobenius::BasisSpec<f32>;

/// Seed used wherever an operation needs randomness but none is supplied.
pub const DEFAULT_SEED: u64 = 42;
