use crate::numlin::NumlinError;
use crate::scalar::Real;

/// Absolute/relative tolerance pair. A quantity of natural size `scale`
/// is considered zero when it is at most `abs + rel * scale`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    abs: T,
    rel: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(abs: T, rel: T) -> Result<Self, NumlinError> {
        let valid = abs >= T::zero()
            && rel >= T::zero()
            && abs.is_finite()
            && rel.is_finite()
            && !(abs == T::zero() && rel == T::zero());
        if !valid {
            return Err(NumlinError::InvalidTolerance {
                abs: abs.to_f64().unwrap_or(f64::NAN),
                rel: rel.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { abs, rel })
    }

    /// Same value for both components.
    pub fn uniform(tol: T) -> Result<Self, NumlinError> {
        Self::new(tol, tol)
    }

    pub fn abs(&self) -> T {
        self.abs
    }

    pub fn rel(&self) -> T {
        self.rel
    }

    pub fn bound(&self, scale: T) -> T {
        self.abs + self.rel * scale.abs()
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            abs: self.abs * factor,
            rel: self.rel * factor,
        }
    }
}

impl<T: Real> Default for Tolerance<T> {
    /// `1e-9` in double precision; never tighter than a thousand ulps of the scalar type.
    fn default() -> Self {
        let t = T::lit(1e-9).max(T::epsilon() * T::lit(1000.0));
        Self { abs: t, rel: t }
    }
}
