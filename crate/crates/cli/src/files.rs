//! JSON file formats. Complex numbers are `[re, im]` pairs; matrices are
//! flattened row-major.

use std::fs;
use std::path::Path;

use frobasis::frobenius::{BasisKind, BasisSpec};
use frobasis::numlin::Tensor;
use frobasis::{Frobenius64, Tensor64, C64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type Pair = [f64; 2];

/// Negative zeros are written as `0.0`.
pub fn to_pair(z: &C64) -> Pair {
    [z.re + 0.0, z.im + 0.0]
}

pub fn to_pairs(v: &[C64]) -> Vec<Pair> {
    v.iter().map(to_pair).collect()
}

fn from_pairs(v: &[Pair]) -> Vec<C64> {
    v.iter().map(|p| C64::new(p[0], p[1])).collect()
}

/// A Frobenius structure on `C^dim`.
///
/// `m` holds `m[k][i][j]`, the `k`-th component of `m(e_i (x) e_j)`, at
/// position `k dim^2 + i dim + j`. `delta` holds the `(i dim + j)`-th component
/// of `delta(e_k)` at position `(i dim + j) dim + k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub m: Vec<Pair>,
    pub u: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dagger: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub dim: usize,
    pub kind: String,
    pub vectors: Vec<Vec<Pair>>,
}

/// A linear map, `entries` row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub vector: Vec<Pair>,
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn field_error(path: &Path, field: &str, message: String) -> CliError {
    CliError::Field {
        path: path.to_path_buf(),
        field: field.to_string(),
        message,
    }
}

fn expect_len(path: &Path, field: &str, v: &[Pair], expected: usize) -> Result<(), CliError> {
    if v.len() != expected {
        return Err(field_error(path, field, format!("expected {expected} entries, found {}", v.len())));
    }
    Ok(())
}

fn matrix(rows: usize, cols: usize, v: &[Pair]) -> Tensor64 {
    Tensor::matrix(rows, cols, from_pairs(v)).expect("length checked")
}

impl AlgebraFile {
    pub fn load(path: &Path) -> Result<Frobenius64, CliError> {
        read::<AlgebraFile>(path)?.into_structure(path)
    }

    pub fn into_structure(self, path: &Path) -> Result<Frobenius64, CliError> {
        let d = self.dim;
        if d == 0 {
            return Err(field_error(path, "dim", "must be at least 1".into()));
        }
        expect_len(path, "m", &self.m, d * d * d)?;
        expect_len(path, "u", &self.u, d)?;
        let m = matrix(d, d * d, &self.m);
        let unit = from_pairs(&self.u);
        let special = self.special.unwrap_or(false);
        if self.delta.is_none() && self.eps.is_none() {
            let f = Frobenius64::from_monoid(m, unit, special).map_err(|e| field_error(path, "m", e.to_string()))?;
            return Ok(f.with_claims(self.dagger.unwrap_or(true), special));
        }
        let delta = match &self.delta {
            Some(v) => {
                expect_len(path, "delta", v, d * d * d)?;
                matrix(d * d, d, v)
            }
            None => frobasis::numlin::adjoint(&m).expect("matrix"),
        };
        let eps = match &self.eps {
            Some(v) => {
                expect_len(path, "eps", v, d)?;
                matrix(1, d, v)
            }
            None => Tensor::row(&unit.iter().map(|z| z.conj()).collect::<Vec<_>>()),
        };
        Frobenius64::new(m, unit, delta, eps, self.dagger.unwrap_or(false), special)
            .map_err(|e| field_error(path, "dim", e.to_string()))
    }

    /// Writes every field explicitly.
    pub fn from_structure(f: &Frobenius64) -> Self {
        AlgebraFile {
            dim: f.dim(),
            m: to_pairs(f.m().data()),
            u: to_pairs(f.unit()),
            delta: Some(to_pairs(f.delta().data())),
            eps: Some(to_pairs(f.eps().data())),
            dagger: Some(f.dagger()),
            special: Some(f.special()),
        }
    }
}

/// A well-formed basis file, accepted or rejected on its content.
pub enum BasisLoad {
    Ok(frobasis::Basis64),
    Rejected(frobasis::frobenius::FrobeniusError),
}

impl BasisFile {
    pub fn load(path: &Path) -> Result<BasisLoad, CliError> {
        let file: BasisFile = read(path)?;
        let kind = BasisKind::parse(&file.kind).ok_or_else(|| {
            field_error(path, "kind", format!("`{}` is not arbitrary, orthogonal or orthonormal", file.kind))
        })?;
        if file.dim == 0 || file.vectors.len() != file.dim {
            return Err(field_error(
                path,
                "vectors",
                format!("expected {} vectors, found {}", file.dim, file.vectors.len()),
            ));
        }
        for (i, v) in file.vectors.iter().enumerate() {
            expect_len(path, &format!("vectors[{i}]"), v, file.dim)?;
        }
        let vectors = file.vectors.iter().map(|v| from_pairs(v)).collect();
        Ok(match BasisSpec::new(vectors, kind) {
            Ok(b) => BasisLoad::Ok(b),
            Err(e) => BasisLoad::Rejected(e),
        })
    }

    pub fn new(kind: BasisKind, vectors: &[Vec<C64>]) -> Self {
        BasisFile {
            dim: vectors.len(),
            kind: kind.name().to_string(),
            vectors: vectors.iter().map(|v| to_pairs(v)).collect(),
        }
    }
}

impl MatrixFile {
    pub fn load(path: &Path) -> Result<Tensor64, CliError> {
        let file: MatrixFile = read(path)?;
        if file.rows == 0 || file.cols == 0 {
            return Err(field_error(path, "rows", "dimensions must be at least 1".into()));
        }
        expect_len(path, "entries", &file.entries, file.rows * file.cols)?;
        Ok(matrix(file.rows, file.cols, &file.entries))
    }
}

impl ElementFile {
    pub fn load(path: &Path, dim: usize) -> Result<Vec<C64>, CliError> {
        let file: ElementFile = read(path)?;
        expect_len(path, "vector", &file.vector, dim)?;
        Ok(from_pairs(&file.vector))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobasis::frobenius::from_basis;
    use frobasis::sample;

    #[test]
    fn algebra_roundtrip_is_exact() {
        let mut rng = sample::rng(3);
        for d in 1..5 {
            let bases = [
                sample::random_orthogonal_basis(&mut rng, d, (0.5, 2.0)).unwrap(),
                sample::random_invertible_basis(&mut rng, d, 50.0).unwrap(),
            ];
            for b in bases {
                let f = from_basis(&b).unwrap();
                let text = to_json(&AlgebraFile::from_structure(&f));
                let back: AlgebraFile = serde_json::from_str(&text).unwrap();
                assert_eq!(back.into_structure(Path::new("mem")).unwrap(), f);
            }
        }
    }

    #[test]
    fn omitted_comonoid_defaults_to_adjoint() {
        let file = AlgebraFile {
            dim: 1,
            m: vec![[2.0, 0.0]],
            u: vec![[0.5, 0.0]],
            delta: None,
            eps: None,
            dagger: None,
            special: None,
        };
        let f = file.into_structure(Path::new("mem")).unwrap();
        assert!(f.dagger() && !f.special());
        assert_eq!(f.eps()[(0, 0)], C64::new(0.5, 0.0));
    }

    #[test]
    fn negative_zero_is_written_as_zero() {
        assert_eq!(to_json(&to_pair(&C64::new(-0.0, -0.0))), "[\n  0.0,\n  0.0\n]\n");
    }
}
