use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::jet::Jet;
use crate::error::{GeometryError, Result};

/// Pivot norm below which [`gram_schmidt`] declares the input rank deficient.
pub const PIVOT_TOLERANCE: f64 = 1e-10;

/// A point or direction of the ambient space `R^{4(n+1)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AmbientVector(Vec<f64>);

impl AmbientVector {
    pub fn new(coords: Vec<f64>) -> Self {
        AmbientVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        AmbientVector(vec![0.0; dim])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        AmbientVector(v)
    }

    pub fn from_jets(v: &[Jet]) -> Self {
        AmbientVector(v.iter().map(Jet::value).collect())
    }

    pub fn to_jets(&self) -> Vec<Jet> {
        self.0.iter().copied().map(Jet::constant).collect()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &AmbientVector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, s: f64) -> AmbientVector {
        AmbientVector(self.0.iter().map(|x| s * x).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: f64, other: &AmbientVector) -> AmbientVector {
        AmbientVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn distance(&self, other: &AmbientVector) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(GeometryError::Dimension {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl Index<usize> for AmbientVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &AmbientVector {
    type Output = AmbientVector;
    fn add(self, rhs: &AmbientVector) -> AmbientVector {
        AmbientVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AmbientVector {
    type Output = AmbientVector;
    fn sub(self, rhs: &AmbientVector) -> AmbientVector {
        AmbientVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &AmbientVector {
    type Output = AmbientVector;
    fn neg(self) -> AmbientVector {
        self.scaled(-1.0)
    }
}

impl Mul<&AmbientVector> for f64 {
    type Output = AmbientVector;
    fn mul(self, rhs: &AmbientVector) -> AmbientVector {
        rhs.scaled(self)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense square matrix with small integer entries.
///
/// Products are exact, so algebraic identities between structure matrices
/// can be checked for equality rather than within a tolerance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn from_rows<const N: usize>(rows: [[i64; N]; N]) -> Self {
        IntMatrix {
            dim: N,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    /// `copies` copies of `block` along the diagonal.
    pub fn block_diagonal(block: &IntMatrix, copies: usize) -> Self {
        let b = block.dim;
        let dim = b * copies;
        let mut m = IntMatrix::zeros(dim);
        for c in 0..copies {
            for i in 0..b {
                for j in 0..b {
                    m.entries[(c * b + i) * dim + c * b + j] = block.get(i, j);
                }
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.entries[j * self.dim + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| {
                let row = &self.entries[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(v).map(|(&a, x)| a as f64 * x).sum()
            })
            .collect()
    }

    /// Matrix-vector product over jets; zero entries are skipped.
    pub fn apply_jets(&self, v: &[Jet]) -> Vec<Jet> {
        (0..self.dim)
            .map(|i| {
                let row = &self.entries[i * self.dim..(i + 1) * self.dim];
                let mut acc = Jet::ZERO;
                for (&a, x) in row.iter().zip(v) {
                    match a {
                        0 => {}
                        1 => acc += *x,
                        -1 => acc -= *x,
                        _ => acc += *x * a as f64,
                    }
                }
                acc
            })
            .collect()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        m
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

/// Orthonormalizes `vectors` with respect to `inner`.
///
/// Modified Gram-Schmidt with one re-orthogonalization pass, which keeps
/// the off-diagonal products at rounding level for the small, mildly
/// conditioned inputs used here.
pub fn gram_schmidt<F>(vectors: &[AmbientVector], inner: F) -> Result<Vec<AmbientVector>>
where
    F: Fn(&AmbientVector, &AmbientVector) -> f64,
{
    let mut out: Vec<AmbientVector> = Vec::with_capacity(vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        if let Some(first) = vectors.first() {
            v.check_dim(first.dim())?;
        }
        let mut w = v.clone();
        for _pass in 0..2 {
            for q in &out {
                let c = inner(q, &w);
                w = w.add_scaled(-c, q);
            }
        }
        let pivot = inner(&w, &w).max(0.0).sqrt();
        if !(pivot >= PIVOT_TOLERANCE) {
            return Err(GeometryError::Degenerate {
                index: k + 1,
                pivot,
                threshold: PIVOT_TOLERANCE,
            });
        }
        out.push(w.scaled(1.0 / pivot));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, i: usize) -> AmbientVector {
        AmbientVector::basis(dim, i)
    }

    #[test]
    fn rescales_orthogonal_input() {
        let out = gram_schmidt(&[e(3, 0).scaled(2.0), e(3, 1)], AmbientVector::dot).unwrap();
        assert_eq!(out, vec![e(3, 0), e(3, 1)]);
    }

    #[test]
    fn one_elimination_step() {
        let out = gram_schmidt(&[e(3, 0), &e(3, 0) + &e(3, 1)], AmbientVector::dot).unwrap();
        assert!(out[0].distance(&e(3, 0)) < 1e-15);
        assert!(out[1].distance(&e(3, 1)) < 1e-15);
    }

    #[test]
    fn dependent_set_names_second_index() {
        let err = gram_schmidt(&[e(3, 0), e(3, 0)], AmbientVector::dot).unwrap_err();
        assert!(
            matches!(err, GeometryError::Degenerate { index: 2, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let err = gram_schmidt(&[e(3, 0), e(4, 1)], AmbientVector::dot).unwrap_err();
        assert!(matches!(err, GeometryError::Dimension { .. }));
    }

    #[test]
    fn weighted_inner_product() {
        let w = [1.0, 4.0];
        let inner = |a: &AmbientVector, b: &AmbientVector| {
            a.as_slice()
                .iter()
                .zip(b.as_slice())
                .zip(&w)
                .map(|((x, y), wi)| wi * x * y)
                .sum()
        };
        let out = gram_schmidt(&[AmbientVector::new(vec![1.0, 1.0]), e(2, 1)], inner).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let d = if i == j { 1.0 } else { 0.0 };
                assert!((inner(&out[i], &out[j]) - d).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn int_matrix_products_are_exact() {
        let a = IntMatrix::from_rows([[0, -1], [1, 0]]);
        assert_eq!(&a * &a, -&IntMatrix::identity(2));
        assert_eq!(a.transpose(), -&a);
        let big = IntMatrix::block_diagonal(&a, 3);
        assert_eq!(big.dim(), 6);
        assert_eq!(&big * &big.transpose(), IntMatrix::identity(6));
    }
}
