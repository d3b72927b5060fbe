use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::signature::{symmetric_signature, Signature};
use super::span::matrix_rank;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Antisymmetric,
}

/// A bilinear form given by its Gram matrix in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    matrix: RationalMatrix,
    kind: FormKind,
}

impl GramForm {
    /// Validates the declared (anti)symmetry exactly.
    pub fn new(matrix: RationalMatrix, kind: FormKind) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let n = matrix.rows();
        for i in 0..n {
            for j in i..n {
                let ok = match kind {
                    FormKind::Symmetric => matrix[(i, j)] == matrix[(j, i)],
                    FormKind::Antisymmetric => matrix[(i, j)] == -&matrix[(j, i)],
                };
                if !ok {
                    let expected = match kind {
                        FormKind::Symmetric => "symmetric",
                        FormKind::Antisymmetric => "antisymmetric",
                    };
                    return Err(Error::Symmetry { expected, i, j });
                }
            }
        }
        Ok(Self { matrix, kind })
    }

    pub fn symmetric(matrix: RationalMatrix) -> Result<Self> {
        Self::new(matrix, FormKind::Symmetric)
    }

    pub fn antisymmetric(matrix: RationalMatrix) -> Result<Self> {
        Self::new(matrix, FormKind::Antisymmetric)
    }

    /// Builds the Gram matrix `f(i, j)` and validates it.
    pub fn from_fn(n: usize, kind: FormKind, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        Self::new(m, kind)
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[(i, j)]
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.matrix)
    }

    /// A 0x0 form counts as nondegenerate.
    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }

    /// xᵗ G y
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let n = self.dim();
        let mut acc = Rational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..n {
                if !y[j].is_zero() && !self.matrix[(i, j)].is_zero() {
                    row += &(&self.matrix[(i, j)] * &y[j]);
                }
            }
            acc += &(&x[i] * &row);
        }
        acc
    }

    /// Restriction to the coordinate range `start..start + len`.
    pub fn restrict(&self, start: usize, len: usize) -> Self {
        Self { matrix: self.matrix.block(start, start, len, len), kind: self.kind }
    }

    pub fn signature(&self) -> Result<Signature> {
        if self.kind != FormKind::Symmetric {
            return Err(Error::Symmetry { expected: "symmetric", i: 0, j: 0 });
        }
        symmetric_signature(&self.matrix)
    }

    /// Returns `Some(c)` when `self = c * other` entrywise, reading `c` off the first
    /// nonzero entry of `other`. An all-zero `other` only matches an all-zero `self`, with c = 0.
    pub fn proportionality(&self, other: &GramForm) -> Option<Rational> {
        let n = self.dim();
        if other.dim() != n {
            return None;
        }
        let reference = (0..n * n).find(|&t| !other.matrix.entries()[t].is_zero());
        let c = match reference {
            Some(t) => &self.matrix.entries()[t] / &other.matrix.entries()[t],
            None => Rational::zero(),
        };
        let ok = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .all(|(a, b)| *a == &c * b);
        ok.then_some(c)
    }

    /// First index pair where `self != c * other`.
    pub fn first_mismatch(&self, other: &GramForm, c: &Rational) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.matrix[(i, j)] != c * &other.matrix[(i, j)] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert!(matches!(GramForm::symmetric(m.clone()), Err(Error::Symmetry { i: 0, j: 1, .. })));
        assert!(GramForm::antisymmetric(m).is_err());
    }

    #[test]
    fn empty_form_is_nondegenerate() {
        let g = GramForm::symmetric(RationalMatrix::zeros(0, 0)).unwrap();
        assert_eq!(g.rank(), 0);
        assert!(g.is_nondegenerate());
    }

    #[test]
    fn proportionality_reads_first_entry() {
        let a = GramForm::antisymmetric(RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        let b = GramForm::antisymmetric(RationalMatrix::from_i64(&[&[0, -3], &[3, 0]])).unwrap();
        assert_eq!(b.proportionality(&a), Some(Rational::from_int(-3)));
        let z = GramForm::antisymmetric(RationalMatrix::zeros(2, 2)).unwrap();
        assert_eq!(z.proportionality(&a), Some(Rational::zero()));
        assert_eq!(a.proportionality(&z), None);
    }
}
