use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Sylvester inertia of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_positive_definite(&self) -> bool {
        self.neg == 0 && self.zero == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.pos == 0 && self.zero == 0
    }

    pub fn is_indefinite(&self) -> bool {
        self.pos > 0 && self.neg > 0
    }
}

/// Signature by symmetric congruence reduction.
///
/// A nonzero diagonal pivot is eliminated from its row and column. When the whole active
/// diagonal vanishes but some `S_ij != 0`, adding row/column `j` into `i` makes the new
/// diagonal entry `2 S_ij`, which is nonzero.
pub fn symmetric_signature(s: &RationalMatrix) -> Result<Signature> {
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    let n = s.rows();
    for i in 0..n {
        for j in i + 1..n {
            if s[(i, j)] != s[(j, i)] {
                return Err(Error::Symmetry { expected: "symmetric", i, j });
            }
        }
    }
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| s.row(i).to_vec()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature { pos: 0, neg: 0, zero: 0 };

    while !active.is_empty() {
        let pivot = active.iter().position(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let mut pair = None;
                'search: for (x, &i) in active.iter().enumerate() {
                    for &j in &active[x + 1..] {
                        if !a[i][j].is_zero() {
                            pair = Some((x, i, j));
                            break 'search;
                        }
                    }
                }
                let Some((x, i, j)) = pair else {
                    sig.zero += active.len();
                    break;
                };
                // row i += row j, then column i += column j
                for &c in &active {
                    let v = a[j][c].clone();
                    a[i][c] += &v;
                }
                for &r in &active {
                    let v = a[r][j].clone();
                    a[r][i] += &v;
                }
                x
            }
        };
        let p = active.remove(pivot);
        let d = a[p][p].clone();
        if d.signum() > 0 {
            sig.pos += 1;
        } else {
            sig.neg += 1;
        }
        let dinv = d.recip().expect("nonzero pivot");
        for &r in &active {
            if a[r][p].is_zero() {
                continue;
            }
            let f = &a[r][p] * &dinv;
            for &c in &active {
                if !a[p][c].is_zero() {
                    let t = &f * &a[p][c];
                    a[r][c] -= &t;
                }
            }
        }
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(rows: &[&[i64]]) -> (usize, usize, usize) {
        let s = symmetric_signature(&RationalMatrix::from_i64(rows)).unwrap();
        (s.pos, s.neg, s.zero)
    }

    #[test]
    fn identity_and_diagonal() {
        assert_eq!(sig(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]), (4, 0, 0));
        assert_eq!(sig(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]), (1, 1, 1));
    }

    #[test]
    fn hyperbolic_plane() {
        assert_eq!(sig(&[&[0, 1], &[1, 0]]), (1, 1, 0));
        assert_eq!(sig(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]), (1, 1, 1));
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(symmetric_signature(&RationalMatrix::from_i64(&[&[0, 1], &[2, 0]])).is_err());
    }
}
