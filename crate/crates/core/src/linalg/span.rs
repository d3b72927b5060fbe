//! Rank, span and coordinate computations by exact Gaussian elimination.

use super::matrix::RationalMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Reduced row echelon form of a list of row vectors, with the transform that produced it.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Nonzero rows of the RREF, in pivot order.
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    /// `transform[i]` expresses `rows[i]` as a combination of the input rows.
    pub transform: Vec<Vec<Rational>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Full reduction to RREF. Fractions are reduced after every step by construction of [`Rational`].
pub fn rref(input: &[Vec<Rational>]) -> Result<Echelon> {
    let ncols = input.first().map_or(0, Vec::len);
    if input.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("vectors of different lengths".into()));
    }
    let nrows = input.len();
    let mut rows: Vec<Vec<Rational>> = input.to_vec();
    let mut trans: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| {
            let mut t = vec![Rational::zero(); nrows];
            t[i] = Rational::one();
            t
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        trans.swap(r, p);
        let inv = rows[r][col].recip().expect("nonzero pivot");
        if !inv.is_one() {
            scale(&mut rows[r], &inv);
            scale(&mut trans[r], &inv);
        }
        for i in 0..nrows {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = -&rows[i][col];
            let (src_row, dst_row) = pick(&mut rows, r, i);
            axpy(dst_row, src_row, &f);
            let (src_t, dst_t) = pick(&mut trans, r, i);
            axpy(dst_t, src_t, &f);
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    trans.truncate(r);
    Ok(Echelon { rows, pivots, transform: trans })
}

fn pick<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn scale(v: &mut [Rational], s: &Rational) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * s;
        }
    }
}

/// dst += f * src
pub(crate) fn axpy(dst: &mut [Rational], src: &[Rational], f: &Rational) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += &(s * f);
        }
    }
}

pub fn rank(vectors: &[Vec<Rational>]) -> Result<usize> {
    Ok(rref(vectors)?.rank())
}

pub fn matrix_rank(m: &RationalMatrix) -> usize {
    let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    rank(&rows).expect("rows of a matrix share a length")
}

fn flatten_all(vectors: &[RationalMatrix]) -> Result<Vec<Vec<Rational>>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let (r, c) = (first.rows(), first.cols());
    vectors
        .iter()
        .map(|v| {
            if v.rows() != r || v.cols() != c {
                Err(Error::Dimension(format!(
                    "{}x{} matrix among {r}x{c} matrices",
                    v.rows(),
                    v.cols()
                )))
            } else {
                Ok(v.entries().to_vec())
            }
        })
        .collect()
}

/// Dimension of the span of a list of same-shape matrices. Empty input has dimension 0.
pub fn span_dim(vectors: &[RationalMatrix]) -> Result<usize> {
    rank(&flatten_all(vectors)?)
}

/// Greedily keeps the vectors that enlarge the span, preserving input order.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (p, row) in &echelon {
            if !w[*p].is_zero() {
                let f = -&w[*p];
                axpy(&mut w, row, &f);
            }
        }
        if let Some(p) = w.iter().position(|x| !x.is_zero()) {
            let inv = w[p].recip().expect("nonzero");
            scale(&mut w, &inv);
            for (_, row) in echelon.iter_mut() {
                if !row[p].is_zero() {
                    let f = -&row[p];
                    axpy(row, &w, &f);
                }
            }
            echelon.push((p, w));
            kept.push(idx);
        }
    }
    kept
}

/// Basis of the null space of the linear system `rows · x = 0`, one vector per free
/// column in increasing column order.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Result<Vec<Vec<Rational>>> {
    if rows.is_empty() {
        return Ok((0..ncols)
            .map(|f| {
                let mut v = vec![Rational::zero(); ncols];
                v[f] = Rational::one();
                v
            })
            .collect());
    }
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("constraint row length".into()));
    }
    let e = rref(rows)?;
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    Ok((0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect())
}

type SparseRow = Vec<(usize, Rational)>;

fn sparse(v: &[Rational]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Exact coordinates with respect to a fixed linearly independent list of vectors.
#[derive(Debug, Clone)]
pub struct CoordinateSolver {
    len: usize,
    dim: usize,
    pivots: Vec<usize>,
    reduced: Vec<SparseRow>,
    transform: Vec<SparseRow>,
}

impl CoordinateSolver {
    pub fn new(basis: &[Vec<Rational>]) -> Result<Self> {
        let len = basis.first().map_or(0, Vec::len);
        let e = rref(basis)?;
        if e.rank() < basis.len() {
            return Err(Error::DependentBasis { rank: e.rank(), len: basis.len() });
        }
        Ok(Self {
            len,
            dim: basis.len(),
            pivots: e.pivots.clone(),
            reduced: e.rows.iter().map(|r| sparse(r)).collect(),
            transform: e.transform.iter().map(|r| sparse(r)).collect(),
        })
    }

    pub fn from_matrices(basis: &[RationalMatrix]) -> Result<Self> {
        let mut s = Self::new(&flatten_all(basis)?)?;
        if basis.is_empty() {
            s.len = 0;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `w`, or `None` when `w` is not in the span.
    pub fn coordinates(&self, w: &[Rational]) -> Option<Vec<Rational>> {
        if self.dim == 0 {
            return w.iter().all(Rational::is_zero).then(Vec::new);
        }
        if w.len() != self.len {
            return None;
        }
        // residual check: w must equal sum_i w[p_i] * reduced_i
        let mut residual = w.to_vec();
        for (row, &p) in self.reduced.iter().zip(&self.pivots) {
            let f = &w[p];
            if f.is_zero() {
                continue;
            }
            for (j, x) in row {
                residual[*j] -= &(x * f);
            }
        }
        if !residual.iter().all(Rational::is_zero) {
            return None;
        }
        Some(self.coordinates_unchecked(w))
    }

    /// Coordinates assuming membership (no residual check).
    pub fn coordinates_unchecked(&self, w: &[Rational]) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); self.dim];
        for (trow, &p) in self.transform.iter().zip(&self.pivots) {
            let f = &w[p];
            if f.is_zero() {
                continue;
            }
            for (j, x) in trow {
                c[*j] += &(x * f);
            }
        }
        c
    }

    pub fn matrix_coordinates(&self, m: &RationalMatrix) -> Option<Vec<Rational>> {
        self.coordinates(m.entries())
    }
}

/// Result of [`coordinates_in_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(Vec<Rational>),
    NotAMember,
}

pub fn coordinates_in_basis(v: &RationalMatrix, basis: &[RationalMatrix]) -> Result<Membership> {
    if let Some(b) = basis.first() {
        if b.rows() != v.rows() || b.cols() != v.cols() {
            return Err(Error::Dimension("vector shape differs from basis shape".into()));
        }
    }
    let solver = CoordinateSolver::from_matrices(basis)?;
    Ok(match solver.matrix_coordinates(v) {
        Some(c) => Membership::Member(c),
        None => Membership::NotAMember,
    })
}

/// Rebuilds a matrix from coordinates in a basis.
pub fn combine(coords: &[Rational], basis: &[RationalMatrix]) -> RationalMatrix {
    let (r, c) = basis.first().map_or((0, 0), |b| (b.rows(), b.cols()));
    let mut acc = vec![Rational::zero(); r * c];
    for (x, b) in coords.iter().zip(basis) {
        if !x.is_zero() {
            axpy(&mut acc, b.entries(), x);
        }
    }
    RationalMatrix::from_vec(r, c, acc).expect("shape from basis")
}
