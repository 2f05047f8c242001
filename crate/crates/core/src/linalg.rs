//! Small dense exact-arithmetic linear algebra: just enough for nullspaces,
//! inverses and linear solves over the ground field.

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Field};

/// A dense matrix of exact scalars, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<ExactScalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, field, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out[(i, j)].clone();
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.clone() + b.clone();
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.clone() * c.clone();
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i].clone() + a.clone() * v[j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols);
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = t + self.get(i, i).clone();
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = ExactScalar;
    fn index(&self, (r, c): (usize, usize)) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        // swap rows
        if pr != row {
            for c in 0..m.cols {
                let a = m.get(row, c).clone();
                let b = m.get(pr, c).clone();
                m[(row, c)] = b;
                m[(pr, c)] = a;
            }
        }
        let inv = m.get(row, col).inverse().expect("pivot is nonzero");
        for c in col..m.cols {
            m[(row, c)] = m.get(row, c).clone() * inv.clone();
        }
        for r in 0..m.rows {
            if r == row || m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in col..m.cols {
                let sub = factor.clone() * m.get(row, c).clone();
                m[(r, c)] = m.get(r, c).clone() - sub;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the right nullspace `{x : Mx = 0}`. The basis vectors are the
/// standard RREF ones, listed in ascending free-column order, so the "first"
/// solution is reproducible.
pub fn nullspace(m: &Matrix) -> Vec<Vec<ExactScalar>> {
    let field = m.field;
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (prow, &pcol) in pivots.iter().enumerate() {
            v[pcol] = -r.get(prow, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `Mx = b`; `None` when inconsistent, first RREF solution otherwise.
pub fn solve(m: &Matrix, b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::zeros(m.field, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug[(r, c)] = m.get(r, c).clone();
        }
        aug[(r, m.cols)] = b[r].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.contains(&m.cols) {
        return None; // pivot in the constant column: inconsistent
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (prow, &pcol) in pivots.iter().enumerate() {
        x[pcol] = aug.get(prow, m.cols).clone();
    }
    Some(x)
}

/// Exact inverse; errors when singular.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if m.rows != m.cols {
        return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(m.field, n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug[(r, c)] = m.get(r, c).clone();
        }
        aug[(r, n + r)] = m.field.one();
    }
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
        return Err(Error::VerificationFailure("matrix is singular".into()));
    }
    let mut inv = Matrix::zeros(m.field, n, n);
    for r in 0..n {
        for c in 0..n {
            inv[(r, c)] = aug.get(r, n + c).clone();
        }
    }
    Ok(inv)
}

/// True when `Mx = 0` has only the zero solution (square case: invertible).
pub fn is_invertible(m: &Matrix) -> bool {
    m.rows == m.cols && nullspace(m).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactScalar {
        Field::Rational.from_i64(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            Field::Rational,
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
        )
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let img = m.apply(v);
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1], &[5, 3]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[1, 1], &[1, -1]]);
        let x = solve(&m, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let sing = mat(&[&[1, 1], &[2, 2]]);
        assert!(solve(&sing, &[q(1), q(3)]).is_none());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        let m = Matrix::from_rows(
            f,
            vec![vec![f.from_i64(2), f.from_i64(3)], vec![f.from_i64(1), f.from_i64(4)]],
        );
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
    }
}
