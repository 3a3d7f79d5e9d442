//! Exact dense linear algebra over [`Rational`].
//!
//! Everything here goes through a single Gauss-Jordan reduction. Arithmetic is
//! exact, so the pivot choice only matters for coefficient growth; we take the
//! first nonzero entry in each column.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Matrix::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share a length;
    /// `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        Matrix { rows: n_rows, cols, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(r, j)];
                    m[(i, j)] -= &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] / &pivot;
                for j in c..m.cols {
                    let delta = &factor * &m[(c, j)];
                    m[(i, j)] -= &delta;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("entries", &rows).finish()
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rref().1.len()
}

/// Basis of the right kernel, one vector per free column.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&reduced[(r, free)];
            }
            v
        })
        .collect()
}

/// Unique exact solution of `m · x = rhs`.
pub fn solve(m: &Matrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    Ok(solve_many(m, &[rhs.to_vec()])?.pop().expect("one right-hand side"))
}

/// Solves `m · x = b` for every `b` in `rhs` with a single elimination.
/// Fails if `m` has a kernel or if any system is inconsistent.
pub fn solve_many(m: &Matrix, rhs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    if let Some(b) = rhs.iter().find(|b| b.len() != m.rows()) {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} entries for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let cols = m.cols();
    let augmented = Matrix::from_rows(
        cols + rhs.len(),
        (0..m.rows())
            .map(|i| {
                let mut row = m.row(i).to_vec();
                row.extend(rhs.iter().map(|b| b[i].clone()));
                row
            })
            .collect(),
    );
    let (reduced, pivots) = augmented.rref();
    let rank = pivots.iter().filter(|&&p| p < cols).count();
    if pivots.len() > rank {
        return Err(Error::NoSolution);
    }
    if rank < cols {
        return Err(Error::NotUnique { rank, cols });
    }
    // Full column rank: row r of the reduced system reads x_r = b'_r.
    Ok((0..rhs.len()).map(|s| (0..cols).map(|r| reduced[(r, cols + s)].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(rank(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&Matrix::zeros(0, 3)), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::identity(3)).is_empty());

        let ns = nullspace(&Matrix::from_i64(&[&[1, -1]]));
        assert_eq!(ns, vec![vec![q(1, 1), q(1, 1)]]);

        // Hand elimination: x + 2y = 0 gives (−2, 1), proportional to (2, −1).
        let ns = nullspace(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(&v[0] * q(-1, 1), &v[1] * q(2, 1));
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3, 1), q(-1, 2)];
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), b);

        let m = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve(&m, &[q(1, 1), q(1, 1)]).unwrap(), vec![q(1, 2), q(1, 3)]);

        let under = Matrix::from_i64(&[&[1, 1]]);
        assert_eq!(solve(&under, &[q(1, 1)]), Err(Error::NotUnique { rank: 1, cols: 2 }));

        let inconsistent = Matrix::from_i64(&[&[1, 0], &[1, 0], &[0, 1]]);
        assert_eq!(solve(&inconsistent, &[q(1, 1), q(2, 1), q(0, 1)]), Err(Error::NoSolution));
    }

    #[test]
    fn solve_many_matches_individual_solves() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 3], &[3, 4]]);
        let rhs = vec![vec![q(3, 1), q(4, 1), q(7, 1)], vec![q(1, 1), q(0, 1), q(1, 1)]];
        let all = solve_many(&m, &rhs).unwrap();
        for (b, x) in rhs.iter().zip(&all) {
            assert_eq!(&solve(&m, b).unwrap(), x);
            assert_eq!(&m.mul_vec(x), b);
        }
        let bad = vec![rhs[0].clone(), vec![q(1, 1), q(0, 1), q(0, 1)]];
        assert_eq!(solve_many(&m, &bad), Err(Error::NoSolution));
    }

    #[test]
    fn overdetermined_consistent() {
        let m = Matrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(&m, &[q(1, 1), q(2, 1), q(3, 1)]).unwrap(), vec![q(1, 1), q(2, 1)]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = Matrix::from_i64(&[&[0, 2, 1], &[3, -1, 4], &[1, 0, 5]]);
        // 0·(−5−0) − 2·(15−4) + 1·(0+1) = −21
        assert_eq!(m.determinant(), q(-21, 1));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).determinant(), Rational::zero());
    }
}
