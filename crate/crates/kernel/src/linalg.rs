//! Dense exact linear algebra over any [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, o: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(l, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rref(&self) -> Rref<F> {
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
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = m[(r, j)].clone() * inv.clone();
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Solves `self * x = b`; free variables are set to zero.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in red.pivots.iter().enumerate() {
            x[p] = red.matrix[(i, self.cols)].clone();
        }
        Ok(x)
    }

    /// Basis of the right nullspace; one vector per free column, with a 1 there.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in red.pivots.iter().enumerate() {
                    v[p] = -red.matrix[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "determinant of non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            let inv = piv.inv().expect("nonzero pivot");
            det = det * piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let red = aug.rref();
        if red.pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Leading principal minors det(A[..i, ..i]) for i = 1..=n.
    /// Elimination without pivoting gives them as running products of the
    /// pivots; after a zero pivot the remaining minors are computed directly.
    pub fn leading_minors(&self) -> Vec<F> {
        let s = self.rows.min(self.cols);
        let mut a = self.clone();
        let mut out = Vec::with_capacity(s);
        let mut prod = F::one();
        for p in 0..s {
            let pivot = a[(p, p)].clone();
            if pivot.is_zero() {
                out.extend((p + 1..=s).map(|m| self.minor(m)));
                return out;
            }
            prod = prod * pivot.clone();
            out.push(prod.clone());
            let inv = pivot.inv().expect("nonzero pivot");
            for i in p + 1..s {
                let f = a[(i, p)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..s {
                    let v = a[(i, j)].clone() - f.clone() * a[(p, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        out
    }

    fn minor(&self, s: usize) -> F {
        let sub: Vec<Vec<F>> = (0..s).map(|i| self.row(i)[..s].to_vec()).collect();
        Matrix::from_rows(sub)
            .and_then(|m| m.determinant())
            .expect("square minor")
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_identity() {
        let r = Matrix::<Rational>::identity(3).rref();
        assert_eq!(r.rank(), 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero_and_dependent() {
        assert_eq!(Matrix::<Rational>::zeros(2, 3).rank(), 0);
        let r = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn solve_cases() {
        assert_eq!(
            Matrix::identity(2).solve(&[int(1), int(2)]).unwrap(),
            vec![int(1), int(2)]
        );
        assert_eq!(m(&[&[2]]).solve(&[int(1)]).unwrap(), vec![frac(1, 2)]);
        assert_eq!(
            m(&[&[1], &[1]]).solve(&[int(0), int(1)]),
            Err(Error::Inconsistent)
        );
        // free variable fixed to zero
        assert_eq!(
            m(&[&[1, 1]]).solve(&[int(3)]).unwrap(),
            vec![int(3), int(0)]
        );
    }

    #[test]
    fn kernel_cases() {
        assert!(Matrix::<Rational>::identity(3).kernel_basis().is_empty());
        assert_eq!(Matrix::<Rational>::zeros(2, 3).kernel_basis().len(), 3);
        assert_eq!(m(&[&[1, 1]]).kernel_basis(), vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(a.determinant().unwrap(), int(5));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(a.leading_minors(), vec![int(2), int(5)]);
    }
}
