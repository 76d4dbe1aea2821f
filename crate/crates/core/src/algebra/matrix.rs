use super::PrimeField;
use crate::{Error, Result};

/// A dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Rows must have equal length and entries in `[0, p)`.
    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u32>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let p = field.characteristic();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged matrix rows".into()));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= p) {
                return Err(Error::DimensionMismatch(format!(
                    "entry {bad} outside [0, {p})"
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Permutation matrix with a 1 at `(i, perm[i])`, so `x_i -> x_{perm[i]}`.
    pub fn permutation(field: PrimeField, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let p = self.field.characteristic() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row-echelon form and pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut rows: Vec<Vec<u32>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = f.inv_nonzero(rows[r][c]);
            if inv != 1 {
                for x in rows[r][c..].iter_mut() {
                    *x = f.mul(*x, inv);
                }
            }
            let pivot_row = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k == r || row[c] == 0 {
                    continue;
                }
                let factor = f.neg(row[c]);
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        let m = Matrix {
            field: f,
            rows: r,
            cols: self.cols,
            data: rows.concat(),
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel `{v : self * v = 0}` as the rows of a matrix in reduced
    /// row-echelon form.
    pub fn nullspace(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return Matrix::zeros(f, 0, self.cols);
        }
        Matrix::from_rows(f, basis).expect("canonical entries").rref().0
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix(self.field.characteristic()));
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Rows kept in echelon form, grown one vector at a time.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    field: PrimeField,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` modulo the span.
    pub(crate) fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let f = self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if a != 0 {
                let na = f.neg(a);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(na, r));
                    }
                }
            }
        }
        v
    }

    /// Adds `v` to the span; false if it was already there.
    pub(crate) fn insert(&mut self, v: Vec<u32>) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv_nonzero(v[c]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = Matrix::from_rows(f(5), vec![vec![1, 2, 3], vec![2, 4, 2], vec![3, 2, 0]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1, 2]);
        assert!(r.is_identity());
        assert_eq!(m.rank(), 3);
        let d = Matrix::from_rows(f(5), vec![vec![1, 2, 3], vec![2, 4, 2]]).unwrap();
        let (r, piv) = d.rref();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r.to_rows(), vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = Matrix::from_rows(f(3), vec![vec![1, 1, 1, 0], vec![0, 1, 2, 1]]).unwrap();
        let k = m.nullspace();
        assert_eq!(k.nrows(), 2);
        assert!(m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(f(7), vec![vec![2, 1], vec![5, 3]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = Matrix::from_rows(f(2), vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::SingularMatrix(2)));
    }

    #[test]
    fn permutation_power_is_identity() {
        let c = Matrix::permutation(f(2), &[1, 2, 3, 0]);
        assert!(!c.pow(2).is_identity());
        assert!(c.pow(4).is_identity());
    }

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(Matrix::from_rows(f(2), vec![vec![2]]).is_err());
        assert!(Matrix::from_rows(f(2), vec![vec![1, 0], vec![1]]).is_err());
    }
}
