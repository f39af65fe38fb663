//! Dense matrices over a field.

use rand::Rng;

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn random<R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for v in m.data.iter_mut() {
            *v = field.random(rng);
        }
        m
    }

    /// A random invertible matrix together with its inverse.
    pub fn random_invertible<R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> (Self, Self) {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if let Some(inv) = m.inverse() {
                return (m, inv);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub_mul(self.get(i, j), &factor, self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field.clone();
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..self.cols {
            let Some(p) = (c..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for i in c + 1..self.rows {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub_mul(m.get(i, j), &factor, m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// One solution of `self x = b`, if any.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(&Rationals, &[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), q(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&Rationals, 3));
        let singular = Matrix::from_i64(&Rationals, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), q(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn kernel_and_rank() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_i64(&f, &[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(&Rationals, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.solve(&[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
        let s = Matrix::from_i64(&Rationals, &[vec![1, 1], vec![2, 2]]);
        assert!(s.solve(&[q(1), q(3)]).is_none());
    }
}
