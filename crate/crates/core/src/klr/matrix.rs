//! Small dense matrices over any `FieldElem`.

use std::fmt;

use crate::scalar::FieldElem;

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    /// Any element of the field, used to make constants.
    unit: T,
}

impl<T: FieldElem> Mat<T> {
    pub fn zero(rows: usize, cols: usize, sample: &T) -> Self {
        let z = sample.int_like(0);
        Mat { rows, cols, data: vec![z; rows * cols], unit: sample.int_like(1) }
    }

    pub fn identity(n: usize, sample: &T) -> Self {
        let mut m = Mat::zero(n, n, sample);
        for i in 0..n {
            m.data[i * n + i] = sample.int_like(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, sample: &T) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect(), unit: sample.int_like(1) }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn constant(&self, k: i64) -> T {
        self.unit.int_like(k)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<U: FieldElem>(&self, sample: &U, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), unit: sample.int_like(1) }
    }

    pub fn try_map<U: FieldElem, E>(&self, sample: &U, f: impl Fn(&T) -> Result<U, E>) -> Result<Mat<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data, unit: sample.int_like(1) })
    }

    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows, "matrix shapes do not match");
        let mut r = Mat::zero(self.rows, o.cols, &self.unit);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    r.data[idx] = r.data[idx].add(&a.mul(b));
                }
            }
        }
        r
    }

    pub fn add(&self, o: &Mat<T>) -> Mat<T> {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, o: &Mat<T>) -> Mat<T> {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Mat { data, ..self.clone() }
    }

    /// `self + c * I`.
    pub fn add_scalar(&self, c: &T) -> Mat<T> {
        let mut r = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            r.data[idx] = r.data[idx].add(c);
        }
        r
    }

    pub fn pow(&self, k: u32) -> Mat<T> {
        let mut r = Mat::identity(self.rows, &self.unit);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn product(factors: &[&Mat<T>]) -> Mat<T> {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = acc.mul(f);
        }
        acc
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat<T>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut a = self.clone();
        let mut inv = Mat::identity(n, &self.unit);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).try_inv()?;
            for j in 0..n {
                a.data[col * n + j] = a.data[col * n + j].mul(&p);
                inv.data[col * n + j] = inv.data[col * n + j].mul(&p);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(col, j).mul(&f);
                    a.data[r * n + j] = a.data[r * n + j].sub(&x);
                    let y = inv.get(col, j).mul(&f);
                    inv.data[r * n + j] = inv.data[r * n + j].sub(&y);
                }
            }
        }
        Some(inv)
    }

    /// First entry where the matrices differ.
    pub fn first_difference(&self, o: &Mat<T>) -> Option<(usize, usize, T, T)> {
        (0..self.data.len())
            .find(|&k| self.data[k] != o.data[k])
            .map(|k| (k / self.cols, k % self.cols, self.data[k].clone(), o.data[k].clone()))
    }
}

impl<T: FieldElem> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    #[test]
    fn inverse_over_fp() {
        let s = Fp::new(5, 0);
        let m = Mat::from_rows(vec![vec![Fp::new(5, 2), Fp::new(5, 1)], vec![Fp::new(5, 1), Fp::new(5, 1)]], &s);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2, &s));
        let sing = Mat::from_rows(vec![vec![Fp::new(5, 1), Fp::new(5, 2)], vec![Fp::new(5, 2), Fp::new(5, 4)]], &s);
        assert!(sing.inverse().is_none());
    }
}
