//! Dense matrices over exact rationals.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: alloc::vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix shape");
        RationalMatrix::from_fn(rows, cols, |i, j| Rational::from_integer(BigInt::from(entries[i * cols + j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not chain");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is `(order[i], order[j])`.
    pub fn permuted(&self, order: &[u32]) -> RationalMatrix {
        assert!(self.is_square() && order.len() == self.rows, "permutation shape");
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.get(order[i] as usize, order[j] as usize).clone())
    }

    /// Upper unitriangular once rows and columns are listed in `order`.
    pub fn is_unitriangular_in(&self, order: &[u32]) -> bool {
        if !self.is_square() || order.len() != self.rows {
            return false;
        }
        let n = self.rows;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = self.get(order[i] as usize, order[j] as usize);
                match i.cmp(&j) {
                    core::cmp::Ordering::Equal => v.is_one(),
                    core::cmp::Ordering::Greater => v.is_zero(),
                    core::cmp::Ordering::Less => true,
                }
            })
        })
    }

    /// Reduced row echelon form and the pivot columns.
    fn echelon(mut self) -> (RationalMatrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let sub = self.get(r, j);
                    if sub.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &f * sub;
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (self, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().1.len()
    }

    /// Exact inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = RationalMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (red, pivots) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(RationalMatrix::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
    }

    /// Row-major `(numerator, denominator)` pairs in lowest terms.
    pub fn to_pairs(&self) -> Vec<Vec<(BigInt, BigInt)>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|v| (v.numer().clone(), v.denom().clone())).collect()).collect()
    }
}
