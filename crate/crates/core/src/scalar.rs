//! Integer scalars used by the dense kernels.
//!
//! Every kernel is written once against [`Scalar`] and instantiated twice:
//! with `i64` (checked arithmetic, any overflow aborts with `None`) and with
//! `BigInt` (never fails). Callers run the machine-word instance first and
//! rerun on `BigInt` when it reports overflow, so results are always exact.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn checked_neg(&self) -> Option<Self>;
    /// `self - q * b`
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self>;
    /// Euclidean quotient: `self - q * d` lies in `[0, |d|)`.
    fn quotient(&self, d: &Self) -> Option<Self>;
    fn divisible_by(&self, d: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    #[inline]
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        self.checked_div_euclid(*d)
    }
    fn divisible_by(&self, d: &Self) -> bool {
        if *d == 0 {
            *self == 0
        } else {
            self.checked_rem(*d).is_none_or(|r| r == 0)
        }
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_mod_floor(d);
        // floor division leaves r with the sign of d; shift to a nonnegative remainder
        if Signed::is_negative(&r) {
            Some(q + 1)
        } else {
            Some(q)
        }
    }
    fn divisible_by(&self, d: &Self) -> bool {
        if Zero::is_zero(d) {
            Zero::is_zero(self)
        } else {
            Zero::is_zero(&(self % d))
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Dense row-major working matrix.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Dense { rows: self.cols, cols: self.rows, data }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.cols;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..lo * n + n].swap_with_slice(&mut tail[..n]);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] -= q * row[source]`
    pub fn row_axpy(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        debug_assert_ne!(target, source);
        let n = self.cols;
        if target < source {
            let (head, tail) = self.data.split_at_mut(source * n);
            let src = &tail[..n];
            for (t, s) in head[target * n..target * n + n].iter_mut().zip(src) {
                if !s.is_zero() {
                    *t = t.mul_sub(q, s)?;
                }
            }
        } else {
            let (head, tail) = self.data.split_at_mut(target * n);
            let src = &head[source * n..source * n + n];
            for (t, s) in tail[..n].iter_mut().zip(src) {
                if !s.is_zero() {
                    *t = t.mul_sub(q, s)?;
                }
            }
        }
        Some(())
    }

    /// `col[target] -= q * col[source]`
    pub fn col_axpy(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        let n = self.cols;
        for i in 0..self.rows {
            let s = &self.data[i * n + source];
            if !s.is_zero() {
                let v = self.data[i * n + target].mul_sub(q, s)?;
                self.data[i * n + target] = v;
            }
        }
        Some(())
    }

    pub fn negate_row(&mut self, r: usize) -> Option<()> {
        let n = self.cols;
        for x in &mut self.data[r * n..r * n + n] {
            *x = x.checked_neg()?;
        }
        Some(())
    }
}
