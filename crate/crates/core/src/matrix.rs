//! Dense matrices of unbounded integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Dense;

/// Entry storage. Matrices whose entries all fit in an `i64` are kept in the
/// compact form; anything larger is promoted to `BigInt`. The choice is
/// invisible to callers: every operation is exact.
#[derive(Clone, Debug)]
enum Entries {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// A dense `rows × cols` matrix of unbounded integers in row-major order.
#[derive(Clone)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self::from_big_unchecked(rows, cols, entries))
    }

    pub fn from_i64(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries: Entries::Small(entries) })
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows<T: Copy + Into<i64>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x.into()));
        }
        IntegerMatrix { rows: rows.len(), cols, entries: Entries::Small(data) }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let mut data = vec![BigInt::zero(); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                data[i * cols + j] = x.clone();
            }
        }
        Self::from_big_unchecked(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: Entries::Small(vec![0; rows * cols]) }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntegerMatrix { rows: n, cols: n, entries: Entries::Small(data) }
    }

    /// `rows × cols` matrix with `diag` on the main diagonal.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        assert!(diag.len() <= rows.min(cols));
        let mut data = vec![BigInt::zero(); rows * cols];
        for (i, d) in diag.iter().enumerate() {
            data[i * cols + i] = d.clone();
        }
        Self::from_big_unchecked(rows, cols, data)
    }

    pub(crate) fn from_big_unchecked(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        match data.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<i64>>>() {
            Some(small) => IntegerMatrix { rows, cols, entries: Entries::Small(small) },
            None => IntegerMatrix { rows, cols, entries: Entries::Big(data) },
        }
    }

    pub(crate) fn from_dense<T: crate::scalar::Scalar>(d: &Dense<T>) -> Self {
        Self::from_big_unchecked(d.rows, d.cols, d.data.iter().map(T::to_big).collect())
    }

    pub(crate) fn to_dense_i64(&self) -> Option<Dense<i64>> {
        match &self.entries {
            Entries::Small(v) => Some(Dense { rows: self.rows, cols: self.cols, data: v.clone() }),
            Entries::Big(_) => None,
        }
    }

    pub(crate) fn to_dense_big(&self) -> Dense<BigInt> {
        Dense { rows: self.rows, cols: self.cols, data: self.entries() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        match &self.entries {
            Entries::Small(v) => BigInt::from(v[i * self.cols + j]),
            Entries::Big(v) => v[i * self.cols + j].clone(),
        }
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<BigInt> {
        match &self.entries {
            Entries::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(v) => v.clone(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        assert!(j < self.cols, "column {j} out of range");
        match &self.entries {
            Entries::Small(v) => (0..self.rows).map(|i| BigInt::from(v[i * self.cols + j])).collect(),
            Entries::Big(v) => (0..self.rows).map(|i| v[i * self.cols + j].clone()).collect(),
        }
    }

    /// True when column `j` has no nonzero entry.
    pub fn column_is_zero(&self, j: usize) -> bool {
        match &self.entries {
            Entries::Small(v) => (0..self.rows).all(|i| v[i * self.cols + j] == 0),
            Entries::Big(v) => (0..self.rows).all(|i| v[i * self.cols + j].is_zero()),
        }
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Small(v) => v.iter().all(|&x| x == 0),
            Entries::Big(v) => v.iter().all(Zero::is_zero),
        }
    }

    /// First column containing a nonzero entry.
    pub fn first_nonzero_column(&self) -> Option<usize> {
        (0..self.cols).find(|&j| !self.column_is_zero(j))
    }

    pub fn transpose(&self) -> Self {
        match &self.entries {
            Entries::Small(v) => {
                let mut data = Vec::with_capacity(v.len());
                for j in 0..self.cols {
                    for i in 0..self.rows {
                        data.push(v[i * self.cols + j]);
                    }
                }
                IntegerMatrix { rows: self.cols, cols: self.rows, entries: Entries::Small(data) }
            }
            Entries::Big(_) => Self::from_dense(&self.to_dense_big().transpose()),
        }
    }

    pub fn checked_mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &rhs.entries) {
            if let Some(c) = mul_small(a, b, self.rows, self.cols, rhs.cols) {
                return Ok(IntegerMatrix { rows: self.rows, cols: rhs.cols, entries: Entries::Small(c) });
            }
        }
        let a = self.entries();
        let b = rhs.entries();
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut c = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let x = &a[i * k + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let y = &b[l * m + j];
                    if !y.is_zero() {
                        c[i * m + j] += x * y;
                    }
                }
            }
        }
        Ok(Self::from_big_unchecked(n, m, c))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                match &self.entries {
                    Entries::Small(d) => {
                        let e = d[i * self.cols + j];
                        if e != 0 {
                            *o += x * e;
                        }
                    }
                    Entries::Big(d) => {
                        let e = &d[i * self.cols + j];
                        if !e.is_zero() {
                            *o += x * e;
                        }
                    }
                }
            }
        }
        out
    }

    fn zip_with(&self, rhs: &IntegerMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        let data = self.entries().iter().zip(rhs.entries().iter()).map(|(a, b)| f(a, b)).collect();
        Self::from_big_unchecked(self.rows, self.cols, data)
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &IntegerMatrix) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let cols = self.cols + rhs.cols;
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &rhs.entries) {
            let mut data = Vec::with_capacity(self.rows * cols);
            for i in 0..self.rows {
                data.extend_from_slice(&a[i * self.cols..(i + 1) * self.cols]);
                data.extend_from_slice(&b[i * rhs.cols..(i + 1) * rhs.cols]);
            }
            return IntegerMatrix { rows: self.rows, cols, entries: Entries::Small(data) };
        }
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i));
            data.extend(rhs.row(i));
        }
        Self::from_big_unchecked(self.rows, cols, data)
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &rhs.entries) {
            let data = a.iter().chain(b).copied().collect();
            return IntegerMatrix { rows: self.rows + rhs.rows, cols: self.cols, entries: Entries::Small(data) };
        }
        let mut data = self.entries();
        data.extend(rhs.entries());
        Self::from_big_unchecked(self.rows + rhs.rows, self.cols, data)
    }

    pub fn block_diagonal(blocks: &[&IntegerMatrix]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = vec![BigInt::zero(); rows * cols];
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            let e = b.entries();
            for i in 0..b.rows {
                for j in 0..b.cols {
                    data[(r0 + i) * cols + c0 + j] = e[i * b.cols + j].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Self::from_big_unchecked(rows, cols, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        match &self.entries {
            Entries::Small(a) => {
                let mut data = Vec::with_capacity(idx.len() * self.cols);
                for &i in idx {
                    data.extend_from_slice(&a[i * self.cols..(i + 1) * self.cols]);
                }
                IntegerMatrix { rows: idx.len(), cols: self.cols, entries: Entries::Small(data) }
            }
            Entries::Big(a) => {
                let mut data = Vec::with_capacity(idx.len() * self.cols);
                for &i in idx {
                    data.extend_from_slice(&a[i * self.cols..(i + 1) * self.cols]);
                }
                Self::from_big_unchecked(idx.len(), self.cols, data)
            }
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        match &self.entries {
            Entries::Small(a) => {
                let mut data = Vec::with_capacity(idx.len() * self.rows);
                for i in 0..self.rows {
                    data.extend(idx.iter().map(|&j| a[i * self.cols + j]));
                }
                IntegerMatrix { rows: self.rows, cols: idx.len(), entries: Entries::Small(data) }
            }
            Entries::Big(a) => {
                let mut data = Vec::with_capacity(idx.len() * self.rows);
                for i in 0..self.rows {
                    data.extend(idx.iter().map(|&j| a[i * self.cols + j].clone()));
                }
                Self::from_big_unchecked(self.rows, idx.len(), data)
            }
        }
    }

    /// Entries reduced into `[0, q)`. `q` must be positive.
    pub fn reduce_mod(&self, q: &BigInt) -> Self {
        assert!(q.is_positive(), "modulus must be positive");
        let data = self.entries().iter().map(|x| x.mod_floor(q)).collect();
        Self::from_big_unchecked(self.rows, self.cols, data)
    }

    /// True when every entry is divisible by `q`.
    pub fn is_divisible_by(&self, q: &BigInt) -> bool {
        if q.is_zero() {
            return self.is_zero();
        }
        self.entries().iter().all(|x| (x % q).is_zero())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_ok_and(|d| d.magnitude().is_one())
    }
}

fn mul_small(a: &[i64], b: &[i64], n: usize, k: usize, m: usize) -> Option<Vec<i64>> {
    let mut acc = vec![0i128; n * m];
    for i in 0..n {
        for l in 0..k {
            let x = a[i * k + l] as i128;
            if x == 0 {
                continue;
            }
            let row = &b[l * m..l * m + m];
            let out = &mut acc[i * m..i * m + m];
            for (o, &y) in out.iter_mut().zip(row) {
                if y != 0 {
                    *o = o.checked_add(x * y as i128)?;
                }
            }
        }
    }
    acc.into_iter().map(|x| i64::try_from(x).ok()).collect()
}

impl PartialEq for IntegerMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.shape() != other.shape() {
            return false;
        }
        match (&self.entries, &other.entries) {
            (Entries::Small(a), Entries::Small(b)) => a == b,
            _ => self.entries() == other.entries(),
        }
    }
}

impl Eq for IntegerMatrix {}

impl<'a> Mul<&'a IntegerMatrix> for &'a IntegerMatrix {
    type Output = IntegerMatrix;
    fn mul(self, rhs: &'a IntegerMatrix) -> IntegerMatrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl<'a> Add<&'a IntegerMatrix> for &'a IntegerMatrix {
    type Output = IntegerMatrix;
    fn add(self, rhs: &'a IntegerMatrix) -> IntegerMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a IntegerMatrix> for &'a IntegerMatrix {
    type Output = IntegerMatrix;
    fn sub(self, rhs: &'a IntegerMatrix) -> IntegerMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn neg(self) -> IntegerMatrix {
        IntegerMatrix::from_big_unchecked(self.rows, self.cols, self.entries().into_iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix({}x{}) {:?}", self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Wire form: `{"rows": r, "cols": c, "entries": [...row-major...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::bigint_serde::vec")]
    entries: Vec<BigInt>,
}

impl Serialize for IntegerMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire { rows: self.rows, cols: self.cols, entries: self.entries() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        IntegerMatrix::new(w.rows, w.cols, w.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_product_overflow_promotes() {
        let a = IntegerMatrix::from_rows(&[vec![i64::MAX, 1]]);
        let b = IntegerMatrix::from_rows(&[vec![2i64], vec![3]]);
        let c = &a * &b;
        assert_eq!(c.get(0, 0), BigInt::from(i64::MAX) * 2 + 3);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntegerMatrix::from_rows(&[vec![2i64, -1, 0], vec![1, 3, 4], vec![0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0
        assert_eq!(m.determinant().unwrap(), BigInt::from(2 * (-6 - 20) + (-2)));
        assert!(IntegerMatrix::identity(4).is_unimodular());
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn stacking_and_selection() {
        let a = IntegerMatrix::from_rows(&[vec![1i64, 2], vec![3, 4]]);
        let b = IntegerMatrix::identity(2);
        let h = a.hstack(&b);
        assert_eq!(h.select_cols(&[2, 3]), b);
        assert_eq!(a.vstack(&b).select_rows(&[0, 1]), a);
        let d = IntegerMatrix::block_diagonal(&[&a, &b]);
        assert_eq!(d.shape(), (4, 4));
        assert_eq!(d.get(3, 3), BigInt::one());
        assert_eq!(d.get(0, 3), BigInt::zero());
    }

    #[test]
    fn serde_round_trip_with_big_entries() {
        let big = BigInt::from(u64::MAX) * BigInt::from(1000);
        let m = IntegerMatrix::new(1, 2, vec![big.clone(), BigInt::from(-3)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: IntegerMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
