//! Smith and Hermite normal forms over the integers.
//!
//! The Smith reduction uses the smallest-nonzero-absolute-value pivot over the
//! whole remaining block and reduces fully (row and column) before moving on.
//! A non-unit pivot is additionally checked against the rest of the block so
//! that the divisibility chain holds on exit.

use num_bigint::BigInt;

use crate::matrix::IntegerMatrix;
use crate::scalar::{Dense, Scalar};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    /// `min(rows, cols)` nonnegative entries, `diag[i] | diag[i+1]`, zeros trailing.
    pub diag: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Which transforms to accumulate alongside the reduction.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Tracking {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Tracking {
    pub const ALL: Tracking = Tracking { u: true, u_inv: true, v: true, v_inv: true };
    pub const NONE: Tracking = Tracking { u: false, u_inv: false, v: false, v_inv: false };
}

/// Smith reduction with only the requested transforms filled in.
#[derive(Clone, Debug)]
pub(crate) struct PartialSmith {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntegerMatrix>,
    pub u_inv: Option<IntegerMatrix>,
    pub v: Option<IntegerMatrix>,
    pub v_inv: Option<IntegerMatrix>,
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let p = smith_with(m, Tracking::ALL);
    let d = IntegerMatrix::diagonal(m.rows(), m.cols(), &p.diag);
    SmithDecomposition {
        u: p.u.unwrap(),
        d,
        v: p.v.unwrap(),
        u_inv: p.u_inv.unwrap(),
        v_inv: p.v_inv.unwrap(),
        diag: p.diag,
    }
}

/// Diagonal of the Smith form without any transforms.
pub fn elementary_divisors(m: &IntegerMatrix) -> Vec<BigInt> {
    smith_with(m, Tracking::NONE).diag
}

pub(crate) fn smith_with(m: &IntegerMatrix, track: Tracking) -> PartialSmith {
    if let Some(a) = m.to_dense_i64() {
        if let Some(res) = Work::new(a, track).run() {
            return res;
        }
    }
    Work::new(m.to_dense_big(), track)
        .run()
        .expect("bigint reduction cannot overflow")
}

struct Work<T> {
    a: Dense<T>,
    u: Option<Dense<T>>,
    // transposes are stored so that every update is a contiguous row operation
    u_inv_t: Option<Dense<T>>,
    v_t: Option<Dense<T>>,
    v_inv: Option<Dense<T>>,
}

impl<T: Scalar> Work<T> {
    fn new(a: Dense<T>, track: Tracking) -> Self {
        let (m, n) = (a.rows, a.cols);
        Work {
            u: track.u.then(|| Dense::identity(m)),
            u_inv_t: track.u_inv.then(|| Dense::identity(m)),
            v_t: track.v.then(|| Dense::identity(n)),
            v_inv: track.v_inv.then(|| Dense::identity(n)),
            a,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(w) = &mut self.u_inv_t {
            w.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v_t {
            v.swap_rows(i, j);
        }
        if let Some(w) = &mut self.v_inv {
            w.swap_rows(i, j);
        }
    }

    /// `row[target] -= q * row[source]`
    fn row_axpy(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        self.a.row_axpy(target, source, q)?;
        if let Some(u) = &mut self.u {
            u.row_axpy(target, source, q)?;
        }
        if let Some(w) = &mut self.u_inv_t {
            w.row_axpy(source, target, &q.checked_neg()?)?;
        }
        Some(())
    }

    /// `col[target] -= q * col[source]`
    fn col_axpy(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        self.a.col_axpy(target, source, q)?;
        if let Some(v) = &mut self.v_t {
            v.row_axpy(target, source, q)?;
        }
        if let Some(w) = &mut self.v_inv {
            w.row_axpy(source, target, &q.checked_neg()?)?;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        self.a.negate_row(i)?;
        if let Some(u) = &mut self.u {
            u.negate_row(i)?;
        }
        if let Some(w) = &mut self.u_inv_t {
            w.negate_row(i)?;
        }
        Some(())
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = self.a.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if x.abs_cmp(self.a.at(bi, bj)).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<PartialSmith> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut diag = Vec::new();
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a.at(t, t).clone();
                let mut clean = true;
                for i in t + 1..m {
                    let x = self.a.at(i, t);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.quotient(&p)?;
                    if !q.is_zero() {
                        self.row_axpy(i, t, &q)?;
                    }
                    clean &= self.a.at(i, t).is_zero();
                }
                for j in t + 1..n {
                    let x = self.a.at(t, j);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.quotient(&p)?;
                    if !q.is_zero() {
                        self.col_axpy(j, t, &q)?;
                    }
                    clean &= self.a.at(t, j).is_zero();
                }
                if !clean {
                    // a nonzero remainder is strictly smaller than the pivot
                    let mut best: Option<(usize, usize)> = None;
                    let mut consider = |i: usize, j: usize, a: &Dense<T>| {
                        let x = a.at(i, j);
                        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_cmp(a.at(bi, bj)).is_lt()) {
                            best = Some((i, j));
                        }
                    };
                    for i in t + 1..m {
                        consider(i, t, &self.a);
                    }
                    for j in t + 1..n {
                        consider(t, j, &self.a);
                    }
                    let (bi, bj) = best.expect("unclean pivot has a remainder");
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                if !p.is_unit() {
                    let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a.at(i, j).divisible_by(&p)));
                    if let Some(i) = offender {
                        self.row_axpy(t, i, &T::one().checked_neg()?)?;
                        continue;
                    }
                }
                break;
            }
            if self.a.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            diag.push(self.a.at(t, t).to_big());
        }
        let rank = diag.len();
        diag.resize(m.min(n), BigInt::zero());
        Some(PartialSmith {
            diag,
            rank,
            u: self.u.as_ref().map(IntegerMatrix::from_dense),
            u_inv: self.u_inv_t.as_ref().map(|w| IntegerMatrix::from_dense(&w.transpose())),
            v: self.v_t.as_ref().map(|w| IntegerMatrix::from_dense(&w.transpose())),
            v_inv: self.v_inv.as_ref().map(IntegerMatrix::from_dense),
        })
    }
}

/// Canonical basis of the column span of `m`, as the columns of the returned
/// `rows × rank` matrix. Two generator matrices span the same lattice iff
/// their Hermite forms are equal.
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    // row-style reduction on the generators (the columns of m)
    let mut g: Vec<Vec<BigInt>> = m.columns();
    let d = m.rows();
    let mut pivot_row = 0;
    for c in 0..d {
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..g.len() {
                if !g[r][c].is_zero() && best.is_none_or(|b| g[r][c].magnitude() < g[b][c].magnitude()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            g.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..g.len() {
                if g[r][c].is_zero() {
                    continue;
                }
                let q = g[r][c].quotient(&g[pivot_row][c]).unwrap();
                let (head, tail) = g.split_at_mut(r);
                let piv = &head[pivot_row];
                for (x, p) in tail[0].iter_mut().zip(piv) {
                    *x -= &q * p;
                }
                done &= tail[0][c].is_zero();
            }
            if done {
                if g[pivot_row][c].is_negative() {
                    for x in g[pivot_row].iter_mut() {
                        *x = -&*x;
                    }
                }
                for r in 0..pivot_row {
                    let q = g[r][c].quotient(&g[pivot_row][c]).unwrap();
                    if !q.is_zero() {
                        let (head, tail) = g.split_at_mut(pivot_row);
                        for (x, p) in head[r].iter_mut().zip(&tail[0]) {
                            *x -= &q * p;
                        }
                    }
                }
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == g.len() {
            break;
        }
    }
    g.truncate(pivot_row);
    IntegerMatrix::from_columns(d, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntegerMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d, "U M V = D");
        assert_eq!(&s.u * &s.u_inv, IntegerMatrix::identity(m.rows()));
        assert_eq!(&s.v * &s.v_inv, IntegerMatrix::identity(m.cols()));
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let r = s.rank();
        for i in 0..s.diag.len() {
            assert!(!s.diag[i].is_negative());
            if i < r {
                assert!(!s.diag[i].is_zero());
            } else {
                assert!(s.diag[i].is_zero(), "zeros trail");
            }
            if i + 1 < r {
                assert!((&s.diag[i + 1] % &s.diag[i]).is_zero(), "divisibility chain");
            }
        }
        s
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(check(&IntegerMatrix::identity(3)).diag, ints(&[1, 1, 1]));
        assert_eq!(check(&IntegerMatrix::zeros(2, 2)).diag, ints(&[0, 0]));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = |2*8 - 4*6| = 8, so the diagonal is (2, 4)
        let m = IntegerMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]);
        assert_eq!(check(&m).diag, ints(&[2, 4]));
    }

    #[test]
    fn divisibility_fix_is_applied() {
        // diag(2, 3) must become diag(1, 6)
        let m = IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]);
        assert_eq!(check(&m).diag, ints(&[1, 6]));
        let m = IntegerMatrix::from_rows(&[vec![4i64, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
        assert_eq!(check(&m).diag, ints(&[2, 2, 60]));
    }

    #[test]
    fn empty_and_rectangular() {
        check(&IntegerMatrix::zeros(0, 3));
        check(&IntegerMatrix::zeros(3, 0));
        let m = IntegerMatrix::from_rows(&[vec![1i64, 1, 1]]);
        assert_eq!(check(&m).diag, ints(&[1]));
    }

    #[test]
    fn overflowing_input_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = IntegerMatrix::from_rows(&[vec![big, big - 1], vec![big - 7, big - 2]]);
        let s = check(&m);
        let det = m.determinant().unwrap();
        assert_eq!((&s.diag[0] * &s.diag[1]).magnitude(), det.magnitude());
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]);
        let b = IntegerMatrix::from_rows(&[vec![2i64, 2, 4], vec![3, 0, 3]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        let c = IntegerMatrix::from_rows(&[vec![1i64, 0], vec![0, 3]]);
        assert_ne!(hermite_normal_form(&a), hermite_normal_form(&c));
        assert_eq!(hermite_normal_form(&IntegerMatrix::zeros(3, 2)).cols(), 0);
    }

    proptest! {
        #[test]
        fn smith_invariants(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let m = IntegerMatrix::from_i64(rows, cols, seed[..rows * cols].to_vec()).unwrap();
            check(&m);
        }

        #[test]
        fn diagonal_unchanged_by_unimodular_action(seed in proptest::collection::vec(-6i64..7, 9), a in -3i64..4, b in -3i64..4) {
            let m = IntegerMatrix::from_i64(3, 3, seed).unwrap();
            let left = IntegerMatrix::from_rows(&[vec![1i64, a, 0], vec![0, 1, 0], vec![b, a * b, 1]]);
            let right = IntegerMatrix::from_rows(&[vec![0i64, 1, 0], vec![1, 0, b], vec![0, 0, -1]]);
            prop_assert!(left.is_unimodular() && right.is_unimodular());
            prop_assert_eq!(elementary_divisors(&m), elementary_divisors(&(&(&left * &m) * &right)));
        }
    }
}
