//! Sublattices of `Z^d`, linear solving, and subquotients `L / M`.
//!
//! Every lattice carries a chart: an integer matrix `T` and divisors `δ_i`
//! such that `x ∈ L` iff `y = T x` has `δ_i | y_i` on the first `dim` rows
//! and `y_i = 0` below, and then the coordinates of `x` in the stored basis
//! are `y_i / δ_i`. Charts come straight out of Smith decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{FinAbGroup, PresentedGroup};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::smith::{smith_with, Tracking};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    /// `ambient × dim`, columns form a basis.
    basis: IntegerMatrix,
    chart: IntegerMatrix,
    divisors: Vec<BigInt>,
}

impl Lattice {
    /// All of `Z^d`.
    pub fn full(d: usize) -> Self {
        Lattice {
            ambient: d,
            basis: IntegerMatrix::identity(d),
            chart: IntegerMatrix::identity(d),
            divisors: vec![BigInt::one(); d],
        }
    }

    /// Column span of `gens`.
    pub fn span(gens: &IntegerMatrix) -> Self {
        let d = gens.rows();
        let s = smith_with(gens, Tracking { u: true, u_inv: true, ..Tracking::NONE });
        let u_inv = s.u_inv.unwrap();
        let cols: Vec<Vec<BigInt>> = (0..s.rank)
            .map(|i| u_inv.column(i).into_iter().map(|x| x * &s.diag[i]).collect())
            .collect();
        Lattice {
            ambient: d,
            basis: IntegerMatrix::from_columns(d, &cols),
            chart: s.u.unwrap(),
            divisors: s.diag[..s.rank].to_vec(),
        }
    }

    /// Integer kernel `{x : m x = 0}`.
    pub fn kernel(m: &IntegerMatrix) -> Self {
        let n = m.cols();
        let s = smith_with(m, Tracking { v: true, v_inv: true, ..Tracking::NONE });
        let v = s.v.unwrap();
        let v_inv = s.v_inv.unwrap();
        let free: Vec<usize> = (s.rank..n).collect();
        // chart rows: free coordinates first, then the ones that must vanish
        let order: Vec<usize> = free.iter().copied().chain(0..s.rank).collect();
        Lattice {
            ambient: n,
            basis: v.select_cols(&free),
            chart: v_inv.select_rows(&order),
            divisors: vec![BigInt::one(); free.len()],
        }
    }

    /// `{x : m x ∈ q Z^rows}` for `q ≥ 1`.
    pub fn preimage_mod(m: &IntegerMatrix, q: &BigInt) -> Self {
        assert!(*q >= BigInt::one(), "modulus must be positive");
        let n = m.cols();
        let s = smith_with(m, Tracking { v: true, v_inv: true, ..Tracking::NONE });
        let v = s.v.unwrap();
        let scales: Vec<BigInt> = (0..n)
            .map(|i| if i < s.rank { q / s.diag[i].gcd(q) } else { BigInt::one() })
            .collect();
        let cols: Vec<Vec<BigInt>> = (0..n)
            .map(|i| v.column(i).into_iter().map(|x| x * &scales[i]).collect())
            .collect();
        Lattice {
            ambient: n,
            basis: IntegerMatrix::from_columns(n, &cols),
            chart: s.v_inv.unwrap(),
            divisors: scales,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    /// Coordinates of `x` in the basis, or `None` when `x ∉ L`.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient, "vector length");
        let y = self.chart.apply(x);
        let dim = self.rank();
        if y[dim..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        y.into_iter()
            .zip(&self.divisors)
            .map(|(v, d)| {
                let (q, r) = v.div_rem(d);
                r.is_zero().then_some(q)
            })
            .collect()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coords(x).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        self.contains_columns(&other.basis)
    }

    /// Coordinate matrix (`dim × cols`) of the columns of `gens`.
    pub fn coordinate_matrix(&self, gens: &IntegerMatrix) -> Result<IntegerMatrix> {
        assert_eq!(gens.rows(), self.ambient, "generator length");
        let y = &self.chart * gens;
        let dim = self.rank();
        let mut out = Vec::with_capacity(dim * gens.cols());
        for i in 0..y.rows() {
            let row = y.row(i);
            if i >= dim {
                if let Some(j) = row.iter().position(|v| !v.is_zero()) {
                    return Err(Error::NotContained(format!("generator {j} is outside the lattice")));
                }
                continue;
            }
            let d = &self.divisors[i];
            for (j, v) in row.into_iter().enumerate() {
                let (q, r) = v.div_rem(d);
                if !r.is_zero() {
                    return Err(Error::NotContained(format!("generator {j} is outside the lattice")));
                }
                out.push(q);
            }
        }
        IntegerMatrix::new(dim, gens.cols(), out)
    }

    /// True when every column of `gens` lies in the lattice.
    pub fn contains_columns(&self, gens: &IntegerMatrix) -> bool {
        self.coordinate_matrix(gens).is_ok()
    }
}

/// Solves `m x = y` over the integers, reusing one Smith decomposition.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    u: IntegerMatrix,
    v: IntegerMatrix,
    diag: Vec<BigInt>,
    rank: usize,
    rows: usize,
}

impl LinearSolver {
    pub fn new(m: &IntegerMatrix) -> Self {
        let s = smith_with(m, Tracking { u: true, v: true, ..Tracking::NONE });
        LinearSolver { u: s.u.unwrap(), v: s.v.unwrap(), diag: s.diag, rank: s.rank, rows: m.rows() }
    }

    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(y.len(), self.rows, "right-hand side length");
        let z = self.u.apply(y);
        if z[self.rank..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut w = vec![BigInt::zero(); self.v.rows()];
        for i in 0..self.rank {
            let (q, r) = z[i].div_rem(&self.diag[i]);
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        }
        Some(self.v.apply(&w))
    }
}

/// The group `L / M` for lattices `M ⊆ L ⊆ Z^d`, with representatives and a
/// map sending elements of `L` to normalized class coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    outer: Lattice,
    /// Order of each generator; zero for a free generator.
    orders: Vec<BigInt>,
    reps: Vec<Vec<BigInt>>,
    /// `generators × dim(L)`: lattice coordinates → class coordinates.
    reducer: IntegerMatrix,
}

impl Subquotient {
    pub fn new(outer: Lattice, inner_gens: &IntegerMatrix) -> Result<Self> {
        let rel = outer.coordinate_matrix(inner_gens)?;
        let dim = outer.rank();
        let s = smith_with(&rel, Tracking { u: true, u_inv: true, ..Tracking::NONE });
        let u = s.u.unwrap();
        let u_inv = s.u_inv.unwrap();
        let full_diag = |i: usize| if i < s.rank { s.diag[i].clone() } else { BigInt::zero() };
        let kept: Vec<usize> = (0..dim).filter(|&i| !full_diag(i).is_one()).collect();
        let orders = kept.iter().map(|&i| full_diag(i)).collect();
        let reps = kept.iter().map(|&i| outer.basis.apply(&u_inv.column(i))).collect();
        let reducer = u.select_rows(&kept);
        Ok(Subquotient { outer, orders, reps, reducer })
    }

    pub fn group(&self) -> FinAbGroup {
        let rank = self.orders.iter().filter(|d| d.is_zero()).count();
        let torsion = self.orders.iter().filter(|d| !d.is_zero()).cloned().collect();
        FinAbGroup::from_invariant_factors(rank, torsion)
    }

    /// Generators `g` with relation matrix `diag(orders)`.
    pub fn presentation(&self) -> PresentedGroup {
        PresentedGroup::diagonal(&self.orders)
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn representatives(&self) -> &[Vec<BigInt>] {
        &self.reps
    }

    pub fn outer(&self) -> &Lattice {
        &self.outer
    }

    /// Class coordinates of `x`, reduced into `[0, order)` for torsion
    /// generators. `None` when `x ∉ L`.
    pub fn class_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.outer.coords(x)?;
        let raw = self.reducer.apply(&c);
        Some(
            raw.into_iter()
                .zip(&self.orders)
                .map(|(v, d)| if d.is_zero() { v } else { v.mod_floor(d) })
                .collect(),
        )
    }

    pub fn is_zero_class(&self, x: &[BigInt]) -> Option<bool> {
        self.class_of(x).map(|c| c.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn span_membership() {
        let g = IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]);
        let l = Lattice::span(&g);
        assert!(l.contains(&v(&[4, 9])));
        assert!(!l.contains(&v(&[1, 3])));
        assert_eq!(l.rank(), 2);
        let c = l.coords(&v(&[4, 9])).unwrap();
        assert_eq!(l.basis().apply(&c), v(&[4, 9]));
    }

    #[test]
    fn kernel_basis_is_annihilated() {
        let m = IntegerMatrix::from_rows(&[vec![1i64, 2, 3], vec![2, 4, 6]]);
        let k = Lattice::kernel(&m);
        assert_eq!(k.rank(), 2);
        assert!((&m * k.basis()).is_zero());
        assert!(k.contains(&v(&[-2, 1, 0])));
        assert!(!k.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn preimage_mod_lattice() {
        let m = IntegerMatrix::from_rows(&[vec![2i64]]);
        let l = Lattice::preimage_mod(&m, &BigInt::from(6));
        assert!(l.contains(&v(&[3])));
        assert!(!l.contains(&v(&[1])));
    }

    #[test]
    fn solver_finds_integer_solutions_only() {
        let m = IntegerMatrix::from_rows(&[vec![2i64, 4], vec![0, 3]]);
        let s = LinearSolver::new(&m);
        let x = s.solve(&v(&[6, 3])).unwrap();
        assert_eq!(m.apply(&x), v(&[6, 3]));
        assert!(s.solve(&v(&[1, 0])).is_none());
    }

    #[test]
    fn subquotient_z_mod_two() {
        let outer = Lattice::full(1);
        let q = Subquotient::new(outer, &IntegerMatrix::from_rows(&[vec![2i64]])).unwrap();
        assert_eq!(q.group(), FinAbGroup::cyclic(2));
        assert_eq!(q.class_of(&v(&[5])), Some(v(&[1])));
        assert_eq!(q.is_zero_class(&v(&[4])), Some(true));
    }

    #[test]
    fn subquotient_rejects_non_sublattice() {
        let outer = Lattice::span(&IntegerMatrix::from_rows(&[vec![2i64]]));
        assert!(Subquotient::new(outer, &IntegerMatrix::from_rows(&[vec![3i64]])).is_err());
    }
}
