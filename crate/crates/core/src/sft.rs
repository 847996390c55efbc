//! Closed forms for full shifts and the family `H_{n,m} = S_n ⊔ I ⊔ S_m`.
//!
//! `S_n` is the groupoid of the full shift on `n` symbols and `I` the unit
//! groupoid on a point. Homology of a shift of finite type with matrix `A` is
//! `coker(I - A^T)` in degree 0 and `ker(I - A^T)` in degree 1; for the full
//! shift this gives `Z/(n-1)` and `0`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{direct_sum, group_of, FinAbGroup};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::smith::elementary_divisors;

/// An unordered pair `{n, m}` with `n, m ≥ 2`, stored with `n ≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FamilySpec {
    pub n: u64,
    pub m: u64,
}

impl FamilySpec {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if n < 2 || m < 2 {
            return Err(Error::InvalidParameter(format!("family parameters must be at least 2, got ({n}, {m})")));
        }
        Ok(FamilySpec { n: n.min(m), m: n.max(m) })
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.n, self.m)
    }
}

/// `H_k(S_n)` for `0 ≤ k < degrees`.
pub fn full_shift_homology(n: u64, degrees: usize) -> Result<Vec<FinAbGroup>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("full shift needs at least 2 symbols, got {n}")));
    }
    Ok((0..degrees).map(|k| if k == 0 { FinAbGroup::cyclic(n - 1) } else { FinAbGroup::trivial() }).collect())
}

/// `H_k(I)` of the one-point unit groupoid.
pub fn unit_point_homology(degrees: usize) -> Vec<FinAbGroup> {
    (0..degrees).map(|k| if k == 0 { FinAbGroup::integers() } else { FinAbGroup::trivial() }).collect()
}

/// The all-ones matrix `J_n`.
pub fn all_ones(n: usize) -> IntegerMatrix {
    IntegerMatrix::from_i64(n, n, vec![1; n * n]).expect("square shape")
}

/// `(coker(I - A^T), ker(I - A^T))` for a square nonnegative matrix without
/// zero rows or columns.
pub fn sft_matrix_homology(a: &IntegerMatrix) -> Result<(FinAbGroup, FinAbGroup)> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::DegenerateMatrix(format!("{}x{} is not a nonempty square matrix", a.rows(), a.cols())));
    }
    let rows = a.to_rows();
    if rows.iter().flatten().any(|x| x.sign() == num_bigint::Sign::Minus) {
        return Err(Error::DegenerateMatrix("negative entry".into()));
    }
    let zero = BigInt::from(0);
    if let Some(i) = (0..a.rows()).find(|&i| rows[i].iter().all(|x| x == &zero)) {
        return Err(Error::DegenerateMatrix(format!("row {i} is zero")));
    }
    if let Some(j) = (0..a.cols()).find(|&j| rows.iter().all(|r| r[j] == zero)) {
        return Err(Error::DegenerateMatrix(format!("column {j} is zero")));
    }
    let m = &IntegerMatrix::identity(a.rows()) - &a.transpose();
    let rank = elementary_divisors(&m).iter().filter(|d| **d != zero).count();
    Ok((group_of(&m), FinAbGroup::free(m.cols() - rank)))
}

/// `H_k(H_{n,m}; Z)` for `0 ≤ k < degrees`, summed over the three components.
pub fn family_integral(spec: FamilySpec, degrees: usize) -> Vec<FinAbGroup> {
    let a = full_shift_homology(spec.n, degrees).expect("validated spec");
    let b = full_shift_homology(spec.m, degrees).expect("validated spec");
    let i = unit_point_homology(degrees);
    (0..degrees).map(|k| direct_sum([&a[k], &i[k], &b[k]])).collect()
}

/// One row of the finite-coefficient table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdRow {
    pub q: u64,
    pub h0: FinAbGroup,
    pub h1: FinAbGroup,
}

/// `H_0 = Z/q ⊕ Z/gcd(n-1,q) ⊕ Z/gcd(m-1,q)` and
/// `H_1 = Z/gcd(n-1,q) ⊕ Z/gcd(m-1,q)`; higher groups vanish.
pub fn family_mod(spec: FamilySpec, q: u64) -> Result<GcdRow> {
    if q == 0 {
        return Err(Error::InvalidParameter("modulus must be at least 1".into()));
    }
    let a = FinAbGroup::cyclic((spec.n - 1).gcd(&q));
    let b = FinAbGroup::cyclic((spec.m - 1).gcd(&q));
    Ok(GcdRow { q, h0: direct_sum([&FinAbGroup::cyclic(q), &a, &b]), h1: direct_sum([&a, &b]) })
}

pub fn gcd_table(spec: FamilySpec, qs: impl IntoIterator<Item = u64>) -> Result<Vec<GcdRow>> {
    qs.into_iter().map(|q| family_mod(spec, q)).collect()
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// `p`-adic valuations of the cyclic summands of a finite group, largest
/// first. `None` when some summand is not a power of `p`.
fn p_valuations(g: &FinAbGroup, p: u64) -> Option<Vec<u32>> {
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for d in g.primary_decomposition() {
        let mut x = d;
        let mut v = 0;
        while x.is_multiple_of(&pb) {
            x /= &pb;
            v += 1;
        }
        if x != BigInt::from(1) {
            return None;
        }
        out.push(v);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Some(out)
}

/// One prime-power probe and the unordered valuation pair it reveals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub p: u64,
    pub l: u32,
    pub q: u64,
    pub h1: FinAbGroup,
    /// `{min(v_p(n-1), l), min(v_p(m-1), l)}`, larger first.
    pub valuations: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub bound: u64,
    pub probes: Vec<Probe>,
    /// Every `{n, m}` with `n, m ≤ bound` consistent with all probes.
    pub candidates: Vec<FamilySpec>,
}

/// Recovers `{n, m}` from `q ↦ H_1(H_{n,m}; Z/q)` by probing `q = p^l` for
/// primes `p ≤ bound - 1` and `l ≤ log2(bound)`. The answer is a candidate
/// set, since the probes see only unordered valuation pairs per prime.
pub fn classify(oracle: impl Fn(u64) -> FinAbGroup, bound: u64) -> Result<Classification> {
    if bound < 2 {
        return Err(Error::NoCandidate(bound));
    }
    let max_l = 63 - bound.leading_zeros();
    let mut probes = Vec::new();
    for p in primes_up_to(bound - 1) {
        for l in 1..=max_l {
            let q = p.pow(l);
            let h1 = oracle(q);
            let vals = p_valuations(&h1, p).filter(|v| v.len() <= 2).ok_or(Error::NoCandidate(bound))?;
            let valuations = (vals.first().copied().unwrap_or(0), vals.get(1).copied().unwrap_or(0));
            probes.push(Probe { p, l, q, h1, valuations });
        }
    }
    let mut candidates = Vec::new();
    for n in 2..=bound {
        for m in n..=bound {
            let spec = FamilySpec { n, m };
            let fits = probes.iter().all(|pr| family_mod(spec, pr.q).map(|r| r.h1 == pr.h1).unwrap_or(false));
            if fits {
                candidates.push(spec);
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoCandidate(bound));
    }
    Ok(Classification { bound, probes, candidates })
}

/// Two family members whose `H_1(·; Z/q)` agree for every `q ≤ qmax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Collision {
    pub left: FamilySpec,
    pub right: FamilySpec,
}

/// All collisions among `{n, m}` with `2 ≤ n, m ≤ bound`, sorted.
pub fn collision_search(bound: u64, qmax: u64) -> Vec<Collision> {
    let mut classes: HashMap<Vec<FinAbGroup>, Vec<FamilySpec>> = HashMap::new();
    for n in 2..=bound {
        for m in n..=bound {
            let spec = FamilySpec { n, m };
            let table = (1..=qmax).map(|q| family_mod(spec, q).expect("q ≥ 1").h1).collect();
            classes.entry(table).or_default().push(spec);
        }
    }
    let mut out = Vec::new();
    for members in classes.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                out.push(Collision { left: *a.min(b), right: *a.max(b) });
            }
        }
    }
    out.sort();
    out
}
