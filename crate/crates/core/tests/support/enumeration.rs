//! Brute-force homology over `Z/q` that shares no code with the Smith
//! normal form engine.

use groupoid_homology::{FinAbGroup, FreeChainComplex, IntegerMatrix};
use num_bigint::BigInt;

fn to_i64(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Iso type of a finite abelian group from `d ↦ |H[d]|` (the number of
/// elements killed by `d`), for `d` ranging over prime powers dividing `e`.
pub fn group_from_torsion_counts(e: u64, mut killed: impl FnMut(u64) -> u64) -> FinAbGroup {
    let mut orders = Vec::new();
    for p in prime_factors(e) {
        let log = |x: u64| {
            let (mut x, mut k) = (x, 0u32);
            while x > 1 {
                assert_eq!(x % p, 0, "count is not a power of {p}");
                x /= p;
                k += 1;
            }
            k
        };
        let mut pk = 1;
        let mut prev = 0;
        let mut at_least = Vec::new();
        while e.is_multiple_of(pk * p) {
            pk *= p;
            let c = log(killed(pk));
            at_least.push(c - prev);
            prev = c;
        }
        // at_least[k] summands have exponent ≥ k+1
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[k] - next) {
                orders.push(BigInt::from(p.pow(k as u32 + 1)));
            }
        }
    }
    FinAbGroup::from_cyclic_orders(orders)
}

/// `H_n(C ⊗ Z/q)` by listing every vector of `(Z/q)^{dim C_n}`.
pub fn enumerate_mod_homology(c: &FreeChainComplex, q: u64, n: usize) -> FinAbGroup {
    let dim = c.dim(n);
    let qi = q as i64;
    let size = q.pow(dim as u32) as usize;
    let digits = |mut idx: usize, out: &mut [i64]| {
        for x in out.iter_mut() {
            *x = (idx % q as usize) as i64;
            idx /= q as usize;
        }
    };
    let encode = |v: &[i64]| -> usize { v.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x.rem_euclid(qi) as usize) };
    let dn = to_i64(c.boundary(n));
    let up = to_i64(c.boundary(n + 1));
    let mut v = vec![0i64; dim];
    let mut cycles = Vec::new();
    for i in 0..size {
        digits(i, &mut v);
        if dn.iter().all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(qi) == 0) {
            cycles.push(i);
        }
    }
    // boundary subgroup by closure under adding each generator
    let mut boundaries = vec![false; size];
    boundaries[0] = true;
    let mut members = vec![0usize];
    for j in 0..c.dim(n + 1) {
        let g: Vec<i64> = up.iter().map(|row| row[j]).collect();
        let mut fresh = Vec::new();
        for &b in &members {
            digits(b, &mut v);
            for _ in 1..q {
                for (x, y) in v.iter_mut().zip(&g) {
                    *x = (*x + y).rem_euclid(qi);
                }
                let k = encode(&v);
                if !boundaries[k] {
                    boundaries[k] = true;
                    fresh.push(k);
                }
            }
        }
        members.extend(fresh);
    }
    let b_count = members.len() as u64;
    let mut w = vec![0i64; dim];
    group_from_torsion_counts(q, |d| {
        let killed = cycles
            .iter()
            .filter(|&&i| {
                digits(i, &mut w);
                w.iter_mut().for_each(|x| *x *= d as i64);
                boundaries[encode(&w)]
            })
            .count() as u64;
        killed / b_count
    })
}
