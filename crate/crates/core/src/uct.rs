//! Universal coefficients for Moore homology.
//!
//! `H_n(G; A)` is assembled from integral homology as
//! `H_n(G; Z) ⊗ A ⊕ Tor(H_{n-1}(G; Z), A)` and compared with a direct
//! computation on the complex with coefficients in `A`. The map `κ` is
//! realized on cycle representatives by reducing them modulo `q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{direct_sum, tensor, tor1, FinAbGroup};
use crate::complex::{Coefficients, FreeChainComplex};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::lattice::{Lattice, Subquotient};
use crate::matrix::IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UctReport {
    pub degree: usize,
    pub integral_n: FinAbGroup,
    pub integral_nminus1: FinAbGroup,
    pub coefficient: FinAbGroup,
    pub tensor_part: FinAbGroup,
    pub tor_part: FinAbGroup,
    pub assembled: FinAbGroup,
    pub direct: FinAbGroup,
    #[serde(rename = "match")]
    pub matches: bool,
    /// `|direct| = |tensor_part| · |tor_part|`; `None` when a group is infinite.
    pub order_equation: Option<bool>,
}

/// `(H_n ⊗ A, Tor(H_{n-1}, A), their sum)`.
pub fn uct_assemble(hn: &FinAbGroup, hn_1: &FinAbGroup, a: &FinAbGroup) -> (FinAbGroup, FinAbGroup, FinAbGroup) {
    let t = tensor(hn, a);
    let r = tor1(hn_1, a);
    let sum = direct_sum([&t, &r]);
    (t, r, sum)
}

fn modulus(d: &BigInt) -> Result<u64> {
    u64::try_from(d).map_err(|_| Error::InvalidParameter(format!("modulus {d} too large")))
}

/// `H_n(C; A)` computed on the complexes `C ⊗ Z/d` for the torsion summands
/// of `A` and on `C` itself for the free part.
pub fn direct_homology(c: &FreeChainComplex, a: &FinAbGroup, n: usize) -> Result<FinAbGroup> {
    let mut parts = Vec::new();
    if a.rank() > 0 {
        let h = c.homology_int(n)?.group;
        parts.extend(std::iter::repeat_n(h, a.rank()));
    }
    for d in a.torsion() {
        let q = modulus(d)?;
        parts.push(c.reduce_mod(q)?.homology_mod(q, n)?.group);
    }
    Ok(direct_sum(&parts))
}

fn report(degree: usize, hn: FinAbGroup, hn_1: FinAbGroup, a: &FinAbGroup, direct: FinAbGroup) -> UctReport {
    let (tensor_part, tor_part, assembled) = uct_assemble(&hn, &hn_1, a);
    let order_equation = match (direct.order(), tensor_part.order(), tor_part.order()) {
        (Some(d), Some(t), Some(r)) => Some(d == t * r),
        _ => None,
    };
    UctReport {
        degree,
        integral_n: hn,
        integral_nminus1: hn_1,
        coefficient: a.clone(),
        tensor_part,
        tor_part,
        matches: assembled == direct,
        assembled,
        direct,
        order_equation,
    }
}

/// Reports for degrees `0..c.max_degree()` of an integral complex.
pub fn uct_verify_complex(c: &FreeChainComplex, a: &FinAbGroup) -> Result<Vec<UctReport>> {
    if c.coefficients() != Coefficients::Integers {
        return Err(Error::Coefficients("universal coefficients need an integral complex".into()));
    }
    let top = c.max_degree();
    let integral = (0..top).map(|n| Ok(c.homology_int(n)?.group)).collect::<Result<Vec<_>>>()?;
    (0..top)
        .map(|n| {
            let below = if n == 0 { FinAbGroup::trivial() } else { integral[n - 1].clone() };
            Ok(report(n, integral[n].clone(), below, a, direct_homology(c, a, n)?))
        })
        .collect()
}

/// Reports for degrees `0..top` of the Moore complex of `g`. The direct side
/// builds the Moore complex over `Z/d` from the nerve for each torsion
/// summand of `a`.
pub fn uct_verify(g: &FiniteGroupoid, a: &FinAbGroup, top: usize, budget: u64) -> Result<Vec<UctReport>> {
    let c = g.moore_complex(top, Coefficients::Integers, budget)?;
    let mod_complexes = a
        .torsion()
        .iter()
        .map(|d| {
            let q = modulus(d)?;
            Ok((q, g.moore_complex(top, Coefficients::Mod(q), budget)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(top);
    for n in 0..top {
        let hn = c.homology_int(n)?.group;
        let hn_1 = if n == 0 { FinAbGroup::trivial() } else { c.homology_int(n - 1)?.group };
        let mut parts: Vec<FinAbGroup> = std::iter::repeat_n(hn.clone(), a.rank()).collect();
        for (q, mc) in &mod_complexes {
            parts.push(mc.homology_mod(*q, n)?.group);
        }
        out.push(report(n, hn, hn_1, a, direct_sum(&parts)));
    }
    Ok(out)
}

/// True when the Moore complex over `Z/q` is the integral one with entries
/// reduced modulo `q`, matrix for matrix.
pub fn chain_level_phi(g: &FiniteGroupoid, q: u64, top: usize, budget: u64) -> Result<bool> {
    let integral = g.moore_complex(top, Coefficients::Integers, budget)?;
    let direct = g.moore_complex(top, Coefficients::Mod(q), budget)?;
    Ok(integral.reduce_mod(q)? == direct)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaReport {
    pub degree: usize,
    pub q: u64,
    pub integral_n: FinAbGroup,
    pub direct: FinAbGroup,
    pub tensor_part: FinAbGroup,
    pub tor_part: FinAbGroup,
    pub image: FinAbGroup,
    /// `κ` of each integral cycle representative, in the coordinates of the
    /// mod-`q` homology presentation.
    #[serde(with = "crate::bigint_serde::nested")]
    pub images: Vec<Vec<BigInt>>,
}

/// Builds `κ_n: H_n(G; Z) ⊗ Z/q → H_n(G; Z/q)` on representatives and checks
/// it: boundaries go to zero, the image has the type of `H_n ⊗ Z/q`, and
/// `|H_n(G; Z/q)| / |im κ| = |Tor(H_{n-1}, Z/q)|`.
pub fn kappa_check(g: &FiniteGroupoid, q: u64, n: usize, budget: u64) -> Result<KappaReport> {
    if q == 0 {
        return Err(Error::InvalidParameter("kappa needs a modulus q ≥ 1".into()));
    }
    let c = g.moore_complex(n + 1, Coefficients::Integers, budget)?;
    let mod_complex = if q >= 2 { g.moore_complex(n + 1, Coefficients::Mod(q), budget)? } else { c.clone() };
    kappa_on_complexes(&c, &mod_complex, q, n)
}

/// [`kappa_check`] for an integral complex and its reduction modulo `q`.
pub fn kappa_on_complexes(c: &FreeChainComplex, mod_complex: &FreeChainComplex, q: u64, n: usize) -> Result<KappaReport> {
    let qb = BigInt::from(q);
    let reduce = |v: &[BigInt]| -> Vec<BigInt> { v.iter().map(|x| x.mod_floor(&qb)).collect() };
    let integral = c.homology_int(n)?;
    let below = if n == 0 { FinAbGroup::trivial() } else { c.homology_int(n - 1)?.group };
    let direct = mod_complex.homology_mod(q, n)?;

    for j in 0..c.dim(n + 1) {
        let col = reduce(&c.boundary(n + 1).column(j));
        if direct.is_boundary(&col) != Some(true) {
            return Err(Error::KappaMismatch { reason: "boundary not sent to zero".into(), witness: col });
        }
    }
    let mut images = Vec::with_capacity(integral.cycle_reps.len());
    for z in &integral.cycle_reps {
        let class = direct
            .class_of(&reduce(z))
            .ok_or_else(|| Error::KappaMismatch { reason: "reduction is not a cycle".into(), witness: z.clone() })?;
        images.push(class);
    }

    let rel = direct.presentation.relations().clone();
    let gens = direct.presentation.generators();
    let image_gens = IntegerMatrix::from_columns(gens, &images).hstack(&rel);
    let image = Subquotient::new(Lattice::span(&image_gens), &rel)?.group();

    let (tensor_part, tor_part, _) = uct_assemble(&integral.group, &below, &FinAbGroup::cyclic(q));
    if image != tensor_part {
        let witness = integral.cycle_reps.first().cloned().unwrap_or_default();
        return Err(Error::KappaMismatch { reason: format!("image {image} differs from {tensor_part}"), witness });
    }
    let (d, i, t) = (direct.group.order(), image.order(), tor_part.order());
    if let (Some(d), Some(i), Some(t)) = (d, i, t) {
        if d != i * t {
            return Err(Error::KappaMismatch { reason: "order equation fails".into(), witness: Vec::new() });
        }
    }
    Ok(KappaReport {
        degree: n,
        q,
        integral_n: integral.group,
        direct: direct.group,
        tensor_part,
        tor_part,
        image,
        images,
    })
}

/// Value range of `ξ(x) = Σ 2^{-n} x_n` over one level-`k` cylinder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderRange {
    pub prefix: String,
    pub min: String,
    pub max: String,
    pub width: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CantorReport {
    pub level: u32,
    pub cylinders: Vec<CylinderRange>,
    /// Every cylinder has width exactly `2^{-level}`.
    pub widths_exact: bool,
    /// `ξ` is constant on no level-`k` cylinder.
    pub nowhere_constant: bool,
}

/// Exact cylinder ranges of the Cantor function at level `k`.
pub fn cantor_obstruction(k: u32) -> Result<CantorReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("cylinder level must be at least 1".into()));
    }
    if k > 20 {
        return Err(Error::InvalidParameter(format!("level {k} lists too many cylinders")));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let weights: Vec<BigRational> = (1..=k).map(|n| pow(&half, n)).collect();
    // sup of Σ_{n>k} 2^{-n} x_n, attained at the all-ones tail: the geometric
    // series 2^{-(k+1)} / (1 - 1/2)
    let tail = pow(&half, k + 1) / (BigRational::one() - &half);
    let expected = pow(&half, k);
    let mut cylinders = Vec::with_capacity(1 << k);
    let (mut exact, mut nowhere_constant) = (true, true);
    for word in 0u64..(1 << k) {
        let bits: Vec<bool> = (0..k).map(|i| word >> (k - 1 - i) & 1 == 1).collect();
        let min: BigRational = bits.iter().zip(&weights).filter(|(b, _)| **b).map(|(_, w)| w.clone()).sum();
        let max = &min + &tail;
        let width = &max - &min;
        exact &= width == expected;
        nowhere_constant &= !width.is_zero();
        cylinders.push(CylinderRange {
            prefix: bits.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            min: min.to_string(),
            max: max.to_string(),
            width: width.to_string(),
        });
    }
    Ok(CantorReport { level: k, cylinders, widths_exact: exact, nowhere_constant })
}

fn pow(x: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x)
}

/// A locally constant function on `{0,1}^ℕ` that factors through level-`k`
/// cylinders, with values in `Z` (`modulus = 0`) or `Z/modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepFunction {
    pub level: u32,
    pub modulus: u64,
    /// Value on each cylinder, indexed by the binary prefix.
    pub values: Vec<i64>,
}

impl StepFunction {
    pub fn random(level: u32, modulus: u64, rng: &mut impl Rng) -> Self {
        let values = (0..1usize << level)
            .map(|_| if modulus == 0 { rng.gen_range(-4..=4) } else { rng.gen_range(0..modulus as i64) })
            .collect();
        StepFunction { level, modulus, values }
    }

    /// `Σ_a χ_{U_a} ⊗ a` with `U_a` the preimage of each nonzero value `a`,
    /// as `(a, cylinders of U_a)` in increasing order of `a`.
    pub fn decompose(&self) -> Vec<(i64, Vec<usize>)> {
        let mut parts: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
        for (cyl, &v) in self.values.iter().enumerate() {
            let v = self.normalize(v);
            if v != 0 {
                parts.entry(v).or_default().push(cyl);
            }
        }
        parts.into_iter().collect()
    }

    /// Pointwise value of a finite sum `Σ χ_U ⊗ a` on the level-`k` cylinders.
    pub fn evaluate(&self, terms: &[(i64, Vec<usize>)]) -> Vec<i64> {
        let mut out = vec![0i64; self.values.len()];
        for (a, support) in terms {
            for &cyl in support {
                out[cyl] = self.normalize(out[cyl] + a);
            }
        }
        out
    }

    fn normalize(&self, v: i64) -> i64 {
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i64)
        }
    }

    /// Whether the decomposition reproduces the function.
    pub fn inverse_holds(&self) -> bool {
        let normalized: Vec<i64> = self.values.iter().map(|&v| self.normalize(v)).collect();
        self.evaluate(&self.decompose()) == normalized
    }
}

/// Runs the constructive inverse of `Φ` on `trials` random step functions of
/// level `k`, alternating between `Z` and `Z/q` values. Returns the number
/// of successes.
pub fn discrete_inverse_trials(k: u32, q: u64, trials: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .filter(|&t| {
            let modulus = if t % 2 == 0 { 0 } else { q };
            StepFunction::random(k, modulus, &mut rng).inverse_holds()
        })
        .count()
}
