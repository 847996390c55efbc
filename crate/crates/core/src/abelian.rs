//! Finitely generated abelian groups: isomorphism types in invariant-factor
//! form, presented groups with explicit generators, homomorphisms between
//! them, and the tensor/Tor functors over the integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Subquotient};
use crate::matrix::IntegerMatrix;
use crate::smith::elementary_divisors;

/// Isomorphism type `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `2 ≤ t_1 | t_2 | … | t_k`.
///
/// The representation is canonical, so `==` is isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { rank, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    /// `Z/d`; `d = 0` gives `Z` and `d = ±1` the trivial group.
    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders([d.into()])
    }

    /// Direct sum of cyclic groups `Z/d` (with `Z/0 = Z`), renormalized.
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = 0;
        let mut torsion = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        FinAbGroup { rank, torsion: normalize_torsion(torsion) }
    }

    pub fn from_invariant_factors(rank: usize, torsion: Vec<BigInt>) -> Self {
        let mut g = Self::from_cyclic_orders(torsion);
        g.rank += rank;
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Exponent of a finite group (`1` for the trivial group).
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// Cyclic orders of the summands: `0` for each `Z`, then the invariant factors.
    pub fn cyclic_summands(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.rank).chain(self.torsion.iter().cloned()).collect()
    }

    /// Prime-power orders of the torsion part, sorted. Factoring uses trial
    /// division, so this is meant for display-sized values.
    pub fn primary_decomposition(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for t in &self.torsion {
            for (p, e) in factor(t) {
                out.push(num_traits::pow(p, e as usize));
            }
        }
        out.sort();
        out
    }

    /// Rendering with the torsion split into prime powers.
    pub fn display_primary(&self) -> String {
        render(self.rank, &self.primary_decomposition())
    }
}

fn normalize_torsion(mut t: Vec<BigInt>) -> Vec<BigInt> {
    // pairwise (gcd, lcm) sweep: afterwards t[i] | t[j] for i < j
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let g = t[i].gcd(&t[j]);
            let l = &t[i] / &g * &t[j];
            t[i] = g;
            t[j] = l;
        }
    }
    t.retain(|d| !d.is_one());
    t
}

fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn render(rank: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.rank, &self.torsion))
    }
}

/// Parses `0`, `Z`, `Z^2 ⊕ Z/6`, and the command-line form `z^2+z/6`.
impl FromStr for FinAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.eq_ignore_ascii_case("trivial") {
            return Ok(FinAbGroup::trivial());
        }
        let bad = || Error::InvalidParameter(format!("cannot parse group {s:?}"));
        let mut orders = Vec::new();
        for term in s.split(['+', '⊕']).map(str::trim) {
            let lower = term.to_ascii_lowercase();
            let rest = lower.strip_prefix('z').ok_or_else(bad)?;
            if rest.is_empty() {
                orders.push(BigInt::zero());
            } else if let Some(r) = rest.strip_prefix('^') {
                let r: usize = r.trim().parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(d) = rest.strip_prefix('/') {
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_negative() {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(FinAbGroup::from_cyclic_orders(orders))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    rank: usize,
    #[serde(with = "crate::bigint_serde::vec")]
    torsion: Vec<BigInt>,
}

impl Serialize for FinAbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupWire { rank: self.rank, torsion: self.torsion.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = GroupWire::deserialize(d)?;
        Ok(FinAbGroup::from_invariant_factors(w.rank, w.torsion))
    }
}

/// Isomorphism type of `Z^rows / colspan(m)`.
pub fn group_of(m: &IntegerMatrix) -> FinAbGroup {
    let diag = elementary_divisors(m);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    FinAbGroup::from_invariant_factors(m.rows() - nonzero, diag.into_iter().filter(|d| !d.is_zero()).collect())
}

pub fn tensor(g: &FinAbGroup, a: &FinAbGroup) -> FinAbGroup {
    let mut orders = Vec::new();
    for x in g.cyclic_summands() {
        for y in a.cyclic_summands() {
            // gcd(0, y) = y covers Z ⊗ Z/y = Z/y and Z ⊗ Z = Z
            orders.push(x.gcd(&y));
        }
    }
    FinAbGroup::from_cyclic_orders(orders)
}

pub fn tor1(g: &FinAbGroup, a: &FinAbGroup) -> FinAbGroup {
    let orders = g
        .torsion
        .iter()
        .flat_map(|x| a.torsion.iter().map(move |y| x.gcd(y)))
        .collect::<Vec<_>>();
    FinAbGroup::from_cyclic_orders(orders)
}

pub fn direct_sum<'a>(groups: impl IntoIterator<Item = &'a FinAbGroup>) -> FinAbGroup {
    FinAbGroup::from_cyclic_orders(groups.into_iter().flat_map(FinAbGroup::cyclic_summands))
}

/// `coker(relations)` on `generators` generators; relations are columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedGroup {
    generators: usize,
    relations: IntegerMatrix,
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: IntegerMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::ShapeMismatch(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(PresentedGroup { generators, relations })
    }

    pub fn trivial() -> Self {
        PresentedGroup { generators: 0, relations: IntegerMatrix::zeros(0, 0) }
    }

    pub fn free(rank: usize) -> Self {
        PresentedGroup { generators: rank, relations: IntegerMatrix::zeros(rank, 0) }
    }

    /// One generator per entry, of the given order (`0` = free).
    pub fn diagonal(orders: &[BigInt]) -> Self {
        let g = orders.len();
        PresentedGroup { generators: g, relations: IntegerMatrix::diagonal(g, g, orders) }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    pub fn group(&self) -> FinAbGroup {
        group_of(&self.relations)
    }

    pub fn direct_sum(&self, other: &PresentedGroup) -> PresentedGroup {
        PresentedGroup {
            generators: self.generators + other.generators,
            relations: IntegerMatrix::block_diagonal(&[&self.relations, &other.relations]),
        }
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::span(&self.relations)
    }

    /// True when the coordinate vector `x` represents the identity.
    pub fn is_identity(&self, x: &[BigInt]) -> bool {
        self.relation_lattice().contains(x)
    }
}

/// A homomorphism of presented groups given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    source: PresentedGroup,
    target: PresentedGroup,
    /// `target.generators × source.generators`
    matrix: IntegerMatrix,
}

impl GroupHom {
    pub fn new(source: PresentedGroup, target: PresentedGroup, matrix: IntegerMatrix) -> Result<Self> {
        if matrix.shape() != (target.generators, source.generators) {
            return Err(Error::ShapeMismatch(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators,
                source.generators
            )));
        }
        let images = &matrix * &source.relations;
        let lattice = target.relation_lattice();
        if let Some(column) = (0..images.cols()).find(|&j| !lattice.contains(&images.column(j))) {
            return Err(Error::IncompatibleHom { column });
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn zero(source: PresentedGroup, target: PresentedGroup) -> Self {
        let matrix = IntegerMatrix::zeros(target.generators, source.generators);
        GroupHom { source, target, matrix }
    }

    pub fn identity(group: PresentedGroup) -> Self {
        let matrix = IntegerMatrix::identity(group.generators);
        GroupHom { source: group.clone(), target: group, matrix }
    }

    pub fn source(&self) -> &PresentedGroup {
        &self.source
    }

    pub fn target(&self) -> &PresentedGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if self.target != next.source {
            return Err(Error::MismatchedNode);
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: &next.matrix * &self.matrix,
        })
    }

    /// True when every generator maps to the identity.
    pub fn is_zero(&self) -> bool {
        self.target.relation_lattice().contains_columns(&self.matrix)
    }

    /// True when `self` and `other` agree as maps of presented groups.
    pub fn agrees_with(&self, other: &GroupHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.target.relation_lattice().contains_columns(&(&self.matrix - &other.matrix))
    }

    pub fn direct_sum(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: IntegerMatrix::block_diagonal(&[&self.matrix, &other.matrix]),
        }
    }
}

/// `ker(g) / im(f)` for `A --f--> B --g--> C`.
///
/// Both maps are lifted to the free modules on the generators: the kernel is
/// `{x ∈ Z^b : g x ∈ rel(C)}` and the image is `f(Z^a) + rel(B)`.
pub fn middle_homology(f: &GroupHom, g: &GroupHom) -> Result<FinAbGroup> {
    Ok(middle_subquotient(f, g)?.group())
}

pub(crate) fn middle_subquotient(f: &GroupHom, g: &GroupHom) -> Result<Subquotient> {
    if f.target != g.source {
        return Err(Error::MismatchedNode);
    }
    let b = g.source.generators;
    let rel_c = g.target.relation_lattice();
    let composite = &g.matrix * &f.matrix;
    if let Some(column) = (0..composite.cols()).find(|&j| !rel_c.contains(&composite.column(j))) {
        return Err(Error::CompositeNonzero { column });
    }
    let stacked = g.matrix.hstack(&g.target.relations);
    let kernel = Lattice::kernel(&stacked);
    let top: Vec<usize> = (0..b).collect();
    let kernel_gens = kernel.basis().select_rows(&top);
    let outer = Lattice::span(&kernel_gens);
    let image = f.matrix.hstack(&f.target.relations);
    Subquotient::new(outer, &image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FinAbGroup {
        FinAbGroup::integers()
    }
    fn c(d: i64) -> FinAbGroup {
        FinAbGroup::cyclic(d)
    }

    #[test]
    fn normalization() {
        assert_eq!(FinAbGroup::cyclic(1), FinAbGroup::trivial());
        assert_eq!(FinAbGroup::cyclic(0), z());
        let g = FinAbGroup::from_cyclic_orders([2, 3].map(BigInt::from));
        assert_eq!(g, c(6));
        let g = FinAbGroup::from_cyclic_orders([4, 6, 10].map(BigInt::from));
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(2), BigInt::from(60)]);
    }

    #[test]
    fn group_of_examples() {
        assert_eq!(group_of(&IntegerMatrix::from_rows(&[vec![3i64]])), c(3));
        assert_eq!(group_of(&IntegerMatrix::zeros(2, 2)), FinAbGroup::free(2));
        for n in 2..8i64 {
            // I - J_n^T
            let rows: Vec<Vec<i64>> =
                (0..n).map(|i| (0..n).map(|j| i64::from(i == j) - 1).collect()).collect();
            assert_eq!(group_of(&IntegerMatrix::from_rows(&rows)), c(n - 1));
        }
    }

    #[test]
    fn tensor_and_tor_examples() {
        assert_eq!(tensor(&z(), &c(6)), c(6));
        assert_eq!(tensor(&c(4), &c(6)), c(2));
        assert_eq!(tensor(&FinAbGroup::trivial(), &c(6)), FinAbGroup::trivial());
        assert_eq!(tor1(&z(), &c(6)), FinAbGroup::trivial());
        assert_eq!(tor1(&c(4), &c(6)), c(2));
        assert_eq!(tor1(&c(3), &c(5)), FinAbGroup::trivial());
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&[c(2), c(3)]), c(6));
        let g = direct_sum(&[c(3), z(), c(5)]);
        assert_eq!((g.rank(), g.torsion()), (1, &[BigInt::from(15)][..]));
        assert_eq!(direct_sum(&[]), FinAbGroup::trivial());
    }

    #[test]
    fn display_and_parse() {
        let g = direct_sum(&[z(), z(), c(2), c(6)]);
        assert_eq!(g.to_string(), "Z^2 ⊕ Z/2 ⊕ Z/6");
        assert_eq!(g.to_string().parse::<FinAbGroup>().unwrap(), g);
        assert_eq!("z^2+z/2+z/6".parse::<FinAbGroup>().unwrap(), g);
        assert_eq!("0".parse::<FinAbGroup>().unwrap(), FinAbGroup::trivial());
        assert_eq!(c(12).display_primary(), "Z/3 ⊕ Z/4");
        assert!("q/2".parse::<FinAbGroup>().is_err());
    }

    #[test]
    fn serde_shape() {
        let g = direct_sum(&[z(), c(3), c(5)]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"rank":1,"torsion":[15]}"#);
        let back: FinAbGroup = serde_json::from_str(r#"{"rank":0,"torsion":[2,3]}"#).unwrap();
        assert_eq!(back, c(6));
    }

    #[test]
    fn middle_homology_examples() {
        let zp = PresentedGroup::free(1);
        let f = GroupHom::zero(PresentedGroup::trivial(), zp.clone());
        let g = GroupHom::zero(zp.clone(), PresentedGroup::trivial());
        assert_eq!(middle_homology(&f, &g).unwrap(), z());

        let z2 = PresentedGroup::diagonal(&[BigInt::from(2)]);
        let times2 = GroupHom::new(zp.clone(), zp.clone(), IntegerMatrix::from_rows(&[vec![2i64]])).unwrap();
        let quot = GroupHom::new(zp.clone(), z2.clone(), IntegerMatrix::identity(1)).unwrap();
        assert!(middle_homology(&times2, &quot).unwrap().is_trivial());
    }

    #[test]
    fn middle_homology_errors() {
        let zp = PresentedGroup::free(1);
        let z2 = PresentedGroup::diagonal(&[BigInt::from(2)]);
        let id = GroupHom::identity(zp.clone());
        assert_eq!(middle_homology(&id, &id), Err(Error::CompositeNonzero { column: 0 }));
        let q = GroupHom::new(zp.clone(), z2.clone(), IntegerMatrix::identity(1)).unwrap();
        assert_eq!(middle_homology(&q, &q), Err(Error::MismatchedNode));
    }

    #[test]
    fn hom_compatibility_is_checked() {
        let z2 = PresentedGroup::diagonal(&[BigInt::from(2)]);
        let z3 = PresentedGroup::diagonal(&[BigInt::from(3)]);
        assert!(matches!(
            GroupHom::new(z2.clone(), z3.clone(), IntegerMatrix::identity(1)),
            Err(Error::IncompatibleHom { .. })
        ));
        let z4 = PresentedGroup::diagonal(&[BigInt::from(4)]);
        assert!(GroupHom::new(z2, z4, IntegerMatrix::from_rows(&[vec![2i64]])).is_ok());
    }
}
