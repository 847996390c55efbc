//! Mayer–Vietoris for clopen saturated covers of the unit space.
//!
//! For `U_1 ∪ U_2 = G^{(0)}` with both sets saturated, extension by zero gives
//! a short exact sequence of Moore complexes
//! `0 → C(G|U12) --α--> C(G|U1) ⊕ C(G|U2) --β--> C(G) → 0` with
//! `α(ξ) = (ξ, -ξ)` and `β(ξ_1, ξ_2) = ξ_1 + ξ_2`. Its long exact sequence is
//! assembled from presented homology groups and checked node by node.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{direct_sum, middle_homology, FinAbGroup, GroupHom, PresentedGroup};
use crate::complex::{shift_sum, Coefficients, FreeChainComplex, HomologyResult};
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, UnitSubset};
use crate::lattice::{Lattice, LinearSolver};
use crate::matrix::IntegerMatrix;
use crate::smith::{elementary_divisors, hermite_normal_form};

/// A validated cover `U_1 ∪ U_2` of the units by saturated subsets.
#[derive(Clone, Debug)]
pub struct MvDecomposition {
    pub ambient: FiniteGroupoid,
    pub u1: UnitSubset,
    pub u2: UnitSubset,
    pub u12: UnitSubset,
}

impl MvDecomposition {
    pub fn new(g: &FiniteGroupoid, u1: UnitSubset, u2: UnitSubset) -> Result<Self> {
        if let Some(&unit) = g.unit_arrows().iter().find(|&&u| !u1.contains(u) && !u2.contains(u)) {
            return Err(Error::CoverFails { unit });
        }
        for (which, u) in [("U1", &u1), ("U2", &u2)] {
            if let Some(arrow) = g.saturation_witness(u) {
                return Err(Error::NotSaturated { which: which.into(), arrow });
            }
        }
        let u12 = u1.intersection(&u2);
        Ok(MvDecomposition { ambient: g.clone(), u1, u2, u12 })
    }

    /// Unit sets are given by position in the ascending unit list.
    pub fn from_positions(g: &FiniteGroupoid, u1: &[usize], u2: &[usize]) -> Result<Self> {
        Self::new(g, UnitSubset::from_positions(g, u1)?, UnitSubset::from_positions(g, u2)?)
    }
}

/// A reduction with its Moore complex and its nerve written in ambient arrows.
#[derive(Clone, Debug)]
struct Piece {
    complex: FreeChainComplex,
    /// `tuples[n][i]`: ambient form of the `i`-th nerve tuple in degree `n`.
    tuples: Vec<Vec<Vec<usize>>>,
}

impl Piece {
    fn new(g: &FiniteGroupoid, u: &UnitSubset, top: usize, budget: u64) -> Result<Self> {
        let reduction = g.reduction(u);
        let complex = reduction.groupoid.moore_complex(top, Coefficients::Integers, budget)?;
        let tuples = (0..=top)
            .map(|n| reduction.groupoid.nerve(n).iter().map(|t| reduction.embed_tuple(t)).collect())
            .collect();
        Ok(Piece { complex, tuples })
    }

    /// Position of an ambient tuple; the embedding preserves order, so the
    /// list is sorted.
    fn index_of(&self, n: usize, t: &[usize]) -> Option<usize> {
        self.tuples[n].binary_search_by(|x| x.as_slice().cmp(t)).ok()
    }

    fn dim(&self, n: usize) -> usize {
        self.tuples[n].len()
    }
}

/// Chain-level matrix of the inclusion `C(small) → C(big)`.
fn inclusion(small: &Piece, big: &Piece, n: usize) -> Result<IntegerMatrix> {
    let mut data = vec![0i64; big.dim(n) * small.dim(n)];
    for (j, t) in small.tuples[n].iter().enumerate() {
        let i = big.index_of(n, t).ok_or_else(|| Error::NotContained(format!("tuple {t:?}")))?;
        data[i * small.dim(n) + j] = 1;
    }
    IntegerMatrix::from_i64(big.dim(n), small.dim(n), data)
}

/// Degreewise verdicts for the short exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesDegreeReport {
    pub degree: usize,
    pub alpha_injective: bool,
    pub beta_surjective: bool,
    /// `rank α + rank β` equals the middle dimension.
    pub rank_sum: bool,
    /// `ker β = im α`, compared in Hermite normal form.
    pub kernel_is_image: bool,
    /// `α ∂ = ∂ α` and `β ∂ = ∂ β` into this degree; vacuous in degree 0.
    pub chain_maps: bool,
}

impl SesDegreeReport {
    pub fn passed(&self) -> bool {
        self.alpha_injective && self.beta_surjective && self.rank_sum && self.kernel_is_image && self.chain_maps
    }
}

/// The short exact sequence of Moore complexes of a decomposition, truncated
/// at degree `top`, with the homology needed for the long exact sequence.
#[derive(Clone, Debug)]
pub struct MvChainSes {
    pub decomposition: MvDecomposition,
    top: usize,
    p12: Piece,
    p1: Piece,
    p2: Piece,
    whole: Piece,
    middle: FreeChainComplex,
    alpha: Vec<IntegerMatrix>,
    beta: Vec<IntegerMatrix>,
    reports: Vec<SesDegreeReport>,
}

/// Builds `α_n`, `β_n` for `0 ≤ n ≤ top` and checks exactness and the chain
/// map identities in every degree. A failure is reported as an error.
pub fn chain_ses(d: &MvDecomposition, top: usize, budget: u64) -> Result<MvChainSes> {
    let g = &d.ambient;
    let p12 = Piece::new(g, &d.u12, top, budget)?;
    let p1 = Piece::new(g, &d.u1, top, budget)?;
    let p2 = Piece::new(g, &d.u2, top, budget)?;
    let whole = Piece::new(g, &UnitSubset::all(g), top, budget)?;
    let middle = shift_sum(&[p1.complex.clone(), p2.complex.clone()])?;
    let mut alpha = Vec::with_capacity(top + 1);
    let mut beta = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let i1 = inclusion(&p12, &p1, n)?;
        let i2 = inclusion(&p12, &p2, n)?;
        alpha.push(i1.vstack(&-&i2));
        beta.push(inclusion(&p1, &whole, n)?.hstack(&inclusion(&p2, &whole, n)?));
    }
    let mut ses = MvChainSes { decomposition: d.clone(), top, p12, p1, p2, whole, middle, alpha, beta, reports: Vec::new() };
    ses.reports = (0..=top).map(|n| ses.check_degree(n)).collect();
    if let Some(bad) = ses.reports.iter().find(|r| !r.passed()) {
        return Err(Error::Exactness(format!("short exact sequence fails in degree {}: {bad:?}", bad.degree)));
    }
    Ok(ses)
}

impl MvChainSes {
    pub fn max_degree(&self) -> usize {
        self.top
    }

    pub fn alpha(&self, n: usize) -> &IntegerMatrix {
        &self.alpha[n]
    }

    pub fn beta(&self, n: usize) -> &IntegerMatrix {
        &self.beta[n]
    }

    pub fn reports(&self) -> &[SesDegreeReport] {
        &self.reports
    }

    pub fn intersection_complex(&self) -> &FreeChainComplex {
        &self.p12.complex
    }

    pub fn middle_complex(&self) -> &FreeChainComplex {
        &self.middle
    }

    pub fn ambient_complex(&self) -> &FreeChainComplex {
        &self.whole.complex
    }

    fn check_degree(&self, n: usize) -> SesDegreeReport {
        let (a, b) = (&self.alpha[n], &self.beta[n]);
        let rank = |m: &IntegerMatrix| elementary_divisors(m).iter().filter(|x| !x.is_zero()).count();
        let alpha_injective = rank(a) == a.cols();
        // surjective onto Z^rows iff every elementary divisor is a unit and there are `rows` of them
        let bd = elementary_divisors(b);
        let beta_surjective = bd.len() == b.rows() && bd.iter().all(|x| x == &BigInt::from(1));
        let rank_sum = rank(a) + rank(b) == self.middle.dim(n);
        let kernel = Lattice::kernel(b);
        let kernel_is_image = hermite_normal_form(kernel.basis()) == hermite_normal_form(a);
        let chain_maps = n == 0 || {
            let c12 = self.p12.complex.boundary(n);
            let cm = self.middle.boundary(n);
            let c = self.whole.complex.boundary(n);
            &self.alpha[n - 1] * c12 == cm * &self.alpha[n] && &self.beta[n - 1] * cm == c * &self.beta[n]
        };
        SesDegreeReport { degree: n, alpha_injective, beta_surjective, rank_sum, kernel_is_image, chain_maps }
    }

    /// The lift `(η_1, η_2)` of an ambient chain: `η_1` is its restriction to
    /// `G|U1`, `η_2` its part on `G|U2` away from the intersection.
    pub fn canonical_lift(&self, n: usize, c: &[BigInt]) -> Vec<BigInt> {
        let mut b = vec![BigInt::zero(); self.middle.dim(n)];
        let off = self.p1.dim(n);
        for (i, t) in self.whole.tuples[n].iter().enumerate() {
            if c[i].is_zero() {
                continue;
            }
            if let Some(j) = self.p1.index_of(n, t) {
                b[j] = c[i].clone();
            } else if let Some(j) = self.p2.index_of(n, t) {
                b[off + j] = c[i].clone();
            }
        }
        b
    }

    /// Zig-zag for the degree-`n` cycle `c`, lifting with `lift`.
    fn zigzag(&self, n: usize, b: &[BigInt]) -> Result<Vec<BigInt>> {
        let db = self.middle.boundary(n).apply(b);
        if self.beta[n - 1].apply(&db).iter().any(|x| !x.is_zero()) {
            return Err(Error::Exactness("boundary of the lift does not die under β".into()));
        }
        LinearSolver::new(&self.alpha[n - 1])
            .solve(&db)
            .ok_or_else(|| Error::Exactness("boundary of the lift is not in the image of α".into()))
    }

    /// The connecting homomorphism on one cycle, with the witnesses used to
    /// check it.
    pub fn connecting(&self, n: usize, c: &[BigInt], seed: u64) -> Result<ConnectingReport> {
        if n > self.top || c.len() != self.whole.complex.dim(n) {
            return Err(Error::InvalidParameter(format!("chain of length {} in degree {n}", c.len())));
        }
        if self.whole.complex.boundary(n).apply(c).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle);
        }
        let lift = self.canonical_lift(n, c);
        if self.beta[n].apply(&lift) != c {
            return Err(Error::Exactness("canonical lift does not map back under β".into()));
        }
        if n == 0 {
            return Ok(ConnectingReport {
                degree: 0,
                lift,
                a: Vec::new(),
                class: Vec::new(),
                is_boundary: true,
                cycle_lift: Some(self.canonical_lift(0, c)),
                alternative_agrees: true,
            });
        }
        let h12 = self.p12.complex.homology_int(n - 1)?;
        let a = self.zigzag(n, &lift)?;
        let class = h12.class_of(&a).ok_or(Error::NotACycle)?;
        let is_boundary = class.iter().all(Zero::is_zero);

        // a = ∂x gives the cycle lift b - α(x)
        let cycle_lift = if is_boundary {
            LinearSolver::new(self.p12.complex.boundary(n)).solve(&a).map(|x| {
                let ax = self.alpha[n].apply(&x);
                lift.iter().zip(ax).map(|(p, q)| p - q).collect::<Vec<_>>()
            })
        } else {
            None
        };
        if let Some(w) = &cycle_lift {
            if self.middle.boundary(n).apply(w).iter().any(|x| !x.is_zero()) || self.beta[n].apply(w) != c {
                return Err(Error::Exactness("cycle lift witness fails".into()));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t: Vec<BigInt> = (0..self.p12.dim(n)).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
        let shifted: Vec<BigInt> = lift.iter().zip(self.alpha[n].apply(&t)).map(|(p, q)| p + q).collect();
        let alt_class = h12.class_of(&self.zigzag(n, &shifted)?).ok_or(Error::NotACycle)?;

        Ok(ConnectingReport {
            degree: n,
            alternative_agrees: alt_class == class,
            lift,
            a,
            class,
            is_boundary,
            cycle_lift,
        })
    }

    /// The long exact sequence in degrees `top - 1` down to `0`.
    pub fn long_exact_sequence(&self, seed: u64) -> Result<LongExactSequence> {
        let mut nodes: Vec<LesNode> = Vec::new();
        let mut arrows: Vec<GroupHom> = Vec::new();
        let mut connecting = Vec::new();
        let mut prev_connecting: Option<(Vec<Vec<BigInt>>, PresentedGroup)> = None;
        for n in (0..self.top).rev() {
            let h12 = self.p12.complex.homology_int(n)?;
            let h1 = self.p1.complex.homology_int(n)?;
            let h2 = self.p2.complex.homology_int(n)?;
            let h = self.whole.complex.homology_int(n)?;
            let mid_pres = h1.presentation.direct_sum(&h2.presentation);
            let mid_class = |v: &[BigInt]| -> Result<Vec<BigInt>> {
                let (x1, x2) = v.split_at(self.p1.dim(n));
                let mut out = h1.class_of(x1).ok_or(Error::NotACycle)?;
                out.extend(h2.class_of(x2).ok_or(Error::NotACycle)?);
                Ok(out)
            };

            // ∂_{n+1}: H_{n+1}(G) → H_n(G|U12), from the previous round
            if let Some((images, source)) = prev_connecting.take() {
                let cols = images
                    .iter()
                    .map(|a| h12.class_of(a).ok_or(Error::NotACycle))
                    .collect::<Result<Vec<_>>>()?;
                arrows.push(GroupHom::new(source, h12.presentation.clone(), IntegerMatrix::from_columns(h12.presentation.generators(), &cols))?);
            }
            nodes.push(LesNode::new(format!("H_{n}(G|U12)"), &h12));
            let alpha_cols = h12
                .cycle_reps
                .iter()
                .map(|z| mid_class(&self.alpha[n].apply(z)))
                .collect::<Result<Vec<_>>>()?;
            arrows.push(GroupHom::new(
                h12.presentation.clone(),
                mid_pres.clone(),
                IntegerMatrix::from_columns(mid_pres.generators(), &alpha_cols),
            )?);

            nodes.push(LesNode {
                label: format!("H_{n}(G|U1) ⊕ H_{n}(G|U2)"),
                group: direct_sum([&h1.group, &h2.group]),
                presentation: mid_pres.clone(),
            });
            let mut mid_reps = Vec::new();
            for z in &h1.cycle_reps {
                let mut v = z.clone();
                v.resize(self.middle.dim(n), BigInt::zero());
                mid_reps.push(v);
            }
            for z in &h2.cycle_reps {
                let mut v = vec![BigInt::zero(); self.p1.dim(n)];
                v.extend(z.iter().cloned());
                mid_reps.push(v);
            }
            let beta_cols = mid_reps
                .iter()
                .map(|v| h.class_of(&self.beta[n].apply(v)).ok_or(Error::NotACycle))
                .collect::<Result<Vec<_>>>()?;
            arrows.push(GroupHom::new(
                mid_pres,
                h.presentation.clone(),
                IntegerMatrix::from_columns(h.presentation.generators(), &beta_cols),
            )?);

            nodes.push(LesNode::new(format!("H_{n}(G)"), &h));
            if n > 0 {
                let mut images = Vec::new();
                for (k, z) in h.cycle_reps.iter().enumerate() {
                    let r = self.connecting(n, z, seed.wrapping_add((n * 1000 + k) as u64))?;
                    images.push(r.a.clone());
                    connecting.push(r);
                }
                prev_connecting = Some((images, h.presentation.clone()));
            } else {
                arrows.push(GroupHom::zero(h.presentation.clone(), PresentedGroup::trivial()));
            }
        }
        nodes.push(LesNode { label: "0".into(), group: FinAbGroup::trivial(), presentation: PresentedGroup::trivial() });

        // the first node has no incoming map and the last is the zero module
        let mut exact = vec![None; nodes.len()];
        for i in 1..nodes.len() - 1 {
            exact[i] = Some(middle_homology(&arrows[i - 1], &arrows[i])?.is_trivial());
        }
        Ok(LongExactSequence { nodes, arrows, exact, connecting })
    }

    /// `H_n(G) ≅ H_n(G|U1∖U12) ⊕ H_n(G|U12) ⊕ H_n(G|U2∖U12)` for `n < top`.
    pub fn orbit_decomposition(&self, budget: u64) -> Result<Vec<bool>> {
        let d = &self.decomposition;
        let g = &d.ambient;
        let parts = [d.u1.difference(&d.u12), d.u12.clone(), d.u2.difference(&d.u12)];
        let complexes = parts
            .iter()
            .map(|u| g.reduction(u).groupoid.moore_complex(self.top, Coefficients::Integers, budget))
            .collect::<Result<Vec<_>>>()?;
        (0..self.top)
            .map(|n| {
                let groups = complexes.iter().map(|c| Ok(c.homology_int(n)?.group)).collect::<Result<Vec<_>>>()?;
                Ok(direct_sum(&groups) == self.whole.complex.homology_int(n)?.group)
            })
            .collect()
    }
}

/// One run of the zig-zag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingReport {
    pub degree: usize,
    #[serde(with = "crate::bigint_serde::vec")]
    pub lift: Vec<BigInt>,
    /// The unique `a` with `α(a) = ∂(lift)`.
    #[serde(with = "crate::bigint_serde::vec")]
    pub a: Vec<BigInt>,
    /// Class of `a` in `H_{n-1}(G|U12)`.
    #[serde(with = "crate::bigint_serde::vec")]
    pub class: Vec<BigInt>,
    pub is_boundary: bool,
    /// A lift that is a cycle of the middle complex, when the class vanishes.
    #[serde(skip)]
    pub cycle_lift: Option<Vec<BigInt>>,
    /// A randomly perturbed lift `lift + α(t)` yields the same class.
    pub alternative_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesNode {
    pub label: String,
    pub group: FinAbGroup,
    #[serde(skip)]
    pub presentation: PresentedGroup,
}

impl LesNode {
    fn new(label: String, h: &HomologyResult) -> Self {
        LesNode { label, group: h.group.clone(), presentation: h.presentation.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub nodes: Vec<LesNode>,
    /// `arrows[i]` goes from `nodes[i]` to `nodes[i + 1]`.
    pub arrows: Vec<GroupHom>,
    /// Exactness verdict per node; `None` at the two ends.
    pub exact: Vec<Option<bool>>,
    pub connecting: Vec<ConnectingReport>,
}

/// Wire form of one node: its group, the matrix of its outgoing map, and
/// the exactness verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesRecord {
    pub label: String,
    pub group: FinAbGroup,
    pub map_matrix: Option<IntegerMatrix>,
    pub exact: Option<bool>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|e| e.unwrap_or(true))
    }

    pub fn connecting_verified(&self) -> bool {
        self.connecting.iter().all(|r| r.is_boundary && r.cycle_lift.is_some() && r.alternative_agrees)
    }

    pub fn records(&self) -> Vec<LesRecord> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, node)| LesRecord {
                label: node.label.clone(),
                group: node.group.clone(),
                map_matrix: self.arrows.get(i).map(|a| a.matrix().clone()),
                exact: self.exact[i],
            })
            .collect()
    }
}

/// Compares the sequences of `(U1, U2)` and `(U1 ∪ extra, U2)` for a
/// saturated `extra ⊆ U2`. Returns one verdict per commuting square, in
/// sequence order: the `α` square, the `β` square, and the `∂` square for
/// each degree.
pub fn naturality_ladder(d: &MvDecomposition, extra: &UnitSubset, top: usize, budget: u64) -> Result<Vec<bool>> {
    let g = &d.ambient;
    if extra.members().any(|u| !d.u2.contains(u)) {
        return Err(Error::NotContained("refinement must come from U2".into()));
    }
    let refined = MvDecomposition::new(g, d.u1.union(extra), d.u2.clone())?;
    let small = chain_ses(d, top, budget)?;
    let big = chain_ses(&refined, top, budget)?;

    // homology maps induced by the inclusions of pieces
    let induced = |from: &Piece, to: &Piece, n: usize| -> Result<GroupHom> {
        let hf = from.complex.homology_int(n)?;
        let ht = to.complex.homology_int(n)?;
        let inc = inclusion(from, to, n)?;
        let cols = hf
            .cycle_reps
            .iter()
            .map(|z| ht.class_of(&inc.apply(z)).ok_or(Error::NotACycle))
            .collect::<Result<Vec<_>>>()?;
        GroupHom::new(hf.presentation, ht.presentation.clone(), IntegerMatrix::from_columns(ht.presentation.generators(), &cols))
    };
    let les_small = small.long_exact_sequence(0)?;
    let les_big = big.long_exact_sequence(0)?;
    let mut verdicts = Vec::new();
    for (k, n) in (0..top).rev().enumerate() {
        let v12 = induced(&small.p12, &big.p12, n)?;
        let vmid = induced(&small.p1, &big.p1, n)?.direct_sum(&induced(&small.p2, &big.p2, n)?);
        let vg = induced(&small.whole, &big.whole, n)?;
        let (a_s, b_s) = (&les_small.arrows[3 * k], &les_small.arrows[3 * k + 1]);
        let (a_b, b_b) = (&les_big.arrows[3 * k], &les_big.arrows[3 * k + 1]);
        verdicts.push(a_s.then(&vmid)?.agrees_with(&v12.then(a_b)?));
        verdicts.push(b_s.then(&vg)?.agrees_with(&vmid.then(b_b)?));
        if n > 0 {
            let below = induced(&small.p12, &big.p12, n - 1)?;
            let (c_s, c_b) = (&les_small.arrows[3 * k + 2], &les_big.arrows[3 * k + 2]);
            verdicts.push(c_s.then(&below)?.agrees_with(&vg.then(c_b)?));
        }
    }
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple() -> FiniteGroupoid {
        let a = FiniteGroupoid::one_object_cyclic(2).unwrap();
        let b = FiniteGroupoid::pair(2);
        let c = FiniteGroupoid::one_object_cyclic(3).unwrap();
        FiniteGroupoid::disjoint_union(&FiniteGroupoid::disjoint_union(&a, &b), &c)
    }

    #[test]
    fn decompose_errors() {
        let p2 = FiniteGroupoid::pair(2);
        let err = MvDecomposition::from_positions(&p2, &[0], &[1]).unwrap_err();
        assert!(matches!(err, Error::NotSaturated { ref which, .. } if which == "U1"));
        let g = triple();
        assert!(matches!(MvDecomposition::from_positions(&g, &[0], &[3]), Err(Error::CoverFails { .. })));
        let d = MvDecomposition::from_positions(&g, &[0, 1, 2], &[1, 2, 3]).unwrap();
        assert_eq!(d.u12.len(), 2);
    }

    #[test]
    fn three_orbit_cover() {
        let g = triple();
        let d = MvDecomposition::from_positions(&g, &[0, 1, 2], &[1, 2, 3]).unwrap();
        let ses = chain_ses(&d, 3, 1_000_000).unwrap();
        assert!(ses.reports().iter().all(SesDegreeReport::passed));
        // kernel of β_0 has rank |units of the middle piece|
        let b0 = ses.beta(0);
        assert_eq!(b0.rows(), 4);
        assert_eq!(Lattice::kernel(b0).rank(), 2);
        let les = ses.long_exact_sequence(11).unwrap();
        assert!(les.is_exact());
        assert!(les.connecting_verified());
        assert!(ses.orbit_decomposition(1_000_000).unwrap().iter().all(|&x| x));
    }

    #[test]
    fn degenerate_cover() {
        let g = triple();
        let d = MvDecomposition::new(&g, UnitSubset::all(&g), UnitSubset::empty()).unwrap();
        let ses = chain_ses(&d, 3, 1_000_000).unwrap();
        for n in 0..=3 {
            assert!(ses.alpha(n).cols() == 0);
            assert!(ses.beta(n).is_square() && ses.beta(n).is_unimodular());
        }
        let les = ses.long_exact_sequence(1).unwrap();
        assert!(les.is_exact());
        for k in 0..3 {
            assert_eq!(les.nodes[3 * k + 1].group, les.nodes[3 * k + 2].group);
        }
    }

    #[test]
    fn connecting_rejects_non_cycles() {
        let g = triple();
        let d = MvDecomposition::from_positions(&g, &[0, 1, 2], &[1, 2, 3]).unwrap();
        let ses = chain_ses(&d, 2, 1_000_000).unwrap();
        let mut c = vec![BigInt::zero(); ses.ambient_complex().dim(1)];
        // arrow 3 is a non-unit arrow of the pair groupoid
        c[3] = BigInt::from(1);
        assert_eq!(ses.connecting(1, &c, 0).unwrap_err(), Error::NotACycle);
    }

    #[test]
    fn ladder_commutes() {
        let g = triple();
        let d = MvDecomposition::from_positions(&g, &[0], &[1, 2, 3]).unwrap();
        let extra = UnitSubset::from_positions(&g, &[1, 2]).unwrap();
        let squares = naturality_ladder(&d, &extra, 3, 1_000_000).unwrap();
        assert_eq!(squares.len(), 8);
        assert!(squares.iter().all(|&x| x));
    }
}
