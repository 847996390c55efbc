//! Finite discrete groupoids, their nerves, face maps, and Moore complexes.
//!
//! Arrows are numbered `0..k`. Units are arrows too. Composition `g ∘ d` is
//! defined exactly when `source(g) = range(d)` and is stored as a dense table.
//! Every subset of a finite discrete space is compact open, so the whole
//! compactly supported machinery reduces to finite-dimensional free modules
//! with the canonical (lexicographic) nerve bases.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{Coefficients, FreeChainComplex};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Default cap on the total number of nerve tuples in a Moore complex.
pub const DEFAULT_NERVE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    arrows: usize,
    units: Vec<usize>,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    compose: Vec<Option<usize>>,
}

/// On-disk form: `{"arrows", "units", "source", "range", "inverse", "compose": [[g, d, g∘d], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidFile {
    pub arrows: usize,
    pub units: Vec<usize>,
    pub source: Vec<usize>,
    pub range: Vec<usize>,
    pub inverse: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
}

fn axiom(name: &str, witness: Vec<usize>) -> Error {
    Error::GroupoidAxiom { axiom: name.to_string(), witness }
}

impl FiniteGroupoid {
    /// Reads the tables without checking the groupoid axioms. Index and
    /// length errors are still reported.
    pub fn from_file_unchecked(file: &GroupoidFile) -> Result<Self> {
        let k = file.arrows;
        for (name, v) in [("source", &file.source), ("range", &file.range), ("inverse", &file.inverse)] {
            if v.len() != k {
                return Err(Error::ShapeMismatch(format!("{name} has {} entries for {k} arrows", v.len())));
            }
            if let Some(&bad) = v.iter().find(|&&a| a >= k) {
                return Err(Error::ShapeMismatch(format!("{name} refers to arrow {bad} of {k}")));
            }
        }
        let mut units = file.units.clone();
        units.sort_unstable();
        units.dedup();
        if let Some(&bad) = units.iter().find(|&&a| a >= k) {
            return Err(Error::ShapeMismatch(format!("unit {bad} is not an arrow")));
        }
        let mut compose = vec![None; k * k];
        for &[g, d, gd] in &file.compose {
            if g >= k || d >= k || gd >= k {
                return Err(Error::ShapeMismatch(format!("composition triple {:?} out of range", [g, d, gd])));
            }
            match compose[g * k + d] {
                Some(prev) if prev != gd => return Err(axiom("composition is single-valued", vec![g, d])),
                _ => compose[g * k + d] = Some(gd),
            }
        }
        Ok(FiniteGroupoid {
            arrows: k,
            units,
            source: file.source.clone(),
            range: file.range.clone(),
            inverse: file.inverse.clone(),
            compose,
        })
    }

    pub fn from_file(file: &GroupoidFile) -> Result<Self> {
        let g = Self::from_file_unchecked(file)?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_file(&self) -> GroupoidFile {
        let k = self.arrows;
        let mut compose = Vec::new();
        for g in 0..k {
            for d in 0..k {
                if let Some(gd) = self.compose[g * k + d] {
                    compose.push([g, d, gd]);
                }
            }
        }
        GroupoidFile {
            arrows: k,
            units: self.units.clone(),
            source: self.source.clone(),
            range: self.range.clone(),
            inverse: self.inverse.clone(),
            compose,
        }
    }

    /// Exhaustive check of the groupoid axioms; the error names the first
    /// violated axiom and carries witness arrows.
    pub fn validate(&self) -> Result<()> {
        let k = self.arrows;
        let unit_set: BTreeSet<usize> = self.units.iter().copied().collect();
        for &u in &self.units {
            if self.source[u] != u || self.range[u] != u {
                return Err(axiom("units are fixed by source and range", vec![u]));
            }
        }
        for g in 0..k {
            if !unit_set.contains(&self.source[g]) || !unit_set.contains(&self.range[g]) {
                return Err(axiom("source and range land in units", vec![g]));
            }
        }
        for g in 0..k {
            for d in 0..k {
                let composable = self.source[g] == self.range[d];
                match (composable, self.compose[g * k + d]) {
                    (true, None) | (false, Some(_)) => return Err(axiom("composition domain", vec![g, d])),
                    (true, Some(gd)) => {
                        if self.source[gd] != self.source[d] || self.range[gd] != self.range[g] {
                            return Err(axiom("composition endpoints", vec![g, d, gd]));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for g in 0..k {
            if self.compose(g, self.source[g]) != Some(g) || self.compose(self.range[g], g) != Some(g) {
                return Err(axiom("unit law", vec![g]));
            }
        }
        for a in 0..k {
            for b in self.arrows_with_range(self.source[a]) {
                let ab = self.compose(a, b).expect("checked domain");
                for c in self.arrows_with_range(self.source[b]) {
                    let bc = self.compose(b, c).expect("checked domain");
                    if self.compose(ab, c) != self.compose(a, bc) {
                        return Err(axiom("associativity", vec![a, b, c]));
                    }
                }
            }
        }
        for g in 0..k {
            let h = self.inverse[g];
            if self.source[h] != self.range[g]
                || self.range[h] != self.source[g]
                || self.compose(g, h) != Some(self.range[g])
                || self.compose(h, g) != Some(self.source[g])
            {
                return Err(axiom("inverse law", vec![g, h]));
            }
        }
        Ok(())
    }

    /// Unit groupoid on `k` points.
    pub fn units(k: usize) -> Self {
        let ids: Vec<usize> = (0..k).collect();
        let mut compose = vec![None; k * k];
        for i in 0..k {
            compose[i * k + i] = Some(i);
        }
        FiniteGroupoid { arrows: k, units: ids.clone(), source: ids.clone(), range: ids.clone(), inverse: ids, compose }
    }

    /// The cyclic group `Z/m` as a one-object groupoid; arrow `i` is `g^i`.
    pub fn one_object_cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPreset("cyclic order must be at least 1".into()));
        }
        let mut compose = vec![None; m * m];
        for i in 0..m {
            for j in 0..m {
                compose[i * m + j] = Some((i + j) % m);
            }
        }
        Ok(FiniteGroupoid {
            arrows: m,
            units: vec![0],
            source: vec![0; m],
            range: vec![0; m],
            inverse: (0..m).map(|i| (m - i) % m).collect(),
            compose,
        })
    }

    /// Pair groupoid on `k` points: arrow `i * k + j` goes from `j` to `i`.
    pub fn pair(k: usize) -> Self {
        let n = k * k;
        let idx = |i: usize, j: usize| i * k + j;
        let mut compose = vec![None; n * n];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    compose[idx(i, j) * n + idx(j, l)] = Some(idx(i, l));
                }
            }
        }
        FiniteGroupoid {
            arrows: n,
            units: (0..k).map(|i| idx(i, i)).collect(),
            source: (0..n).map(|a| idx(a % k, a % k)).collect(),
            range: (0..n).map(|a| idx(a / k, a / k)).collect(),
            inverse: (0..n).map(|a| idx(a % k, a / k)).collect(),
            compose,
        }
    }

    /// Transformation groupoid of `Z/m` acting on `{0, …, p-1}` through the
    /// permutation `perm` (the generator sends `x` to `perm[x]`). Arrow
    /// `g * p + x` is `(g, x)`, going from `x` to `perm^g(x)`.
    pub fn action(m: usize, perm: &[usize]) -> Result<Self> {
        let p = perm.len();
        if m == 0 {
            return Err(Error::InvalidPreset("group order must be at least 1".into()));
        }
        let mut seen = vec![false; p];
        for &x in perm {
            if x >= p || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPreset(format!("{perm:?} is not a permutation")));
            }
        }
        // powers[g][x] = perm^g(x)
        let mut powers = vec![(0..p).collect::<Vec<usize>>()];
        for g in 1..=m {
            let prev = &powers[g - 1];
            powers.push(prev.iter().map(|&x| perm[x]).collect());
        }
        if powers[m].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidPreset(format!("permutation order does not divide {m}")));
        }
        let n = m * p;
        let idx = |g: usize, x: usize| g * p + x;
        let mut compose = vec![None; n * n];
        for g in 0..m {
            for x in 0..p {
                let y = powers[g][x];
                for h in 0..m {
                    compose[idx(h, y) * n + idx(g, x)] = Some(idx((g + h) % m, x));
                }
            }
        }
        Ok(FiniteGroupoid {
            arrows: n,
            units: (0..p).map(|x| idx(0, x)).collect(),
            source: (0..n).map(|a| idx(0, a % p)).collect(),
            range: (0..n).map(|a| idx(0, powers[a / p][a % p])).collect(),
            inverse: (0..n).map(|a| idx((m - a / p) % m, powers[a / p][a % p])).collect(),
            compose,
        })
    }

    /// Disjoint union; arrows of `b` are shifted past those of `a`.
    pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> Self {
        let (ka, kb) = (a.arrows, b.arrows);
        let n = ka + kb;
        let mut compose = vec![None; n * n];
        for g in 0..ka {
            for d in 0..ka {
                compose[g * n + d] = a.compose[g * ka + d];
            }
        }
        for g in 0..kb {
            for d in 0..kb {
                compose[(ka + g) * n + ka + d] = b.compose[g * kb + d].map(|x| x + ka);
            }
        }
        let shift = |v: &[usize]| v.iter().map(|x| x + ka).collect::<Vec<_>>();
        FiniteGroupoid {
            arrows: n,
            units: a.units.iter().copied().chain(shift(&b.units)).collect(),
            source: a.source.iter().copied().chain(shift(&b.source)).collect(),
            range: a.range.iter().copied().chain(shift(&b.range)).collect(),
            inverse: a.inverse.iter().copied().chain(shift(&b.inverse)).collect(),
            compose,
        }
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows
    }

    /// Units in ascending arrow order.
    pub fn unit_arrows(&self) -> &[usize] {
        &self.units
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units.binary_search(&a).is_ok()
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g ∘ d`, defined when `source(g) = range(d)`.
    pub fn compose(&self, g: usize, d: usize) -> Option<usize> {
        self.compose[g * self.arrows + d]
    }

    fn arrows_with_range(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows).filter(move |&a| self.range[a] == u)
    }

    /// `|G_n|` without enumerating, saturating at `u128::MAX`.
    pub fn nerve_size(&self, n: usize) -> u128 {
        if n == 0 {
            return self.units.len() as u128;
        }
        // ends[v] = number of composable tuples whose last arrow has source v
        let mut ends = vec![0u128; self.arrows];
        for a in 0..self.arrows {
            ends[self.source[a]] += 1;
        }
        for _ in 1..n {
            let mut next = vec![0u128; self.arrows];
            for a in 0..self.arrows {
                next[self.source[a]] = next[self.source[a]].saturating_add(ends[self.range[a]]);
            }
            ends = next;
        }
        ends.iter().fold(0u128, |acc, &x| acc.saturating_add(x))
    }

    /// Composable `n`-tuples in lexicographic order; `n = 0` gives the units.
    pub fn nerve(&self, n: usize) -> NerveLevel {
        if n == 0 {
            return NerveLevel { degree: 0, width: 1, flat: self.units.clone() };
        }
        let mut flat = Vec::new();
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        self.extend_tuples(n, &mut stack, &mut flat);
        NerveLevel { degree: n, width: n, flat }
    }

    fn extend_tuples(&self, n: usize, stack: &mut Vec<usize>, out: &mut Vec<usize>) {
        if stack.len() == n {
            out.extend_from_slice(stack);
            return;
        }
        let candidates: Vec<usize> = match stack.last() {
            None => (0..self.arrows).collect(),
            Some(&prev) => self.arrows_with_range(self.source[prev]).collect(),
        };
        for a in candidates {
            stack.push(a);
            self.extend_tuples(n, stack, out);
            stack.pop();
        }
    }

    /// Face map `d_i` on an `n`-tuple. For `n = 1`, `d_0` is the source and
    /// `d_1` the range; otherwise `d_0` and `d_n` drop an end and the inner
    /// faces compose neighbours.
    pub fn face(&self, n: usize, i: usize, tuple: &[usize]) -> Result<Vec<usize>> {
        if n == 0 || i > n {
            return Err(Error::FaceIndex { degree: n, index: i });
        }
        if tuple.len() != n {
            return Err(Error::ShapeMismatch(format!("{}-tuple given to a degree {n} face", tuple.len())));
        }
        if n == 1 {
            return Ok(vec![if i == 0 { self.source[tuple[0]] } else { self.range[tuple[0]] }]);
        }
        Ok(if i == 0 {
            tuple[1..].to_vec()
        } else if i == n {
            tuple[..n - 1].to_vec()
        } else {
            let gd = self
                .compose(tuple[i - 1], tuple[i])
                .ok_or_else(|| axiom("composable tuple", vec![tuple[i - 1], tuple[i]]))?;
            let mut out = Vec::with_capacity(n - 1);
            out.extend_from_slice(&tuple[..i - 1]);
            out.push(gd);
            out.extend_from_slice(&tuple[i + 1..]);
            out
        })
    }

    /// Matrix of `(d_i)_*: Z^{G_n} → Z^{G_{n-1}}` in the nerve bases.
    pub fn pushforward_matrix(&self, n: usize, i: usize) -> Result<IntegerMatrix> {
        if n == 0 || i > n {
            return Err(Error::FaceIndex { degree: n, index: i });
        }
        let upper = self.nerve(n);
        let lower = self.nerve(n - 1);
        let mut data = vec![0i64; lower.len() * upper.len()];
        for (x, t) in upper.iter().enumerate() {
            let y = lower.index_of(&self.face(n, i, t)?).expect("face lands in the nerve");
            data[y * upper.len() + x] = 1;
        }
        IntegerMatrix::from_i64(lower.len(), upper.len(), data)
    }

    /// The Moore complex `∂_n = Σ (-1)^i (d_i)_*` up to degree `top`, with
    /// entries read modulo `q` for `Coefficients::Mod(q)`.
    pub fn moore_complex(&self, top: usize, coefficients: Coefficients, budget: u64) -> Result<FreeChainComplex> {
        let mut total: u128 = 0;
        for n in 0..=top {
            total = total.saturating_add(self.nerve_size(n));
            if total > u128::from(budget) {
                return Err(Error::NerveBudget { degree: n, total, budget });
            }
        }
        let levels: Vec<NerveLevel> = (0..=top).map(|n| self.nerve(n)).collect();
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let (upper, lower) = (&levels[n], &levels[n - 1]);
            let cols = upper.len();
            let mut data = vec![0i64; lower.len() * cols];
            for (x, t) in upper.iter().enumerate() {
                for i in 0..=n {
                    let y = lower.index_of(&self.face(n, i, t)?).expect("face lands in the nerve");
                    data[y * cols + x] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
            if let Coefficients::Mod(q) = coefficients {
                let q = q as i64;
                for v in &mut data {
                    *v = v.rem_euclid(q);
                }
            }
            boundaries.push(IntegerMatrix::from_i64(lower.len(), cols, data)?);
        }
        let dims = levels.iter().map(NerveLevel::len).collect();
        let labels = levels.iter().map(|l| l.iter().map(tuple_label).collect()).collect();
        FreeChainComplex::new(dims, boundaries, coefficients)?.with_labels(labels)
    }

    /// Orbits of the unit space, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.arrows).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in 0..self.arrows {
            let (s, r) = (find(&mut parent, self.source[a]), find(&mut parent, self.range[a]));
            if s != r {
                parent[s.max(r)] = s.min(r);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &u in &self.units {
            let root = find(&mut parent, u);
            groups.entry(root).or_default().push(u);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|o| o[0]);
        out
    }

    /// An arrow with exactly one endpoint in `u`, if any.
    pub fn saturation_witness(&self, u: &UnitSubset) -> Option<usize> {
        (0..self.arrows).find(|&a| u.contains(self.source[a]) != u.contains(self.range[a]))
    }

    pub fn is_saturated(&self, u: &UnitSubset) -> bool {
        self.saturation_witness(u).is_none()
    }

    /// `G|_U`: arrows with both endpoints in `U`, renumbered in increasing
    /// ambient order.
    pub fn reduction(&self, u: &UnitSubset) -> Reduction {
        let embedding: Vec<usize> =
            (0..self.arrows).filter(|&a| u.contains(self.source[a]) && u.contains(self.range[a])).collect();
        let mut local = vec![usize::MAX; self.arrows];
        for (i, &a) in embedding.iter().enumerate() {
            local[a] = i;
        }
        let n = embedding.len();
        let mut compose = vec![None; n * n];
        for (i, &g) in embedding.iter().enumerate() {
            for (j, &d) in embedding.iter().enumerate() {
                compose[i * n + j] = self.compose(g, d).map(|x| local[x]);
            }
        }
        let map = |f: &[usize]| embedding.iter().map(|&a| local[f[a]]).collect::<Vec<_>>();
        let groupoid = FiniteGroupoid {
            arrows: n,
            units: self.units.iter().filter(|&&x| u.contains(x)).map(|&x| local[x]).collect(),
            source: map(&self.source),
            range: map(&self.range),
            inverse: map(&self.inverse),
            compose,
        };
        Reduction { groupoid, embedding }
    }
}

fn tuple_label(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// One level `G_n` of the nerve, stored flat in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveLevel {
    degree: usize,
    width: usize,
    flat: Vec<usize>,
}

impl NerveLevel {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.width
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.flat[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.flat.chunks(self.width)
    }

    /// Position of a tuple, by binary search on the lexicographic order.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        if t.len() != self.width {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.tuple(mid).cmp(t) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// A set of units of a specific groupoid, by arrow index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnitSubset {
    members: BTreeSet<usize>,
}

impl UnitSubset {
    pub fn new(g: &FiniteGroupoid, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&a| a >= g.arrows || !g.is_unit(a)) {
            return Err(Error::NotAUnit(bad));
        }
        Ok(UnitSubset { members })
    }

    /// Units given by their position in [`FiniteGroupoid::unit_arrows`].
    pub fn from_positions(g: &FiniteGroupoid, positions: &[usize]) -> Result<Self> {
        let members = positions
            .iter()
            .map(|&p| g.units.get(p).copied().ok_or_else(|| Error::InvalidParameter(format!("no unit at position {p}"))))
            .collect::<Result<BTreeSet<usize>>>()?;
        Ok(UnitSubset { members })
    }

    pub fn all(g: &FiniteGroupoid) -> Self {
        UnitSubset { members: g.units.iter().copied().collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.contains(&u)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn intersection(&self, other: &UnitSubset) -> UnitSubset {
        UnitSubset { members: self.members.intersection(&other.members).copied().collect() }
    }

    pub fn union(&self, other: &UnitSubset) -> UnitSubset {
        UnitSubset { members: self.members.union(&other.members).copied().collect() }
    }

    pub fn difference(&self, other: &UnitSubset) -> UnitSubset {
        UnitSubset { members: self.members.difference(&other.members).copied().collect() }
    }
}

/// A reduction `G|_U` together with the arrow embedding into `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub groupoid: FiniteGroupoid,
    /// `embedding[a]` is the ambient index of reduced arrow `a`; increasing.
    pub embedding: Vec<usize>,
}

impl Reduction {
    /// Ambient units in `v` that survive in the reduction, in reduced indices.
    pub fn pull_back(&self, v: &UnitSubset) -> UnitSubset {
        let members = self
            .groupoid
            .units
            .iter()
            .copied()
            .filter(|&u| v.contains(self.embedding[u]))
            .collect();
        UnitSubset { members }
    }

    /// Reduction of the reduction, with the embedding composed through to
    /// the original ambient groupoid.
    pub fn restrict(&self, v: &UnitSubset) -> Reduction {
        let inner = self.groupoid.reduction(&self.pull_back(v));
        let embedding = inner.embedding.iter().map(|&a| self.embedding[a]).collect();
        Reduction { groupoid: inner.groupoid, embedding }
    }

    /// Maps a reduced nerve tuple to the ambient one.
    pub fn embed_tuple(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&a| self.embedding[a]).collect()
    }
}
