//! Free chain complexes over the integers and their homology.
//!
//! A complex built to degree `N` only determines homology in degrees
//! `0..N`: the group in degree `N` would need `∂_{N+1}`. Queries past that
//! point are refused rather than answered from a truncated complex.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::{direct_sum, FinAbGroup, PresentedGroup};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Subquotient};
use crate::matrix::IntegerMatrix;

/// Coefficient ring of a chain complex's matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    /// Entries are read modulo `q ≥ 2`.
    Mod(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    dims: Vec<usize>,
    /// `boundaries[n]` is `dims[n-1] × dims[n]`; `boundaries[0]` is the zero
    /// map into the zero module.
    boundaries: Vec<IntegerMatrix>,
    labels: Option<Vec<Vec<String>>>,
    coefficients: Coefficients,
}

impl FreeChainComplex {
    /// Stores the data without checks; see [`FreeChainComplex::validate`].
    ///
    /// `boundaries` lists `∂_1, …, ∂_N` for `N = dims.len() - 1`.
    pub fn from_parts(dims: Vec<usize>, boundaries: Vec<IntegerMatrix>, coefficients: Coefficients) -> Self {
        let zero = IntegerMatrix::zeros(0, dims.first().copied().unwrap_or(0));
        let mut all = Vec::with_capacity(boundaries.len() + 1);
        all.push(zero);
        all.extend(boundaries);
        FreeChainComplex { dims, boundaries: all, labels: None, coefficients }
    }

    /// Builds and validates a complex.
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntegerMatrix>, coefficients: Coefficients) -> Result<Self> {
        let c = Self::from_parts(dims, boundaries, coefficients);
        c.validate()?;
        Ok(c)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.dims.len() || labels.iter().zip(&self.dims).any(|(l, &d)| l.len() != d) {
            return Err(Error::ShapeMismatch("basis labels do not match dimensions".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Zero complex with the given dimensions.
    pub fn zero(dims: Vec<usize>) -> Self {
        let boundaries = (1..dims.len()).map(|n| IntegerMatrix::zeros(dims[n - 1], dims[n])).collect();
        Self::from_parts(dims, boundaries, Coefficients::Integers)
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// `∂_n`; `∂_0` is the zero map to the zero module.
    pub fn boundary(&self, n: usize) -> &IntegerMatrix {
        &self.boundaries[n]
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Shape coherence and `∂_{n-1} ∂_n = 0` (modulo the coefficient modulus).
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::ShapeMismatch("complex has no degrees".into()));
        }
        if self.boundaries.len() != self.dims.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} boundary maps for max degree {}",
                self.boundaries.len() - 1,
                self.max_degree()
            )));
        }
        if let Coefficients::Mod(q) = self.coefficients {
            if q < 2 {
                return Err(Error::Coefficients(format!("modulus {q} must be at least 2")));
            }
        }
        for n in 1..self.dims.len() {
            let b = &self.boundaries[n];
            if b.shape() != (self.dims[n - 1], self.dims[n]) {
                return Err(Error::ShapeMismatch(format!(
                    "boundary {n} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    self.dims[n - 1],
                    self.dims[n]
                )));
            }
        }
        for n in 2..self.dims.len() {
            let mut sq = &self.boundaries[n - 1] * &self.boundaries[n];
            if let Coefficients::Mod(q) = self.coefficients {
                sq = sq.reduce_mod(&BigInt::from(q));
            }
            if let Some(column) = sq.first_nonzero_column() {
                return Err(Error::BoundarySquareNonzero { degree: n, column });
            }
        }
        Ok(())
    }

    fn trusted(&self, n: usize) -> Result<()> {
        if n + 1 > self.max_degree() {
            return Err(Error::DegreeBeyondTruncation { degree: n, max_degree: self.max_degree() });
        }
        Ok(())
    }

    /// `H_n(C; Z) = ker ∂_n / im ∂_{n+1}` with generating cycles.
    pub fn homology_int(&self, n: usize) -> Result<HomologyResult> {
        self.trusted(n)?;
        if let Coefficients::Mod(q) = self.coefficients {
            return Err(Error::Coefficients(format!("integral homology of a complex over Z/{q}")));
        }
        let cycles = Lattice::kernel(&self.boundaries[n]);
        let quotient = Subquotient::new(cycles, &self.boundaries[n + 1])?;
        Ok(HomologyResult::from_quotient(n, quotient))
    }

    /// Homology with `Z/q` coefficients by the lattice method:
    /// `{v : ∂_n v ∈ q Z} / (im ∂_{n+1} + q Z)`. `q = 0` means integral.
    pub fn homology_mod(&self, q: u64, n: usize) -> Result<HomologyResult> {
        if q == 0 {
            return self.homology_int(n);
        }
        self.trusted(n)?;
        if let Coefficients::Mod(m) = self.coefficients {
            if m % q != 0 {
                return Err(Error::Coefficients(format!("Z/{q} homology of a complex over Z/{m}")));
            }
        }
        let q_big = BigInt::from(q);
        let cycles = Lattice::preimage_mod(&self.boundaries[n], &q_big);
        let d = self.dims[n];
        let scaled = IntegerMatrix::diagonal(d, d, &vec![q_big; d]);
        let gens = self.boundaries[n + 1].hstack(&scaled);
        let quotient = Subquotient::new(cycles, &gens)?;
        Ok(HomologyResult::from_quotient(n, quotient))
    }

    /// The same complex with entries reduced into `[0, q)`, as a complex over `Z/q`.
    pub fn reduce_mod(&self, q: u64) -> Result<FreeChainComplex> {
        if q < 2 {
            return Err(Error::Coefficients(format!("modulus {q} must be at least 2")));
        }
        if let Coefficients::Mod(m) = self.coefficients {
            if m % q != 0 {
                return Err(Error::Coefficients(format!("cannot reduce a complex over Z/{m} modulo {q}")));
            }
        }
        let qb = BigInt::from(q);
        let boundaries = self.boundaries[1..].iter().map(|b| b.reduce_mod(&qb)).collect();
        let mut c = Self::from_parts(self.dims.clone(), boundaries, Coefficients::Mod(q));
        c.labels = self.labels.clone();
        Ok(c)
    }

    /// `H_n(C; A)` for finitely generated `A = Z^r ⊕ ⊕ Z/d_i`, summand by summand.
    pub fn homology_with(&self, coefficient: &FinAbGroup, n: usize) -> Result<FinAbGroup> {
        let mut parts = Vec::new();
        if coefficient.rank() > 0 {
            let h = self.homology_int(n)?.group;
            parts.extend(std::iter::repeat_n(h, coefficient.rank()));
        }
        for d in coefficient.torsion() {
            let q = u64::try_from(d).map_err(|_| Error::InvalidParameter(format!("modulus {d} too large")))?;
            parts.push(self.homology_mod(q, n)?.group);
        }
        Ok(direct_sum(&parts))
    }
}

/// Degreewise direct sum with block-diagonal boundaries.
pub fn shift_sum(complexes: &[FreeChainComplex]) -> Result<FreeChainComplex> {
    let Some(first) = complexes.first() else {
        return Err(Error::InvalidParameter("empty list of complexes".into()));
    };
    let top = first.max_degree();
    if complexes.iter().any(|c| c.max_degree() != top) {
        return Err(Error::InvalidParameter("mixed truncation depth".into()));
    }
    if complexes.iter().any(|c| c.coefficients != first.coefficients) {
        return Err(Error::Coefficients("mixed coefficient rings".into()));
    }
    let dims = (0..=top).map(|n| complexes.iter().map(|c| c.dims[n]).sum()).collect();
    let boundaries = (1..=top)
        .map(|n| IntegerMatrix::block_diagonal(&complexes.iter().map(|c| &c.boundaries[n]).collect::<Vec<_>>()))
        .collect();
    Ok(FreeChainComplex::from_parts(dims, boundaries, first.coefficients))
}

/// A homology group with generating cycles and a class map.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub degree: usize,
    pub group: FinAbGroup,
    /// Diagonal presentation: one generator per cycle representative.
    pub presentation: PresentedGroup,
    pub cycle_reps: Vec<Vec<BigInt>>,
    quotient: Subquotient,
}

impl HomologyResult {
    fn from_quotient(degree: usize, quotient: Subquotient) -> Self {
        HomologyResult {
            degree,
            group: quotient.group(),
            presentation: quotient.presentation(),
            cycle_reps: quotient.representatives().to_vec(),
            quotient,
        }
    }

    /// Coordinates of the class of `chain` in the presentation, or `None`
    /// when `chain` is not a cycle.
    pub fn class_of(&self, chain: &[BigInt]) -> Option<Vec<BigInt>> {
        self.quotient.class_of(chain)
    }

    pub fn is_boundary(&self, chain: &[BigInt]) -> Option<bool> {
        self.quotient.is_zero_class(chain)
    }

    /// Order of each generator (`0` for free generators).
    pub fn orders(&self) -> &[BigInt] {
        self.quotient.orders()
    }

    pub fn cycles(&self) -> &Lattice {
        self.quotient.outer()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders().is_empty()
    }
}

/// Wire form for `--dump-complex`: `{"dims": [...], "boundaries": [[...], ...]}`
/// with each boundary flattened row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDump {
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<i64>>,
}

impl ComplexDump {
    pub fn from_complex(c: &FreeChainComplex) -> Result<Self> {
        let boundaries = (1..=c.max_degree())
            .map(|n| {
                c.boundary(n)
                    .entries()
                    .iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::InvalidParameter("entry exceeds i64".into())))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(ComplexDump { dims: c.dims().to_vec(), boundaries })
    }

    pub fn to_complex(&self, coefficients: Coefficients) -> Result<FreeChainComplex> {
        let mut maps = Vec::new();
        for (k, flat) in self.boundaries.iter().enumerate() {
            let n = k + 1;
            let (r, c) = (
                *self.dims.get(n - 1).ok_or_else(|| Error::ShapeMismatch("too many boundaries".into()))?,
                *self.dims.get(n).ok_or_else(|| Error::ShapeMismatch("too many boundaries".into()))?,
            );
            maps.push(IntegerMatrix::from_i64(r, c, flat.clone())?);
        }
        FreeChainComplex::new(self.dims.clone(), maps, coefficients)
    }
}
