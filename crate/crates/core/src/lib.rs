//! Exact Moore homology of finite discrete groupoids.
//!
//! The crate builds Moore chain complexes from the nerve of a finite
//! groupoid, computes integral and `Z/q` homology by Smith normal form over
//! unbounded integers, and turns the universal coefficient theorem and the
//! Mayer–Vietoris long exact sequence into checks that run on concrete
//! groupoids. Closed forms for full-shift groupoids and the family
//! `S_n ⊔ I ⊔ S_m` live in [`sft`].

pub mod abelian;
mod bigint_serde;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod groupoid;
pub mod lattice;
pub mod matrix;
pub mod mv;
mod scalar;
pub mod sft;
pub mod smith;
pub mod uct;

pub use abelian::{direct_sum, group_of, middle_homology, tensor, tor1, FinAbGroup, GroupHom, PresentedGroup};
pub use complex::{Coefficients, FreeChainComplex, HomologyResult};
pub use error::{Error, Result};
pub use groupoid::{FiniteGroupoid, GroupoidFile, NerveLevel, Reduction, UnitSubset, DEFAULT_NERVE_BUDGET};
pub use matrix::IntegerMatrix;
pub use mv::{chain_ses, naturality_ladder, LongExactSequence, MvChainSes, MvDecomposition};
pub use sft::{classify, collision_search, family_integral, family_mod, full_shift_homology, sft_matrix_homology, FamilySpec};
pub use smith::{elementary_divisors, hermite_normal_form, smith_normal_form, SmithDecomposition};
pub use uct::{cantor_obstruction, kappa_check, uct_assemble, uct_verify, UctReport};
