use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the homology engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("boundary square nonzero at degree {degree} (witness column {column})")]
    BoundarySquareNonzero { degree: usize, column: usize },

    #[error("degree {degree} exceeds trusted truncation (complex built to degree {max_degree})")]
    DegreeBeyondTruncation { degree: usize, max_degree: usize },

    #[error("coefficient mismatch: {0}")]
    Coefficients(String),

    #[error("composite nonzero (witness generator {column})")]
    CompositeNonzero { column: usize },

    #[error("mismatched node: target of the first map is not the source of the second")]
    MismatchedNode,

    #[error("matrix does not define a homomorphism: relation {column} leaves the target relation lattice")]
    IncompatibleHom { column: usize },

    #[error("{axiom} violated (witness arrows {witness:?})")]
    GroupoidAxiom { axiom: String, witness: Vec<usize> },

    #[error("invalid preset: {0}")]
    InvalidPreset(String),

    #[error("face index {index} out of range for degree {degree}")]
    FaceIndex { degree: usize, index: usize },

    #[error("nerve budget exceeded at degree {degree}: {total} basis elements > budget {budget}")]
    NerveBudget { degree: usize, total: u128, budget: u64 },

    #[error("arrow {0} is not a unit")]
    NotAUnit(usize),

    #[error("cover fails: unit {unit} lies in neither set")]
    CoverFails { unit: usize },

    #[error("{which} not saturated (witness arrow {arrow})")]
    NotSaturated { which: String, arrow: usize },

    #[error("not a cycle")]
    NotACycle,

    #[error("lattice containment fails: {0}")]
    NotContained(String),

    #[error("kappa image mismatch: {reason} (witness cycle {witness:?})")]
    KappaMismatch { reason: String, witness: Vec<BigInt> },

    #[error("exactness failure: {0}")]
    Exactness(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate matrix: {0}")]
    DegenerateMatrix(String),

    #[error("no candidate pair with entries <= {0}")]
    NoCandidate(u64),
}

impl Error {
    /// Stable snake_case name of the variant, for structured diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::BoundarySquareNonzero { .. } => "boundary_square_nonzero",
            Error::DegreeBeyondTruncation { .. } => "degree_beyond_truncation",
            Error::Coefficients(_) => "coefficients",
            Error::CompositeNonzero { .. } => "composite_nonzero",
            Error::MismatchedNode => "mismatched_node",
            Error::IncompatibleHom { .. } => "incompatible_hom",
            Error::GroupoidAxiom { .. } => "groupoid_axiom",
            Error::InvalidPreset(_) => "invalid_preset",
            Error::FaceIndex { .. } => "face_index",
            Error::NerveBudget { .. } => "nerve_budget",
            Error::NotAUnit(_) => "not_a_unit",
            Error::CoverFails { .. } => "cover_fails",
            Error::NotSaturated { .. } => "not_saturated",
            Error::NotACycle => "not_a_cycle",
            Error::NotContained(_) => "not_contained",
            Error::KappaMismatch { .. } => "kappa_mismatch",
            Error::Exactness(_) => "exactness",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::DegenerateMatrix(_) => "degenerate_matrix",
            Error::NoCandidate(_) => "no_candidate",
        }
    }

    /// True for failures of a verification, as opposed to bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::BoundarySquareNonzero { .. }
                | Error::KappaMismatch { .. }
                | Error::Exactness(_)
                | Error::NotContained(_)
                | Error::CompositeNonzero { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
