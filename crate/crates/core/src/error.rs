use std::fmt;

use thiserror::Error;

use crate::structures::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("row {0} is not a bijection, so L_{0} is not invertible")]
    RowNotBijective(Elem),
    #[error("column {0} is not a bijection, so R_{0} is not invertible")]
    ColumnNotBijective(Elem),
    #[error("entry ({row}, {col}) = {value} is outside the carrier 0..{n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<Elem>),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("left quasigroup is not right cyclic (fails at x={}, y={})", .0.0, .0.1)]
    NotRightCyclic((Elem, Elem)),
    #[error("left quasigroup is degenerate: x -> x\\x is not a bijection")]
    NotNondegenerate,
    #[error("not involutive")]
    NotInvolutive,
    #[error("map does not satisfy the braid relation (fails at {0:?})")]
    NotBraided((Elem, Elem, Elem)),
    #[error("map is not a bijection of X x X")]
    NotBijective,
    #[error("degenerate: some left or right translation is not a bijection")]
    Degenerate,
    #[error("birack is not distributive")]
    NotDistributive,
    #[error("hypotheses violated: {}", list(.0))]
    HypothesisViolated(Vec<Hypothesis>),
    #[error("degree {0} exceeds the configured matrix budget")]
    BudgetExceeded(usize),
    #[error("census size {0} is unsupported")]
    SizeUnsupported(usize),
    #[error("exact rank {exact} and modular rank {modular} disagree")]
    ArithmeticMismatch { exact: usize, modular: usize },
}

/// A named precondition of an isotope or twist construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// The tables fail one of the birack identities.
    Birack,
    Involutive,
    /// The birack is not graded by the supplied grading (left or right
    /// condition).
    Graded,
    Lri,
    /// The twist system was built over a different grading.
    GradingMatchesTwist,
    Twist(TwistFailure),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Birack => f.write_str("tables satisfy the birack identities"),
            Hypothesis::Involutive => f.write_str("birack is involutive"),
            Hypothesis::Graded => f.write_str("birack is graded by the grading"),
            Hypothesis::Lri => f.write_str("birack satisfies lri"),
            Hypothesis::GradingMatchesTwist => f.write_str("twist system uses the same grading"),
            Hypothesis::Twist(t) => write!(f, "{t}"),
        }
    }
}

/// One failed condition of a twist system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistFailure {
    /// The left quasigroup is not graded by the twist system's grading.
    GradingIncompatible,
    NotCommuting {
        s: usize,
        t: usize,
    },
    NotDegreePreserving {
        s: usize,
        x: Elem,
    },
    NotAutomorphism {
        s: usize,
    },
    /// `L_{φ_s(x)} ≠ L_x`.
    TranslationNotInvariant {
        s: usize,
        x: Elem,
    },
}

impl fmt::Display for TwistFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistFailure::GradingIncompatible => {
                f.write_str("left translations do not preserve the grading")
            }
            TwistFailure::NotCommuting { s, t } => write!(f, "phi_{s} and phi_{t} do not commute"),
            TwistFailure::NotDegreePreserving { s, x } => {
                write!(f, "phi_{s} moves {x} to another block")
            }
            TwistFailure::NotAutomorphism { s } => write!(f, "phi_{s} is not an automorphism"),
            TwistFailure::TranslationNotInvariant { s, x } => {
                write!(f, "L_(phi_{s}({x})) != L_{x}")
            }
        }
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
