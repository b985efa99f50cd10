use thiserror::Error;

use crate::poset::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is not in the ground set of a type-{family} poset with n={n}")]
    BadElement { family: Family, n: usize, element: i64 },

    #[error("relations {x} <= {y} and {y} <= {x} with {x} != {y}")]
    AntisymmetryViolation { x: i64, y: i64 },

    #[error("relation {x} <= {y} does not respect the integer order")]
    Condition1Violation { x: i64, y: i64 },

    #[error("relation {x} <= {y} is present but its mirror {mx} <= {my} is missing")]
    MissingMirror { x: i64, y: i64, mx: i64, my: i64 },

    #[error("{i} covers {neg} in a type-{family} poset")]
    Condition3Violation { family: Family, i: i64, neg: i64 },

    #[error("poset of height ({plus}, {total}) has no relation graph")]
    UnsupportedHeight { plus: usize, total: usize },

    #[error("unsupported poset: {0}")]
    UnsupportedPoset(String),

    #[error("bracket of {left} and {right} is not in the span of the basis")]
    NotInSpan { left: String, right: String },

    #[error("no sign rescaling maps the type-D structure constants onto type C")]
    NoSignRescaling,

    #[error("poset is not Frobenius (index {index})")]
    NotFrobenius { index: usize },

    #[error("Kirillov form is singular (kernel dimension {kernel_dim})")]
    SingularForm { kernel_dim: usize },

    #[error("ad(F^) is neither diagonal in the basis nor triangularizable by reordering")]
    NonEigenbasis,

    #[error("pivot vanished at the sampled point after {attempts} attempts")]
    DegenerateEvaluation { attempts: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable machine-readable code for reports and the command line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadElement { .. } => "BadElement",
            Error::AntisymmetryViolation { .. } => "AntisymmetryViolation",
            Error::Condition1Violation { .. } => "Condition1Violation",
            Error::MissingMirror { .. } => "MissingMirror",
            Error::Condition3Violation { .. } => "Condition3Violation",
            Error::UnsupportedHeight { .. } => "UnsupportedHeight",
            Error::UnsupportedPoset(_) => "UnsupportedPoset",
            Error::NotInSpan { .. } => "NotInSpan",
            Error::NoSignRescaling => "NoSignRescaling",
            Error::NotFrobenius { .. } => "NotFrobenius",
            Error::SingularForm { .. } => "SingularForm",
            Error::NonEigenbasis => "NonEigenbasis",
            Error::DegenerateEvaluation { .. } => "DegenerateEvaluation",
            Error::Dimension(_) => "Dimension",
            Error::Parse { .. } => "InputParseError",
        }
    }

    /// True for errors caused by malformed or invalid input rather than by a
    /// computation that reached a negative verdict.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::BadElement { .. }
                | Error::AntisymmetryViolation { .. }
                | Error::Condition1Violation { .. }
                | Error::MissingMirror { .. }
                | Error::Condition3Violation { .. }
                | Error::Parse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
