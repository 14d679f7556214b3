use serde_json::{json, Value};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QdError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("triangle {triangle} does not close up")]
    ClosureViolation { triangle: usize },
    #[error("triangle {triangle} is degenerate or negatively oriented")]
    DegenerateTriangle { triangle: usize },
    #[error("gluing of edges {edge} and {partner} is inconsistent: {reason}")]
    GluingMismatch { edge: usize, partner: usize, reason: String },
    #[error("total angle at vertex {vertex} is not an integer multiple of pi")]
    NonIntegerOrder { vertex: usize },
    #[error("vertex {vertex} is a pole but is not marked")]
    UnmarkedPole { vertex: usize },
    #[error("surface is disconnected")]
    Disconnected,
    #[error("unstable surface: 2g - 2 + m = {value} must be positive")]
    Unstable { value: i64 },
    #[error("inconsistent stratum symbol: {0}")]
    InconsistentSymbol(String),
    #[error("flip loop exceeded {cap} iterations")]
    NonTerminating { cap: usize },
    #[error("no closed cochain realizes the functional")]
    InconsistentFunctional,
    #[error("intersection matrix is singular")]
    SingularJ,
    #[error("period vector basis does not match: expected {expected}, got {found}")]
    BasisMismatch { expected: String, found: String },
    #[error("deformation flips or collapses triangle {triangle}")]
    TriangleFlip { triangle: usize },
    #[error("|lambda| = {modulus} is not inside the unit disk")]
    OutOfDisk { modulus: f64 },
    #[error("norm {norm} is outside (0, 1)")]
    NormOutOfRange { norm: f64 },
    #[error("{check}: error {error} exceeds tolerance {tolerance}")]
    ToleranceExceeded { check: String, error: f64, tolerance: f64 },
    #[error("sample point hits the singular point lambda = {lambda}")]
    SingularPoint { lambda: String },
    #[error("family norm became {norm}")]
    NegativeNorm { norm: f64 },
    #[error("symbols belong to different (g, m): {0}")]
    MismatchedType(String),
}

impl QdError {
    pub fn name(&self) -> &'static str {
        match self {
            QdError::Malformed(_) => "Malformed",
            QdError::ClosureViolation { .. } => "ClosureViolation",
            QdError::DegenerateTriangle { .. } => "DegenerateTriangle",
            QdError::GluingMismatch { .. } => "GluingMismatch",
            QdError::NonIntegerOrder { .. } => "NonIntegerOrder",
            QdError::UnmarkedPole { .. } => "UnmarkedPole",
            QdError::Disconnected => "Disconnected",
            QdError::Unstable { .. } => "Unstable",
            QdError::InconsistentSymbol(_) => "InconsistentSymbol",
            QdError::NonTerminating { .. } => "NonTerminating",
            QdError::InconsistentFunctional => "InconsistentFunctional",
            QdError::SingularJ => "SingularJ",
            QdError::BasisMismatch { .. } => "BasisMismatch",
            QdError::TriangleFlip { .. } => "TriangleFlip",
            QdError::OutOfDisk { .. } => "OutOfDisk",
            QdError::NormOutOfRange { .. } => "NormOutOfRange",
            QdError::ToleranceExceeded { .. } => "ToleranceExceeded",
            QdError::SingularPoint { .. } => "SingularPoint",
            QdError::NegativeNorm { .. } => "NegativeNorm",
            QdError::MismatchedType(_) => "MismatchedType",
        }
    }

    /// Whether the error reports bad input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            QdError::Malformed(_)
                | QdError::ClosureViolation { .. }
                | QdError::DegenerateTriangle { .. }
                | QdError::GluingMismatch { .. }
                | QdError::NonIntegerOrder { .. }
                | QdError::UnmarkedPole { .. }
                | QdError::Disconnected
                | QdError::Unstable { .. }
                | QdError::InconsistentSymbol(_)
                | QdError::BasisMismatch { .. }
                | QdError::OutOfDisk { .. }
                | QdError::NormOutOfRange { .. }
                | QdError::SingularPoint { .. }
                | QdError::MismatchedType(_)
        )
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.name(), "message": self.to_string() });
        let extra = match self {
            QdError::ClosureViolation { triangle }
            | QdError::DegenerateTriangle { triangle }
            | QdError::TriangleFlip { triangle } => json!({ "triangle": triangle }),
            QdError::GluingMismatch { edge, partner, .. } => json!({ "edge": edge, "partner": partner }),
            QdError::NonIntegerOrder { vertex } | QdError::UnmarkedPole { vertex } => {
                json!({ "vertex": vertex })
            }
            _ => json!({}),
        };
        if let (Some(obj), Some(add)) = (v.as_object_mut(), extra.as_object()) {
            for (k, x) in add {
                obj.insert(k.clone(), x.clone());
            }
        }
        v
    }
}

pub type Result<T> = std::result::Result<T, QdError>;
