use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not strongly connected: no path from {from} to {to}")]
    NotStronglyConnected { from: String, to: String },
    #[error("target set is empty")]
    EmptyTargets,
    #[error("non-target vertex {0} has no out-arcs")]
    DanglingVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("rotor mechanism for {0} given twice")]
    DuplicateMechanism(String),
    #[error("source {0} is a target vertex")]
    SourceIsTarget(String),
    #[error("target vertex {0} must not carry a rotor mechanism")]
    TargetHasArcs(String),
    #[error("vertex {0} is a target and has no rotor")]
    TargetVertex(String),
    #[error("slot {slot} out of range 1..={degree} at vertex {vertex}")]
    InvalidSlot {
        vertex: String,
        slot: usize,
        degree: usize,
    },
    #[error("configuration does not match the graph: {0}")]
    ShapeMismatch(String),
    #[error("the given vertices do not form a cycle of the rotor configuration")]
    NotACycle,
    #[error("no particle at vertex {0}")]
    NoParticle(String),
    #[error("vertex {0} is stable and cannot topple")]
    NotUnstable(String),
    #[error("walk exceeded its step budget of {0}")]
    StepBudgetExceeded(u64),
    #[error("cycle pushing exceeded its budget of {0} pushes")]
    PushBudgetExceeded(u64),
    #[error("class orbit did not close within {0} steps")]
    OrbitBudgetExceeded(u64),
    #[error("enumeration of {0} configurations exceeds the limit")]
    EnumerationTooLarge(u128),
    #[error("rotor at {0} is not palindromic")]
    PreconditionNotPalindromic(String),
    #[error("rotor at {vertex} is not {m}-repetitive")]
    PreconditionNotRepetitive { vertex: String, m: usize },
    #[error("{}{inner}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation {
        line: Option<usize>,
        inner: Box<Error>,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotStronglyConnected { .. } => "NotStronglyConnected",
            Error::EmptyTargets => "EmptyTargets",
            Error::DanglingVertex(_) => "DanglingVertex",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::DuplicateMechanism(_) => "DuplicateMechanism",
            Error::SourceIsTarget(_) => "SourceIsTarget",
            Error::TargetHasArcs(_) => "TargetHasArcs",
            Error::TargetVertex(_) => "TargetVertex",
            Error::InvalidSlot { .. } => "InvalidSlot",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotACycle => "NotACycle",
            Error::NoParticle(_) => "NoParticle",
            Error::NotUnstable(_) => "NotUnstable",
            Error::StepBudgetExceeded(_) => "StepBudgetExceeded",
            Error::PushBudgetExceeded(_) => "PushBudgetExceeded",
            Error::OrbitBudgetExceeded(_) => "OrbitBudgetExceeded",
            Error::EnumerationTooLarge(_) => "EnumerationTooLarge",
            Error::PreconditionNotPalindromic(_) => "PreconditionNotPalindromic",
            Error::PreconditionNotRepetitive { .. } => "PreconditionNotRepetitive",
            Error::Validation { .. } => "ValidationError",
            Error::Parse { .. } => "ParseError",
        }
    }

    /// Wraps a model error raised while validating an instance.
    pub fn validation(line: Option<usize>, inner: Error) -> Self {
        match inner {
            Error::Parse { .. } | Error::Validation { .. } => inner,
            other => Error::Validation {
                line,
                inner: Box::new(other),
            },
        }
    }
}
