use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("coefficient domains differ: {left} vs {right}")]
    DomainMismatch { left: String, right: String },

    #[error("expansion exceeds term cap: more than {cap} terms")]
    ExpansionTooLarge { cap: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("gate {gate}: declared {bound} = {declared} but found {actual}")]
    BoundViolation {
        gate: usize,
        bound: &'static str,
        declared: u64,
        actual: u64,
    },

    #[error("field has fewer than {needed} distinct scalars")]
    InsufficientField { needed: u64 },

    #[error("characteristic {p} too small: need p > {needed}")]
    CharacteristicTooSmall { p: u64, needed: u64 },

    #[error("symbolic elimination exceeds term cap {cap}")]
    SymbolicTooLarge { cap: usize },

    #[error("no annihilating polynomial of degree <= {cap}")]
    NoAnnihilatorWithinCap { cap: u32 },

    #[error("no good translation found after {attempts} attempts")]
    NoGoodTranslation { attempts: usize },

    #[error("polynomial {index} has no dependence witness of degree <= {cap}")]
    NoSolutionWithinCap { index: usize, cap: u32 },

    #[error("derivative of the annihilator vanishes at the translation point")]
    DerivativeVanishes,

    #[error("newton iteration did not reproduce the truncated series")]
    NonConvergence,

    #[error("matrix with {rows} rows x {cols} columns exceeds cell cap {cap}")]
    MatrixTooLarge { rows: u128, cols: u128, cap: u128 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("slot ({i},{j}) has no surviving variable")]
    SlotDied { i: usize, j: usize },

    #[error("field too small: need at least {needed} usable scalars, have {available}")]
    FieldTooSmall { needed: u64, available: u64 },

    #[error("hitting set has {count} points, above the cap of {cap}")]
    SetTooLarge { count: String, cap: u64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
