use thiserror::Error;

/// Errors raised by the classification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ambient `{label}`: {reason}")]
    InvalidAmbient { label: String, reason: String },

    #[error("invalid setup: {0}")]
    InvalidSetup(String),

    #[error("quadrisecant formula is not asserted for d = {d} (requires d >= 5)")]
    SecantDomain { d: u64 },

    #[error("quadrisecant formula does not yield an integer at (d, g) = ({d}, {g})")]
    SecantIntegrality { d: u64, g: u64 },

    #[error("ambient `{0}` is not P3; flopping curves are only enumerated on P3")]
    UnsupportedAmbient(String),

    #[error("degenerate pairing: (-K)^2 vanishes on the whole lattice")]
    DegeneratePairing,

    #[error("no contracted ray with positive H-coefficient: (-K)^2.E = 0")]
    NoPositiveRay,

    #[error("class ({h}, {e}) is not primitive")]
    NotPrimitive { h: String, e: String },

    #[error("flopping curve ({h_deg}, {e_deg}) is not K-trivial for index {index}")]
    NotKTrivial { h_deg: i64, e_deg: i64, index: u32 },

    #[error("the zero form has no isotropy decision")]
    ZeroForm,

    #[error("empty ambient catalog")]
    EmptyCatalog,

    #[error("unknown ambient label `{0}`")]
    UnknownAmbient(String),

    #[error("catalog line {line}: {reason}")]
    CatalogParse { line: usize, reason: String },

    #[error("divisor expression: unexpected `{token}` in `{input}`")]
    ExprParse { input: String, token: String },

    #[error("I/O error on `{path}`: {reason}")]
    Io { path: String, reason: String },

    #[error("invalid scan request: {0}")]
    InvalidScan(String),
}

pub type Result<T> = std::result::Result<T, Error>;
