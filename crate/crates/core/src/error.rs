use thiserror::Error;

/// Errors raised by the arithmetic, structure and reporting layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("odd valuation {0}: no square root in the field")]
    OddValuation(i64),
    #[error("unit part is not a quadratic residue modulo {0}")]
    NonResidue(u32),
    #[error("operation is only defined over the base field")]
    NotBaseRational,
    #[error("prime must be odd, got {0}")]
    EvenPrime(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("mismatched field handles")]
    FieldMismatch,

    #[error("dimension mismatch: {0}")]
    BadDimension(String),
    #[error("multiplication is not associative on (e{}, e{}, e{})", .0 + 1, .1 + 1, .2 + 1)]
    NotAssociative(usize, usize, usize),

    #[error("element is not quasi-invertible")]
    NotQuasiInvertible { witness: Vec<String> },
    #[error("element is not idempotent modulo p")]
    NotResidueIdempotent,
    #[error("idempotent iteration did not converge")]
    NoConvergence,
    #[error("algebra is not semisimple (radical dimension {0})")]
    NotSemisimple(usize),
    #[error("algebra is not simple ({0} minimal two-sided ideals)")]
    NotSimple(usize),
    #[error("Peirce block ({0}, {1}) is zero")]
    BlockDegenerate(usize, usize),
    #[error("corner element has no inverse")]
    NonInvertibleWitness { witness: Vec<String> },
    #[error("zero idempotent")]
    ZeroIdempotent,
    #[error("algebra has no unit")]
    NoUnit,
    #[error("algebra has no involution")]
    NoInvolution,
    #[error("algebra has no matrix realization")]
    NoRealization,
    #[error("algebra is not closed under transposition")]
    NotTransposeClosed,
    #[error("form generator is not symmetric")]
    NotSymmetricS,
    #[error("w*ww* vanishes")]
    DegenerateCorner,
    #[error("corner scalar {0} has no square root")]
    SqrtObstruction(String),
    #[error("not a B*-algebra: axiom ({0}) fails")]
    NotBstar(u8),
    #[error("search budget exceeded")]
    BudgetExceeded,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
