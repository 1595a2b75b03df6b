use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("unsupported component count {0} (expected 4 or 5)")]
    UnsupportedN(usize),
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },
    #[error("unknown coordinate `{0}`")]
    UnknownSymbol(String),
    #[error("invalid generator {0}")]
    BadGenerator(String),
    #[error("vector line {line}: {msg}")]
    Vector { line: usize, msg: String },
    #[error("table {table}, line {line}: {msg}")]
    Table {
        table: String,
        line: usize,
        msg: String,
    },
    #[error("table {table}: content digest {found} does not match recorded {expected}")]
    Digest {
        table: String,
        expected: String,
        found: String,
    },
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("word, byte {pos}: {msg} (near `{token}`)")]
    Word {
        pos: usize,
        token: String,
        msg: String,
    },
    #[error("schemes differ (n={0} vs n={1})")]
    SchemeMismatch(usize, usize),
    #[error("no action known for `{0}`")]
    UnknownAction(String),
    #[error("map is not triangular at {0}")]
    NotTriangular(String),
    #[error("exponent polynomial mentions {0}, which has degree above 2")]
    ExponentDegree(String),
    #[error("exponent {0} is too large to expand symbolically")]
    ExponentTooLarge(String),
}
