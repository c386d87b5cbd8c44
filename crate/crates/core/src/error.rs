use thiserror::Error;

/// Which block's leading minor vanished inside the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// Top-left block `A`, giving `alpha`.
    TopLeft,
    /// Bottom-left block `B`, giving `beta`.
    BottomLeft,
}

impl std::fmt::Display for Block {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Block::TopLeft => "top-left",
            Block::BottomLeft => "bottom-left",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("entry ({row}, {col}) = {dividend} is not divisible by {divisor}")]
    EntryNotDivisible {
        row: usize,
        col: usize,
        dividend: String,
        divisor: String,
    },
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("matrix has no rows or no columns")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("order {0} is odd, cannot split into 2x2 blocks")]
    OddOrder(usize),
    #[error("order {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),
    #[error("order {order} exceeds the limit {limit} for cofactor expansion")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("invalid minor indices: {0}")]
    BadIndices(String),
    #[error("{block} minor is zero at recursion level {level}")]
    DegenerateMinor { level: usize, block: Block },
    #[error("corner entry is zero")]
    ZeroCorner,
    #[error("all {attempts} preconditioning attempts hit a zero minor")]
    RetriesExhausted { attempts: usize },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
