use alloc::string::String;
use core::fmt;

/// Errors raised by the group, transform, kernel and mean constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A radix below 2.
    InvalidRadix { level: usize, radix: u64 },
    /// Truncation level below 1, or an empty radix list.
    InvalidLevel(usize),
    /// `M_L` exceeds the configured grid cap.
    GridTooLarge { size: u128, cap: usize },
    /// An index, level or digit outside its admissible range.
    OutOfRange { what: &'static str, value: usize, max: usize },
    /// Two objects built on different groups were combined.
    SpecMismatch,
    /// `p` outside `[1, 64]`.
    InvalidExponent(f64),
    /// `p = ∞` is deliberately unsupported.
    InfiniteExponent,
    /// Weight sequence problems: `q_0 <= 0`, negative entries, `Q_n = 0`, too short.
    InvalidWeights(String),
    /// Theorem hypothesis on the monotonicity of the weights is not met.
    WeightClass { required: &'static str },
    /// Non-finite values in a grid function or spectrum.
    NonFinite,
    /// Malformed input string or sequence.
    Parse(String),
    /// Rate fits need at least three strictly positive errors.
    InsufficientData(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRadix { level, radix } => {
                write!(f, "radix m_{level} = {radix} is below 2")
            }
            Error::InvalidLevel(l) => write!(f, "truncation level L = {l} must be at least 1"),
            Error::GridTooLarge { size, cap } => {
                write!(f, "grid size {size} exceeds the cap of {cap} points")
            }
            Error::OutOfRange { what, value, max } => {
                write!(f, "{what} = {value} out of range (max {max})")
            }
            Error::SpecMismatch => f.write_str("operands live on different groups"),
            Error::InvalidExponent(p) => write!(f, "exponent p = {p} outside [1, 64]"),
            Error::InfiniteExponent => f.write_str("p = infinity is not supported"),
            Error::InvalidWeights(msg) => write!(f, "invalid weights: {msg}"),
            Error::WeightClass { required } => {
                write!(f, "weights must be {required} for this inequality")
            }
            Error::NonFinite => f.write_str("non-finite value"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InsufficientData(msg) => write!(f, "insufficient data: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
