use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands had different matrix dimensions.
    DimensionMismatch { expected: usize, found: usize },
    /// An argument is outside the domain of the operation.
    InvalidInput(String),
    /// Bisection endpoints do not bracket a sign change.
    NoSignChange { f_lo: f64, f_hi: f64 },
    /// An iterative method hit its iteration cap; carries its last iterate.
    NotConverged {
        iterations: usize,
        last_estimate: f64,
    },
    /// `r*_N` only exists when `ξ_p < N`.
    XiNotBelowOrder { p: f64, xi: f64, order: usize },
    /// The series does not carry a certified sup-norm bound of 1.
    MissingCertificate,
    /// The operation needs an exact polynomial, not a truncated series.
    NotPolynomial,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NoSignChange { f_lo, f_hi } => {
                write!(
                    f,
                    "bracket has no sign change: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}"
                )
            }
            Error::NotConverged {
                iterations,
                last_estimate,
            } => write!(
                f,
                "no convergence after {iterations} iterations (last estimate {last_estimate:e})"
            ),
            Error::XiNotBelowOrder { p, xi, order } => {
                write!(f, "r*_N needs xi_p < N, but xi_{p} = {xi} and N = {order}")
            }
            Error::MissingCertificate => f.write_str("series has no certified unit norm bound"),
            Error::NotPolynomial => {
                f.write_str("series is truncated, an exact polynomial is required")
            }
        }
    }
}

impl core::error::Error for Error {}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidInput(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
