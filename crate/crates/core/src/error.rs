use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of an operation.
    Domain(String),
    NotInvertible,
    LogExpDomain(String),
    /// `q` on the negative real axis, where `q^z` has no principal value.
    QOnCut,
    OutsideUnitDisk,
    InvalidGraph(String),
    CutoffNotExact(usize),
    DtIntegrality { n: i64, d: u32, value: String },
    OutsideConvergenceStrip(i64),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::NotInvertible => write!(f, "not invertible"),
            Error::LogExpDomain(s) => write!(f, "log/exp domain: {s}"),
            Error::QOnCut => write!(f, "q on cut"),
            Error::OutsideUnitDisk => write!(f, "outside unit disk"),
            Error::InvalidGraph(s) => write!(f, "malformed graph: {s}"),
            Error::CutoffNotExact(e) => write!(f, "cutoff not exact: edge {e} has zero a-degree"),
            Error::DtIntegrality { n, d, value } => {
                write!(f, "DT integrality violation at n={n}, d={d}: {value}")
            }
            Error::OutsideConvergenceStrip(s) => write!(f, "outside convergence strip: s={s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
