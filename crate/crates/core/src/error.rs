use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not skew-hermitian (residual {0:.3e})")]
    NotSkewHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("input is not a unitary group element (residual {0:.3e})")]
    NotGroupElement(f64),
    #[error("input is not in SU(2) (residual {0:.3e})")]
    NotSU2(f64),
    #[error("Casimir eigenvalue clusters cannot be separated (gap {0:.3e})")]
    DegenerateSpectrum(f64),
    #[error("spectrum deviates from the closed form by {0:.3e}")]
    SpectrumMismatch(f64),
    #[error("function is not real-valued (matrix not self-adjoint, residual {0:.3e})")]
    NotSelfAdjoint(f64),
    #[error("quadrature of degree {have} cannot integrate degree {need} exactly")]
    DegreeOverflow { have: usize, need: usize },
    #[error("Berezin transform not scalar on sector {sector} (variance {variance:.3e})")]
    SectorNotScalar { sector: usize, variance: f64 },
    #[error("invalid pivot: {0}")]
    BadPivot(String),
    #[error("band limit {band} too small for level {level}")]
    BandTooSmall { band: usize, level: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
