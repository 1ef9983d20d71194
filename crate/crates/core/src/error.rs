use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("endpoint {0} is a root; perturb the interval")]
    EndpointIsRoot(String),
    #[error("polynomial is not reciprocal")]
    NonReciprocal,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("interval touches a singularity of Ch_{0}")]
    Singularity(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("not a Salem polynomial: {0}")]
    NotSalem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data file: {0}")]
    Data(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Data(e.to_string())
    }
}
