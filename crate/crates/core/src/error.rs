use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget { what: &'static str, needed: u128, limit: u128 },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element is not effective")]
    NotEffective,
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("d^2 != 0 at degree {0}")]
    NotAComplex(usize),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no isomorphism certificate found: {0}")]
    NoCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
