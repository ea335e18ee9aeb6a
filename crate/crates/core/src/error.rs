use alloc::string::String;
use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Mesh construction rejected; the message names the violated bound.
    Mesh(&'static str),
    /// A field or trace does not match the mesh it is used with.
    ShapeMismatch { expected: usize, found: usize },
    /// Model parameters violate a structural constraint.
    InvalidParams(String),
    /// A function was evaluated outside its domain.
    Domain(&'static str),
    /// Hypothesis of the comparison lemma violated, or a bad oracle request.
    Oracle(&'static str),
    /// Invalid simulation configuration.
    Config(String),
    /// Nonlinear solve or quadrature failure.
    Numerical(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Mesh(msg) => write!(f, "invalid mesh: {msg}"),
            Error::ShapeMismatch { expected, found } => {
                write!(f, "shape mismatch: expected {expected} values, found {found}")
            }
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Domain(msg) => write!(f, "{msg}"),
            Error::Oracle(msg) => write!(f, "{msg}"),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
