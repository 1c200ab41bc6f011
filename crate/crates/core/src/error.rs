use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("data set is empty")]
    EmptyData,
    #[error("value at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("{labels} labels given for {values} values")]
    LabelCount { labels: usize, values: usize },
    #[error("label {label} at index {index} has no class name")]
    UnknownLabel { index: usize, label: u32 },
    #[error("invalid plot domain: {0}")]
    InvalidDomain(&'static str),
    #[error("density-warped metric has no density estimate attached")]
    MissingDensity,
    #[error("bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),
    #[error("cannot assign sites without dots")]
    NoDots,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("data set has no class labels")]
    MissingLabels,
    #[error("realizations disagree on {0}")]
    MismatchedRealizations(&'static str),
    #[error("spectrum needs at least one realization")]
    NoRealizations,
    #[error("spectrum bound must be at least 8, got {0}")]
    SpectrumBound(usize),
}
