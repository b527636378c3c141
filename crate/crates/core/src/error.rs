use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum RigError {
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: u32 },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("feature {w} out of range for m = {m}")]
    FeatureOutOfRange { w: u64, m: u64 },
    #[error("incompatible vertex sets: n = {left} vs n = {right}")]
    MismatchedVertexCount { left: usize, right: usize },
    #[error("parse error: {what}")]
    Parse { what: String },
    #[error("parameter {name} = {value} out of range: {why}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        why: String,
    },
    #[error("degenerate input: {what}")]
    Degenerate { what: String },
    #[error("config error in field `{field}`: {why}")]
    Config { field: String, why: String },
    #[error("unknown preset {name:?}; available: {available}")]
    UnknownPreset { name: String, available: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, RigError>;
