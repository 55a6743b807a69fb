//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enum.
///
/// Exit-code mapping used by the CLI: `Usage`/`Schema`/`Domain` map to 2,
/// `Capacity` maps to 3, everything else to 2 as well. Claim failures are not
/// errors; they are reported through [`crate::witnesses::WitnessReport`].
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact engine would exceed its representable size.
    #[error("capacity error: {what} requires {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// A greedy index scan hit its limit before producing enough terms.
    /// Carries the indices found so far.
    #[error("scan limit {scan_limit} reached with only {} of the requested indices", partial.len())]
    ScanExhausted { scan_limit: u64, partial: Vec<u64> },

    /// A subsequence selection asked for an index the base series lacks.
    #[error("index {0} not present in the base series")]
    IndexNotInSeries(u64),

    /// A point stream ended before the requested horizon.
    #[error("point stream exhausted after {delivered} of {requested} points")]
    StreamExhausted { delivered: u64, requested: u64 },

    /// A series operation received an empty series.
    #[error("empty series")]
    EmptySeries,

    /// Configuration or serialized-input problems, with field context.
    #[error("schema error: {0}")]
    Schema(String),

    /// Unknown witness name; carries the catalog for the CLI listing.
    #[error("unknown witness `{name}`; available: {}", catalog.join(", "))]
    UnknownWitness { name: String, catalog: Vec<String> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    /// Process exit code for the CLI: 2 for usage/schema/domain, 3 for capacity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            _ => 2,
        }
    }
}
