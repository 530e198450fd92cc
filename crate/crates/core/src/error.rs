use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input fell outside the domain of the relation being evaluated.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    /// The load term reached 1, where q/(2(1-q)) has no finite value.
    #[error("saturated queue: load term {0} must lie in [0, 1)")]
    SaturatedQueue(f64),

    #[error("negative inter-frame space: T_ifs = T_data - T_ack = {t_data} - {t_ack} < 0")]
    NegativeInterFrameSpace { t_data: f64, t_ack: f64 },

    #[error("empty range: lo={lo}, hi={hi}, step={step}")]
    EmptyRange { lo: f64, hi: f64, step: f64 },

    #[error("zero delay: throughput is undefined")]
    ZeroDelay,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An event was scheduled before the current clock. This is a bug in a
    /// protocol state machine, not a user error.
    #[error("event scheduled in the past: t={time} < clock={clock}")]
    EventInPast { time: f64, clock: f64 },

    #[error("empty table")]
    EmptyTable,
}

pub type Result<T> = std::result::Result<T, Error>;
