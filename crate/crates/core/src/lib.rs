pub mod analytic;
pub mod cli;
pub mod des;
pub mod error;
pub mod frame_timing;
pub mod protocols;
pub mod sweep;
pub mod technique;

pub use error::{Error, Result};
pub use technique::{Relation, Technique};
