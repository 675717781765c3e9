//! Command-line front end: problem specs in, geometry reports, trajectories,
//! sweeps and validation summaries out.

pub mod error;
pub mod format;
pub mod report;
pub mod spec;
pub mod sweep;
pub mod trajectory;
pub mod validate;

pub use error::{CliError, Result};
pub use report::{build_report, GeometryReport};
pub use spec::{Problem, ProblemSpec};
