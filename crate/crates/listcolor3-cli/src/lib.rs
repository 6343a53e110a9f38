//! Command-line surface for the `listcolor3` solver: the lcol file format,
//! assignment files, the stats record, and the subcommand runner.

pub mod format;
pub mod run;
pub mod stats;

pub use format::{parse_assignment, parse_lcol, write_assignment, write_lcol, ParseError};
pub use run::{run, Cli, EXIT_ABORTED, EXIT_NEGATIVE, EXIT_POSITIVE, EXIT_USAGE};
pub use stats::{BenchSummary, CaseCountsRecord, StatsRecord};
