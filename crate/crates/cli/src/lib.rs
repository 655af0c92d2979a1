//! Command-line harness for the brace algebra identities: workspace files,
//! named checks, and seeded fuzzing.

pub mod app;
pub mod checks;
pub mod random;

pub use app::run;
