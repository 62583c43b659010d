//! File formats, the test corpus and the job runner behind the `modforge`
//! binary.

pub mod corpus;
pub mod report;
pub mod run;
pub mod schema;

pub use report::Report;
pub use run::{run, Command, Job};
