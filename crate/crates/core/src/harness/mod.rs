//! Reference fixtures and executable checks of the observed identities.

pub mod checks;
pub mod families;
pub mod fixtures;
pub mod report;

pub use fixtures::{Fixture, FixtureSet, Payload};
pub use report::{exit_code, render_table, CheckReport, Counterexample, Recorder, Status};
pub use checks::{run_check, run_checks, CheckParams, CHECK_IDS, PROVED};
