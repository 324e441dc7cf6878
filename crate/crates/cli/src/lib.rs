//! Task-file front end for `gaql-core`.
//!
//! A task file holds one JSON command per line. [`task`] loads and validates
//! it, [`runner`] executes it and produces one JSON record per command.

pub mod runner;
pub mod task;

pub use runner::{exit_code, run, CommandError, Options, OutputRecord, Runner, Status};
pub use task::{Command, Grid, LoadError, TaskFile};
