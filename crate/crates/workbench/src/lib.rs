//! Command line and HTTP/JSON front end for `lattice-tax`.
//!
//! [`cli_dispatch`] runs one command line against arbitrary streams; the
//! `lattice-tax` binary is a thin wrapper around it. [`service::router`]
//! builds the HTTP API used by the browser companion.

pub mod cli;
pub mod input;
pub mod service;
pub mod views;

pub use cli::cli_dispatch;
pub use service::{router, ApiError, AppState};
