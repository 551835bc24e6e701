//! File formats, example profiles, JSON reports and the HTTP service around
//! the `fcprofile` library.

pub mod fixtures;
pub mod io;
pub mod report;
pub mod batch;
pub mod service;
