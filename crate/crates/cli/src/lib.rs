//! File formats, the experiment harness and fixture generation behind the
//! `altiso` binary.

pub mod experiment;
pub mod fixtures;
pub mod format;
