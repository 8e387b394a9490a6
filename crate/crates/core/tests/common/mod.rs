//! Test-only oracles and generators, shared with the acceptance suite.
#![allow(dead_code)]

pub mod gen;
pub mod oracle;
