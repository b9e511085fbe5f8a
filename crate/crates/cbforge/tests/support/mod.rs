//! Oracles and check suites shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

pub mod oracle;
pub mod suites;

#[allow(unused_imports)]
pub use oracle::*;
#[allow(unused_imports)]
pub use suites::*;

use cbforge::blueprints::Blueprint;

pub fn fixture(name: &str) -> Blueprint {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    Blueprint::ingest(name, &text).unwrap_or_else(|e| panic!("{path}: {e}"))
}
