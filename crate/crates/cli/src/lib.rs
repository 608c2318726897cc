//! Library side of the `pscomp` command-line tool: coefficient file parsing,
//! the benchmark harness and the selftest suites. The binary in `main.rs` is
//! a thin argument-and-exit-code wrapper around these.

pub mod bench;
pub mod format;
pub mod selftest;
