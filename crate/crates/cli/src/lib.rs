//! Library behind the `vextra` binary: CLI verb implementations, the
//! overhead benchmark harness, and seeded workload generation.

pub mod bench;
pub mod commands;
pub mod workload;
