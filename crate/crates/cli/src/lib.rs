//! Command-line front end for the decoding laboratory: instance files,
//! solver invocation, the exponent-table report, the filtering benchmark
//! and the Johnson-gap check.

pub mod bench;
pub mod instance_file;
pub mod johnson_report;
pub mod report;

/// Process exit codes used by the binary: 0 solved/ok, 1 not found /
/// check failed, 2 usage or parse error, 3 resource refusal.
pub mod exit_codes {
    pub const OK: i32 = 0;
    pub const NOT_FOUND: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
}
