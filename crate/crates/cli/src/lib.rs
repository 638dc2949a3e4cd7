//! Report types shared by the `dilog-lab` binary and its tests.

pub mod report;
