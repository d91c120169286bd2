//! Library side of the `sch` binary, shared with its integration tests.

pub mod verify;
