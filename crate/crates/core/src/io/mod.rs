//! Instance files, seeded generators, and the verification and benchmark
//! harnesses behind the command-line tool.

pub mod bench;
pub mod format;
pub mod generate;
pub mod verify;

pub use format::{emit_instance, parse_instance};
pub use generate::{gen_random, Profile};
