//! Campaign runners behind the `ppl` binary: job definitions,
//! per-instance evaluation, theorem checks, and the resumable JSONL
//! record writer.

pub mod campaign;
pub mod job;
pub mod runner;
