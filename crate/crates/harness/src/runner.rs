//! JSONL campaign runner with resumable checkpoints.
//!
//! Records are appended one JSON object per line, in instance order.
//! Evaluation fans out across a thread pool in fixed chunks; the
//! single writer reassembles chunks in index order, so the byte stream
//! is independent of scheduling. A sidecar checkpoint
//! (`<out>.ckpt`) stores the job definition and the cursor; on resume
//! the log itself is the source of truth (complete lines count, any
//! partial tail from a kill is truncated) and the checkpoint must be
//! consistent with it unless explicitly overridden.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use ppl_core::Budget;

use crate::job::{evaluate, Outcome, ResultRecord, SearchJob};

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// JSONL output; None runs without persistence.
    pub out: Option<PathBuf>,
    /// Number of stream instances to process (absolute prefix length).
    /// Required for random streams; exhaustive streams default to
    /// their full length.
    pub count: Option<u64>,
    /// Wall-clock budget; the run stops at a chunk boundary once
    /// exceeded and can be resumed.
    pub max_seconds: Option<u64>,
    /// Checkpoint flush interval, in records.
    pub checkpoint_every: u64,
    pub resume: bool,
    /// Accept an inconsistent or missing checkpoint and trust the log.
    pub override_checkpoint: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            out: None,
            count: None,
            max_seconds: None,
            checkpoint_every: 256,
            resume: false,
            override_checkpoint: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunSummary {
    pub processed: u64,
    pub next_index: u64,
    pub target: u64,
    pub pass: u64,
    pub counterexamples: u64,
    pub case_exhaustions: u64,
    pub defects: u64,
    pub failures: u64,
    pub budget_skips: u64,
    pub elapsed: Duration,
    /// False when the wall budget cut the run short.
    pub completed: bool,
}

impl RunSummary {
    fn tally(&mut self, outcome: &Outcome) {
        match outcome {
            Outcome::Certificate { .. } | Outcome::TheoremPass { .. } => self.pass += 1,
            Outcome::CounterexampleCandidate { .. } => self.counterexamples += 1,
            Outcome::CaseExhaustion { .. } => self.case_exhaustions += 1,
            Outcome::VerificationDefect { .. } => self.defects += 1,
            Outcome::TheoremFail { .. } => self.failures += 1,
            Outcome::BudgetSkip { .. } => self.budget_skips += 1,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    job: SearchJob,
    next_index: u64,
    records: u64,
}

fn checkpoint_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".ckpt");
    PathBuf::from(p)
}

fn write_checkpoint(out: &Path, job: &SearchJob, next_index: u64) -> Result<()> {
    let path = checkpoint_path(out);
    let tmp = path.with_extension("ckpt.tmp");
    let ckpt = Checkpoint {
        job: job.clone(),
        next_index,
        records: next_index,
    };
    std::fs::write(&tmp, serde_json::to_vec(&ckpt)?)?;
    std::fs::rename(&tmp, &path)?;
    Ok(())
}

/// Counts complete lines and drops any partial tail left by a kill.
fn repair_log(path: &Path) -> Result<u64> {
    let mut file = OpenOptions::new().read(true).write(true).open(path)?;
    let mut buf = Vec::new();
    file.read_to_end(&mut buf)?;
    let keep = buf.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
    if keep < buf.len() {
        file.set_len(keep as u64)?;
        file.seek(SeekFrom::End(0))?;
    }
    Ok(buf[..keep].iter().filter(|&&b| b == b'\n').count() as u64)
}

fn resume_index(out: &Path, job: &SearchJob, cfg: &RunConfig) -> Result<u64> {
    if !out.exists() {
        if cfg.override_checkpoint {
            File::create(out)?;
            return Ok(0);
        }
        bail!("cannot resume: {} does not exist", out.display());
    }
    let lines = repair_log(out)?;
    let ckpt_file = checkpoint_path(out);
    let parsed: Result<Checkpoint> = std::fs::read(&ckpt_file)
        .context("checkpoint missing")
        .and_then(|bytes| serde_json::from_slice(&bytes).context("checkpoint unparseable"));
    match parsed {
        Ok(ckpt) if ckpt.job == *job && ckpt.records <= lines => Ok(lines),
        Ok(ckpt) if ckpt.job != *job => {
            if cfg.override_checkpoint {
                Ok(lines)
            } else {
                bail!(
                    "corrupt checkpoint: job definition in {} differs from this invocation \
                     (pass --override-checkpoint to trust the log)",
                    ckpt_file.display()
                )
            }
        }
        Ok(ckpt) => {
            if cfg.override_checkpoint {
                Ok(lines)
            } else {
                bail!(
                    "corrupt checkpoint: {} claims {} records but the log holds {} \
                     (pass --override-checkpoint to trust the log)",
                    ckpt_file.display(),
                    ckpt.records,
                    lines
                )
            }
        }
        Err(e) => {
            if cfg.override_checkpoint {
                Ok(lines)
            } else {
                bail!(
                    "corrupt checkpoint for {}: {e} (pass --override-checkpoint)",
                    out.display()
                )
            }
        }
    }
}

/// Runs a job, returning the outcome tallies. Record content is a
/// pure function of (job, index); this function only orchestrates
/// evaluation order, persistence, and budgets.
pub fn run(job: &SearchJob, cfg: &RunConfig, budget: &Budget) -> Result<RunSummary> {
    job.stream.validate(budget)?;
    let target = match (cfg.count, job.stream.total()) {
        (Some(c), Some(t)) => c.min(t),
        (Some(c), None) => c,
        (None, Some(t)) => t,
        (None, None) => bail!("random streams need --count"),
    };

    let mut start = 0u64;
    let mut writer = match &cfg.out {
        Some(path) => {
            if cfg.resume {
                start = resume_index(path, job, cfg)?;
            } else {
                File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
                write_checkpoint(path, job, 0)?;
            }
            let file = OpenOptions::new().append(true).open(path)?;
            Some(BufWriter::new(file))
        }
        None => None,
    };

    let started = Instant::now();
    let mut summary = RunSummary {
        target,
        completed: true,
        ..RunSummary::default()
    };
    let chunk = 64u64;
    let mut index = start;
    let mut since_checkpoint = 0u64;
    while index < target {
        if let Some(limit) = cfg.max_seconds {
            if started.elapsed() >= Duration::from_secs(limit) {
                summary.completed = false;
                break;
            }
        }
        let hi = (index + chunk).min(target);
        let records: Vec<ResultRecord> = (index..hi)
            .into_par_iter()
            .map(|i| {
                let instance = job.stream.instance_at(job.seed, i);
                let t0 = Instant::now();
                let outcome = evaluate(&job.task, &instance, budget);
                ResultRecord {
                    index: i,
                    instance,
                    outcome,
                    elapsed_us: t0.elapsed().as_micros() as u64,
                }
            })
            .collect();
        for record in &records {
            summary.tally(&record.outcome);
            if let Some(w) = writer.as_mut() {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")?;
            }
        }
        summary.processed += records.len() as u64;
        since_checkpoint += records.len() as u64;
        index = hi;
        if let (Some(w), Some(path)) = (writer.as_mut(), cfg.out.as_deref()) {
            w.flush()?;
            if since_checkpoint >= cfg.checkpoint_every {
                write_checkpoint(path, job, index)?;
                since_checkpoint = 0;
            }
        }
    }
    if let (Some(w), Some(path)) = (writer.as_mut(), cfg.out.as_deref()) {
        w.flush()?;
        write_checkpoint(path, job, index)?;
    }
    summary.next_index = index;
    summary.elapsed = started.elapsed();
    Ok(summary)
}
