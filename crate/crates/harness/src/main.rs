//! `ppl`: longest-path statistics, partition constructions, and
//! conjecture search campaigns over digraph files.
//!
//! Exit codes: 0 success/verified, 1 counterexample candidate (or a
//! construction defect), 2 usage or input error, 3 case exhaustion,
//! 4 budget exceeded.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ppl_core::gen::{CompositionProfile, OuterKind};
use ppl_core::{
    bny_partition_bruteforce, check_bny, check_ppc, lambda_profile, max_k_path_subdigraph,
    partition::certificate_json, partition_acyclic_composition, partition_semicomplete_composition,
    textio, verify_partition, Budget, Error as CoreError, PropertyKind,
};

use ppl_harness::job::{SearchJob, StreamSpec, TaskSpec, TheoremId};
use ppl_harness::runner::{run, RunConfig, RunSummary};

#[derive(Parser)]
#[command(name = "ppl", version, about = "Path partition laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PropArg {
    Bny,
    Ppc,
}

impl From<PropArg> for PropertyKind {
    fn from(p: PropArg) -> Self {
        match p {
            PropArg::Bny => PropertyKind::Bny,
            PropArg::Ppc => PropertyKind::Ppc,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Acyclic,
    Semicomplete,
    Bruteforce,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Digraph,
    Tournament,
    Semicomplete,
    AcyclicComposition,
    SemicompleteComposition,
    ExtendedSemicomplete,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Lemma1,
    Thm4,
    Thm5,
    Thm6,
    Sumrule,
    Monotone,
}

impl From<TheoremArg> for TheoremId {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Lemma1 => TheoremId::Lemma1,
            TheoremArg::Thm4 => TheoremId::Thm4,
            TheoremArg::Thm5 => TheoremId::Thm5,
            TheoremArg::Thm6 => TheoremId::Thm6,
            TheoremArg::Sumrule => TheoremId::Sumrule,
            TheoremArg::Monotone => TheoremId::Monotone,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the lambda profile of a digraph (text format).
    Lambda {
        #[arg(long)]
        input: PathBuf,
        /// Also print lambda_k for this k.
        #[arg(long)]
        k: Option<usize>,
        /// Print a maximum witness system as JSON (for --k, else k=1).
        #[arg(long)]
        witness: bool,
    },
    /// Partition a composition (JSON format) at a target q.
    Partition {
        #[arg(long)]
        composition: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Where case-exhaustion / defect events are appended.
        #[arg(long, default_value = "ppl-events.jsonl")]
        events: PathBuf,
    },
    /// Certify a property on one digraph by exhaustive sweep.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        property: PropArg,
    },
    /// Run a persisted, resumable instance campaign.
    Search {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "bny")]
        property: PropArg,
        /// Order (exhaustive: smallest order; random: max order).
        #[arg(long)]
        n: usize,
        /// Largest order for exhaustive mode.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value = "digraph")]
        family: FamilyArg,
        #[arg(long)]
        arc_prob: Option<f64>,
        /// Instance budget (required for random mode).
        #[arg(long)]
        count: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        override_checkpoint: bool,
        #[arg(long, default_value_t = 256)]
        checkpoint_every: u64,
        #[arg(long)]
        max_seconds: Option<u64>,
    },
    /// Run a theorem property campaign on seeded random instances.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the family's total-order cap.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        override_checkpoint: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::from_env();
    match dispatch(cli.cmd, &budget) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code_for_error(&e))
        }
    }
}

fn code_for_error(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::Budget { .. }) => 4,
        Some(CoreError::CaseExhaustion { .. }) => 3,
        Some(CoreError::SweepExhausted { .. }) | Some(CoreError::VerificationFailed { .. }) => 1,
        Some(CoreError::PartOracle { source, .. }) => match source.as_ref() {
            CoreError::Budget { .. } => 4,
            CoreError::SweepExhausted { .. } => 1,
            _ => 2,
        },
        _ => 2,
    }
}

fn dispatch(cmd: Cmd, budget: &Budget) -> Result<ExitCode> {
    match cmd {
        Cmd::Lambda { input, k, witness } => cmd_lambda(input, k, witness, budget),
        Cmd::Partition {
            composition,
            q,
            method,
            events,
        } => cmd_partition(composition, q, method, events, budget),
        Cmd::Check { input, property } => cmd_check(input, property, budget),
        Cmd::Search {
            mode,
            property,
            n,
            n_max,
            family,
            arc_prob,
            count,
            seed,
            out,
            resume,
            override_checkpoint,
            checkpoint_every,
            max_seconds,
        } => {
            let stream = build_stream(mode, family, n, n_max, arc_prob);
            let job = SearchJob {
                stream,
                task: TaskSpec::Property {
                    property: property.into(),
                },
                seed,
            };
            let cfg = RunConfig {
                out: Some(out),
                count,
                max_seconds,
                checkpoint_every,
                resume,
                override_checkpoint,
            };
            let summary = run(&job, &cfg, budget)?;
            print_summary("search", &summary);
            Ok(summary_exit(&summary))
        }
        Cmd::Verify {
            theorem,
            count,
            seed,
            max_order,
            out,
            resume,
            override_checkpoint,
        } => {
            let theorem: TheoremId = theorem.into();
            let job = SearchJob {
                stream: theorem.default_stream(max_order),
                task: TaskSpec::Theorem { theorem },
                seed,
            };
            let cfg = RunConfig {
                out,
                count: Some(count),
                resume,
                override_checkpoint,
                ..RunConfig::default()
            };
            let summary = run(&job, &cfg, budget)?;
            print_summary(theorem.name(), &summary);
            Ok(summary_exit(&summary))
        }
    }
}

fn cmd_lambda(
    input: PathBuf,
    k: Option<usize>,
    witness: bool,
    budget: &Budget,
) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&input)
        .with_context(|| format!("cannot read {}", input.display()))?;
    let d = textio::parse_digraph(&text)?;
    let profile = lambda_profile(&d, budget)?;
    let rendered: Vec<String> = profile.values().iter().map(|v| v.to_string()).collect();
    println!("lambda: {}", rendered.join(" "));
    if let Some(k) = k {
        let w = max_k_path_subdigraph(&d, k, budget)?;
        println!("lambda_{k}: {}", w.order());
        if witness {
            println!("{}", serde_json::to_string(&w)?);
        }
    } else if witness {
        let w = max_k_path_subdigraph(&d, 1, budget)?;
        println!("{}", serde_json::to_string(&w)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_partition(
    path: PathBuf,
    q: usize,
    method: MethodArg,
    events: PathBuf,
    budget: &Budget,
) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let spec = textio::parse_composition(&text)?;
    let (q_dig, _) = spec.build()?;
    let outcome = match method {
        MethodArg::Acyclic => {
            partition_acyclic_composition(&spec, q, None, budget).map(|(p, t)| (p, Some(t)))
        }
        MethodArg::Semicomplete => {
            partition_semicomplete_composition(&spec, q, None, budget).map(|(p, t)| (p, Some(t)))
        }
        MethodArg::Bruteforce => bny_partition_bruteforce(&q_dig, q, budget).map(|p| (p, None)),
    };
    match outcome {
        Ok((partition, trace)) => {
            let verdict = verify_partition(&q_dig, &partition, budget)?;
            let report = serde_json::json!({
                "partition": partition,
                "trace": trace,
                "verdict": verdict,
            });
            println!("{report}");
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ CoreError::CaseExhaustion { .. })
        | Err(e @ CoreError::VerificationFailed { .. })
        | Err(e @ CoreError::SweepExhausted { .. }) => {
            persist_event(&events, &spec, q, &e)?;
            eprintln!("error: {e} (event appended to {})", events.display());
            Ok(ExitCode::from(code_for_error(&anyhow::Error::new(e))))
        }
        Err(e) => Err(e.into()),
    }
}

fn persist_event(
    events: &PathBuf,
    spec: &ppl_core::CompositionSpec,
    q: usize,
    e: &CoreError,
) -> Result<()> {
    let (kind, trace) = match e {
        CoreError::CaseExhaustion { trace_json, .. } => ("case_exhaustion", trace_json.clone()),
        CoreError::VerificationFailed { trace_json, .. } => {
            ("verification_failure", trace_json.clone())
        }
        CoreError::SweepExhausted { .. } => ("counterexample_candidate", String::new()),
        _ => ("error", String::new()),
    };
    let event = serde_json::json!({
        "kind": kind,
        "q": q,
        "composition": spec,
        "detail": e.to_string(),
        "trace": trace,
    });
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(events)?;
    writeln!(f, "{event}")?;
    Ok(())
}

fn cmd_check(input: PathBuf, property: PropArg, budget: &Budget) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&input)
        .with_context(|| format!("cannot read {}", input.display()))?;
    let d = textio::parse_digraph(&text)?;
    let cert = match property {
        PropArg::Bny => check_bny(&d, budget)?,
        PropArg::Ppc => check_ppc(&d, budget)?,
    };
    println!("{}", certificate_json(&d, &cert, None));
    if cert.is_complete() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn build_stream(
    mode: ModeArg,
    family: FamilyArg,
    n: usize,
    n_max: Option<usize>,
    arc_prob: Option<f64>,
) -> StreamSpec {
    match mode {
        ModeArg::Exhaustive => StreamSpec::Exhaustive {
            n_min: n,
            n_max: n_max.unwrap_or(n),
        },
        ModeArg::Random => {
            let composition = |outer, arcless| StreamSpec::RandomCompositions {
                profile: CompositionProfile {
                    outer,
                    max_outer: 4,
                    max_part: 3,
                    max_total: n,
                    arc_prob: arc_prob.unwrap_or(0.45),
                    arcless_parts: arcless,
                },
            };
            match family {
                FamilyArg::Digraph => StreamSpec::RandomDigraphs { max_n: n, arc_prob },
                FamilyArg::Tournament => StreamSpec::RandomTournaments { n },
                FamilyArg::Semicomplete => StreamSpec::RandomSemicomplete { max_n: n },
                FamilyArg::AcyclicComposition => composition(OuterKind::Acyclic, false),
                FamilyArg::SemicompleteComposition => composition(OuterKind::Semicomplete, false),
                FamilyArg::ExtendedSemicomplete => composition(OuterKind::Semicomplete, true),
            }
        }
    }
}

fn print_summary(label: &str, s: &RunSummary) {
    println!(
        "{label}: {}/{} pass, {} counterexample-candidates, {} case-exhaustions, {} defects, \
         {} failures, {} budget-skips ({:.1?}{})",
        s.pass,
        s.processed,
        s.counterexamples,
        s.case_exhaustions,
        s.defects,
        s.failures,
        s.budget_skips,
        s.elapsed,
        if s.completed {
            ""
        } else {
            ", stopped at wall budget"
        }
    );
}

fn summary_exit(s: &RunSummary) -> ExitCode {
    if s.counterexamples > 0 || s.defects > 0 || s.failures > 0 {
        ExitCode::from(1)
    } else if s.case_exhaustions > 0 {
        ExitCode::from(3)
    } else if !s.completed {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    }
}
