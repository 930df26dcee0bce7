//! Job definitions and per-instance evaluation.
//!
//! A record stream is a pure function of (job, seed): instance i is
//! generated from an rng derived from (seed, i), evaluated, and
//! serialized without any wall-clock content. That is what makes runs
//! byte-identical across reruns and kill-and-resume.

use rand::Rng;
use serde::{Deserialize, Serialize};

use ppl_core::gen::{self, CompositionProfile, OuterKind};
use ppl_core::partition::{verify_partition_via, SolverRoute};
use ppl_core::solver::oracle;
use ppl_core::{
    check_bny, check_bny_composition, check_ppc, lambda_profile, Budget, CompositionSpec,
    CompositionStrategy, Digraph, Error, PropertyKind,
};

/// Instance family of a job; per-index content only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "stream", rename_all = "snake_case")]
pub enum StreamSpec {
    /// Every labeled digraph with n in n_min..=n_max, in cursor order.
    Exhaustive { n_min: usize, n_max: usize },
    /// Random digraphs: n drawn in 1..=max_n, then the arc probability
    /// (fixed, or drawn in 0.1..0.9 when absent), then the arcs.
    RandomDigraphs { max_n: usize, arc_prob: Option<f64> },
    /// Random tournaments on exactly n vertices.
    RandomTournaments { n: usize },
    /// Random semicomplete digraphs: n drawn in 1..=max_n.
    RandomSemicomplete { max_n: usize },
    /// Random compositions from a family profile.
    RandomCompositions { profile: CompositionProfile },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    Digraph { digraph: Digraph },
    Composition { composition: CompositionSpec },
}

impl StreamSpec {
    /// Stream length when finite (exhaustive mode).
    pub fn total(&self) -> Option<u64> {
        match self {
            StreamSpec::Exhaustive { n_min, n_max } => {
                let mut total: u128 = 0;
                for n in *n_min..=*n_max {
                    total += gen::all_digraph_count(n);
                }
                u64::try_from(total).ok()
            }
            _ => None,
        }
    }

    pub fn validate(&self, budget: &Budget) -> Result<(), Error> {
        match self {
            StreamSpec::Exhaustive { n_min, n_max } => {
                if n_min > n_max {
                    return Err(Error::InvalidInstance(format!(
                        "empty n range {n_min}..{n_max}"
                    )));
                }
                // Probes the bit budget for the largest order.
                gen::all_digraphs(*n_max, budget).map(|_| ())
            }
            StreamSpec::RandomCompositions { profile } => profile.validate(),
            StreamSpec::RandomDigraphs { max_n, arc_prob } => {
                if *max_n == 0 {
                    return Err(Error::InvalidInstance("max_n must be >= 1".into()));
                }
                if let Some(p) = arc_prob {
                    if !(0.0..=1.0).contains(p) {
                        return Err(Error::InvalidInstance(format!("arc_prob {p} not in [0,1]")));
                    }
                }
                Ok(())
            }
            StreamSpec::RandomTournaments { n } if *n == 0 => {
                Err(Error::InvalidInstance("n must be >= 1".into()))
            }
            StreamSpec::RandomSemicomplete { max_n } if *max_n == 0 => {
                Err(Error::InvalidInstance("max_n must be >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// The instance at stream position `index`.
    pub fn instance_at(&self, seed: u64, index: u64) -> Instance {
        match self {
            StreamSpec::Exhaustive { n_min, n_max } => {
                let mut left = index as u128;
                for n in *n_min..=*n_max {
                    let count = gen::all_digraph_count(n);
                    if left < count {
                        return Instance::Digraph {
                            digraph: gen::digraph_at(n, left),
                        };
                    }
                    left -= count;
                }
                panic!("index {index} beyond exhaustive stream");
            }
            StreamSpec::RandomDigraphs { max_n, arc_prob } => {
                let mut rng = gen::instance_rng(seed, index);
                let n = rng.gen_range(1..=*max_n);
                let p = arc_prob.unwrap_or_else(|| rng.gen_range(0.1..0.9));
                Instance::Digraph {
                    digraph: gen::random_digraph_with(n, p, &mut rng),
                }
            }
            StreamSpec::RandomTournaments { n } => {
                let mut rng = gen::instance_rng(seed, index);
                Instance::Digraph {
                    digraph: gen::tournament_with(*n, &mut rng),
                }
            }
            StreamSpec::RandomSemicomplete { max_n } => {
                let mut rng = gen::instance_rng(seed, index);
                let n = rng.gen_range(1..=*max_n);
                Instance::Digraph {
                    digraph: gen::random_semicomplete_with(n, &mut rng),
                }
            }
            StreamSpec::RandomCompositions { profile } => {
                let mut rng = gen::instance_rng(seed, index);
                let spec = gen::random_composition_with(profile, &mut rng)
                    .expect("validated profile generates valid specs");
                Instance::Composition { composition: spec }
            }
        }
    }
}

/// The theorem-shaped property checks runnable as campaigns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Extended semicomplete: every maximum k-path subdigraph covers
    /// exactly v_{i,k} vertices of part i.
    Lemma1,
    /// Semicomplete compositions: the same with l_{i,k}.
    Thm4,
    /// Acyclic compositions: signature identities, cross-part
    /// ordering, and a verifying construction at every q.
    Thm5,
    /// Semicomplete compositions: a case is found and verifies at
    /// every q; case-3 outer subdigraphs are acyclic.
    Thm6,
    /// lambda_k(Q) = sum of l_{i,k} on semicomplete compositions.
    Sumrule,
    /// lambda_k nondecreasing in k, lambda_n = n, both solver routes
    /// agreeing.
    Monotone,
}

impl TheoremId {
    /// The instance family the theorem's hypothesis asks for.
    /// `max_order` overrides the family's total-order cap.
    pub fn default_stream(self, max_order: Option<usize>) -> StreamSpec {
        let composition =
            |outer, max_outer, max_total: usize, arcless| StreamSpec::RandomCompositions {
                profile: CompositionProfile {
                    outer,
                    max_outer,
                    max_part: 3,
                    max_total: max_order.unwrap_or(max_total),
                    arc_prob: 0.45,
                    arcless_parts: arcless,
                },
            };
        match self {
            TheoremId::Lemma1 => StreamSpec::RandomCompositions {
                profile: CompositionProfile {
                    outer: OuterKind::Semicomplete,
                    max_outer: 6,
                    max_part: 4,
                    max_total: max_order.unwrap_or(8),
                    arc_prob: 0.45,
                    arcless_parts: true,
                },
            },
            TheoremId::Thm4 => composition(OuterKind::Semicomplete, 5, 9, false),
            TheoremId::Thm5 => composition(OuterKind::Acyclic, 4, 12, false),
            TheoremId::Thm6 => composition(OuterKind::Semicomplete, 4, 12, false),
            TheoremId::Sumrule => composition(OuterKind::Semicomplete, 5, 9, false),
            TheoremId::Monotone => StreamSpec::RandomDigraphs {
                max_n: max_order.unwrap_or(8),
                arc_prob: None,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Thm4 => "thm4",
            TheoremId::Thm5 => "thm5",
            TheoremId::Thm6 => "thm6",
            TheoremId::Sumrule => "sumrule",
            TheoremId::Monotone => "monotone",
        }
    }
}

/// What is evaluated per instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum TaskSpec {
    /// Certify the property on each instance (brute force on plain
    /// digraphs, the matching construction on compositions).
    Property { property: PropertyKind },
    /// Run one theorem's property check on each instance.
    Theorem { theorem: TheoremId },
}

/// Complete job definition; (job, index) determines a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchJob {
    pub stream: StreamSpec,
    pub task: TaskSpec,
    pub seed: u64,
}

/// Per-instance outcome; everything here is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// Witnesses exist for every q in range.
    Certificate {
        q_max: usize,
        witnesses: usize,
    },
    /// Some q has no witness after an exhaustive sweep: embeds the
    /// machine-checkable failing q (the instance is in the record).
    CounterexampleCandidate {
        property: PropertyKind,
        q: usize,
        swept: u64,
    },
    /// The semicomplete construction found no applicable case.
    CaseExhaustion {
        q: usize,
        trace: String,
    },
    /// A construction emitted a partition its own verifier rejected.
    VerificationDefect {
        q: usize,
        detail: String,
        trace: String,
    },
    TheoremPass {
        checks: u64,
    },
    TheoremFail {
        detail: String,
    },
    /// Instance exceeded a size cap and was skipped.
    BudgetSkip {
        reason: String,
    },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(
            self,
            Outcome::Certificate { .. } | Outcome::TheoremPass { .. }
        )
    }
}

/// One line of the persisted JSONL stream. Evaluation time is kept in
/// memory for summaries but excluded from serialization so record
/// streams stay byte-identical across reruns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub index: u64,
    pub instance: Instance,
    pub outcome: Outcome,
    #[serde(skip)]
    pub elapsed_us: u64,
}

/// Evaluates one instance under a task.
pub fn evaluate(task: &TaskSpec, instance: &Instance, budget: &Budget) -> Outcome {
    match task {
        TaskSpec::Property { property } => evaluate_property(*property, instance, budget),
        TaskSpec::Theorem { theorem } => {
            crate::campaign::evaluate_theorem(*theorem, instance, budget)
        }
    }
}

fn evaluate_property(property: PropertyKind, instance: &Instance, budget: &Budget) -> Outcome {
    match instance {
        Instance::Digraph { digraph } => {
            let result = match property {
                PropertyKind::Bny => check_bny(digraph, budget),
                PropertyKind::Ppc => check_ppc(digraph, budget),
            };
            match result {
                Ok(cert) => {
                    if let Some(f) = cert.failures.first() {
                        Outcome::CounterexampleCandidate {
                            property,
                            q: f.q,
                            swept: f.swept,
                        }
                    } else {
                        Outcome::Certificate {
                            q_max: cert.q_max(),
                            witnesses: cert.witnesses.len(),
                        }
                    }
                }
                Err(Error::Budget { what, limit, got }) => Outcome::BudgetSkip {
                    reason: format!("{what}: n = {got} > {limit}"),
                },
                Err(e) => Outcome::TheoremFail {
                    detail: e.to_string(),
                },
            }
        }
        Instance::Composition { composition } => {
            let strategy = if composition.outer.is_semicomplete() {
                CompositionStrategy::Semicomplete
            } else if composition.outer.is_acyclic() {
                CompositionStrategy::Acyclic
            } else {
                CompositionStrategy::Bruteforce
            };
            match check_bny_composition(composition, None, strategy, None, budget) {
                Ok(cc) => {
                    if let Some(e) = cc.case_exhaustions.first() {
                        Outcome::CaseExhaustion {
                            q: e.q,
                            trace: e.trace_json.clone(),
                        }
                    } else if let Some(f) = cc.certificate.failures.first() {
                        Outcome::CounterexampleCandidate {
                            property,
                            q: f.q,
                            swept: f.swept,
                        }
                    } else {
                        Outcome::Certificate {
                            q_max: cc.certificate.q_max(),
                            witnesses: cc.certificate.witnesses.len(),
                        }
                    }
                }
                Err(Error::Budget { what, limit, got }) => Outcome::BudgetSkip {
                    reason: format!("{what}: n = {got} > {limit}"),
                },
                Err(Error::VerificationFailed {
                    q,
                    detail,
                    trace_json,
                }) => Outcome::VerificationDefect {
                    q,
                    detail,
                    trace: trace_json,
                },
                Err(e) => Outcome::TheoremFail {
                    detail: e.to_string(),
                },
            }
        }
    }
}

/// Verifies an emitted partition again through the subset-DP oracle
/// route, so construction and re-verification rest on disjoint solver
/// code.
pub(crate) fn oracle_recheck(
    d: &Digraph,
    p: &ppl_core::Partition,
    budget: &Budget,
) -> Result<bool, Error> {
    Ok(verify_partition_via(d, p, SolverRoute::SubsetDp, budget)?.bny_holds())
}

/// Cross-route profile agreement used by the monotone campaign.
pub(crate) fn profiles_agree(d: &Digraph, budget: &Budget) -> Result<bool, Error> {
    let primary = lambda_profile(d, budget)?;
    let reference = oracle::lambda_profile(d, budget)?;
    Ok(primary == reference)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_stream_totals() {
        let s = StreamSpec::Exhaustive { n_min: 0, n_max: 4 };
        assert_eq!(s.total(), Some(1 + 1 + 4 + 64 + 4096));
    }

    #[test]
    fn exhaustive_stream_indexing_crosses_orders() {
        let s = StreamSpec::Exhaustive { n_min: 0, n_max: 2 };
        // Index 0: the empty digraph; 1: the one-vertex digraph;
        // 2..=5: the four digraphs on 2 vertices.
        match s.instance_at(0, 0) {
            Instance::Digraph { digraph } => assert_eq!(digraph.n(), 0),
            _ => panic!(),
        }
        match s.instance_at(0, 2) {
            Instance::Digraph { digraph } => {
                assert_eq!(digraph.n(), 2);
                assert_eq!(digraph.arc_count(), 0);
            }
            _ => panic!(),
        }
        match s.instance_at(0, 5) {
            Instance::Digraph { digraph } => assert_eq!(digraph.arc_count(), 2),
            _ => panic!(),
        }
    }

    #[test]
    fn random_streams_are_seed_and_index_pure() {
        let s = StreamSpec::RandomSemicomplete { max_n: 6 };
        assert_eq!(s.instance_at(7, 3), s.instance_at(7, 3));
        assert_ne!(s.instance_at(7, 3), s.instance_at(7, 4));
        assert_ne!(s.instance_at(7, 3), s.instance_at(8, 3));
    }

    #[test]
    fn property_outcome_on_small_digraphs() {
        let budget = Budget::default();
        let instance = Instance::Digraph {
            digraph: ppl_core::samples::directed_path(3),
        };
        let task = TaskSpec::Property {
            property: PropertyKind::Bny,
        };
        match evaluate(&task, &instance, &budget) {
            Outcome::Certificate {
                q_max: 2,
                witnesses: 2,
            } => {}
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn record_serialization_excludes_timing() {
        let rec = ResultRecord {
            index: 3,
            instance: Instance::Digraph {
                digraph: Digraph::empty(1),
            },
            outcome: Outcome::Certificate {
                q_max: 0,
                witnesses: 0,
            },
            elapsed_us: 1234,
        };
        let js = serde_json::to_string(&rec).unwrap();
        assert!(!js.contains("elapsed"));
        let back: ResultRecord = serde_json::from_str(&js).unwrap();
        assert_eq!(back.elapsed_us, 0);
        assert_eq!(back.index, 3);
    }
}
