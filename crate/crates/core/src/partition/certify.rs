//! Certificates: per-q witness partitions for a whole digraph or
//! composition, or counterexample records when some q has none.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::solver::SubsetTables;
use crate::{Budget, BuiltComposition, CompositionSpec, Digraph, Error, Result};

use super::bruteforce::sweep_with;
use super::{
    partition_acyclic_composition, partition_semicomplete_composition, verify_partition, CaseTrace,
    PartOracleFn, Partition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    /// Strong form: lambda_k(B) <= lambda_k(D) - q for every k <= |B|.
    Bny,
    /// Weak form: only k = 1 on B.
    Ppc,
}

/// A q with no witness: the sweep exhausted all bipartitions. Such a
/// record is machine-checkable in isolation by re-running the sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub q: usize,
    pub swept: u64,
    pub exhausted: bool,
}

/// Verified witnesses for every q in 1..lambda(D)-1, or counterexample
/// records for the q that have none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnyCertificate {
    pub property: PropertyKind,
    pub lambda: Vec<usize>,
    pub witnesses: BTreeMap<usize, Partition>,
    pub failures: Vec<CounterexampleRecord>,
}

impl BnyCertificate {
    /// True when every q in range has a verified witness.
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn q_max(&self) -> usize {
        self.lambda.first().copied().unwrap_or(0).saturating_sub(1)
    }
}

/// Checks the strong property by exhaustive sweep at every q.
pub fn check_bny(d: &Digraph, budget: &Budget) -> Result<BnyCertificate> {
    check_property(d, PropertyKind::Bny, budget)
}

/// Checks the weak property by exhaustive sweep at every q.
pub fn check_ppc(d: &Digraph, budget: &Budget) -> Result<BnyCertificate> {
    check_property(d, PropertyKind::Ppc, budget)
}

fn check_property(d: &Digraph, property: PropertyKind, budget: &Budget) -> Result<BnyCertificate> {
    budget.check_sweep(d.n())?;
    let tables = SubsetTables::build(d);
    let induced = tables.induced_lambda_table();
    let lambda = tables.lambda_values();
    let strong = property == PropertyKind::Bny;
    let mut witnesses = BTreeMap::new();
    let mut failures = Vec::new();
    let q_max = lambda.first().copied().unwrap_or(0).saturating_sub(1);
    for q in 1..=q_max {
        match sweep_with(d, &induced, &lambda, q, strong) {
            Ok(p) => {
                witnesses.insert(q, p);
            }
            Err(Error::SweepExhausted { q, swept }) => {
                failures.push(CounterexampleRecord {
                    q,
                    swept,
                    exhausted: true,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(BnyCertificate {
        property,
        lambda,
        witnesses,
        failures,
    })
}

/// Which construction produces composition witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionStrategy {
    Acyclic,
    Semicomplete,
    Bruteforce,
}

/// A case-exhaustion event kept alongside the certificate: the
/// construction found no applicable case at this q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionEvent {
    pub q: usize,
    pub trace_json: String,
}

/// Certificate for a composition, with the construction traces per q.
#[derive(Debug, Clone, Serialize)]
pub struct CompositionCertificate {
    pub certificate: BnyCertificate,
    pub traces: BTreeMap<usize, CaseTrace>,
    pub case_exhaustions: Vec<ExhaustionEvent>,
}

impl CompositionCertificate {
    pub fn is_complete(&self) -> bool {
        self.certificate.is_complete() && self.case_exhaustions.is_empty()
    }
}

/// Runs the chosen construction for every q in `q_range` (defaults to
/// the full 1..=lambda(Q)-1). Witness assembly is in ascending q order.
pub fn check_bny_composition(
    spec: &CompositionSpec,
    q_range: Option<(usize, usize)>,
    strategy: CompositionStrategy,
    part_oracle: Option<&PartOracleFn<'_>>,
    budget: &Budget,
) -> Result<CompositionCertificate> {
    let built = BuiltComposition::new(spec.clone())?;
    budget.check_lambda(built.digraph.n())?;
    let profile = crate::solver::lambda_profile(&built.digraph, budget)?;
    let lambda = profile.lambda();
    let (q_lo, q_hi) = q_range.unwrap_or((1, lambda.saturating_sub(1)));
    let mut witnesses = BTreeMap::new();
    let mut traces = BTreeMap::new();
    let mut failures = Vec::new();
    let mut case_exhaustions = Vec::new();
    for q in q_lo..=q_hi {
        let outcome = match strategy {
            CompositionStrategy::Acyclic => {
                partition_acyclic_composition(spec, q, part_oracle, budget)
                    .map(|(p, t)| (p, Some(t)))
            }
            CompositionStrategy::Semicomplete => {
                partition_semicomplete_composition(spec, q, part_oracle, budget)
                    .map(|(p, t)| (p, Some(t)))
            }
            CompositionStrategy::Bruteforce => {
                super::bny_partition_bruteforce(&built.digraph, q, budget).map(|p| (p, None))
            }
        };
        match outcome {
            Ok((p, trace)) => {
                if let Some(t) = trace {
                    traces.insert(q, t);
                }
                witnesses.insert(q, p);
            }
            Err(Error::SweepExhausted { q, swept }) => {
                failures.push(CounterexampleRecord {
                    q,
                    swept,
                    exhausted: true,
                });
            }
            Err(Error::CaseExhaustion { q, trace_json }) => {
                case_exhaustions.push(ExhaustionEvent { q, trace_json });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CompositionCertificate {
        certificate: BnyCertificate {
            property: PropertyKind::Bny,
            lambda: profile.values().to_vec(),
            witnesses,
            failures,
        },
        traces,
        case_exhaustions,
    })
}

/// The external JSON layout:
/// `{"digraph": ..., "lambda": [...], "witnesses": {"q": {"A": [...],
/// "B": [...]}}, "trace": {...}}`.
pub fn certificate_json(
    d: &Digraph,
    cert: &BnyCertificate,
    traces: Option<&BTreeMap<usize, CaseTrace>>,
) -> serde_json::Value {
    let witnesses: serde_json::Map<String, serde_json::Value> = cert
        .witnesses
        .iter()
        .map(|(q, p)| {
            (
                q.to_string(),
                serde_json::json!({ "A": p.side_a, "B": p.side_b }),
            )
        })
        .collect();
    let mut value = serde_json::json!({
        "property": cert.property,
        "digraph": d,
        "lambda": cert.lambda,
        "witnesses": witnesses,
    });
    if !cert.failures.is_empty() {
        value["counterexamples"] = serde_json::to_value(&cert.failures).unwrap();
    }
    if let Some(traces) = traces {
        let map: serde_json::Map<String, serde_json::Value> = traces
            .iter()
            .map(|(q, t)| (q.to_string(), serde_json::to_value(t).unwrap()))
            .collect();
        value["trace"] = serde_json::Value::Object(map);
    }
    value
}

/// Sanity hook used by tests: a strong certificate projects to a valid
/// weak one (every stored witness passes the weak check too).
pub fn projects_to_ppc(d: &Digraph, cert: &BnyCertificate, budget: &Budget) -> Result<bool> {
    for p in cert.witnesses.values() {
        if !verify_partition(d, p, budget)?.ppc_holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn single_vertex_certificate_is_vacuous() {
        let cert = check_bny(&Digraph::empty(1), &Budget::default()).unwrap();
        assert!(cert.is_complete());
        assert!(cert.witnesses.is_empty());
        assert_eq!(cert.q_max(), 0);
    }

    #[test]
    fn path3_has_witnesses_at_both_q() {
        let cert = check_bny(&samples::directed_path(3), &Budget::default()).unwrap();
        assert!(cert.is_complete());
        assert_eq!(cert.witnesses.len(), 2);
        assert!(cert.witnesses.contains_key(&1));
        assert!(cert.witnesses.contains_key(&2));
    }

    #[test]
    fn two_cycle_weak_witness_at_q1() {
        let d = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let cert = check_ppc(&d, &Budget::default()).unwrap();
        assert!(cert.is_complete());
        let p = &cert.witnesses[&1];
        assert_eq!(p.side_a.len(), 1);
        assert_eq!(p.side_b.len(), 1);
    }

    #[test]
    fn bny_projects_to_ppc() {
        let b = Budget::default();
        for seed in 0..15 {
            let d = crate::gen::random_digraph(5, 0.5, seed);
            let cert = check_bny(&d, &b).unwrap();
            assert!(cert.is_complete());
            assert!(projects_to_ppc(&d, &cert, &b).unwrap());
            let ppc = check_ppc(&d, &b).unwrap();
            assert!(ppc.is_complete());
        }
    }

    #[test]
    fn composition_certificate_with_semicomplete_strategy() {
        let spec = samples::triangle_composition_spec();
        let cc = check_bny_composition(
            &spec,
            None,
            CompositionStrategy::Semicomplete,
            None,
            &Budget::default(),
        )
        .unwrap();
        assert!(cc.is_complete());
        assert_eq!(cc.certificate.witnesses.len(), 3); // q in 1..=3
        assert_eq!(cc.traces.len(), 3);
    }

    #[test]
    fn certificate_json_shape() {
        let d = samples::directed_path(3);
        let cert = check_bny(&d, &Budget::default()).unwrap();
        let js = certificate_json(&d, &cert, None);
        assert_eq!(js["lambda"], serde_json::json!([3, 3, 3]));
        assert!(js["witnesses"]["1"]["A"].is_array());
        assert!(js["witnesses"]["2"]["B"].is_array());
    }
}
