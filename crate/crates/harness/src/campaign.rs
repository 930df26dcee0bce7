//! Theorem property checks, one instance at a time.
//!
//! Each check re-derives every quantity it asserts through at least
//! two independent routes (subset-DP tables vs the backtracking
//! search, constructions vs the oracle-route verifier), so a pass is
//! evidence about the statement, not about one code path.

use ppl_core::{
    acyclic_signature, coverage_profile, lambda_profile, partition_acyclic_composition,
    partition_semicomplete_composition, visit_maximum_k_path_subdigraphs, Budget, BuiltComposition,
    CaseTrace, CompositionSpec, Error,
};

use crate::job::{Instance, Outcome, TheoremId};

pub fn evaluate_theorem(theorem: TheoremId, instance: &Instance, budget: &Budget) -> Outcome {
    let result = match (theorem, instance) {
        (TheoremId::Monotone, Instance::Digraph { digraph }) => monotone(digraph, budget),
        (TheoremId::Lemma1, Instance::Composition { composition }) => {
            coverage_exactness(composition, true, budget)
        }
        (TheoremId::Thm4, Instance::Composition { composition }) => {
            coverage_exactness(composition, false, budget)
                .and_then(|checks| Ok(checks + sum_rule(composition, budget)?))
        }
        (TheoremId::Sumrule, Instance::Composition { composition }) => {
            sum_rule(composition, budget)
        }
        (TheoremId::Thm5, Instance::Composition { composition }) => {
            acyclic_construction(composition, budget)
        }
        (TheoremId::Thm6, Instance::Composition { composition }) => {
            match semicomplete_construction(composition, budget) {
                Ok(checks) => Ok(checks),
                Err(Error::CaseExhaustion { q, trace_json }) => {
                    return Outcome::CaseExhaustion {
                        q,
                        trace: trace_json,
                    }
                }
                Err(e) => Err(e),
            }
        }
        _ => Err(Error::Structure(format!(
            "{} expects a different instance family",
            theorem.name()
        ))),
    };
    match result {
        Ok(checks) => Outcome::TheoremPass { checks },
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

fn monotone(d: &ppl_core::Digraph, budget: &Budget) -> Result<u64, Error> {
    let profile = lambda_profile(d, budget)?;
    let v = profile.values();
    let mut checks = 0u64;
    for k in 1..v.len() {
        if v[k] < v[k - 1] {
            return Err(Error::InvalidInstance(format!(
                "lambda_{} = {} < lambda_{} = {}",
                k + 1,
                v[k],
                k,
                v[k - 1]
            )));
        }
        checks += 1;
    }
    if !v.is_empty() && v[v.len() - 1] != d.n() {
        return Err(Error::InvalidInstance(format!(
            "lambda_n = {} != n = {}",
            v[v.len() - 1],
            d.n()
        )));
    }
    if !crate::job::profiles_agree(d, budget)? {
        return Err(Error::InvalidInstance("solver routes disagree".into()));
    }
    Ok(checks + 1)
}

/// Every maximum k-path subdigraph covers each part i in exactly the
/// table amount: v_{i,k} when `stripped` (arcless-part form), l_{i,k}
/// otherwise.
fn coverage_exactness(
    spec: &CompositionSpec,
    stripped: bool,
    budget: &Budget,
) -> Result<u64, Error> {
    let working = if stripped {
        spec.stripped()
    } else {
        spec.clone()
    };
    let built = BuiltComposition::new(working.clone())?;
    budget.check_enum(built.digraph.n())?;
    let table = coverage_profile(&working, false, budget)?;
    let t = built.t();
    let mut checks = 0u64;
    for k in 1..=built.digraph.n() {
        let mut bad: Option<String> = None;
        let systems = visit_maximum_k_path_subdigraphs(&built.digraph, k, budget, |paths| {
            if bad.is_some() {
                return;
            }
            for i in 0..t {
                let range = built.part_vertices(i);
                let covered = paths
                    .iter()
                    .flatten()
                    .filter(|&&x| range.contains(&x))
                    .count();
                if covered != table.get(i, k) {
                    bad = Some(format!(
                        "k = {k}: a maximum system covers {covered} of part {i}, table says {}",
                        table.get(i, k)
                    ));
                    return;
                }
            }
        })?;
        if let Some(detail) = bad {
            return Err(Error::InvalidInstance(detail));
        }
        if systems == 0 {
            return Err(Error::InvalidInstance(format!(
                "no maximum system at k = {k}"
            )));
        }
        checks += systems * t as u64;
    }
    Ok(checks)
}

/// lambda_k(Q) = sum_i l_{i,k}: coverage comes from the subset DP,
/// the profile from the backtracking search.
fn sum_rule(spec: &CompositionSpec, budget: &Budget) -> Result<u64, Error> {
    let (q_dig, _) = spec.build()?;
    let table = coverage_profile(spec, false, budget)?;
    let profile = lambda_profile(&q_dig, budget)?;
    let mut checks = 0u64;
    for k in 1..=q_dig.n() {
        let sum: usize = (0..spec.t()).map(|i| table.get(i, k)).sum();
        if profile.get(k) != sum {
            return Err(Error::InvalidInstance(format!(
                "lambda_{k} = {} but part coverages sum to {sum}",
                profile.get(k)
            )));
        }
        checks += 1;
    }
    Ok(checks)
}

fn acyclic_construction(spec: &CompositionSpec, budget: &Budget) -> Result<u64, Error> {
    let built = BuiltComposition::new(spec.clone())?;
    let sig = acyclic_signature(spec, budget)?;
    let mut checks = 0u64;
    for i in 0..spec.t() {
        let lam_i = lambda_profile(&spec.parts[i], budget)?.lambda();
        if sig.p_end[i] != sig.p_in[i] + lam_i {
            return Err(Error::InvalidInstance(format!(
                "part {i}: p_end = {} != p_in + lambda = {} + {lam_i}",
                sig.p_end[i], sig.p_in[i]
            )));
        }
        checks += 1;
    }
    // Cross-part ordering along reachability.
    for i in 0..spec.t() {
        for j in 0..spec.t() {
            if i == j {
                continue;
            }
            let reachable = built.part_vertices(i).any(|x| {
                let seen = built.digraph.reachable_from(x);
                built.part_vertices(j).any(|y| seen[y])
            });
            if reachable && sig.p_end[i] > sig.p_in[j] {
                return Err(Error::InvalidInstance(format!(
                    "parts {i} -> {j} reachable but p_end = {} > p_in = {}",
                    sig.p_end[i], sig.p_in[j]
                )));
            }
            if reachable {
                checks += 1;
            }
        }
    }
    let lambda = lambda_profile(&built.digraph, budget)?.lambda();
    for q in 1..lambda {
        let (p, _) = partition_acyclic_composition(spec, q, None, budget)?;
        if !crate::job::oracle_recheck(&built.digraph, &p, budget)? {
            return Err(Error::VerificationFailed {
                q,
                detail: "oracle-route re-verification rejected the partition".into(),
                trace_json: serde_json::to_string(&p).unwrap_or_default(),
            });
        }
        checks += 1;
    }
    Ok(checks)
}

fn semicomplete_construction(spec: &CompositionSpec, budget: &Budget) -> Result<u64, Error> {
    let built = BuiltComposition::new(spec.clone())?;
    let lambda = lambda_profile(&built.digraph, budget)?.lambda();
    let mut checks = 0u64;
    for q in 1..lambda {
        let (p, trace) = partition_semicomplete_composition(spec, q, None, budget)?;
        if !crate::job::oracle_recheck(&built.digraph, &p, budget)? {
            return Err(Error::VerificationFailed {
                q,
                detail: "oracle-route re-verification rejected the partition".into(),
                trace_json: trace.to_json(),
            });
        }
        if let CaseTrace::Semicomplete { case: 3, s, m, .. } = &trace {
            let mut verts = s.clone();
            verts.push(*m);
            let (sub, _) = spec.outer.induced(&verts)?;
            if !sub.is_acyclic() {
                return Err(Error::InvalidInstance(format!(
                    "case-3 outer subdigraph on {verts:?} has a cycle"
                )));
            }
            checks += 1;
        }
        checks += 1;
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::TaskSpec;

    fn run_family(theorem: TheoremId, seeds: u64) {
        let budget = Budget::default();
        let stream = theorem.default_stream(None);
        let task = TaskSpec::Theorem { theorem };
        for i in 0..seeds {
            let instance = stream.instance_at(42, i);
            let outcome = crate::job::evaluate(&task, &instance, &budget);
            assert!(
                matches!(outcome, Outcome::TheoremPass { .. }),
                "{} failed at index {i}: {outcome:?}",
                theorem.name()
            );
        }
    }

    #[test]
    fn lemma1_family_passes() {
        run_family(TheoremId::Lemma1, 8);
    }

    #[test]
    fn thm4_family_passes() {
        run_family(TheoremId::Thm4, 8);
    }

    #[test]
    fn thm5_family_passes() {
        run_family(TheoremId::Thm5, 8);
    }

    #[test]
    fn thm6_family_passes() {
        run_family(TheoremId::Thm6, 8);
    }

    #[test]
    fn sumrule_and_monotone_pass() {
        run_family(TheoremId::Sumrule, 8);
        run_family(TheoremId::Monotone, 12);
    }
}
