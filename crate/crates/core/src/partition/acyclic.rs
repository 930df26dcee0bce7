//! Constructive partition of acyclic compositions.
//!
//! With an acyclic outer digraph no path can leave and re-enter a
//! part, so p_end[i] = p_in[i] + lambda(H_i) and each part can be
//! classified against q independently: parts whose longest ending path
//! fits inside q go whole into A, parts already reachable by a q-long
//! path go whole into B, and a straddling part is split by the part
//! oracle at q_i = q - p_in[i]. The assembled partition is verified
//! before it is returned; a failure there is a first-class defect
//! event, never swallowed.

use crate::solver::acyclic_signature_built;
use crate::{Budget, BuiltComposition, CompositionSpec, Error, Result};

use super::{
    default_part_oracle, verify_partition, CaseTrace, PartAssignment, PartOracleFn, PartSplit,
    Partition,
};

pub fn partition_acyclic_composition(
    spec: &CompositionSpec,
    q: usize,
    part_oracle: Option<&PartOracleFn<'_>>,
    budget: &Budget,
) -> Result<(Partition, CaseTrace)> {
    spec.validate()?;
    if !spec.outer.is_acyclic() {
        return Err(Error::Structure(
            "acyclic method requires an acyclic outer digraph".into(),
        ));
    }
    let built = BuiltComposition::new(spec.clone())?;
    budget.check_lambda(built.digraph.n())?;
    let signature = acyclic_signature_built(&built, budget)?;
    let profile_q = crate::solver::lambda_profile(&built.digraph, budget)?;
    let lambda = profile_q.lambda();
    if q == 0 || lambda == 0 || q > lambda - 1 {
        return Err(Error::QOutOfRange {
            q,
            lambda,
            max: lambda.saturating_sub(1),
        });
    }

    let fallback = default_part_oracle(budget);
    let oracle: &PartOracleFn<'_> = part_oracle.unwrap_or(&fallback);

    let mut side_a = Vec::new();
    let mut side_b = Vec::new();
    let mut assignments = Vec::with_capacity(built.t());
    for i in 0..built.t() {
        let verts = built.part_vertices(i);
        if signature.p_end[i] <= q {
            side_a.extend(verts);
            assignments.push(PartAssignment::WholeA { part: i });
        } else if signature.p_in[i] >= q {
            side_b.extend(verts);
            assignments.push(PartAssignment::WholeB { part: i });
        } else {
            let q_i = q - signature.p_in[i];
            let split = oracle(i, &built.spec.parts[i], q_i).map_err(|e| Error::PartOracle {
                part: i,
                source: Box::new(e),
            })?;
            let offset = verts.start;
            side_a.extend(split.side_a.iter().map(|&v| offset + v));
            side_b.extend(split.side_b.iter().map(|&v| offset + v));
            assignments.push(PartAssignment::Split(PartSplit {
                part: i,
                q_part: q_i,
                a_inner: split.side_a,
                b_inner: split.side_b,
            }));
        }
    }

    let trace = CaseTrace::Acyclic {
        p_in: signature.p_in.clone(),
        p_end: signature.p_end.clone(),
        assignments,
    };
    let partition = Partition::new(side_a, side_b, q);
    let verdict = verify_partition(&built.digraph, &partition, budget)?;
    if !verdict.bny_holds() {
        return Err(Error::VerificationFailed {
            q,
            detail: format!(
                "acyclic construction produced a non-verifying partition (lambda_a = {}, violated k = {:?})",
                verdict.lambda_a, verdict.violated_k
            ),
            trace_json: trace.to_json(),
        });
    }
    Ok((partition, trace))
}
