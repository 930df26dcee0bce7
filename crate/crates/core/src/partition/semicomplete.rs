//! Constructive partition of semicomplete compositions.
//!
//! Driven by the single-path coverage numbers l_i and their maximum
//! part m. Three cases, tried in order, each searched deterministically
//! (subset bits run over parts in index order with m moved last, so
//! decompositions that leave m untouched win ties):
//!
//!   1. some subset S of parts has sum l_i = q: A = those parts;
//!   2. a fully-coverable part h (l_h = n_h) straddles q over some S:
//!      A = S plus the q' lowest-indexed vertices of part h;
//!   3. m itself straddles q over a subset S of partially-coverable
//!      parts: A = S plus the A-side of part m split at q' by the part
//!      oracle (or all of part m when q' >= lambda(H_m)).
//!
//! The case hypotheses are existential; if no case matches, that is
//! reported as a case-exhaustion event with the full instance rather
//! than guessed around. Every produced partition is verified before it
//! is returned.

use crate::solver::{coverage_profile_built, lambda_profile};
use crate::{Budget, BuiltComposition, CompositionSpec, Error, Result};

use super::{default_part_oracle, verify_partition, CaseTrace, PartOracleFn, PartSplit, Partition};

pub fn partition_semicomplete_composition(
    spec: &CompositionSpec,
    q: usize,
    part_oracle: Option<&PartOracleFn<'_>>,
    budget: &Budget,
) -> Result<(Partition, CaseTrace)> {
    spec.validate()?;
    if !spec.outer.is_semicomplete() {
        return Err(Error::Structure(
            "semicomplete method requires a semicomplete outer digraph".into(),
        ));
    }
    let built = BuiltComposition::new(spec.clone())?;
    budget.check_lambda(built.digraph.n())?;
    let coverage = coverage_profile_built(&built, budget)?;
    let l = coverage.single_path();
    let profile_q = lambda_profile(&built.digraph, budget)?;
    let lambda = profile_q.lambda();
    if q == 0 || lambda == 0 || q > lambda - 1 {
        return Err(Error::QOutOfRange {
            q,
            lambda,
            max: lambda.saturating_sub(1),
        });
    }

    let t = built.t();
    let sizes: Vec<usize> = spec.parts.iter().map(|p| p.n()).collect();
    let m = (0..t)
        .max_by_key(|&i| (l[i], std::cmp::Reverse(i)))
        .expect("t >= 1");

    // Subset bit order for cases 1 and 2: parts in index order, m last.
    let m_last: Vec<usize> = (0..t)
        .filter(|&i| i != m)
        .chain(std::iter::once(m))
        .collect();

    // Case 1: exact subset-sum hit.
    for mask in 1u64..(1u64 << t) {
        let s = parts_of(mask, &m_last);
        let sum: usize = s.iter().map(|&i| l[i]).sum();
        if sum == q {
            let side_a: Vec<usize> = s.iter().flat_map(|&i| built.part_vertices(i)).collect();
            let trace = CaseTrace::Semicomplete {
                case: 1,
                l: l.clone(),
                m,
                s,
                straddle: None,
                q_prime: None,
                split: None,
                u_k: Vec::new(),
            };
            return finish(&built, q, side_a, trace, budget);
        }
    }

    // Case 2: a fully-coverable part straddles q.
    for h in (0..t).filter(|&h| l[h] == sizes[h]) {
        let order: Vec<usize> = m_last.iter().copied().filter(|&i| i != h).collect();
        for mask in 0u64..(1u64 << order.len()) {
            let s = parts_of(mask, &order);
            let sum: usize = s.iter().map(|&i| l[i]).sum();
            if sum < q && q < sum + l[h] {
                let q_prime = q - sum;
                let mut side_a: Vec<usize> =
                    s.iter().flat_map(|&i| built.part_vertices(i)).collect();
                side_a.extend(built.part_vertices(h).take(q_prime));
                let trace = CaseTrace::Semicomplete {
                    case: 2,
                    l: l.clone(),
                    m,
                    s,
                    straddle: Some(h),
                    q_prime: Some(q_prime),
                    split: None,
                    u_k: Vec::new(),
                };
                return finish(&built, q, side_a, trace, budget);
            }
        }
    }

    // Case 3: m straddles q over partially-coverable parts.
    if l[m] < sizes[m] {
        let partials: Vec<usize> = (0..t).filter(|&i| i != m && l[i] < sizes[i]).collect();
        for mask in 0u64..(1u64 << partials.len()) {
            let s = parts_of(mask, &partials);
            let sum: usize = s.iter().map(|&i| l[i]).sum();
            if sum < q && q < sum + l[m] {
                let q_prime = q - sum;
                let part_m = &spec.parts[m];
                let lambda_m = lambda_profile(part_m, budget)?.lambda();
                let (a_inner, b_inner) = if q_prime >= lambda_m {
                    // The whole part fits inside q'; its B side is empty.
                    ((0..part_m.n()).collect::<Vec<_>>(), Vec::new())
                } else {
                    let fallback = default_part_oracle(budget);
                    let oracle: &PartOracleFn<'_> = part_oracle.unwrap_or(&fallback);
                    let split = oracle(m, part_m, q_prime).map_err(|e| Error::PartOracle {
                        part: m,
                        source: Box::new(e),
                    })?;
                    (split.side_a, split.side_b)
                };
                let offset = built.part_vertices(m).start;
                let mut side_a: Vec<usize> =
                    s.iter().flat_map(|&i| built.part_vertices(i)).collect();
                side_a.extend(a_inner.iter().map(|&v| offset + v));

                let stripped =
                    coverage_profile_built(&BuiltComposition::new(spec.stripped())?, budget)?;
                let b_order = built.digraph.n() - side_a.len();
                let u_k: Vec<usize> = (1..=b_order)
                    .map(|k| stripped.get(m, k).min(b_inner.len()))
                    .collect();
                let trace = CaseTrace::Semicomplete {
                    case: 3,
                    l: l.clone(),
                    m,
                    s,
                    straddle: None,
                    q_prime: Some(q_prime),
                    split: Some(PartSplit {
                        part: m,
                        q_part: q_prime,
                        a_inner,
                        b_inner,
                    }),
                    u_k,
                };
                return finish(&built, q, side_a, trace, budget);
            }
        }
    }

    Err(Error::CaseExhaustion {
        q,
        trace_json: serde_json::json!({ "l": l, "m": m, "sizes": sizes, "lambda": lambda })
            .to_string(),
    })
}

fn parts_of(mask: u64, order: &[usize]) -> Vec<usize> {
    let mut s: Vec<usize> = order
        .iter()
        .enumerate()
        .filter(|(bit, _)| mask >> bit & 1 == 1)
        .map(|(_, &part)| part)
        .collect();
    s.sort_unstable();
    s
}

fn finish(
    built: &BuiltComposition,
    q: usize,
    side_a: Vec<usize>,
    trace: CaseTrace,
    budget: &Budget,
) -> Result<(Partition, CaseTrace)> {
    let in_a: std::collections::HashSet<usize> = side_a.iter().copied().collect();
    let side_b: Vec<usize> = (0..built.digraph.n())
        .filter(|v| !in_a.contains(v))
        .collect();
    let partition = Partition::new(side_a, side_b, q);
    let verdict = verify_partition(&built.digraph, &partition, budget)?;
    if !verdict.bny_holds() {
        return Err(Error::VerificationFailed {
            q,
            detail: format!(
                "semicomplete construction produced a non-verifying partition (lambda_a = {}, violated k = {:?})",
                verdict.lambda_a, verdict.violated_k
            ),
            trace_json: trace.to_json(),
        });
    }
    Ok((partition, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{samples, CompositionSpec, Digraph};

    #[test]
    fn triangle_sample_case1_at_q2() {
        // l = (2, 1, 1), m = 0; the first exact hit in m-last order is
        // S = {1, 2}, so A = {b, c} = flat {2, 3}.
        let spec = samples::triangle_composition_spec();
        let (p, trace) =
            partition_semicomplete_composition(&spec, 2, None, &Budget::default()).unwrap();
        assert_eq!(p.side_a, vec![2, 3]);
        assert_eq!(p.side_b, vec![0, 1]);
        match trace {
            CaseTrace::Semicomplete { case, l, m, s, .. } => {
                assert_eq!(case, 1);
                assert_eq!(l, vec![2, 1, 1]);
                assert_eq!(m, 0);
                assert_eq!(s, vec![1, 2]);
            }
            other => panic!("unexpected trace {other:?}"),
        }
    }

    #[test]
    fn two_cycle_with_arcless_pair_at_q1() {
        // Outer 2-cycle, parts (arcless 2, singleton): l = (2, 1), all
        // parts fully coverable, and S = {1} is an exact hit, so A is
        // the single vertex of part 1.
        let outer = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let spec = CompositionSpec::new(outer, vec![Digraph::empty(2), Digraph::empty(1)]).unwrap();
        let (p, trace) =
            partition_semicomplete_composition(&spec, 1, None, &Budget::default()).unwrap();
        assert_eq!(p.side_a, vec![2]);
        assert_eq!(p.side_b, vec![0, 1]);
        match trace {
            CaseTrace::Semicomplete { l, s, .. } => {
                assert_eq!(l, vec![2, 1]);
                assert_eq!(s, vec![1]);
            }
            other => panic!("unexpected trace {other:?}"),
        }
    }

    #[test]
    fn case2_takes_lowest_inner_vertices() {
        // Single full part of order 3 (a transitive tournament), q = 2:
        // no subset sums to 2, so case 2 fires with h = 0, S = {},
        // q' = 2, A = the two lowest-indexed vertices.
        let spec = CompositionSpec::new(Digraph::empty(1), vec![samples::transitive_tournament(3)])
            .unwrap();
        let (p, trace) =
            partition_semicomplete_composition(&spec, 2, None, &Budget::default()).unwrap();
        assert_eq!(p.side_a, vec![0, 1]);
        match trace {
            CaseTrace::Semicomplete {
                case,
                straddle,
                q_prime,
                ..
            } => {
                assert_eq!(case, 2);
                assert_eq!(straddle, Some(0));
                assert_eq!(q_prime, Some(2));
            }
            other => panic!("unexpected trace {other:?}"),
        }
    }

    #[test]
    fn case3_splits_the_max_part() {
        // Parts: arcless pair (partial: l = ?) ... use a part whose
        // coverage is strictly below its order: a single part of 3
        // isolated vertices under a single outer vertex. l_0 = 1 < 3.
        // q = 1 is unreachable (lambda = 1), so take two such parts
        // under a 2-cycle: every path alternates between parts.
        let outer = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let spec = CompositionSpec::new(outer, vec![Digraph::empty(3), Digraph::empty(2)]).unwrap();
        // Q alternates parts; lambda = 5 via 5-vertex zigzag? Order 5,
        // paths alternate 0,1,0,1,0 -> covers 3 + 2 = 5, so l = (3, 2)
        // and both parts are fully coverable; that makes this case 1/2
        // territory. Instead check every q verifies and cases are
        // consistent.
        let budget = Budget::default();
        let (q_dig, _) = spec.build().unwrap();
        let lambda = crate::solver::lambda_profile(&q_dig, &budget)
            .unwrap()
            .lambda();
        assert_eq!(lambda, 5);
        for q in 1..lambda {
            let (p, _) = partition_semicomplete_composition(&spec, q, None, &budget).unwrap();
            assert_eq!(p.q, q);
        }

        // A genuinely partial part: 2 isolated vertices under a single
        // outer vertex gives l_0 = 1 < 2, lambda = 1 -> no valid q.
        // Combine with a tournament part to open the q range.
        let outer = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let spec = CompositionSpec::new(
            outer,
            vec![Digraph::empty(3), samples::transitive_tournament(2)],
        )
        .unwrap();
        // lambda(Q): zigzag 0,1,0,1,0 covers 3 + 2 = 5.
        for q in 1..5 {
            let (p, trace) = partition_semicomplete_composition(&spec, q, None, &budget).unwrap();
            assert_eq!(p.q, q);
            if let CaseTrace::Semicomplete { case: 3, split, .. } = &trace {
                assert!(split.is_some());
            }
        }
    }

    #[test]
    fn structure_mismatch_rejected() {
        // Acyclic outer (a directed path) is not semicomplete for t >= 3.
        let spec = CompositionSpec::new(
            samples::directed_path(3),
            vec![Digraph::empty(1), Digraph::empty(1), Digraph::empty(1)],
        )
        .unwrap();
        assert!(matches!(
            partition_semicomplete_composition(&spec, 1, None, &Budget::default()),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn case3_trace_invariants_hold() {
        let budget = Budget::default();
        let profile = crate::gen::CompositionProfile {
            outer: crate::gen::OuterKind::Semicomplete,
            max_outer: 3,
            max_part: 3,
            max_total: 8,
            arc_prob: 0.3,
            arcless_parts: false,
        };
        let mut seen_case3 = false;
        for seed in 0..60 {
            let spec = crate::gen::random_composition(&profile, seed).unwrap();
            let (q_dig, _) = spec.build().unwrap();
            let lambda = crate::solver::lambda_profile(&q_dig, &budget)
                .unwrap()
                .lambda();
            for q in 1..lambda {
                let (_, trace) =
                    partition_semicomplete_composition(&spec, q, None, &budget).unwrap();
                if let CaseTrace::Semicomplete {
                    case: 3,
                    l,
                    m,
                    s,
                    q_prime,
                    ..
                } = &trace
                {
                    seen_case3 = true;
                    let sizes: Vec<usize> = spec.parts.iter().map(|p| p.n()).collect();
                    assert!(l[*m] < sizes[*m]);
                    for &j in s {
                        assert!(l[j] < sizes[j], "case-3 S must avoid full parts");
                    }
                    let qp = q_prime.unwrap();
                    assert!(0 < qp && qp < l[*m]);
                }
            }
        }
        assert!(seen_case3, "family too easy: no case-3 trace exercised");
    }
}
