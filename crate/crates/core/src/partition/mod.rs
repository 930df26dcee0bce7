//! Vertex partitions (A, B) and their verification against the
//! longest-path conditions.
//!
//! A partition witnesses the strong property at q when lambda(A) <= q
//! and lambda_k(B) <= lambda_k(D) - q for every k up to |B|; the weak
//! (path partition) form only requires the k = 1 condition on B.

mod acyclic;
mod bruteforce;
mod certify;
mod semicomplete;

pub use acyclic::partition_acyclic_composition;
pub use bruteforce::{bny_partition_bruteforce, ppc_partition_bruteforce};
pub use certify::{
    certificate_json, check_bny, check_bny_composition, check_ppc, projects_to_ppc, BnyCertificate,
    CompositionCertificate, CompositionStrategy, CounterexampleRecord, PropertyKind,
};
pub use semicomplete::partition_semicomplete_composition;

use serde::{Deserialize, Serialize};

use crate::solver::{lambda_profile, oracle, LambdaProfile};
use crate::{Budget, Digraph, Error, Result};

/// An ordered bipartition of the vertex set, with the q it targets.
/// Either side may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    #[serde(rename = "A")]
    pub side_a: Vec<usize>,
    #[serde(rename = "B")]
    pub side_b: Vec<usize>,
    pub q: usize,
}

impl Partition {
    pub fn new(mut side_a: Vec<usize>, mut side_b: Vec<usize>, q: usize) -> Self {
        side_a.sort_unstable();
        side_b.sort_unstable();
        Partition { side_a, side_b, q }
    }

    pub(crate) fn from_mask(a_mask: u32, n: usize, q: usize) -> Self {
        let side_a = (0..n).filter(|&v| a_mask >> v & 1 == 1).collect();
        let side_b = (0..n).filter(|&v| a_mask >> v & 1 == 0).collect();
        Partition { side_a, side_b, q }
    }

    /// Checks disjointness and exact coverage of V(d).
    pub fn validate_for(&self, d: &Digraph) -> Result<()> {
        let mut seen = vec![false; d.n()];
        for &v in self.side_a.iter().chain(&self.side_b) {
            if v >= d.n() {
                return Err(Error::InvalidInstance(format!(
                    "partition vertex {v} out of range for n = {}",
                    d.n()
                )));
            }
            if seen[v] {
                return Err(Error::InvalidInstance(format!(
                    "vertex {v} on both sides or repeated"
                )));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidInstance(format!(
                "vertex {v} on neither side"
            )));
        }
        Ok(())
    }
}

/// Which exact solver backs a verification pass. The primary
/// backtracking search is the default; the subset-DP oracle exists so
/// sound-ness checks can recompute every profile through an
/// independent code path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverRoute {
    Backtracking,
    SubsetDp,
}

fn profile_via(d: &Digraph, route: SolverRoute, budget: &Budget) -> Result<LambdaProfile> {
    match route {
        SolverRoute::Backtracking => lambda_profile(d, budget),
        SolverRoute::SubsetDp => oracle::lambda_profile(d, budget),
    }
}

/// Outcome of checking one partition: every violated condition is
/// listed, never just a boolean.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionVerdict {
    pub q: usize,
    pub lambda_d: usize,
    pub lambda_a: usize,
    /// True iff lambda(A) <= q.
    pub a_ok: bool,
    /// Every k in 1..=|B| with lambda_k(B) > lambda_k(D) - q.
    pub violated_k: Vec<usize>,
}

impl PartitionVerdict {
    pub fn bny_holds(&self) -> bool {
        self.a_ok && self.violated_k.is_empty()
    }

    /// The weak verdict: only k = 1 constrains B.
    pub fn ppc_holds(&self) -> bool {
        self.a_ok && !self.violated_k.contains(&1)
    }
}

/// Verifies a partition with the primary solver.
pub fn verify_partition(d: &Digraph, p: &Partition, budget: &Budget) -> Result<PartitionVerdict> {
    verify_partition_via(d, p, SolverRoute::Backtracking, budget)
}

/// Verifies a partition, recomputing all three lambda profiles through
/// the chosen route.
pub fn verify_partition_via(
    d: &Digraph,
    p: &Partition,
    route: SolverRoute,
    budget: &Budget,
) -> Result<PartitionVerdict> {
    p.validate_for(d)?;
    let profile_d = profile_via(d, route, budget)?;
    verify_with_profile(d, p, &profile_d, route, budget)
}

pub(crate) fn verify_with_profile(
    d: &Digraph,
    p: &Partition,
    profile_d: &LambdaProfile,
    route: SolverRoute,
    budget: &Budget,
) -> Result<PartitionVerdict> {
    let lambda = profile_d.lambda();
    if p.q == 0 || lambda == 0 || p.q > lambda - 1 {
        return Err(Error::QOutOfRange {
            q: p.q,
            lambda,
            max: lambda.saturating_sub(1),
        });
    }
    let (a, _) = d.induced(&p.side_a)?;
    let lambda_a = if a.n() == 0 {
        0
    } else {
        profile_via(&a, route, budget)?.lambda()
    };
    let (b, _) = d.induced(&p.side_b)?;
    let profile_b = profile_via(&b, route, budget)?;
    let violated_k = (1..=b.n())
        .filter(|&k| profile_b.get(k) > profile_d.get(k) - p.q)
        .collect();
    Ok(PartitionVerdict {
        q: p.q,
        lambda_d: lambda,
        lambda_a,
        a_ok: lambda_a <= p.q,
        violated_k,
    })
}

/// How one part of a composition was placed by the acyclic
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PartAssignment {
    WholeA { part: usize },
    WholeB { part: usize },
    Split(PartSplit),
}

/// A part split by the part oracle at its own target `q_part`; inner
/// indices are relative to the part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartSplit {
    pub part: usize,
    pub q_part: usize,
    pub a_inner: Vec<usize>,
    pub b_inner: Vec<usize>,
}

/// Construction record attached to every theorem-partitioner result;
/// serialized verbatim into reports and persisted failure events.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseTrace {
    Acyclic {
        p_in: Vec<usize>,
        p_end: Vec<usize>,
        assignments: Vec<PartAssignment>,
    },
    Semicomplete {
        /// 1, 2 or 3.
        case: u8,
        /// Single-path coverage l_i per part.
        l: Vec<usize>,
        /// Index of the maximum-coverage part.
        m: usize,
        /// Chosen index set S (part indices, ascending).
        s: Vec<usize>,
        /// Straddling full part (case 2 only).
        straddle: Option<usize>,
        /// Residual q' (cases 2 and 3).
        q_prime: Option<usize>,
        /// Split of part m (case 3 only).
        split: Option<PartSplit>,
        /// u_k = min(v_{m,k}, |B_m|) for k = 1..=|B| (case 3 only).
        u_k: Vec<usize>,
    },
}

impl CaseTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialization cannot fail")
    }
}

/// Accepts a part digraph and target q and produces a strong-property
/// partition of it. Arguments: part index, part digraph, part target.
pub type PartOracleFn<'a> = dyn Fn(usize, &Digraph, usize) -> Result<Partition> + 'a;

pub(crate) fn default_part_oracle(
    budget: &Budget,
) -> impl Fn(usize, &Digraph, usize) -> Result<Partition> + '_ {
    move |_, part, q_part| bny_partition_bruteforce(part, q_part, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn triangle_sample_partition_passes_at_q2() {
        // A = {a, b} (flat 0, 2), B = {c, d} (flat 3, 1).
        let d = samples::triangle_composition().digraph;
        let p = Partition::new(vec![0, 2], vec![3, 1], 2);
        let v = verify_partition(&d, &p, &Budget::default()).unwrap();
        assert_eq!(v.lambda_a, 2);
        assert!(v.bny_holds());
        assert!(v.ppc_holds());
    }

    #[test]
    fn middle_vertex_of_path3_passes_at_q1() {
        let d = samples::directed_path(3);
        let p = Partition::new(vec![1], vec![0, 2], 1);
        let v = verify_partition(&d, &p, &Budget::default()).unwrap();
        assert!(v.bny_holds());
    }

    #[test]
    fn failing_side_b_lists_k1() {
        // D = path 0->1->2, q = 1, A = {0}: B = {1, 2} keeps the arc,
        // so lambda_1(B) = 2 > lambda_1(D) - 1 = 2? No: 2 <= 2 passes.
        // Take q = 2, A = {} instead: lambda(B) = 3 > 3 - 2.
        let d = samples::directed_path(3);
        let p = Partition::new(vec![], vec![0, 1, 2], 2);
        let v = verify_partition(&d, &p, &Budget::default()).unwrap();
        assert!(v.a_ok);
        assert_eq!(v.violated_k, vec![1, 2, 3]);
        assert!(!v.bny_holds());
        assert!(!v.ppc_holds());
    }

    #[test]
    fn q_out_of_range_rejected() {
        let d = samples::directed_path(3);
        let p = Partition::new(vec![0], vec![1, 2], 3);
        assert!(matches!(
            verify_partition(&d, &p, &Budget::default()),
            Err(Error::QOutOfRange {
                q: 3,
                lambda: 3,
                ..
            })
        ));
        let p = Partition::new(vec![0], vec![1, 2], 0);
        assert!(verify_partition(&d, &p, &Budget::default()).is_err());
    }

    #[test]
    fn malformed_partitions_rejected() {
        let d = samples::directed_path(3);
        let b = Budget::default();
        assert!(verify_partition(&d, &Partition::new(vec![0, 1], vec![1, 2], 1), &b).is_err());
        assert!(verify_partition(&d, &Partition::new(vec![0], vec![2], 1), &b).is_err());
        assert!(verify_partition(&d, &Partition::new(vec![0, 5], vec![1, 2], 1), &b).is_err());
    }

    #[test]
    fn routes_agree_on_random_partitions() {
        let b = Budget::default();
        for seed in 0..30u64 {
            let d = crate::gen::random_digraph(6, 0.4, seed);
            let lambda = lambda_profile(&d, &b).unwrap().lambda();
            if lambda < 2 {
                continue;
            }
            let p = Partition::from_mask(
                (seed as u32 * 7) & 0x3f,
                6,
                1 + seed as usize % (lambda - 1),
            );
            let v1 = verify_partition_via(&d, &p, SolverRoute::Backtracking, &b).unwrap();
            let v2 = verify_partition_via(&d, &p, SolverRoute::SubsetDp, &b).unwrap();
            assert_eq!(v1, v2);
        }
    }
}
