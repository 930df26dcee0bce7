//! Exact k-path-subdigraph statistics.
//!
//! A k-path subdigraph is a set of exactly k pairwise vertex-disjoint
//! directed paths; its order is the number of vertices it covers.
//! lambda_k(D) is the maximum order over all k-path subdigraphs,
//! defined for 1 <= k <= n, and lambda of the empty digraph is 0.
//!
//! Three independent routes compute these quantities:
//! the primary backtracking search ([`max_k_path_subdigraph`],
//! [`lambda_profile`]), the exhaustive subset-DP [`oracle`], and a
//! min-cost-flow fast path for acyclic digraphs ([`flow`]). They must
//! agree; the test suites and the acceptance campaign hold them to it.

mod backtrack;
pub mod flow;
mod subset_dp;

pub(crate) use subset_dp::{InducedLambda, SubsetTables};

use serde::{Deserialize, Serialize};

use crate::{Budget, BuiltComposition, CompositionSpec, Digraph, Error, Result};

/// Bitmask adjacency used by the search kernels. Only built for
/// budget-guarded orders, so u32 masks always suffice.
pub(crate) struct Adj {
    pub n: usize,
    pub out: Vec<u32>,
    pub inn: Vec<u32>,
}

impl Adj {
    pub fn new(d: &Digraph) -> Adj {
        assert!(d.n() <= 28, "mask adjacency requires budget-guarded order");
        let mut out = vec![0u32; d.n()];
        let mut inn = vec![0u32; d.n()];
        for &(u, v) in d.arcs() {
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
        }
        Adj { n: d.n(), out, inn }
    }

    pub fn full(&self) -> u32 {
        if self.n == 0 {
            0
        } else {
            (1u32 << self.n) - 1
        }
    }
}

/// k vertex-disjoint directed paths, kept in canonical order (sorted by
/// first vertex; starts are distinct by disjointness).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathSystem {
    paths: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for PathSystem {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            paths: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        PathSystem::new(raw.paths).map_err(serde::de::Error::custom)
    }
}

impl PathSystem {
    pub fn new(mut paths: Vec<Vec<usize>>) -> Result<Self> {
        if paths.is_empty() || paths.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidInstance(
                "path system needs k >= 1 nonempty paths".into(),
            ));
        }
        paths.sort();
        let sys = PathSystem { paths };
        let mut seen = std::collections::HashSet::new();
        for v in sys.paths.iter().flatten() {
            if !seen.insert(*v) {
                return Err(Error::InvalidInstance(format!(
                    "vertex {v} appears in two paths"
                )));
            }
        }
        Ok(sys)
    }

    pub fn k(&self) -> usize {
        self.paths.len()
    }

    /// Total number of covered vertices.
    pub fn order(&self) -> usize {
        self.paths.iter().map(|p| p.len()).sum()
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn covers(&self, v: usize) -> bool {
        self.paths.iter().any(|p| p.contains(&v))
    }

    /// Checks that every path follows arcs of `d` and vertices are
    /// disjoint and in range.
    pub fn validate_in(&self, d: &Digraph) -> Result<()> {
        let mut seen = vec![false; d.n()];
        for path in &self.paths {
            for &v in path {
                if v >= d.n() {
                    return Err(Error::InvalidInstance(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidInstance(format!("vertex {v} reused")));
                }
                seen[v] = true;
            }
            for w in path.windows(2) {
                if !d.has_arc(w[0], w[1]) {
                    return Err(Error::InvalidInstance(format!(
                        "missing arc ({}, {})",
                        w[0], w[1]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The sequence lambda_1(D), ..., lambda_n(D).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaProfile(Vec<usize>);

impl LambdaProfile {
    pub(crate) fn from_values(values: Vec<usize>) -> Self {
        LambdaProfile(values)
    }

    /// lambda_k, 1-based; panics if k is out of 1..=n.
    pub fn get(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// lambda(D) = lambda_1(D), or 0 for the empty digraph.
    pub fn lambda(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_k(d: &Digraph, k: usize) -> Result<()> {
    if k == 0 || k > d.n() {
        return Err(Error::KOutOfRange { k, n: d.n() });
    }
    Ok(())
}

/// A maximum k-path subdigraph of `d`, found by the primary
/// backtracking search. Its order is lambda_k(d).
pub fn max_k_path_subdigraph(d: &Digraph, k: usize, budget: &Budget) -> Result<PathSystem> {
    budget.check_lambda(d.n())?;
    check_k(d, k)?;
    let adj = Adj::new(d);
    let (order, paths) = backtrack::max_system(&adj, k);
    let sys = PathSystem::new(paths).expect("search emits valid systems");
    debug_assert_eq!(sys.order(), order);
    Ok(sys)
}

/// lambda_1..lambda_n by the primary backtracking search.
pub fn lambda_profile(d: &Digraph, budget: &Budget) -> Result<LambdaProfile> {
    budget.check_lambda(d.n())?;
    let adj = Adj::new(d);
    let values = (1..=d.n())
        .map(|k| backtrack::max_system(&adj, k).0)
        .collect();
    Ok(LambdaProfile::from_values(values))
}

/// All maximum k-path subdigraphs, without duplicates (systems compared
/// as sets of directed vertex sequences).
pub fn enumerate_maximum_k_path_subdigraphs(
    d: &Digraph,
    k: usize,
    budget: &Budget,
) -> Result<Vec<PathSystem>> {
    let mut out = Vec::new();
    visit_maximum_k_path_subdigraphs(d, k, budget, |paths| {
        out.push(PathSystem::new(paths.to_vec()).expect("search emits valid systems"));
    })?;
    Ok(out)
}

/// Streaming form of [`enumerate_maximum_k_path_subdigraphs`]: calls
/// `f` once per maximum system (paths in canonical order) and returns
/// the count. Avoids materializing large enumerations.
pub fn visit_maximum_k_path_subdigraphs<F>(
    d: &Digraph,
    k: usize,
    budget: &Budget,
    f: F,
) -> Result<u64>
where
    F: FnMut(&[Vec<usize>]),
{
    budget.check_enum(d.n())?;
    check_k(d, k)?;
    let adj = Adj::new(d);
    let (target, _) = backtrack::max_system(&adj, k);
    Ok(backtrack::enumerate_systems(&adj, k, target, f))
}

/// Independent exhaustive route: ordered-subset dynamic programming
/// over all vertex-sequence packings. This is the oracle the primary
/// search is tested against; keep it free of backtracking code.
pub mod oracle {
    use super::*;

    pub fn lambda_profile(d: &Digraph, budget: &Budget) -> Result<LambdaProfile> {
        budget.check_lambda(d.n())?;
        Ok(LambdaProfile::from_values(
            SubsetTables::build(d).lambda_values(),
        ))
    }

    pub fn lambda_k(d: &Digraph, k: usize, budget: &Budget) -> Result<usize> {
        budget.check_lambda(d.n())?;
        super::check_k(d, k)?;
        Ok(SubsetTables::build(d).lambda_values()[k - 1])
    }
}

/// Per-part coverage table: `get(i, k)` is the maximum number of part-i
/// vertices coverable by any k-path subdigraph of the composition (not
/// only maximum ones).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageProfile {
    /// l[i][k-1], for k = 1..=total order.
    l: Vec<Vec<usize>>,
}

impl CoverageProfile {
    pub fn parts(&self) -> usize {
        self.l.len()
    }

    pub fn max_k(&self) -> usize {
        self.l.first().map_or(0, |row| row.len())
    }

    pub fn get(&self, part: usize, k: usize) -> usize {
        self.l[part][k - 1]
    }

    /// The k = 1 column: l_i, the single-path coverage per part.
    pub fn single_path(&self) -> Vec<usize> {
        self.l.iter().map(|row| row[0]).collect()
    }
}

/// Coverage table of the composition, or of its arc-stripped form when
/// `stripped` is true (all part arcs removed; outer arcs kept).
pub fn coverage_profile(
    spec: &CompositionSpec,
    stripped: bool,
    budget: &Budget,
) -> Result<CoverageProfile> {
    let spec = if stripped {
        spec.stripped()
    } else {
        spec.clone()
    };
    let built = BuiltComposition::new(spec)?;
    coverage_profile_built(&built, budget)
}

pub(crate) fn coverage_profile_built(
    built: &BuiltComposition,
    budget: &Budget,
) -> Result<CoverageProfile> {
    let n = built.digraph.n();
    budget.check_lambda(n)?;
    let tables = SubsetTables::build(&built.digraph);
    let t = built.t();
    let masks: Vec<u32> = (0..t).map(|i| built.part_mask(i)).collect();
    let mut l = vec![vec![0usize; n]; t];
    for s in 1u32..(1u32 << n) {
        let size = s.count_ones() as usize;
        let kmin = tables.min_cover(s) as usize;
        for (i, &mask) in masks.iter().enumerate() {
            let covered = (s & mask).count_ones() as usize;
            for k in kmin..=size {
                if covered > l[i][k - 1] {
                    l[i][k - 1] = covered;
                }
            }
        }
    }
    Ok(CoverageProfile { l })
}

/// Longest-path quantities of an acyclic composition, per part:
/// `p_in[i]` is the maximum order of a path avoiding part i whose
/// terminal vertex has an arc into part i (0 when none exists), and
/// `p_end[i]` the maximum order of a path ending inside part i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicPartSignature {
    pub p_in: Vec<usize>,
    pub p_end: Vec<usize>,
}

pub fn acyclic_signature(spec: &CompositionSpec, budget: &Budget) -> Result<AcyclicPartSignature> {
    let built = BuiltComposition::new(spec.clone())?;
    acyclic_signature_built(&built, budget)
}

pub(crate) fn acyclic_signature_built(
    built: &BuiltComposition,
    budget: &Budget,
) -> Result<AcyclicPartSignature> {
    if !built.spec.outer.is_acyclic() {
        return Err(Error::Structure(
            "signature requires an acyclic outer digraph".into(),
        ));
    }
    let n = built.digraph.n();
    budget.check_lambda(n)?;
    let adj = Adj::new(&built.digraph);
    let tables = SubsetTables::build(&built.digraph);
    let t = built.t();
    let mut p_in = vec![0usize; t];
    let mut p_end = vec![0usize; t];
    for i in 0..t {
        let mask = built.part_mask(i);
        // Vertices outside part i with an arc into it.
        let mut enter = 0u32;
        for u in 0..n {
            if mask >> u & 1 == 0 && adj.out[u] & mask != 0 {
                enter |= 1 << u;
            }
        }
        for s in 1u32..(1u32 << n) {
            let ends = tables.path_end(s);
            if ends == 0 {
                continue;
            }
            let size = s.count_ones() as usize;
            if s & mask == 0 && ends & enter != 0 && size > p_in[i] {
                p_in[i] = size;
            }
            if ends & mask != 0 && size > p_end[i] {
                p_end[i] = size;
            }
        }
    }
    Ok(AcyclicPartSignature { p_in, p_end })
}
