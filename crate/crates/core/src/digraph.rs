use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A finite simple digraph on vertices `0..n`.
///
/// No loops, no duplicate arcs; antiparallel pairs (`u->v` and `v->u`)
/// are allowed. Immutable after construction, so values can be shared
/// freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    /// Sorted lexicographically; this is the canonical arc order used
    /// by serialization and by the exhaustive enumerator.
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

/// Hard cap on representable order; adjacency is materialized per
/// vertex, so unboundedly large headers in untrusted input would
/// exhaust memory before any budget check runs.
pub const MAX_ORDER: usize = 1 << 20;

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_ORDER {
            return Err(Error::InvalidInstance(format!(
                "order {n} exceeds the representable maximum {MAX_ORDER}"
            )));
        }
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!(
                    "arc ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("loop at vertex {u}")));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(format!(
                "duplicate arc ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &list {
            out[u].push(v);
            inn[v].push(u);
        }
        Ok(Digraph {
            n,
            arcs: list,
            out,
            inn,
        })
    }

    /// Digraph with no arcs.
    pub fn empty(n: usize) -> Self {
        assert!(
            n <= MAX_ORDER,
            "order {n} exceeds the representable maximum"
        );
        Digraph {
            n,
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in canonical (lexicographic) order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// True iff the digraph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm; cycle left over iff some vertex never drains.
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.inn[v].len()).collect();
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &self.out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen == self.n
    }

    /// True iff every unordered pair of distinct vertices has at least
    /// one arc between them.
    pub fn is_semicomplete(&self) -> bool {
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_arc(u, v) && !self.has_arc(v, u) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every unordered pair has exactly one arc.
    pub fn is_tournament(&self) -> bool {
        self.is_semicomplete() && self.arcs.len() == self.n * (self.n - 1) / 2
    }

    /// Subdigraph induced by `vertices`, together with the map from new
    /// ids to old ids (`map[new] = old`). `vertices` may come in any
    /// order; new ids follow ascending old ids.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Digraph, Vec<usize>)> {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        if let Some(w) = map.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(format!(
                "duplicate vertex {} in induced set",
                w[0]
            )));
        }
        if let Some(&v) = map.last() {
            if v >= self.n {
                return Err(Error::InvalidInstance(format!(
                    "vertex {v} not in digraph of order {}",
                    self.n
                )));
            }
        }
        let index_of = |v: usize| map.binary_search(&v).ok();
        let mut arcs = Vec::new();
        for &(u, v) in &self.arcs {
            if let (Some(a), Some(b)) = (index_of(u), index_of(v)) {
                arcs.push((a, b));
            }
        }
        let d = Digraph::new(map.len(), arcs)?;
        Ok((d, map))
    }

    /// Vertices reachable from `start` by a directed path (including
    /// `start` itself).
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.out[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Serialize for Digraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawDigraph {
            n: self.n,
            arcs: self.arcs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDigraph::deserialize(deserializer)?;
        Digraph::new(raw.n, raw.arcs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Digraph {
        Digraph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn rejects_loops_dups_and_range() {
        assert!(Digraph::new(2, [(0, 0)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (0, 1)]).is_err());
        assert!(Digraph::new(2, [(0, 2)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (1, 0)]).is_ok()); // antiparallel pair allowed
    }

    #[test]
    fn rejects_unrepresentable_orders() {
        assert!(Digraph::new(MAX_ORDER + 1, []).is_err());
        let js = format!(r#"{{"n":{},"arcs":[]}}"#, 1usize << 30);
        assert!(serde_json::from_str::<Digraph>(&js).is_err());
    }

    #[test]
    fn acyclicity() {
        assert!(path(3).is_acyclic());
        assert!(!Digraph::new(2, [(0, 1), (1, 0)]).unwrap().is_acyclic());
        assert!(Digraph::empty(0).is_acyclic());
        assert!(!Digraph::new(3, [(0, 1), (1, 2), (2, 0)])
            .unwrap()
            .is_acyclic());
    }

    #[test]
    fn semicompleteness() {
        assert!(Digraph::empty(1).is_semicomplete());
        assert!(!Digraph::empty(2).is_semicomplete());
        let t3 = Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(t3.is_semicomplete());
        assert!(t3.is_tournament());
        let two_cycle = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert!(two_cycle.is_semicomplete());
        assert!(!two_cycle.is_tournament());
    }

    #[test]
    fn induced_edge_cases() {
        let d = path(4);
        let (sub, map) = d.induced(&[]).unwrap();
        assert_eq!(sub.n(), 0);
        assert!(map.is_empty());

        let (sub, map) = d.induced(&[0, 1, 2, 3]).unwrap();
        assert_eq!(sub, d);
        assert_eq!(map, vec![0, 1, 2, 3]);

        let (sub, map) = d.induced(&[3, 1]).unwrap();
        assert_eq!(map, vec![1, 3]);
        assert_eq!(sub.arc_count(), 0);

        assert!(d.induced(&[5]).is_err());
        assert!(d.induced(&[1, 1]).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let d = Digraph::new(3, [(2, 0), (0, 1)]).unwrap();
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(js, r#"{"n":3,"arcs":[[0,1],[2,0]]}"#);
        let back: Digraph = serde_json::from_str(&js).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Digraph>(r#"{"n":2,"arcs":[[0,0]]}"#).is_err());
    }
}
