//! Small reference instances shared by the test suites and docs.

use crate::{BuiltComposition, CompositionSpec, Digraph};

/// Composition of a 3-cycle with parts of orders (2, 1, 1); the first
/// part carries one internal arc (vertex 1 -> vertex 0).
///
/// Flat labeling: part 0 = {0, 1}, part 1 = {2}, part 2 = {3}. The
/// built digraph has 4 vertices and the 6 arcs
/// `(0,2) (1,0) (1,2) (2,3) (3,0) (3,1)`, and its lambda profile is
/// `(4, 4, 4, 4)`.
pub fn triangle_composition() -> BuiltComposition {
    BuiltComposition::new(triangle_composition_spec()).expect("valid by construction")
}

pub fn triangle_composition_spec() -> CompositionSpec {
    let outer = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
    let h1 = Digraph::new(2, [(1, 0)]).unwrap();
    let h2 = Digraph::empty(1);
    let h3 = Digraph::empty(1);
    CompositionSpec::new(outer, vec![h1, h2, h3]).unwrap()
}

/// Directed path on `n` vertices: 0 -> 1 -> ... -> n-1.
pub fn directed_path(n: usize) -> Digraph {
    Digraph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

/// Directed cycle on `n >= 2` vertices.
pub fn directed_cycle(n: usize) -> Digraph {
    Digraph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// Transitive tournament on `n` vertices (arc u -> v iff u < v).
pub fn transitive_tournament(n: usize) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            arcs.push((u, v));
        }
    }
    Digraph::new(n, arcs).unwrap()
}
