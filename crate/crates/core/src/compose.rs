use serde::{Deserialize, Serialize};

use crate::{Digraph, Error, Result};

/// A composition instance: an outer digraph on `t` vertices plus the
/// ordered parts substituted for them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionSpec {
    pub outer: Digraph,
    pub parts: Vec<Digraph>,
}

/// Position of one composed vertex: which part it came from, its index
/// inside that part, and its dense id in the built digraph. All three
/// are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLabel {
    pub part: usize,
    pub inner: usize,
    pub flat: usize,
}

impl CompositionSpec {
    pub fn new(outer: Digraph, parts: Vec<Digraph>) -> Result<Self> {
        let spec = CompositionSpec { outer, parts };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::InvalidInstance(
                "composition needs t >= 1 parts".into(),
            ));
        }
        if self.outer.n() != self.parts.len() {
            return Err(Error::InvalidInstance(format!(
                "outer order {} != part count {}",
                self.outer.n(),
                self.parts.len()
            )));
        }
        if let Some(i) = self.parts.iter().position(|p| p.n() == 0) {
            return Err(Error::InvalidInstance(format!("part {i} is empty")));
        }
        Ok(())
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn total_order(&self) -> usize {
        self.parts.iter().map(|p| p.n()).sum()
    }

    /// Same outer digraph with every part replaced by an arcless digraph
    /// of the same order.
    pub fn stripped(&self) -> CompositionSpec {
        CompositionSpec {
            outer: self.outer.clone(),
            parts: self.parts.iter().map(|p| Digraph::empty(p.n())).collect(),
        }
    }

    /// Builds the composed digraph together with its vertex labeling.
    ///
    /// Labeling is deterministic: parts in order, inner vertices in
    /// order. The arc set is the union of all inner arcs plus, for every
    /// outer arc (i, p), all arcs from part i to part p.
    pub fn build(&self) -> Result<(Digraph, Vec<VertexLabel>)> {
        self.validate()?;
        let offsets = self.offsets();
        let total = self.total_order();
        let mut labels = Vec::with_capacity(total);
        for (i, part) in self.parts.iter().enumerate() {
            for j in 0..part.n() {
                labels.push(VertexLabel {
                    part: i,
                    inner: j,
                    flat: offsets[i] + j,
                });
            }
        }
        let mut arcs = Vec::new();
        for (i, part) in self.parts.iter().enumerate() {
            for &(u, v) in part.arcs() {
                arcs.push((offsets[i] + u, offsets[i] + v));
            }
        }
        for &(i, p) in self.outer.arcs() {
            for u in 0..self.parts[i].n() {
                for v in 0..self.parts[p].n() {
                    arcs.push((offsets[i] + u, offsets[p] + v));
                }
            }
        }
        let q = Digraph::new(total, arcs)?;
        Ok((q, labels))
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.parts.len());
        let mut acc = 0;
        for p in &self.parts {
            offsets.push(acc);
            acc += p.n();
        }
        offsets
    }
}

/// A composition with its digraph built once and part lookup tables
/// attached; what the solvers and partitioners actually work on.
#[derive(Debug, Clone)]
pub struct BuiltComposition {
    pub spec: CompositionSpec,
    pub digraph: Digraph,
    pub labels: Vec<VertexLabel>,
    offsets: Vec<usize>,
}

impl BuiltComposition {
    pub fn new(spec: CompositionSpec) -> Result<Self> {
        let (digraph, labels) = spec.build()?;
        let offsets = spec.offsets();
        Ok(BuiltComposition {
            spec,
            digraph,
            labels,
            offsets,
        })
    }

    pub fn t(&self) -> usize {
        self.spec.t()
    }

    pub fn part_of(&self, flat: usize) -> usize {
        self.labels[flat].part
    }

    /// Flat vertex ids of part `i` (a contiguous range).
    pub fn part_vertices(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.spec.parts[i].n()
    }

    /// Bitmask of part `i`'s flat ids; only valid while the total order
    /// fits in a machine mask, which every budgeted operation ensures.
    pub fn part_mask(&self, i: usize) -> u32 {
        let r = self.part_vertices(i);
        (((1u64 << (r.end - r.start)) - 1) << r.start) as u32
    }
}
