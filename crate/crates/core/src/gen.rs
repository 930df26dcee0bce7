//! Deterministic instance generators.
//!
//! Random generators draw from ChaCha8 so identical seeds reproduce
//! identical instances on every platform. Draw order is part of the
//! contract and documented per generator. Harness-level streams derive
//! one independent rng per instance index via [`instance_rng`], which
//! makes cursors seekable without replay.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Budget, CompositionSpec, Digraph, Error, Result};

/// Ordered pairs (u, v), u != v, in lexicographic order; bit j of an
/// enumeration cursor refers to pair j of this list.
pub fn arc_slots(n: usize) -> Vec<(usize, usize)> {
    let mut slots = Vec::with_capacity(n.saturating_mul(n.saturating_sub(1)));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                slots.push((u, v));
            }
        }
    }
    slots
}

/// Number of labeled digraphs on n vertices: 2^(n(n-1)).
pub fn all_digraph_count(n: usize) -> u128 {
    1u128 << (n * (n.saturating_sub(1)))
}

/// The labeled digraph at enumeration cursor `k`: arc slot j is present
/// iff bit j of `k` is set.
pub fn digraph_at(n: usize, cursor: u128) -> Digraph {
    let slots = arc_slots(n);
    let arcs = slots
        .iter()
        .enumerate()
        .filter(|(j, _)| cursor >> *j & 1 == 1)
        .map(|(_, &a)| a);
    Digraph::new(n, arcs).expect("enumerated arcs are valid by construction")
}

/// Streams all 2^(n(n-1)) labeled digraphs on n vertices in cursor
/// order. Guarded by the exhaustive bit budget.
pub fn all_digraphs(n: usize, budget: &Budget) -> Result<AllDigraphs> {
    let bits = n * n.saturating_sub(1);
    if bits as u32 > budget.exhaustive_bits {
        return Err(Error::Budget {
            what: "exhaustive digraph enumeration (arc bits)",
            limit: budget.exhaustive_bits as usize,
            got: bits,
        });
    }
    Ok(AllDigraphs {
        n,
        cursor: 0,
        total: all_digraph_count(n),
    })
}

pub struct AllDigraphs {
    n: usize,
    cursor: u128,
    total: u128,
}

impl AllDigraphs {
    pub fn cursor(&self) -> u128 {
        self.cursor
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn seek(&mut self, cursor: u128) {
        self.cursor = cursor.min(self.total);
    }
}

impl Iterator for AllDigraphs {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        if self.cursor >= self.total {
            return None;
        }
        let d = digraph_at(self.n, self.cursor);
        self.cursor += 1;
        Some(d)
    }
}

/// Random tournament: unordered pairs (u, v), u < v, in lexicographic
/// order; one bool draw each, true = u -> v.
pub fn tournament_with(n: usize, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Digraph::new(n, arcs).expect("one arc per pair is valid")
}

pub fn tournament(n: usize, seed: u64) -> Digraph {
    tournament_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random digraph: ordered pairs in lexicographic order, each present
/// independently with probability `arc_prob`.
pub fn random_digraph_with(n: usize, arc_prob: f64, rng: &mut impl Rng) -> Digraph {
    let arcs = arc_slots(n).into_iter().filter(|_| rng.gen_bool(arc_prob));
    Digraph::new(n, arcs).expect("slot arcs are valid")
}

pub fn random_digraph(n: usize, arc_prob: f64, seed: u64) -> Digraph {
    random_digraph_with(n, arc_prob, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random semicomplete digraph: unordered pairs in lexicographic order,
/// one draw in 0..3 each: 0 = u -> v, 1 = v -> u, 2 = both.
pub fn random_semicomplete_with(n: usize, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            match rng.gen_range(0..3u8) {
                0 => arcs.push((u, v)),
                1 => arcs.push((v, u)),
                _ => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
        }
    }
    Digraph::new(n, arcs).expect("pair arcs are valid")
}

pub fn random_semicomplete(n: usize, seed: u64) -> Digraph {
    random_semicomplete_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random acyclic digraph: arcs only from lower to higher index, each
/// ordered pair (u < v) present with probability `arc_prob`.
pub fn random_acyclic_with(n: usize, arc_prob: f64, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(arc_prob) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, arcs).expect("forward arcs are valid")
}

/// Shape of the outer digraph in a random composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OuterKind {
    Acyclic,
    Semicomplete,
}

/// Family parameters for random compositions.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CompositionProfile {
    pub outer: OuterKind,
    /// Max outer order t (t drawn uniformly in 1..=max_outer, clamped so
    /// every part still fits).
    pub max_outer: usize,
    /// Max order of each part.
    pub max_part: usize,
    /// Max total order of the built composition.
    pub max_total: usize,
    /// Arc probability inside parts (and for acyclic outer arcs).
    pub arc_prob: f64,
    /// Force arcless parts (extended semicomplete instances).
    pub arcless_parts: bool,
}

impl CompositionProfile {
    pub fn validate(&self) -> Result<()> {
        if self.max_outer == 0 || self.max_part == 0 || self.max_total < self.max_outer.min(1) {
            return Err(Error::InvalidInstance(format!(
                "degenerate profile {self:?}"
            )));
        }
        if !(0.0..=1.0).contains(&self.arc_prob) {
            return Err(Error::InvalidInstance(format!(
                "arc_prob {} not in [0, 1]",
                self.arc_prob
            )));
        }
        Ok(())
    }
}

/// Draw order: t, then the outer digraph, then part sizes left to
/// right, then each part's arcs.
pub fn random_composition_with(
    profile: &CompositionProfile,
    rng: &mut impl Rng,
) -> Result<CompositionSpec> {
    profile.validate()?;
    let t_cap = profile.max_outer.min(profile.max_total);
    let t = rng.gen_range(1..=t_cap);
    let outer = match profile.outer {
        OuterKind::Acyclic => random_acyclic_with(t, profile.arc_prob, rng),
        OuterKind::Semicomplete => random_semicomplete_with(t, rng),
    };
    let mut sizes = Vec::with_capacity(t);
    let mut left = profile.max_total;
    for i in 0..t {
        let remaining_parts = t - i - 1;
        let cap = profile.max_part.min(left - remaining_parts);
        let size = rng.gen_range(1..=cap);
        sizes.push(size);
        left -= size;
    }
    let parts = sizes
        .into_iter()
        .map(|s| {
            if profile.arcless_parts {
                Digraph::empty(s)
            } else {
                random_digraph_with(s, profile.arc_prob, rng)
            }
        })
        .collect();
    CompositionSpec::new(outer, parts)
}

pub fn random_composition(profile: &CompositionProfile, seed: u64) -> Result<CompositionSpec> {
    random_composition_with(profile, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Independent rng for instance `index` of a stream with master `seed`.
///
/// Uses a splitmix64 finalizer over (seed, index) so instance k can be
/// regenerated directly, which is what makes search cursors seekable.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}
