//! Exhaustive ordered-subset dynamic programming.
//!
//! For every vertex subset S, `path_end[S]` records which vertices can
//! terminate a directed path covering exactly S, and `min_cover[S]` the
//! minimum number of disjoint paths that exactly cover S. A set S is
//! coverable by exactly k paths iff min_cover[S] <= k <= |S| (a path of
//! order >= 2 can always be split). Everything else in this module is
//! read off those two tables.

use crate::Digraph;

use super::Adj;

pub(crate) struct SubsetTables {
    n: usize,
    path_end: Vec<u32>,
    min_cover: Vec<u8>,
}

impl SubsetTables {
    pub fn build(d: &Digraph) -> SubsetTables {
        let adj = Adj::new(d);
        let n = adj.n;
        assert!(n <= 24, "subset tables require budget-guarded order");
        let size = 1usize << n;
        let mut path_end = vec![0u32; size];
        for s in 1..size as u32 {
            if s & (s - 1) == 0 {
                path_end[s as usize] = s;
                continue;
            }
            let mut ends = 0u32;
            let mut m = s;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if path_end[(s ^ (1 << v)) as usize] & adj.inn[v] != 0 {
                    ends |= 1 << v;
                }
            }
            path_end[s as usize] = ends;
        }
        let mut min_cover = vec![0u8; size];
        for s in 1..size as u32 {
            if path_end[s as usize] != 0 {
                min_cover[s as usize] = 1;
                continue;
            }
            // Split off the piece containing the lowest vertex of S.
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut best = u8::MAX;
            let mut t = rest;
            loop {
                let piece = t | low;
                if path_end[piece as usize] != 0 {
                    let c = 1 + min_cover[(s ^ piece) as usize];
                    if c < best {
                        best = c;
                    }
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & rest;
            }
            min_cover[s as usize] = best;
        }
        SubsetTables {
            n,
            path_end,
            min_cover,
        }
    }

    pub fn path_end(&self, s: u32) -> u32 {
        self.path_end[s as usize]
    }

    pub fn min_cover(&self, s: u32) -> u8 {
        self.min_cover[s as usize]
    }

    /// lambda_1..lambda_n.
    pub fn lambda_values(&self) -> Vec<usize> {
        let mut best = vec![0usize; self.n];
        for s in 1..(1u32 << self.n) {
            let size = s.count_ones() as usize;
            let kmin = self.min_cover[s as usize] as usize;
            for k in kmin..=size {
                if size > best[k - 1] {
                    best[k - 1] = size;
                }
            }
        }
        best
    }

    /// lambda_k of every induced subdigraph at once:
    /// `table[x * n + (k-1)]` = lambda_k of the subdigraph induced by
    /// the vertex set x (0 when k > |x|). Drives the bipartition
    /// sweeps.
    pub fn induced_lambda_table(&self) -> InducedLambda {
        let n = self.n;
        let size = 1usize << n;
        let mut table = vec![0u8; size * n.max(1)];
        for x in 1..size as u32 {
            let base = x as usize * n;
            let size_x = x.count_ones() as usize;
            let kmin = self.min_cover[x as usize] as usize;
            for k in 1..=n {
                let mut v = if k >= kmin && k <= size_x {
                    size_x as u8
                } else {
                    0
                };
                let mut m = x;
                while m != 0 {
                    let b = m & m.wrapping_neg();
                    m ^= b;
                    let sub = (x ^ b) as usize * n + (k - 1);
                    if table[sub] > v {
                        v = table[sub];
                    }
                }
                table[base + k - 1] = v;
            }
        }
        InducedLambda { n, table }
    }
}

pub(crate) struct InducedLambda {
    n: usize,
    table: Vec<u8>,
}

impl InducedLambda {
    /// lambda_k of the subdigraph induced by vertex mask `x`; 0 for the
    /// empty mask or k > |x|.
    pub fn get(&self, x: u32, k: usize) -> usize {
        if x == 0 {
            0
        } else {
            self.table[x as usize * self.n + (k - 1)] as usize
        }
    }

    /// lambda of the induced subdigraph (k = 1), 0 for empty.
    pub fn lambda(&self, x: u32) -> usize {
        self.get(x, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn profiles_match_hand_values() {
        let t = SubsetTables::build(&samples::directed_path(3));
        assert_eq!(t.lambda_values(), vec![3, 3, 3]);

        let t = SubsetTables::build(&samples::directed_cycle(3));
        assert_eq!(t.lambda_values(), vec![3, 3, 3]);

        let t = SubsetTables::build(&crate::Digraph::empty(3));
        assert_eq!(t.lambda_values(), vec![1, 2, 3]);

        let t = SubsetTables::build(&samples::triangle_composition().digraph);
        assert_eq!(t.lambda_values(), vec![4, 4, 4, 4]);
    }

    #[test]
    fn induced_table_matches_direct_computation() {
        let d = samples::triangle_composition().digraph;
        let tables = SubsetTables::build(&d);
        let induced = tables.induced_lambda_table();
        for x in 0u32..16 {
            let verts: Vec<usize> = (0..4).filter(|&v| x >> v & 1 == 1).collect();
            let (sub, _) = d.induced(&verts).unwrap();
            let direct = SubsetTables::build(&sub).lambda_values();
            for k in 1..=4usize {
                let expect = if k <= sub.n() { direct[k - 1] } else { 0 };
                assert_eq!(induced.get(x, k), expect, "x={x} k={k}");
            }
        }
    }

    #[test]
    fn min_cover_of_antichain() {
        // Two disjoint arcs: {0->1, 2->3}; covering all four needs 2 paths.
        let d = crate::Digraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let t = SubsetTables::build(&d);
        assert_eq!(t.min_cover(0b1111), 2);
        assert_eq!(t.min_cover(0b0011), 1);
        assert_eq!(t.lambda_values(), vec![2, 4, 4, 4]);
    }
}
