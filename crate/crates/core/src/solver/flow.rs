//! Min-cost-flow fast path for acyclic digraphs.
//!
//! Vertex-split network: source -> v_in (cap 1), v_in -> v_out (cap 1,
//! cost -1), u_out -> v_in per arc, v_out -> sink. A flow of value k
//! decomposes into k vertex-disjoint paths, so the minimum cost of a
//! k-unit flow is -lambda_k. Successive shortest augmenting paths give
//! the whole profile in one pass because the intermediate flows are
//! cost-optimal at every value.

use crate::{Budget, Digraph, Error, LambdaProfile, Result};

struct Edge {
    to: usize,
    cap: i32,
    cost: i32,
}

struct Network {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i32, cost: i32) {
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap, cost });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// Shortest s-t path by cost in the residual network (SPFA; the
    /// residual of a cost-optimal flow has no negative cycles). Returns
    /// the predecessor edge per node, or None when t is unreachable.
    fn shortest_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut dist = vec![i32::MAX; n];
        let mut pred = vec![usize::MAX; n];
        let mut in_queue = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        in_queue[s] = true;
        while let Some(u) = queue.pop_front() {
            in_queue[u] = false;
            for &e in &self.adj[u] {
                let edge = &self.edges[e];
                if edge.cap > 0 && dist[u] != i32::MAX && dist[u] + edge.cost < dist[edge.to] {
                    dist[edge.to] = dist[u] + edge.cost;
                    pred[edge.to] = e;
                    if !in_queue[edge.to] {
                        queue.push_back(edge.to);
                        in_queue[edge.to] = true;
                    }
                }
            }
        }
        if dist[t] == i32::MAX {
            None
        } else {
            Some(pred)
        }
    }
}

/// lambda_1..lambda_n of an acyclic digraph via min-cost flow.
pub fn acyclic_lambda_profile(d: &Digraph, budget: &Budget) -> Result<LambdaProfile> {
    budget.check_lambda(d.n())?;
    if !d.is_acyclic() {
        return Err(Error::Structure(
            "flow solver only applies to acyclic digraphs".into(),
        ));
    }
    let n = d.n();
    if n == 0 {
        return Ok(LambdaProfile::from_values(Vec::new()));
    }
    let source = 2 * n;
    let sink = 2 * n + 1;
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        net.add(source, vin(v), 1, 0);
        net.add(vin(v), vout(v), 1, -1);
        net.add(vout(v), sink, 1, 0);
    }
    for &(u, v) in d.arcs() {
        net.add(vout(u), vin(v), 1, 0);
    }
    let mut values = Vec::with_capacity(n);
    let mut total_cost: i64 = 0;
    for _ in 1..=n {
        let pred = net
            .shortest_path(source, sink)
            .expect("k <= n units are always feasible (singleton paths)");
        let mut v = sink;
        while v != source {
            let e = pred[v];
            net.edges[e].cap -= 1;
            net.edges[e ^ 1].cap += 1;
            total_cost += net.edges[e].cost as i64;
            v = net.edges[e ^ 1].to;
        }
        values.push((-total_cost) as usize);
    }
    Ok(LambdaProfile::from_values(values))
}
