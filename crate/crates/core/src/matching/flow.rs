//! Successive shortest paths min-cost flow with Johnson potentials.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
    rev: usize,
}

pub(crate) struct MinCostFlow {
    graph: Vec<Vec<Arc>>,
}

impl MinCostFlow {
    pub(crate) fn new(nodes: usize) -> Self {
        MinCostFlow { graph: vec![Vec::new(); nodes] }
    }

    /// Adds an arc and returns a handle `(from, index)` for reading its flow.
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> (usize, usize) {
        let fwd = self.graph[from].len();
        let bwd = self.graph[to].len() + usize::from(from == to);
        self.graph[from].push(Arc { to, cap, cost, rev: bwd });
        self.graph[to].push(Arc { to: from, cap: 0, cost: -cost, rev: fwd });
        (from, fwd)
    }

    pub(crate) fn flow_on(&self, handle: (usize, usize)) -> i64 {
        let arc = &self.graph[handle.0][handle.1];
        self.graph[arc.to][arc.rev].cap
    }

    /// Pushes up to `limit` units from `s` to `t` at minimum cost.
    /// Returns `(flow, cost)`. Arc costs may be negative provided the
    /// initial residual network has no negative cycle.
    pub(crate) fn run(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let n = self.graph.len();
        let mut potential = self.bellman_ford(s);
        let (mut flow, mut cost) = (0i64, 0i64);
        let mut dist = vec![i64::MAX; n];
        let mut prev: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); n];
        while flow < limit {
            dist.iter_mut().for_each(|d| *d = i64::MAX);
            dist[s] = 0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((0i64, s)));
            while let Some(Reverse((d, v))) = heap.pop() {
                if d > dist[v] {
                    continue;
                }
                for (i, arc) in self.graph[v].iter().enumerate() {
                    if arc.cap <= 0 || potential[arc.to] == i64::MAX {
                        continue;
                    }
                    let nd = d + arc.cost + potential[v] - potential[arc.to];
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        prev[arc.to] = (v, i);
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            for v in 0..n {
                if dist[v] != i64::MAX && potential[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let (u, i) = prev[v];
                push = push.min(self.graph[u][i].cap);
                v = u;
            }
            let mut v = t;
            while v != s {
                let (u, i) = prev[v];
                self.graph[u][i].cap -= push;
                let rev = self.graph[u][i].rev;
                self.graph[v][rev].cap += push;
                cost += push * self.graph[u][i].cost;
                v = u;
            }
            flow += push;
        }
        (flow, cost)
    }

    fn bellman_ford(&self, s: usize) -> Vec<i64> {
        let n = self.graph.len();
        let mut dist = vec![i64::MAX; n];
        dist[s] = 0;
        for _ in 0..n {
            let mut changed = false;
            for v in 0..n {
                if dist[v] == i64::MAX {
                    continue;
                }
                for arc in &self.graph[v] {
                    if arc.cap > 0 && dist[v] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[v] + arc.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_with_negative_costs() {
        // 2x2 assignment maximizing 3+4 over 5+1
        let mut f = MinCostFlow::new(6);
        let (s, t) = (0, 5);
        f.add_arc(s, 1, 1, 0);
        f.add_arc(s, 2, 1, 0);
        let a = f.add_arc(1, 3, 1, -5);
        f.add_arc(1, 4, 1, -3);
        f.add_arc(2, 3, 1, -4);
        let d = f.add_arc(2, 4, 1, -1);
        f.add_arc(3, t, 1, 0);
        f.add_arc(4, t, 1, 0);
        assert_eq!(f.run(s, t, 2), (2, -7));
        assert_eq!(f.flow_on(a), 0);
        assert_eq!(f.flow_on(d), 0);
    }
}
