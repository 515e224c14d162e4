//! Dinic max-flow on real capacities.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

struct Arc {
    to: usize,
    cap: f64,
}

pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
    eps: f64,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            next: vec![0; nodes],
            eps: 0.0,
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: f64, reverse_cap: f64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: reverse_cap,
        });
        self.eps = self.eps.max(1e-13 * cap.max(reverse_cap));
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if self.arcs[a].cap > self.eps && self.level[v] == usize::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: f64) -> f64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.out[u].len() {
            let a = self.out[u][self.next[u]];
            let v = self.arcs[a].to;
            if self.arcs[a].cap > self.eps && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.arcs[a].cap));
                if got > 0.0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0.0
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut flow = 0.0;
        while self.bfs(s, t) {
            self.next.fill(0);
            loop {
                let f = self.dfs(s, t, f64::INFINITY);
                if f <= 0.0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network.
    pub(crate) fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if self.arcs[a].cap > self.eps && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut g = FlowNetwork::new(4);
        g.add_arc(0, 1, 3.0, 0.0);
        g.add_arc(0, 2, 2.0, 0.0);
        g.add_arc(1, 2, 1.0, 0.0);
        g.add_arc(1, 3, 2.0, 0.0);
        g.add_arc(2, 3, 3.0, 0.0);
        assert!((g.max_flow(0, 3) - 5.0).abs() < 1e-12);
        let side = g.source_side(0);
        assert!(side[0] && !side[3]);
    }
}
