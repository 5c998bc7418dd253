//! Unit-capacity Dinic max-flow specialised to bipartite matching.

use std::collections::VecDeque;

struct Network {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) -> usize {
        let e = self.to.len();
        self.to.extend([v, u]);
        self.cap.extend([1, 0]);
        self.adj[u].push(e);
        self.adj[v].push(e + 1);
        e
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<i32>> {
        let mut level = vec![-1; self.adj.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &e in &self.adj[v] {
                let u = self.to[e];
                if self.cap[e] > 0 && level[u] < 0 {
                    level[u] = level[v] + 1;
                    q.push_back(u);
                }
            }
        }
        (level[t] >= 0).then_some(level)
    }

    /// Blocking flow on the level graph, with an explicit stack.
    fn blocking_flow(&mut self, s: usize, t: usize, level: &mut [i32]) -> usize {
        let mut it = vec![0usize; self.adj.len()];
        let mut nodes = vec![s];
        let mut path: Vec<usize> = Vec::new();
        let mut flow = 0;
        while let Some(&v) = nodes.last() {
            if v == t {
                for &e in &path {
                    self.cap[e] -= 1;
                    self.cap[e ^ 1] += 1;
                }
                flow += 1;
                nodes.truncate(1);
                path.clear();
                continue;
            }
            let mut next = None;
            while it[v] < self.adj[v].len() {
                let e = self.adj[v][it[v]];
                let u = self.to[e];
                if self.cap[e] > 0 && level[u] == level[v] + 1 {
                    next = Some((e, u));
                    break;
                }
                it[v] += 1;
            }
            match next {
                Some((e, u)) => {
                    nodes.push(u);
                    path.push(e);
                }
                None => {
                    level[v] = -1;
                    nodes.pop();
                    if path.pop().is_some() {
                        let w = *nodes.last().expect("source stays on stack");
                        it[w] += 1;
                    }
                }
            }
        }
        flow
    }
}

/// Maximum-cardinality matching. Edges are explored in `(left, right)`
/// order so the result is a pure function of the edge set. Output is
/// sorted by left index.
pub fn maximum_matching(edges: &[(usize, usize)], n_left: usize, n_right: usize) -> Vec<(usize, usize)> {
    let mut sorted: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(l, r)| l < n_left && r < n_right)
        .collect();
    sorted.sort_unstable();
    sorted.dedup();

    let s = n_left + n_right;
    let t = s + 1;
    let mut net = Network::new(n_left + n_right + 2);
    for l in 0..n_left {
        net.add_edge(s, l);
    }
    let handles: Vec<(usize, usize, usize)> = sorted
        .iter()
        .map(|&(l, r)| (l, r, net.add_edge(l, n_left + r)))
        .collect();
    for r in 0..n_right {
        net.add_edge(n_left + r, t);
    }
    while let Some(mut level) = net.levels(s, t) {
        if net.blocking_flow(s, t, &mut level) == 0 {
            break;
        }
    }
    handles
        .into_iter()
        .filter(|&(_, _, e)| net.cap[e] == 0)
        .map(|(l, r, _)| (l, r))
        .collect()
}
