//! Unit-capacity max flow (Dinic), used to route vertex-disjoint saturated
//! paths between two ranks.

use std::collections::VecDeque;

pub(crate) struct FlowNet {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<u8>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNet {
    pub fn new(nodes: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        let e = self.to.len();
        self.adj[u].push(e as u32);
        self.to.push(v as u32);
        self.cap.push(1);
        self.adj[v].push(e as u32 + 1);
        self.to.push(u as u32);
        self.cap.push(0);
        e
    }

    /// Whether forward edge `e` carries flow.
    pub fn used(&self, e: usize) -> bool {
        self.cap[e] == 0
    }

    pub fn edges_from(&self, u: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[u]
            .iter()
            .map(|&e| (e as usize, self.to[e as usize] as usize))
            .filter(|&(e, _)| e % 2 == 0)
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize) -> bool {
        if u == t {
            return true;
        }
        while self.iter[u] < self.adj[u].len() {
            let e = self.adj[u][self.iter[u]] as usize;
            let v = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 && self.dfs(v, t) {
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                return true;
            }
            self.iter[u] += 1;
        }
        false
    }

    pub fn max_flow(&mut self, s: usize, t: usize, want: usize) -> usize {
        let mut flow = 0;
        while flow < want && self.bfs(s, t) {
            self.iter.fill(0);
            while flow < want && self.dfs(s, t) {
                flow += 1;
            }
        }
        flow
    }
}
