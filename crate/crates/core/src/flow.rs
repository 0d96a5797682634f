//! Dinic max-flow and feasibility of flows with lower bounds.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
}

/// Residual network; arcs are stored in pairs so that `id ^ 1` is the
/// reverse arc.
#[derive(Debug, Clone)]
pub struct Dinic {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Dinic {
    pub fn new(nodes: usize) -> Self {
        Dinic {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.level.push(0);
        self.cursor.push(0);
        self.out.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Flow currently on arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[id ^ 1].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.out[v] {
                let a = &self.arcs[id];
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[v] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, limit: i64) -> i64 {
        if v == t {
            return limit;
        }
        while self.cursor[v] < self.out[v].len() {
            let id = self.out[v][self.cursor[v]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.arcs[id].cap -= pushed;
                    self.arcs[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// s-t flow network whose arcs carry `lower <= flow <= upper`.
#[derive(Debug, Clone)]
pub struct BoundedFlow {
    net: Dinic,
    excess: Vec<i64>,
    lower: Vec<i64>,
    source: usize,
    sink: usize,
}

impl BoundedFlow {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        BoundedFlow {
            net: Dinic::new(nodes),
            excess: vec![0; nodes],
            lower: Vec::new(),
            source,
            sink,
        }
    }

    /// Returns a handle for [`BoundedFlow::flow`].
    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: i64) -> usize {
        debug_assert!(0 <= lower && lower <= upper);
        self.excess[to] += lower;
        self.excess[from] -= lower;
        let id = self.net.add_arc(from, to, upper - lower);
        self.lower.push(lower);
        id
    }

    /// Searches for any feasible flow; `true` if one exists, after which
    /// [`BoundedFlow::flow`] reads it.
    pub fn solve(&mut self) -> bool {
        let unbounded = self.excess.iter().map(|e| e.abs()).sum::<i64>() + 1;
        self.net.add_arc(self.sink, self.source, unbounded);
        let super_source = self.net.add_node();
        let super_sink = self.net.add_node();
        let mut demand = 0;
        for (v, &e) in self.excess.iter().enumerate() {
            if e > 0 {
                self.net.add_arc(super_source, v, e);
                demand += e;
            } else if e < 0 {
                self.net.add_arc(v, super_sink, -e);
            }
        }
        self.net.max_flow(super_source, super_sink) == demand
    }

    pub fn flow(&self, handle: usize) -> i64 {
        self.lower[handle / 2] + self.net.flow(handle)
    }
}
