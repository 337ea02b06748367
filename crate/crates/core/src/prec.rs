//! Unbounded batches under strict precedence.
//!
//! Every component of the family is a batch. A relocated job lowers the
//! admissible-slot bound of its direct predecessors; the predecessors move
//! when the descending sweep reaches them.

use crate::csf::Csf;
use crate::model::{Instance, JobId, Schedule, Threshold, Time};
use crate::trace::{Event, Observer};
use crate::bounded::{slot_completions, to_schedule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecGraph {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleError;

impl PrecGraph {
    /// Builds forward and inverse adjacency, rejecting cycles.
    pub fn new(n: usize, edges: &[(JobId, JobId)]) -> Result<Self, CycleError> {
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(a, b) in edges {
            succ[a.index()].push(b.index());
            pred[b.index()].push(a.index());
        }
        let g = PrecGraph { succ, pred, edges: edges.len() };
        if g.topological_order().len() == n {
            Ok(g)
        } else {
            Err(CycleError)
        }
    }

    pub fn from_instance(instance: &Instance) -> Result<Self, CycleError> {
        Self::new(instance.n(), instance.precedence())
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn successors(&self, j: usize) -> &[usize] {
        &self.succ[j]
    }

    /// Direct predecessors of `j`.
    pub fn predecessors(&self, j: usize) -> &[usize] {
        &self.pred[j]
    }

    /// Kahn order; shorter than `n` when the graph has a cycle.
    fn topological_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut order: Vec<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let j = order[head];
            head += 1;
            for &s in &self.succ[j] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    order.push(s);
                }
            }
        }
        order
    }

    /// Drops every edge implied by a longer path.
    pub fn transitive_reduction(&self) -> PrecGraph {
        let n = self.n();
        let order = self.topological_order();
        let mut rank = vec![0; n];
        for (r, &j) in order.iter().enumerate() {
            rank[j] = r;
        }
        let mut kept = Vec::new();
        let mut reach = vec![false; n];
        for a in 0..n {
            let mut direct: Vec<usize> = self.succ[a].clone();
            direct.sort_unstable_by_key(|&s| rank[s]);
            direct.dedup();
            reach.iter_mut().for_each(|r| *r = false);
            for &s in &direct {
                if reach[s] {
                    continue;
                }
                kept.push((JobId(a), JobId(s)));
                let mut stack = vec![s];
                while let Some(v) = stack.pop() {
                    for &w in &self.succ[v] {
                        if !reach[w] {
                            reach[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        PrecGraph::new(n, &kept).expect("subgraph of a DAG")
    }
}

/// Layered family: sinks in the last component, then sinks of what remains,
/// and so on downward.
pub fn layered_initial_csf(instance: &Instance, graph: &PrecGraph) -> Csf {
    let n = graph.n();
    let mut outdeg: Vec<usize> = (0..n).map(|j| graph.successors(j).len()).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&j| outdeg[j] == 0).collect();
    let mut members = vec![Vec::new(); n];
    let mut slot = n;
    while !layer.is_empty() {
        slot -= 1;
        let mut next = Vec::new();
        for &j in &layer {
            for &p in graph.predecessors(j) {
                outdeg[p] -= 1;
                if outdeg[p] == 0 {
                    next.push(p);
                }
            }
        }
        members[slot] = layer.iter().map(|&j| JobId(j)).collect();
        layer = next;
    }
    Csf::from_components(instance, &members).expect("layers partition an acyclic graph")
}

/// Family, per-job slot bounds and graph carried across threshold queries.
#[derive(Clone, Debug)]
pub struct PrecSolverState<'a> {
    instance: &'a Instance,
    graph: PrecGraph,
    csf: Csf,
    bound: Vec<usize>,
    completion: Vec<Time>,
    relocations: u64,
}

impl<'a> PrecSolverState<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        let graph = PrecGraph::from_instance(instance).expect("instances are acyclic");
        Self::with_graph(instance, graph)
    }

    /// Uses `graph` for bound propagation; it must carry the same order as
    /// the instance's relation (for example its transitive reduction).
    pub fn with_graph(instance: &'a Instance, graph: PrecGraph) -> Self {
        let csf = layered_initial_csf(instance, &graph);
        let bound = csf.ordinals().to_vec();
        PrecSolverState { instance, graph, csf, bound, completion: Vec::new(), relocations: 0 }
    }

    pub fn csf(&self) -> &Csf {
        &self.csf
    }

    pub fn graph(&self) -> &PrecGraph {
        &self.graph
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bound
    }

    pub fn relocations(&self) -> u64 {
        self.relocations
    }

    pub fn schedule(&self) -> Schedule {
        to_schedule(self.instance, &self.csf.components().iter().map(|c| c.iter().map(|j| j.index()).collect()).collect::<Vec<_>>())
    }

    /// Minimum-makespan schedule with every cost below `y` among schedules
    /// satisfying the current family, or `None` if there is none.
    pub fn aux2(&mut self, y: Threshold, obs: &mut impl Observer) -> Option<Schedule> {
        obs.event(Event::Query { y });
        let inst = self.instance;
        let n = inst.n();
        loop {
            let mut batches: Vec<Vec<usize>> = (0..n)
                .map(|i| {
                    let mut v: Vec<usize> = self.csf.component(i).collect();
                    v.sort_unstable_by(|&a, &b| inst.cmp_key(b, a));
                    v
                })
                .collect();
            slot_completions(inst, &batches, &mut self.completion);
            obs.event(Event::Times(&self.completion));
            let mut moved = false;
            for i in (0..n).rev() {
                for j in std::mem::take(&mut batches[i]) {
                    let k1 = if y.admits(inst.cost(j, self.completion[i])) {
                        i
                    } else {
                        (0..i).rev().find(|&k| y.admits(inst.cost(j, self.completion[k])))?
                    };
                    let k = k1.min(self.bound[j]);
                    self.bound[j] = k;
                    if k == i {
                        continue;
                    }
                    self.csf.move_job(j, k);
                    self.relocations += 1;
                    moved = true;
                    obs.event(Event::Move { job: JobId(j), from: i, to: k, case: None });
                    if self.csf.component_len(i) == 0 {
                        return None;
                    }
                    for &p in self.graph.predecessors(j) {
                        // a predecessor would need a slot before the first
                        let limit = k.checked_sub(1)?;
                        if limit < self.bound[p] {
                            self.bound[p] = limit;
                            obs.event(Event::Bound { job: JobId(p), new: limit });
                        }
                    }
                }
            }
            if !moved {
                return Some(self.schedule());
            }
        }
    }
}
