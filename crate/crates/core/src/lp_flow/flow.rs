//! Min-cost job → (machine, layer) assignment by successive shortest paths.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{uint, Rational};

/// Bipartite network for one partition: every job may take any (machine, layer) slot, layer `lr`
/// meaning `lr`-th last, at cost `lr·p/s`.
#[derive(Debug, Clone)]
pub struct AssignmentNetwork {
    pub jobs: Vec<u64>,
    pub speeds: Vec<Rational>,
    pub layers: usize,
}

/// Per job `(machine, layer)`, layers 1-based, plus the total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub slots: Vec<(usize, usize)>,
    pub cost: Rational,
}

struct Edge {
    to: usize,
    cap: i64,
    cost: Rational,
    rev: usize,
}

struct Graph {
    adj: Vec<Vec<Edge>>,
}

impl Graph {
    fn new(nodes: usize) -> Self {
        Graph { adj: (0..nodes).map(|_| Vec::new()).collect() }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: Rational) {
        let (rf, rt) = (self.adj[to].len(), self.adj[from].len());
        self.adj[from].push(Edge { to, cap, cost: cost.clone(), rev: rf });
        self.adj[to].push(Edge { to: from, cap: 0, cost: -cost, rev: rt });
    }

    /// Bellman-Ford on the residual graph; returns predecessor `(node, edge)` per node.
    fn shortest_path(&self, source: usize) -> Vec<Option<(usize, usize)>> {
        let n = self.adj.len();
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        let mut pred = vec![None; n];
        dist[source] = Some(Rational::zero());
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                let Some(du) = dist[u].clone() else { continue };
                for (ei, e) in self.adj[u].iter().enumerate() {
                    if e.cap <= 0 {
                        continue;
                    }
                    let cand = &du + &e.cost;
                    if dist[e.to].as_ref().is_none_or(|d| cand < *d) {
                        dist[e.to] = Some(cand);
                        pred[e.to] = Some((u, ei));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        pred
    }
}

pub fn min_cost_assignment(network: &AssignmentNetwork) -> Result<FlowAssignment> {
    let n = network.jobs.len();
    let slots = network.speeds.len() * network.layers;
    let (source, sink) = (0, 1);
    let job_node = |j: usize| 2 + j;
    let slot_node = |m: usize, lr: usize| 2 + n + m * network.layers + (lr - 1);
    let mut g = Graph::new(2 + n + slots);
    for (j, &p) in network.jobs.iter().enumerate() {
        g.add_edge(source, job_node(j), 1, Rational::zero());
        for (m, s) in network.speeds.iter().enumerate() {
            for lr in 1..=network.layers {
                g.add_edge(job_node(j), slot_node(m, lr), 1, uint(lr as u64 * p) / s);
            }
        }
    }
    for m in 0..network.speeds.len() {
        for lr in 1..=network.layers {
            g.add_edge(slot_node(m, lr), sink, 1, Rational::zero());
        }
    }

    for _ in 0..n {
        let pred = g.shortest_path(source);
        if pred[sink].is_none() {
            return Err(Error::NoFeasibleFlow);
        }
        let mut v = sink;
        while v != source {
            let (u, ei) = pred[v].unwrap();
            let rev = g.adj[u][ei].rev;
            g.adj[u][ei].cap -= 1;
            g.adj[v][rev].cap += 1;
            v = u;
        }
    }

    let mut assigned = Vec::with_capacity(n);
    let mut cost = Rational::zero();
    let mut used = vec![vec![false; network.layers + 1]; network.speeds.len()];
    for j in 0..n {
        let e = g.adj[job_node(j)]
            .iter()
            .find(|e| e.to >= 2 + n && e.cap == 0)
            .ok_or_else(|| Error::internal("job left without a slot"))?;
        let idx = e.to - 2 - n;
        let (m, lr) = (idx / network.layers, idx % network.layers + 1);
        cost += &e.cost;
        used[m][lr] = true;
        assigned.push((m, lr));
    }
    for layers in &used {
        let top = layers.iter().rposition(|&u| u).unwrap_or(0);
        if (1..=top).any(|lr| !layers[lr]) {
            return Err(Error::internal("occupied layers are not a prefix"));
        }
    }
    Ok(FlowAssignment { slots: assigned, cost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn single_machine_is_spt() {
        let net = AssignmentNetwork { jobs: vec![2, 1], speeds: vec![int(1)], layers: 2 };
        let a = min_cost_assignment(&net).unwrap();
        assert_eq!(a.cost, int(4));
        assert_eq!(a.slots, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn one_job() {
        let net = AssignmentNetwork { jobs: vec![3], speeds: vec![int(2)], layers: 1 };
        assert_eq!(min_cost_assignment(&net).unwrap().cost, Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn unit_jobs_on_two_speeds() {
        let net = AssignmentNetwork { jobs: vec![1, 1, 1], speeds: vec![int(2), int(1)], layers: 3 };
        assert_eq!(min_cost_assignment(&net).unwrap().cost, Rational::new(5.into(), 2.into()));
    }

    #[test]
    fn too_few_slots() {
        let net = AssignmentNetwork { jobs: vec![1, 1], speeds: vec![int(1)], layers: 1 };
        assert_eq!(min_cost_assignment(&net), Err(Error::NoFeasibleFlow));
    }
}
