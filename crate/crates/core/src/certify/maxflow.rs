// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Shortest-augmenting-path maximum flow over exact rationals.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::weights::Ratio;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    capacity: Ratio,
    flow: Ratio,
    /// Index of the paired reverse arc in `arcs`.
    reverse: usize,
}

/// Residual network in adjacency-list form. Every edge is stored with a
/// zero-capacity reverse arc.
#[derive(Debug, Clone)]
pub struct RationalFlowNetwork {
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

impl RationalFlowNetwork {
    pub fn new(num_nodes: usize) -> Self {
        RationalFlowNetwork {
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); num_nodes],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: Ratio) {
        let forward = self.arcs.len();
        self.arcs.push(Arc {
            to,
            capacity,
            flow: Ratio::zero(),
            reverse: forward + 1,
        });
        self.arcs.push(Arc {
            to: from,
            capacity: Ratio::zero(),
            flow: Ratio::zero(),
            reverse: forward,
        });
        self.adjacency[from].push(forward);
        self.adjacency[to].push(forward + 1);
    }

    fn residual(&self, arc: usize) -> Ratio {
        &self.arcs[arc].capacity - &self.arcs[arc].flow
    }

    /// Edmonds–Karp; returns the value of a maximum flow.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> Ratio {
        let mut total = Ratio::zero();
        loop {
            let mut via: Vec<Option<usize>> = vec![None; self.adjacency.len()];
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &arc in &self.adjacency[u] {
                    let to = self.arcs[arc].to;
                    if to != source && via[to].is_none() && self.residual(arc).is_positive() {
                        via[to] = Some(arc);
                        queue.push_back(to);
                    }
                }
            }
            if via[sink].is_none() {
                return total;
            }
            let mut path = Vec::new();
            let mut node = sink;
            while let Some(arc) = via[node] {
                path.push(arc);
                node = self.arcs[self.arcs[arc].reverse].to;
            }
            let bottleneck = path.iter().map(|&a| self.residual(a)).min().expect("non-empty path");
            for &arc in &path {
                self.arcs[arc].flow += &bottleneck;
                let reverse = self.arcs[arc].reverse;
                self.arcs[reverse].flow -= &bottleneck;
            }
            total += bottleneck;
        }
    }

    /// Net flow on the edges from `from` to `to`.
    pub fn flow_between(&self, from: usize, to: usize) -> Ratio {
        self.adjacency[from]
            .iter()
            .filter(|&&a| self.arcs[a].to == to && !self.arcs[a].capacity.is_zero())
            .map(|&a| self.arcs[a].flow.clone())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::ratio;

    #[test]
    fn classic_network() {
        // CLRS Figure 26.1, value 23.
        let mut net = RationalFlowNetwork::new(6);
        for (a, b, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (2, 1, 4),
            (1, 3, 12),
            (3, 2, 9),
            (2, 4, 14),
            (4, 3, 7),
            (3, 5, 20),
            (4, 5, 4),
        ] {
            net.add_edge(a, b, ratio(c, 1));
        }
        assert_eq!(net.max_flow(0, 5), ratio(23, 1));
    }

    #[test]
    fn fractional_capacities_are_exact() {
        let mut net = RationalFlowNetwork::new(4);
        net.add_edge(0, 1, ratio(1, 3));
        net.add_edge(0, 2, ratio(1, 7));
        net.add_edge(1, 3, ratio(1, 2));
        net.add_edge(2, 3, ratio(1, 11));
        assert_eq!(net.max_flow(0, 3), ratio(1, 3) + ratio(1, 11));
        assert_eq!(net.flow_between(2, 3), ratio(1, 11));
    }

    #[test]
    fn disconnected_sink() {
        let mut net = RationalFlowNetwork::new(3);
        net.add_edge(0, 1, ratio(5, 1));
        assert!(net.max_flow(0, 2).is_zero());
    }
}
