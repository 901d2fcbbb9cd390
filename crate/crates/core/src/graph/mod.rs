//! Immutable simple undirected graphs on dense vertex indices `0..n`.

mod graph6;
mod named;

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::set::VertexSet;

pub use graph6::{parse_graph6, parse_graph_line, parse_sparse6, write_graph6, Graph6Error};
pub use named::{named_graph, NamedGraph, NamedGraphError, KNOWN_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("common neighbors requested for a vertex and itself ({0})")]
    SameVertex(usize),
}

/// Simple undirected graph with packed adjacency rows.
///
/// Every vertex has both a bitset row (for intersections and popcounts) and a
/// sorted neighbor list (for iteration). Both are built once and never change.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Length of a shortest cycle, or `Acyclic` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => serializer.serialize_u64(*g as u64),
            Girth::Acyclic => serializer.serialize_str("acyclic"),
        }
    }
}

/// Result of [`Graph::induced_subgraph`].
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `old_to_new[v]` is the new index of `v`, or `None` if `v` was dropped.
    pub old_to_new: Vec<Option<usize>>,
    /// Original index of each new vertex, increasing.
    pub new_to_old: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![VertexSet::empty(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Graph::from_rows(rows))
    }

    fn from_rows(rows: Vec<VertexSet>) -> Graph {
        let adj: Vec<Vec<usize>> = rows.iter().map(VertexSet::to_vec).collect();
        let degree_sum: usize = adj.iter().map(Vec::len).sum();
        Graph {
            n: rows.len(),
            rows,
            adj,
            edge_count: degree_sum / 2,
        }
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Graph {
        Graph::from_rows(vec![VertexSet::empty(n); n])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbors of `v` in increasing order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Neighborhood of `v` as a packed row.
    #[inline]
    pub fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Minimum degree; 0 for the empty graph on zero vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self.rows[u].intersection(&self.rows[v]))
    }

    /// Connected components, each as a vertex set, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty(self.n);
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen.contains(root) {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            seen.insert(root);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Subgraph induced by `keep`, relabelled to `0..|keep|` in increasing
    /// order of the original indices.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        if keep.universe() != self.n {
            if let Some(v) = keep.iter().find(|&v| v >= self.n) {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        let new_to_old: Vec<usize> = keep.iter().collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let edges = new_to_old.iter().enumerate().flat_map(|(a, &u)| {
            let old_to_new = &old_to_new;
            self.adj[u]
                .iter()
                .filter_map(move |&w| old_to_new[w].filter(|&b| a < b).map(|b| (a, b)))
        });
        let graph = Graph::from_edges(new_to_old.len(), edges.collect::<Vec<_>>())
            .expect("induced edges are in range and loop-free");
        Ok(InducedSubgraph {
            graph,
            old_to_new,
            new_to_old,
        })
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation preserves simplicity")
    }

    /// Exact girth.
    ///
    /// A breadth-first search is run from every root; the first edge that
    /// joins two already-labelled vertices (other than a tree edge) closes a
    /// walk of length `d(u) + d(w) + 1` which contains a cycle, and for a root
    /// on a shortest cycle that walk is the cycle itself.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.fill(usize::MAX);
            queue.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                // nothing shorter can close beyond this depth
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best == 3 {
                            return Girth::Finite(3);
                        }
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Acyclic
        } else {
            Girth::Finite(best)
        }
    }

    /// Checks the symmetry / irreflexivity / edge-count invariants.
    pub fn is_consistent(&self) -> bool {
        (0..self.n).all(|u| {
            !self.rows[u].contains(u) && self.adj[u].iter().all(|&v| self.rows[v].contains(u))
        }) && self.adj.iter().map(Vec::len).sum::<usize>() == 2 * self.edge_count
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_consistent());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(Graph::from_edges(1, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn girth_small_cases() {
        assert_eq!(cycle(9).girth(), Girth::Finite(9));
        assert_eq!(cycle(3).girth(), Girth::Finite(3));
        let path = Graph::from_edges(6, (0..5).map(|i| (i, i + 1))).unwrap();
        assert_eq!(path.girth(), Girth::Acyclic);
        assert_eq!(Graph::empty(0).girth(), Girth::Acyclic);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.girth(), Girth::Finite(3));
    }

    #[test]
    fn girth_of_cycle_with_pendant_tree() {
        // 6-cycle plus a long tail; roots on the tail must not undercount
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.extend([(0, 6), (6, 7), (7, 8)]);
        let g = Graph::from_edges(9, edges).unwrap();
        assert_eq!(g.girth(), Girth::Finite(6));
    }

    #[test]
    fn common_neighbors_on_cycles() {
        let c5 = cycle(5);
        assert_eq!(c5.common_neighbors(0, 2).unwrap().to_vec(), vec![1]);
        let c4 = cycle(4);
        assert_eq!(c4.common_neighbors(0, 2).unwrap().to_vec(), vec![1, 3]);
        assert_eq!(c4.common_neighbors(0, 0), Err(GraphError::SameVertex(0)));
        assert!(c4.common_neighbors(0, 9).is_err());
    }

    #[test]
    fn components_and_induced_subgraph() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let comps: Vec<_> = g
            .connected_components()
            .iter()
            .map(VertexSet::to_vec)
            .collect();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4], vec![5]]);

        let keep = VertexSet::from_vertices(6, [1, 2, 4]).unwrap();
        let sub = g.induced_subgraph(&keep).unwrap();
        assert_eq!(sub.new_to_old, vec![1, 2, 4]);
        assert_eq!(sub.old_to_new[4], Some(2));
        assert_eq!(sub.old_to_new[0], None);
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn min_degree_of_path_and_cycle() {
        assert_eq!(cycle(7).min_degree(), 2);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.min_degree(), 1);
    }
}
