//! Single-source shortest paths with path counts and predecessor DAGs.
//!
//! Unweighted graphs use breadth-first layering, weighted graphs a binary-heap
//! Dijkstra. Two candidate distances within [`crate::TIE_TOLERANCE`] (relative)
//! are treated as equal so that tied shortest paths are all recorded.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::is_tied;

/// Default cap on the number of paths [`ShortestPathDag::enumerate`] returns.
pub const DEFAULT_PATH_CAP: u64 = 1_000_000;

/// A predecessor on some shortest path, with the edge used to reach the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pred {
    pub vertex: usize,
    pub edge: usize,
}

#[derive(Debug, Clone)]
pub struct ShortestPathDag {
    pub source: usize,
    /// Shortest distance from the source; `f64::INFINITY` when unreachable.
    pub dist: Vec<f64>,
    /// Number of distinct shortest paths from the source.
    pub sigma: Vec<u64>,
    /// Predecessors in ascending vertex index.
    pub preds: Vec<Vec<Pred>>,
    /// Reachable vertices in non-decreasing distance order, source first.
    pub order: Vec<usize>,
}

impl ShortestPathDag {
    pub fn is_reachable(&self, v: usize) -> bool {
        self.sigma[v] > 0
    }

    /// All shortest paths from the source to `t`, lexicographically ordered by
    /// internal vertex index.
    pub fn enumerate(&self, t: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
        if t >= self.sigma.len() {
            return Err(Error::VertexOutOfRange {
                index: t,
                len: self.sigma.len(),
            });
        }
        if !self.is_reachable(t) {
            return Err(Error::Unreachable(t.to_string()));
        }
        if self.sigma[t] > cap {
            return Err(Error::PathExplosion {
                count: self.sigma[t],
                cap,
            });
        }
        let mut out = Vec::with_capacity(self.sigma[t] as usize);
        let mut stack = vec![t];
        self.backtrack(t, &mut stack, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    fn backtrack(&self, v: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == self.source {
            out.push(stack.iter().rev().copied().collect());
            return;
        }
        for p in &self.preds[v] {
            stack.push(p.vertex);
            self.backtrack(p.vertex, stack, out);
            stack.pop();
        }
    }
}

/// Shortest-path DAG rooted at `source`.
pub fn sssp(g: &Graph, source: usize) -> Result<ShortestPathDag> {
    g.check_vertex(source)?;
    if g.is_weighted() {
        dijkstra(g, source)
    } else {
        bfs(g, source)
    }
}

/// Shortest distance between `s` and `t`; infinite for disconnected pairs.
pub fn distance(g: &Graph, s: usize, t: usize) -> Result<f64> {
    g.check_vertex(t)?;
    Ok(sssp(g, s)?.dist[t])
}

/// Enumerates all shortest paths from the DAG's source to `t`.
pub fn enumerate_shortest_paths(
    dag: &ShortestPathDag,
    t: usize,
    cap: u64,
) -> Result<Vec<Vec<usize>>> {
    dag.enumerate(t, cap)
}

fn empty_dag(n: usize, source: usize) -> ShortestPathDag {
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0; n];
    dist[source] = 0.0;
    sigma[source] = 1;
    ShortestPathDag {
        source,
        dist,
        sigma,
        preds: vec![Vec::new(); n],
        order: Vec::with_capacity(n),
    }
}

fn bfs(g: &Graph, source: usize) -> Result<ShortestPathDag> {
    let n = g.vertex_count();
    let mut dag = empty_dag(n, source);
    let mut hops = vec![usize::MAX; n];
    hops[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        dag.order.push(v);
        for a in g.adj(v) {
            let w = a.vertex;
            if hops[w] == usize::MAX {
                hops[w] = hops[v] + 1;
                dag.dist[w] = hops[w] as f64;
                queue.push_back(w);
            }
            if hops[w] == hops[v] + 1 {
                dag.sigma[w] = dag.sigma[w]
                    .checked_add(dag.sigma[v])
                    .ok_or(Error::PathCountOverflow)?;
                dag.preds[w].push(Pred {
                    vertex: v,
                    edge: a.edge,
                });
            }
        }
    }
    for p in &mut dag.preds {
        p.sort_unstable_by_key(|p| p.vertex);
    }
    Ok(dag)
}

#[derive(PartialEq)]
struct Entry {
    dist: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    // min-heap on (dist, vertex)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(g: &Graph, source: usize) -> Result<ShortestPathDag> {
    let n = g.vertex_count();
    let mut dag = empty_dag(n, source);
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::from([Entry {
        dist: 0.0,
        vertex: source,
    }]);
    while let Some(Entry { dist, vertex: v }) = heap.pop() {
        if settled[v] || dist != dag.dist[v] {
            continue;
        }
        settled[v] = true;
        dag.order.push(v);
        for a in g.adj(v) {
            let w = a.vertex;
            if settled[w] {
                continue;
            }
            let alt = dist + a.weight;
            let cur = dag.dist[w];
            if cur.is_finite() && is_tied(alt, cur) {
                dag.sigma[w] = dag.sigma[w]
                    .checked_add(dag.sigma[v])
                    .ok_or(Error::PathCountOverflow)?;
                dag.preds[w].push(Pred {
                    vertex: v,
                    edge: a.edge,
                });
            } else if alt < cur {
                dag.dist[w] = alt;
                dag.sigma[w] = dag.sigma[v];
                dag.preds[w].clear();
                dag.preds[w].push(Pred {
                    vertex: v,
                    edge: a.edge,
                });
                heap.push(Entry {
                    dist: alt,
                    vertex: w,
                });
            }
        }
    }
    for p in &mut dag.preds {
        p.sort_unstable_by_key(|p| p.vertex);
    }
    Ok(dag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeRecord;

    fn ring4(weighted: bool) -> Graph {
        let w = if weighted { 0.5 } else { 1.0 };
        Graph::from_edges(&[
            EdgeRecord::weighted("A", "B", w),
            EdgeRecord::new("B", "C"),
            EdgeRecord::new("C", "D"),
            EdgeRecord::new("D", "A"),
        ])
        .unwrap()
    }

    #[test]
    fn unweighted_ring_has_two_paths_to_opposite_vertex() {
        let g = ring4(false);
        let dag = sssp(&g, 0).unwrap();
        assert_eq!(dag.dist, [0.0, 1.0, 2.0, 1.0]);
        assert_eq!(dag.sigma, [1, 1, 2, 1]);
        assert_eq!(dag.preds[2].iter().map(|p| p.vertex).collect::<Vec<_>>(), [1, 3]);
        assert!(dag.preds[0].is_empty());
        let paths = dag.enumerate(2, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(paths, [vec![0, 1, 2], vec![0, 3, 2]]);
    }

    #[test]
    fn weighted_ring_distances() {
        let g = ring4(true);
        let dag = sssp(&g, 0).unwrap();
        assert_eq!(dag.dist, [0.0, 0.5, 1.5, 1.0]);
        assert_eq!(dag.sigma, [1, 1, 1, 1]);
        assert_eq!(dag.order, [0, 1, 3, 2]);
        assert_eq!(distance(&g, 0, 2).unwrap(), 1.5);
        assert_eq!(distance(&g, 1, 3).unwrap(), 1.5);
        assert_eq!(distance(&g, 2, 2).unwrap(), 0.0);
    }

    #[test]
    fn isolated_and_disconnected() {
        let g = Graph::from_parts(["X"], &[EdgeRecord::new("A", "B")]).unwrap();
        let dag = sssp(&g, 0).unwrap();
        assert_eq!(dag.dist[0], 0.0);
        assert!(dag.dist[1].is_infinite() && dag.dist[2].is_infinite());
        assert_eq!(dag.sigma, [1, 0, 0]);
        assert!(matches!(dag.enumerate(1, 10), Err(Error::Unreachable(_))));
        assert!(distance(&g, 0, 2).unwrap().is_infinite());
        assert!(matches!(sssp(&g, 5), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn single_edge_path() {
        let g = ring4(false);
        let dag = sssp(&g, 0).unwrap();
        assert_eq!(dag.enumerate(1, 1).unwrap(), [vec![0, 1]]);
    }

    #[test]
    fn explosion_cap() {
        let g = ring4(false);
        let dag = sssp(&g, 0).unwrap();
        assert!(matches!(
            dag.enumerate(2, 1),
            Err(Error::PathExplosion { count: 2, cap: 1 })
        ));
    }

    #[test]
    fn weighted_ties_are_detected() {
        // 0.1 + 0.2 != 0.3 in binary floating point, but the paths tie
        let g = Graph::from_edges(&[
            EdgeRecord::weighted("s", "a", 0.1),
            EdgeRecord::weighted("a", "t", 0.2),
            EdgeRecord::weighted("s", "t", 0.3),
        ])
        .unwrap();
        let dag = sssp(&g, 0).unwrap();
        assert_eq!(dag.sigma[2], 2);
        assert_eq!(dag.enumerate(2, 10).unwrap().len(), 2);
    }

    #[test]
    fn grid_path_count() {
        // 3x3 grid: corner to corner has C(4,2) = 6 shortest paths
        let mut recs = Vec::new();
        let id = |r: usize, c: usize| format!("{r}{c}");
        for r in 0..3 {
            for c in 0..3 {
                if c + 1 < 3 {
                    recs.push(EdgeRecord::new(id(r, c), id(r, c + 1)));
                }
                if r + 1 < 3 {
                    recs.push(EdgeRecord::new(id(r, c), id(r + 1, c)));
                }
            }
        }
        let g = Graph::from_edges(&recs).unwrap();
        let s = g.index_of("00").unwrap();
        let t = g.index_of("22").unwrap();
        let dag = sssp(&g, s).unwrap();
        assert_eq!(dag.sigma[t], 6);
        let paths = dag.enumerate(t, 100).unwrap();
        assert_eq!(paths.len(), 6);
        assert!(paths.iter().all(|p| p.len() == 5));
        assert!(paths.windows(2).all(|w| w[0] < w[1]));
    }
}
