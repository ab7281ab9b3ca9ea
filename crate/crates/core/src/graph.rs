//! Finite simple graphs on dense integer vertex labels `0..n`.
//!
//! Adjacency lists are kept sorted, so neighbor queries, edge iteration and
//! serialization are deterministic given the construction input.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if a >= n {
                return Err(Error::UnknownVertex(a));
            }
            if b >= n {
                return Err(Error::UnknownVertex(b));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let mut adj = vec![Vec::new(); n];
        for (a, b) in set {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { adj })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as sorted pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Induced subgraph on `verts`; vertex `i` of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj }
    }

    /// The unit sphere of `v`: the subgraph induced by the neighbors of `v`.
    /// Vertex `i` of the result is `self.neighbors(v)[i]`.
    pub fn unit_sphere(&self, v: usize) -> Result<Graph> {
        if v >= self.adj.len() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.induced(&self.adj[v].clone()))
    }

    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.adj.len() {
            return Err(Error::UnknownVertex(v));
        }
        let verts: Vec<usize> = (0..self.adj.len()).filter(|&u| u != v).collect();
        Ok(self.induced(&verts))
    }

    /// Number of edges in the symmetric difference, for graphs on one vertex set.
    pub fn graph_distance(&self, other: &Graph) -> Result<usize> {
        if self.adj.len() != other.adj.len() {
            return Err(Error::VertexSetMismatch);
        }
        let a: BTreeSet<_> = self.edges().into_iter().collect();
        let b: BTreeSet<_> = other.edges().into_iter().collect();
        Ok(a.symmetric_difference(&b).count())
    }

    /// Graph join: disjoint union plus all cross edges. The vertices of `other`
    /// are relabeled by an offset of `self.vertex_count()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.adj.len();
        let m = other.adj.len();
        let mut adj = vec![Vec::new(); n + m];
        for (v, nbrs) in self.adj.iter().enumerate() {
            adj[v] = nbrs.clone();
        }
        for (v, nbrs) in other.adj.iter().enumerate() {
            adj[n + v] = nbrs.iter().map(|&w| w + n).collect();
        }
        for v in 0..n {
            for w in 0..m {
                adj[v].push(n + w);
                adj[n + w].push(v);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    pub fn join_all(parts: &[Graph]) -> Graph {
        let mut it = parts.iter();
        let first = it.next().cloned().unwrap_or_else(|| Graph::empty(0));
        it.fold(first, |acc, g| acc.join(g))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        verts.push(w);
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }

    /// True when the graph is a single cycle on three or more vertices.
    pub fn is_cycle(&self) -> bool {
        let n = self.adj.len();
        n >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    /// True when every component is a path or an isolated vertex.
    pub fn is_forest_of_paths(&self) -> bool {
        self.adj.iter().all(|l| l.len() <= 2) && !self.has_any_cycle()
    }

    /// Cycle detection via union-find on the edge list.
    pub fn has_any_cycle(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.adj.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in self.edges() {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                return true;
            }
            parent[ra] = rb;
        }
        false
    }

    /// BFS distances from `v`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Two-coloring by BFS parity; `None` when an odd cycle is found.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut side = vec![usize::MAX; n];
        for start in 0..n {
            if side[start] != usize::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if side[w] == usize::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Generator};

    #[test]
    fn rejects_self_loops_and_unknown_vertices() {
        assert!(Graph::new(3, &[(0, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn unit_sphere_of_octahedron_vertex_is_c4() {
        let g = generators::octahedron();
        for v in 0..6 {
            let s = g.unit_sphere(v).unwrap();
            assert!(s.is_cycle());
            assert_eq!(s.vertex_count(), 4);
        }
    }

    #[test]
    fn unit_sphere_of_complete_graph_is_smaller_complete_graph() {
        let g = Generator::Complete(5).build().unwrap();
        let s = g.unit_sphere(0).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edge_count(), 6);
    }

    #[test]
    fn unit_sphere_of_c5_vertex_is_zero_sphere() {
        let g = Generator::Cycle(5).build().unwrap();
        let s = g.unit_sphere(0).unwrap();
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.edge_count(), 0);
    }

    #[test]
    fn unit_sphere_unknown_vertex_errors() {
        let g = Generator::Cycle(4).build().unwrap();
        assert!(g.unit_sphere(4).is_err());
    }

    #[test]
    fn distance_examples() {
        let c4 = Generator::Cycle(4).build().unwrap();
        assert_eq!(c4.graph_distance(&c4).unwrap(), 0);
        let chord = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        assert_eq!(c4.graph_distance(&chord).unwrap(), 1);
        let k4 = Generator::Complete(4).build().unwrap();
        assert_eq!(k4.graph_distance(&Graph::empty(4)).unwrap(), 6);
        assert!(k4.graph_distance(&Graph::empty(5)).is_err());
    }

    #[test]
    fn join_of_two_zero_spheres_is_c4() {
        let s0 = Graph::empty(2);
        let j = s0.join(&s0);
        assert_eq!(j.vertex_count(), 4);
        assert_eq!(j.edge_count(), 4);
        assert!(j.is_cycle());
    }

    #[test]
    fn join_k1_with_c4_is_wheel() {
        let w = Graph::empty(1).join(&Generator::Cycle(4).build().unwrap());
        let expected = Generator::Wheel(4).build().unwrap();
        assert_eq!(w.vertex_count(), expected.vertex_count());
        assert_eq!(w.edge_count(), expected.edge_count());
        assert!(crate::canon::isomorphic(&w, &expected).unwrap());
    }
}
