//! Abstract simplicial complexes, stratified by dimension.
//!
//! The central constructor is [`whitney`], which lists all cliques of a graph.
//! Complexes built here are always closed under taking non-empty subsets: a
//! subset of a clique is a clique, and [`SimplicialComplex::from_facets`]
//! closes its input explicitly.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashMap;

/// A sorted, duplicate-free set of vertex labels. Dimension is cardinality − 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        assert!(!vertices.is_empty(), "simplices are non-empty");
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| self.0.binary_search(v).is_ok())
    }

    /// All non-empty proper subsets.
    pub fn proper_faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        let mut out = Vec::with_capacity((1usize << k) - 2);
        for mask in 1..(1u32 << k) - 1 {
            let verts: Vec<usize> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.0[i])
                .collect();
            out.push(Simplex(verts));
        }
        out
    }

    /// The `dim(self) − 1` dimensional faces (drop one vertex each).
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }
}

/// Counts of simplices per dimension, `f[0] = |V|` upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Simplices stored per dimension, each level sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self { by_dim: Vec::new() }
    }

    /// Closure of a set of simplices under taking non-empty subsets.
    pub fn from_facets<I: IntoIterator<Item = Simplex>>(facets: I) -> Self {
        let mut by_dim: Vec<std::collections::BTreeSet<Simplex>> = Vec::new();
        for s in facets {
            for f in s.proper_faces() {
                let d = f.dimension();
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, Default::default);
                }
                by_dim[d].insert(f);
            }
            let d = s.dimension();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Default::default);
            }
            by_dim[d].insert(s);
        }
        Self {
            by_dim: by_dim
                .into_iter()
                .map(|set| set.into_iter().collect())
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Largest stored dimension; `None` for the empty complex.
    pub fn max_dimension(&self) -> Option<usize> {
        if self.by_dim.is_empty() {
            None
        } else {
            Some(self.by_dim.len() - 1)
        }
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    /// The simplices of maximal dimension `q`.
    pub fn facets(&self) -> &[Simplex] {
        match self.max_dimension() {
            Some(q) => self.simplices(q),
            None => &[],
        }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.by_dim
            .get(s.dimension())
            .map(|level| level.binary_search(s).is_ok())
            .unwrap_or(false)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.by_dim.iter().map(Vec::len).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// The 1-skeleton as a graph. Vertex labels are taken from the 0-simplices,
    /// which are expected to be dense `0..n` (true for Whitney complexes).
    pub fn skeleton_graph(&self) -> Result<Graph> {
        let verts = self.simplices(0);
        let n = verts.len();
        for (i, s) in verts.iter().enumerate() {
            if s.vertices() != [i] {
                return Err(Error::Precondition(
                    "complex vertex labels are not dense 0..n".into(),
                ));
            }
        }
        let edges: Vec<(usize, usize)> = self
            .simplices(1)
            .iter()
            .map(|e| (e.vertices()[0], e.vertices()[1]))
            .collect();
        Graph::new(n, &edges)
    }

    /// Checks the subset-closure invariant. Intended for tests and debugging.
    pub fn is_closed(&self) -> bool {
        self.all_simplices()
            .all(|s| s.proper_faces().iter().all(|f| self.contains(f)))
    }
}

/// The Whitney complex of a graph: all vertex sets of complete subgraphs.
///
/// Cliques are enumerated level by level; a `k`-clique is extended only by
/// common neighbors larger than its last vertex, so each clique is produced
/// exactly once and every level comes out lexicographically sorted.
pub fn whitney(g: &Graph) -> SimplicialComplex {
    let n = g.vertex_count();
    if n == 0 {
        return SimplicialComplex::empty();
    }
    let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
    by_dim.push((0..n).map(|v| Simplex(vec![v])).collect());

    // Candidate extension sets piggyback on the clique list of the current level.
    let mut level: Vec<(Vec<usize>, Vec<usize>)> = (0..n)
        .map(|v| {
            let cands: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
            (vec![v], cands)
        })
        .collect();

    loop {
        let mut next: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (clique, cands) in &level {
            for (i, &w) in cands.iter().enumerate() {
                let mut bigger = clique.clone();
                bigger.push(w);
                let new_cands: Vec<usize> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&x| g.has_edge(w, x))
                    .collect();
                next.push((bigger, new_cands));
            }
        }
        if next.is_empty() {
            break;
        }
        by_dim.push(next.iter().map(|(c, _)| Simplex(c.clone())).collect());
        level = next;
    }
    SimplicialComplex { by_dim }
}

/// Euler characteristic of the Whitney complex of `g`.
pub fn euler_characteristic(g: &Graph) -> i64 {
    whitney(g).euler_characteristic()
}

/// Index of simplices by identity, used when refinements need stable vertex ids.
pub struct SimplexIndex {
    map: HashMap<Simplex, usize>,
    list: Vec<Simplex>,
}

impl SimplexIndex {
    pub fn new<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let list: Vec<Simplex> = simplices.into_iter().collect();
        let map = list
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Self { map, list }
    }

    pub fn id(&self, s: &Simplex) -> Option<usize> {
        self.map.get(s).copied()
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.list[id]
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.list
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Generator};

    /// Brute-force clique enumeration over all vertex subsets. The independent
    /// oracle for Whitney complexes of small graphs.
    pub fn cliques_by_subsets(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let is_clique = verts
                .iter()
                .enumerate()
                .all(|(i, &a)| verts[i + 1..].iter().all(|&b| g.has_edge(a, b)));
            if is_clique {
                out.push(verts);
            }
        }
        out
    }

    fn f_vector_by_subsets(g: &Graph) -> Vec<usize> {
        let mut counts = Vec::new();
        for c in cliques_by_subsets(g) {
            let d = c.len() - 1;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
    }

    #[test]
    fn whitney_k3_counts() {
        let g = Generator::Complete(3).build().unwrap();
        assert_eq!(whitney(&g).f_vector().0, vec![3, 3, 1]);
    }

    #[test]
    fn whitney_c4_is_triangle_free() {
        let g = Generator::Cycle(4).build().unwrap();
        let c = whitney(&g);
        assert_eq!(c.f_vector().0, vec![4, 4]);
        assert_eq!(c.max_dimension(), Some(1));
    }

    #[test]
    fn whitney_octahedron_matches_subset_oracle() {
        let g = generators::octahedron();
        let c = whitney(&g);
        assert_eq!(c.f_vector().0, f_vector_by_subsets(&g));
        assert_eq!(c.f_vector().0, vec![6, 12, 8]);
    }

    #[test]
    fn whitney_icosahedron_matches_subset_oracle() {
        let g = generators::icosahedron();
        let c = whitney(&g);
        assert_eq!(c.f_vector().0, f_vector_by_subsets(&g));
        assert_eq!(c.f_vector().0, vec![12, 30, 20]);
    }

    #[test]
    fn whitney_of_empty_graph_is_empty() {
        assert!(whitney(&Graph::empty(0)).is_empty());
    }

    #[test]
    fn f_vector_examples() {
        let k4 = Generator::Complete(4).build().unwrap();
        assert_eq!(whitney(&k4).f_vector().0, vec![4, 6, 4, 1]);
        let c5 = Generator::Cycle(5).build().unwrap();
        assert_eq!(whitney(&c5).f_vector().0, vec![5, 5]);
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(
            euler_characteristic(&Generator::Complete(4).build().unwrap()),
            1
        );
        assert_eq!(euler_characteristic(&generators::octahedron()), 2);
        assert_eq!(
            euler_characteristic(&Generator::Cycle(5).build().unwrap()),
            0
        );
    }

    #[test]
    fn whitney_closure_holds() {
        for g in [
            generators::octahedron(),
            Generator::Wheel(5).build().unwrap(),
            Generator::Complete(5).build().unwrap(),
        ] {
            assert!(whitney(&g).is_closed());
        }
    }
}
