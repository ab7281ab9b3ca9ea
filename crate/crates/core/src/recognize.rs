//! Recursive recognition of contractible graphs, spheres, balls and manifolds.
//!
//! The definitions are inductive: a graph is contractible when some vertex has
//! a contractible unit sphere and a contractible complement; a `q`-manifold
//! has `(q-1)`-sphere unit spheres; a sphere is a manifold that becomes
//! contractible after one puncture; a ball is a contractible manifold whose
//! unit spheres may also be balls. The empty graph is the `(-1)`-sphere and
//! `K_1` is contractible.
//!
//! Every graph reached by the recursion is an induced subgraph of the graph
//! we started from, so all work is memoized on vertex bitmasks over that
//! ambient graph. The search is exponential in the worst case; a work cap
//! turns runaway instances into an explicit `Undecided` instead of an answer.

use crate::graph::Graph;
use std::collections::HashMap;

pub const DEFAULT_WORK_CAP: u64 = 20_000_000;

/// Three-valued answer: exceeding the work cap is reported, never guessed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
    pub fn is_no(self) -> bool {
        self == Decision::No
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldKind {
    NotManifold,
    Manifold,
    ManifoldWithBoundary,
    Sphere,
    Ball,
    Undecided,
}

impl ManifoldKind {
    pub fn is_manifold(self) -> bool {
        !matches!(self, ManifoldKind::NotManifold | ManifoldKind::Undecided)
    }
    pub fn has_boundary(self) -> bool {
        matches!(
            self,
            ManifoldKind::ManifoldWithBoundary | ManifoldKind::Ball
        )
    }
    pub fn as_str(self) -> &'static str {
        match self {
            ManifoldKind::NotManifold => "not-manifold",
            ManifoldKind::Manifold => "manifold",
            ManifoldKind::ManifoldWithBoundary => "manifold-with-boundary",
            ManifoldKind::Sphere => "sphere",
            ManifoldKind::Ball => "ball",
            ManifoldKind::Undecided => "undecided-at-cap",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ManifoldReport {
    pub kind: ManifoldKind,
    /// Dimension of the manifold; `-1` for the empty graph. Meaningless for
    /// `NotManifold`/`Undecided`.
    pub dimension: i64,
    /// Vertices whose unit sphere is a ball rather than a sphere.
    pub boundary_vertices: Vec<usize>,
    /// A vertex at which recognition failed, when `kind` is `NotManifold`.
    pub witness: Option<usize>,
    pub contractible: Decision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LocalClass {
    Sphere(i64),
    Ball(i64),
    /// Closed manifold that is not a sphere.
    ClosedOther(i64),
    /// Manifold with boundary that is not a ball.
    BoundedOther(i64),
    NonManifold,
    Undecided,
}

type Mask = Vec<u64>;

pub struct Recognizer<'g> {
    g: &'g Graph,
    words: usize,
    adj: Vec<Mask>,
    cap: u64,
    work: u64,
    contractible_memo: HashMap<Mask, bool>,
    class_memo: HashMap<Mask, LocalClass>,
    chi_memo: HashMap<Mask, i64>,
}

impl<'g> Recognizer<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Self::with_cap(g, DEFAULT_WORK_CAP)
    }

    pub fn with_cap(g: &'g Graph, cap: u64) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64) + usize::from(n == 0);
        let adj = (0..n)
            .map(|v| {
                let mut m = vec![0u64; words];
                for &w in g.neighbors(v) {
                    m[w / 64] |= 1 << (w % 64);
                }
                m
            })
            .collect();
        Self {
            g,
            words,
            adj,
            cap,
            work: 0,
            contractible_memo: HashMap::new(),
            class_memo: HashMap::new(),
            chi_memo: HashMap::new(),
        }
    }

    pub fn work_used(&self) -> u64 {
        self.work
    }

    fn full_mask(&self) -> Mask {
        let n = self.g.vertex_count();
        let mut m = vec![0u64; self.words];
        for v in 0..n {
            m[v / 64] |= 1 << (v % 64);
        }
        m
    }

    fn popcount(m: &Mask) -> u32 {
        m.iter().map(|w| w.count_ones()).sum()
    }

    fn vertices(m: &Mask) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, mut w) in m.iter().copied().enumerate() {
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    fn link(&self, m: &Mask, v: usize) -> Mask {
        let mut out = self.adj[v].clone();
        for (a, b) in out.iter_mut().zip(m) {
            *a &= b;
        }
        out
    }

    fn without(m: &Mask, v: usize) -> Mask {
        let mut out = m.clone();
        out[v / 64] &= !(1u64 << (v % 64));
        out
    }

    fn is_connected(&self, m: &Mask) -> bool {
        let verts = Self::vertices(m);
        if verts.is_empty() {
            return true;
        }
        let mut seen = vec![0u64; self.words];
        seen[verts[0] / 64] |= 1 << (verts[0] % 64);
        let mut frontier = vec![verts[0]];
        let mut count = 1;
        while let Some(v) = frontier.pop() {
            let nbrs = self.link(m, v);
            for w in Self::vertices(&nbrs) {
                if seen[w / 64] >> (w % 64) & 1 == 0 {
                    seen[w / 64] |= 1 << (w % 64);
                    count += 1;
                    frontier.push(w);
                }
            }
        }
        count == verts.len()
    }

    fn has_universal_vertex(&self, m: &Mask) -> bool {
        for v in Self::vertices(m) {
            let l = self.link(m, v);
            if Self::popcount(&l) + 1 == Self::popcount(m) {
                return true;
            }
        }
        false
    }

    /// Euler characteristic of the induced Whitney complex, via the
    /// alternating clique sum. Contractible graphs have chi = 1, so this is
    /// the cheap refutation used before any recursion. The clique count is
    /// charged against the work cap; `None` means the cap was hit, in which
    /// case callers simply skip the guard.
    fn chi(&mut self, m: &Mask) -> Option<i64> {
        if let Some(&c) = self.chi_memo.get(m) {
            return Some(c);
        }
        let mut budget = self.cap.saturating_sub(self.work);
        let c = self.chi_rec(m, &mut budget);
        self.work = self.cap - budget;
        if let Some(c) = c {
            self.chi_memo.insert(m.clone(), c);
        }
        c
    }

    fn chi_rec(&self, m: &Mask, budget: &mut u64) -> Option<i64> {
        // Alternating count over non-empty cliques: f0 - f1 + f2 - ...
        // For each v, cliques with minimum vertex v contribute 1 - (sum over
        // cliques in the upper link of v).
        let mut total = 0i64;
        for v in Self::vertices(m) {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let mut upper = self.link(m, v);
            for w in upper.iter_mut().take(v / 64) {
                *w = 0;
            }
            // Within v's own word, keep only bits strictly above v.
            upper[v / 64] &= !((1u64 << (v % 64)) | ((1u64 << (v % 64)) - 1));
            total += 1 - self.chi_rec(&upper, budget)?;
        }
        Some(total)
    }

    fn budget_exhausted(&mut self) -> bool {
        self.work += 1;
        self.work > self.cap
    }

    fn contractible_mask(&mut self, m: &Mask) -> Decision {
        let count = Self::popcount(m);
        if count == 0 {
            return Decision::No;
        }
        if count == 1 {
            return Decision::Yes;
        }
        if let Some(&b) = self.contractible_memo.get(m) {
            return if b { Decision::Yes } else { Decision::No };
        }
        if self.budget_exhausted() {
            return Decision::Undecided;
        }
        if !self.is_connected(m) {
            self.contractible_memo.insert(m.clone(), false);
            return Decision::No;
        }
        if self.has_universal_vertex(m) {
            // A cone: peeling the non-apex vertices succeeds by induction.
            self.contractible_memo.insert(m.clone(), true);
            return Decision::Yes;
        }
        if matches!(self.chi(m), Some(c) if c != 1) {
            self.contractible_memo.insert(m.clone(), false);
            return Decision::No;
        }
        // Candidates whose link could be contractible, smallest link first.
        let mut candidates: Vec<(u32, usize)> = Vec::new();
        for v in Self::vertices(m) {
            let l = self.link(m, v);
            if self.chi(&l).is_none_or(|c| c == 1) {
                candidates.push((Self::popcount(&l), v));
            }
        }
        candidates.sort_unstable();
        let mut hit_cap = false;
        for (_, v) in candidates {
            let l = self.link(m, v);
            match self.contractible_mask(&l) {
                Decision::Yes => {}
                Decision::No => continue,
                Decision::Undecided => {
                    hit_cap = true;
                    continue;
                }
            }
            let rest = Self::without(m, v);
            match self.contractible_mask(&rest) {
                Decision::Yes => {
                    self.contractible_memo.insert(m.clone(), true);
                    return Decision::Yes;
                }
                Decision::No => {}
                Decision::Undecided => hit_cap = true,
            }
        }
        if hit_cap {
            Decision::Undecided
        } else {
            self.contractible_memo.insert(m.clone(), false);
            Decision::No
        }
    }

    fn local_class(&mut self, m: &Mask) -> LocalClass {
        if Self::popcount(m) == 0 {
            return LocalClass::Sphere(-1);
        }
        if let Some(&c) = self.class_memo.get(m) {
            return c;
        }
        if self.budget_exhausted() {
            return LocalClass::Undecided;
        }
        let verts = Self::vertices(m);
        let mut dim: Option<i64> = None;
        let mut boundary = false;
        for &v in &verts {
            let l = self.link(m, v);
            let (d, is_ball) = match self.local_class(&l) {
                LocalClass::Sphere(d) => (d, false),
                LocalClass::Ball(d) => (d, true),
                LocalClass::Undecided => return LocalClass::Undecided,
                _ => {
                    self.class_memo.insert(m.clone(), LocalClass::NonManifold);
                    return LocalClass::NonManifold;
                }
            };
            if *dim.get_or_insert(d) != d {
                self.class_memo.insert(m.clone(), LocalClass::NonManifold);
                return LocalClass::NonManifold;
            }
            boundary |= is_ball;
        }
        let q = dim.expect("non-empty mask has vertices") + 1;
        let result = if boundary {
            match self.contractible_mask(m) {
                Decision::Yes => LocalClass::Ball(q),
                Decision::No => LocalClass::BoundedOther(q),
                Decision::Undecided => return LocalClass::Undecided,
            }
        } else {
            let mut hit_cap = false;
            let mut sphere = false;
            for &v in &verts {
                let rest = Self::without(m, v);
                match self.contractible_mask(&rest) {
                    Decision::Yes => {
                        sphere = true;
                        break;
                    }
                    Decision::No => {}
                    Decision::Undecided => hit_cap = true,
                }
            }
            if sphere {
                LocalClass::Sphere(q)
            } else if hit_cap {
                return LocalClass::Undecided;
            } else if q == 0 && self.contractible_mask(m).is_yes() {
                // K1 is the 0-ball: a punctured 0-sphere has empty boundary.
                LocalClass::Ball(0)
            } else {
                LocalClass::ClosedOther(q)
            }
        };
        self.class_memo.insert(m.clone(), result);
        result
    }

    /// Full classification of the ambient graph.
    pub fn classify(&mut self) -> ManifoldReport {
        let full = self.full_mask();
        if self.g.vertex_count() == 0 {
            return ManifoldReport {
                kind: ManifoldKind::Sphere,
                dimension: -1,
                boundary_vertices: Vec::new(),
                witness: None,
                contractible: Decision::No,
            };
        }
        let class = self.local_class(&full);
        let contractible = self.contractible_mask(&full);

        let (kind, dimension) = match class {
            LocalClass::Sphere(d) => (ManifoldKind::Sphere, d),
            LocalClass::Ball(d) => (ManifoldKind::Ball, d),
            LocalClass::ClosedOther(d) => (ManifoldKind::Manifold, d),
            LocalClass::BoundedOther(d) => (ManifoldKind::ManifoldWithBoundary, d),
            LocalClass::NonManifold => (ManifoldKind::NotManifold, -1),
            LocalClass::Undecided => (ManifoldKind::Undecided, -1),
        };

        let mut boundary_vertices = Vec::new();
        let mut witness = None;
        for v in 0..self.g.vertex_count() {
            let l = self.link(&full, v);
            match self.local_class(&l) {
                LocalClass::Ball(_) => boundary_vertices.push(v),
                LocalClass::Sphere(_) => {}
                _ => {
                    if witness.is_none() {
                        witness = Some(v);
                    }
                }
            }
        }
        if kind.is_manifold() {
            witness = None;
        } else {
            boundary_vertices.clear();
        }
        ManifoldReport {
            kind,
            dimension,
            boundary_vertices,
            witness,
            contractible,
        }
    }

    pub fn contractible(&mut self) -> Decision {
        let full = self.full_mask();
        self.contractible_mask(&full)
    }
}

/// Classifies `g` with the default work cap.
pub fn classify(g: &Graph) -> ManifoldReport {
    Recognizer::new(g).classify()
}

pub fn classify_with_cap(g: &Graph, cap: u64) -> ManifoldReport {
    Recognizer::with_cap(g, cap).classify()
}

/// Contractibility per the recursive definition, with the default work cap.
pub fn is_contractible(g: &Graph) -> Decision {
    Recognizer::new(g).contractible()
}

pub fn is_contractible_with_cap(g: &Graph, cap: u64) -> Decision {
    Recognizer::with_cap(g, cap).contractible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Generator};

    /// Pure-definition contractibility for tiny graphs: no guards, no
    /// shortcuts, recursion over every vertex choice. The oracle for the
    /// guarded implementation.
    fn contractible_by_definition(g: &Graph) -> bool {
        let n = g.vertex_count();
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        (0..n).any(|v| {
            contractible_by_definition(&g.unit_sphere(v).unwrap())
                && contractible_by_definition(&g.remove_vertex(v).unwrap())
        })
    }

    #[test]
    fn contractible_matches_pure_definition_on_small_graphs() {
        let cases = [
            Generator::Complete(1).build().unwrap(),
            Generator::Complete(4).build().unwrap(),
            Generator::Cycle(4).build().unwrap(),
            Generator::Cycle(5).build().unwrap(),
            Generator::Wheel(5).build().unwrap(),
            Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
            Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap(),
            Graph::empty(3),
        ];
        for g in cases {
            let expected = contractible_by_definition(&g);
            assert_eq!(
                is_contractible(&g),
                if expected {
                    Decision::Yes
                } else {
                    Decision::No
                },
                "mismatch on {:?}",
                g
            );
        }
    }

    #[test]
    fn k1_and_complete_graphs_are_contractible() {
        assert!(is_contractible(&Generator::Complete(1).build().unwrap()).is_yes());
        for n in 2..=6 {
            assert!(is_contractible(&Generator::Complete(n).build().unwrap()).is_yes());
        }
    }

    #[test]
    fn c5_is_not_contractible() {
        assert!(is_contractible(&Generator::Cycle(5).build().unwrap()).is_no());
    }

    #[test]
    fn empty_graph_is_minus_one_sphere() {
        let r = classify(&Graph::empty(0));
        assert_eq!(r.kind, ManifoldKind::Sphere);
        assert_eq!(r.dimension, -1);
    }

    #[test]
    fn cycles_are_one_spheres() {
        for n in 4..=8 {
            let r = classify(&Generator::Cycle(n).build().unwrap());
            assert_eq!(r.kind, ManifoldKind::Sphere, "C{n}");
            assert_eq!(r.dimension, 1);
            assert!(r.boundary_vertices.is_empty());
        }
    }

    #[test]
    fn octahedron_is_a_two_sphere() {
        let r = classify(&generators::octahedron());
        assert_eq!(r.kind, ManifoldKind::Sphere);
        assert_eq!(r.dimension, 2);
    }

    #[test]
    fn icosahedron_is_a_two_sphere() {
        let r = classify(&generators::icosahedron());
        assert_eq!(r.kind, ManifoldKind::Sphere);
        assert_eq!(r.dimension, 2);
    }

    #[test]
    fn wheel_is_a_two_ball() {
        let r = classify(&Generator::Wheel(6).build().unwrap());
        assert_eq!(r.kind, ManifoldKind::Ball);
        assert_eq!(r.dimension, 2);
        assert_eq!(r.boundary_vertices.len(), 6);
        assert!(r.contractible.is_yes());
    }

    #[test]
    fn k4_is_a_three_ball() {
        let r = classify(&Generator::Complete(4).build().unwrap());
        assert_eq!(r.kind, ManifoldKind::Ball);
        assert_eq!(r.dimension, 3);
    }

    #[test]
    fn c4_is_a_one_manifold_and_c4_join_c4_a_three_sphere() {
        let c4 = Generator::Cycle(4).build().unwrap();
        let r = classify(&c4);
        assert_eq!(r.kind, ManifoldKind::Sphere);
        assert_eq!(r.dimension, 1);
        let j = c4.join(&c4);
        let r = classify(&j);
        assert_eq!(r.kind, ManifoldKind::Sphere);
        assert_eq!(r.dimension, 3);
    }

    #[test]
    fn join_of_three_c5_is_a_five_sphere() {
        let g = Generator::JoinOf(vec![5, 5, 5]).build().unwrap();
        assert_eq!(g.vertex_count(), 15);
        let r = classify(&g);
        assert_eq!(r.kind, ManifoldKind::Sphere);
        assert_eq!(r.dimension, 5);
    }

    #[test]
    fn torus_and_projective_plane_are_closed_two_manifolds() {
        let t = generators::flat_torus(4, 4).unwrap();
        let r = classify(&t);
        assert_eq!(r.kind, ManifoldKind::Manifold);
        assert_eq!(r.dimension, 2);

        let p = generators::projective_plane();
        let r = classify(&p);
        assert_eq!(r.kind, ManifoldKind::Manifold);
        assert_eq!(r.dimension, 2);
    }

    #[test]
    fn non_manifold_reports_witness() {
        // Two triangles sharing a single vertex.
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let r = classify(&g);
        assert_eq!(r.kind, ManifoldKind::NotManifold);
        assert!(r.witness.is_some());
    }

    #[test]
    fn tiny_cap_reports_undecided() {
        let g = generators::icosahedron();
        let r = classify_with_cap(&g, 3);
        assert_eq!(r.kind, ManifoldKind::Undecided);
        assert_eq!(is_contractible_with_cap(&g, 0), Decision::Undecided);
    }

    #[test]
    fn join_of_zero_spheres_classifies_as_spheres() {
        // Joins of k zero-spheres are (k-1)-spheres.
        for k in 1..=4 {
            let parts = vec![Graph::empty(2); k];
            let g = Graph::join_all(&parts);
            let r = classify(&g);
            assert_eq!(r.kind, ManifoldKind::Sphere);
            assert_eq!(r.dimension, k as i64 - 1);
        }
    }
}
