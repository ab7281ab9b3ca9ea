//! Face classification and the two barycentric refinements.
//!
//! The strong refinement `psi` puts a vertex on every simplex and joins
//! strict-containment pairs. The soft refinement `phi` drops the co-dimension
//! one simplices that lie in exactly two facets (interior faces) and instead
//! joins the two facets directly; simplices in three or more facets (singular
//! faces) are dropped without adding anything. Boundary faces, contained in
//! exactly one facet, stay as vertices, so the boundary of a refined manifold
//! undergoes the strong refinement.

use crate::complex::{Simplex, SimplexIndex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashMap;

/// Partition of the `(q-1)`-simplices by the number of facets containing them.
#[derive(Clone, Debug)]
pub struct FaceClassification {
    pub facets: Vec<Simplex>,
    /// Faces in exactly one facet.
    pub boundary: Vec<Simplex>,
    /// Faces in exactly two facets.
    pub interior: Vec<Simplex>,
    /// Faces in three or more facets.
    pub singular: Vec<Simplex>,
    /// `(q-1)`-simplices contained in no facet: maximal simplices below the
    /// top dimension. Non-empty exactly when the complex is not pure.
    pub free: Vec<Simplex>,
    /// For each interior face, the two facet ids (indices into `facets`).
    pub interior_pairs: Vec<(usize, usize)>,
}

impl FaceClassification {
    pub fn is_pure(&self) -> bool {
        self.free.is_empty()
    }
}

/// Classifies the co-dimension one faces of a non-empty complex.
pub fn classify_faces(c: &SimplicialComplex) -> Result<FaceClassification> {
    let q = c.max_dimension().ok_or(Error::EmptyComplex)?;
    let facets: Vec<Simplex> = c.facets().to_vec();
    if q == 0 {
        return Ok(FaceClassification {
            facets,
            boundary: Vec::new(),
            interior: Vec::new(),
            singular: Vec::new(),
            free: Vec::new(),
            interior_pairs: Vec::new(),
        });
    }
    let mut containing: HashMap<&Simplex, Vec<usize>> = HashMap::new();
    for face in c.simplices(q - 1) {
        containing.insert(face, Vec::new());
    }
    let mut scratch: Vec<Simplex> = Vec::new();
    for (fid, facet) in facets.iter().enumerate() {
        scratch.clear();
        scratch.extend(facet.boundary_faces());
        for face in &scratch {
            if let Some(list) = containing.get_mut(face) {
                list.push(fid);
            }
        }
    }
    let mut boundary = Vec::new();
    let mut interior = Vec::new();
    let mut singular = Vec::new();
    let mut free = Vec::new();
    let mut interior_pairs = Vec::new();
    for face in c.simplices(q - 1) {
        let owners = &containing[face];
        match owners.len() {
            0 => free.push(face.clone()),
            1 => boundary.push(face.clone()),
            2 => {
                interior.push(face.clone());
                interior_pairs.push((owners[0], owners[1]));
            }
            _ => singular.push(face.clone()),
        }
    }
    Ok(FaceClassification {
        facets,
        boundary,
        interior,
        singular,
        free,
        interior_pairs,
    })
}

/// A refinement graph together with the simplex each vertex came from.
#[derive(Clone, Debug)]
pub struct RefinedGraph {
    pub graph: Graph,
    /// `provenance[v]` is the simplex of the input complex behind vertex `v`.
    pub provenance: Vec<Simplex>,
}

impl RefinedGraph {
    /// Vertices listed per originating dimension.
    pub fn vertices_of_dimension(&self, dim: usize) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.provenance[v].dimension() == dim)
            .collect()
    }
}

fn containment_edges(index: &SimplexIndex) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (id, s) in index.simplices().iter().enumerate() {
        if s.dimension() == 0 {
            continue;
        }
        for face in s.proper_faces() {
            if let Some(fid) = index.id(&face) {
                edges.push((fid, id));
            }
        }
    }
    edges
}

/// The barycentric refinement graph: all simplices as vertices, strict
/// containment pairs as edges.
pub fn barycentric(c: &SimplicialComplex) -> RefinedGraph {
    let index = SimplexIndex::new(c.all_simplices().cloned());
    let edges = containment_edges(&index);
    let graph = Graph::new(index.len(), &edges).expect("containment edges are valid");
    RefinedGraph {
        graph,
        provenance: index.simplices().to_vec(),
    }
}

/// The soft Whitney complex: all `k`-simplices with `k != q-1`, plus the
/// boundary faces of dimension `q-1`. Sorted by (dimension, vertex list).
pub fn soft_whitney(c: &SimplicialComplex) -> Result<Vec<Simplex>> {
    let q = c.max_dimension().ok_or(Error::EmptyComplex)?;
    let faces = classify_faces(c)?;
    let mut kept: Vec<Simplex> = Vec::new();
    for d in 0..=q {
        if d + 1 == q {
            kept.extend(faces.boundary.iter().cloned());
        } else {
            kept.extend(c.simplices(d).iter().cloned());
        }
    }
    Ok(kept)
}

/// The soft barycentric refinement graph. Vertices are the soft Whitney
/// complex; edges join strict-containment pairs and pairs of facets meeting
/// in an interior face. Singular faces induce nothing.
pub fn soft_barycentric(c: &SimplicialComplex) -> Result<RefinedGraph> {
    let kept = soft_whitney(c)?;
    let index = SimplexIndex::new(kept);
    let mut edges = containment_edges(&index);
    let faces = classify_faces(c)?;
    for &(a, b) in &faces.interior_pairs {
        let fa = index.id(&faces.facets[a]).expect("facets are kept");
        let fb = index.id(&faces.facets[b]).expect("facets are kept");
        edges.push((fa, fb));
    }
    let graph = Graph::new(index.len(), &edges).expect("refinement edges are valid");
    Ok(RefinedGraph {
        graph,
        provenance: index.simplices().to_vec(),
    })
}

/// Removes edge `e` and inserts a new vertex adjacent to both endpoints and
/// to every common neighbor. The new vertex gets the largest label.
pub fn edge_refine(g: &Graph, e: (usize, usize)) -> Result<Graph> {
    let (a, b) = e;
    if !g.has_edge(a, b) {
        return Err(Error::MissingEdge(a, b));
    }
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(x, y)| (x, y) != (a.min(b), a.max(b)))
        .collect();
    edges.push((a, n));
    edges.push((b, n));
    for &w in g.neighbors(a) {
        if w != b && g.has_edge(b, w) {
            edges.push((w, n));
        }
    }
    Graph::new(n + 1, &edges)
}

/// Refines every facet-facet edge of a soft refinement in one pass.
pub fn edge_refine_all(g: &Graph, targets: &[(usize, usize)]) -> Result<Graph> {
    let mut seen = std::collections::BTreeSet::new();
    for &(a, b) in targets {
        if !g.has_edge(a, b) {
            return Err(Error::MissingEdge(a, b));
        }
        seen.insert((a.min(b), a.max(b)));
    }
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|pair| !seen.contains(pair))
        .collect();
    let mut next = n;
    for &(a, b) in seen.iter() {
        edges.push((a, next));
        edges.push((b, next));
        for &w in g.neighbors(a) {
            if w != b && g.has_edge(b, w) {
                edges.push((w, next));
            }
        }
        next += 1;
    }
    Graph::new(next, &edges)
}

/// The dual graph: facets as vertices, adjacency through interior faces.
/// Vertex `i` corresponds to `c.facets()[i]`.
pub fn dual_graph(c: &SimplicialComplex) -> Result<Graph> {
    let faces = classify_faces(c)?;
    Graph::new(faces.facets.len(), &faces.interior_pairs)
}

/// The link circle of a co-dimension two simplex: the subgraph induced on the
/// common neighbors of its vertices.
#[derive(Clone, Debug)]
pub struct DualCircle {
    pub graph: Graph,
    /// Ambient labels of the circle vertices.
    pub vertices: Vec<usize>,
    pub length: usize,
}

/// Computes the dual circle of `x`, which must have dimension `q - 2`.
/// Returns an error when the link is not a cycle, which signals a
/// non-manifold (or a boundary simplex, whose link is a path).
pub fn dual_circle(c: &SimplicialComplex, x: &Simplex) -> Result<DualCircle> {
    let q = c.max_dimension().ok_or(Error::EmptyComplex)?;
    if q < 2 {
        return Err(Error::Precondition(
            "dual circles need dimension q >= 2".into(),
        ));
    }
    if x.dimension() != q - 2 {
        return Err(Error::WrongSimplexDimension {
            expected: q - 2,
            got: x.dimension(),
        });
    }
    if !c.contains(x) {
        return Err(Error::UnknownSimplex(x.vertices().to_vec()));
    }
    let g = c.skeleton_graph()?;
    let mut common: Vec<usize> = g.neighbors(x.vertices()[0]).to_vec();
    for &v in &x.vertices()[1..] {
        let nbrs = g.neighbors(v);
        common.retain(|w| nbrs.binary_search(w).is_ok());
    }
    let induced = g.induced(&common);
    if !induced.is_cycle() {
        return Err(Error::NotManifoldAt(x.vertices().to_vec()));
    }
    Ok(DualCircle {
        length: induced.vertex_count(),
        graph: induced,
        vertices: common,
    })
}

/// The boundary complex: closure of the faces contained in exactly one facet.
pub fn boundary_complex(c: &SimplicialComplex) -> Result<SimplicialComplex> {
    let faces = classify_faces(c)?;
    Ok(SimplicialComplex::from_facets(faces.boundary))
}

/// The boundary as a graph with dense labels, for comparisons of refinements.
pub fn boundary_graph(c: &SimplicialComplex) -> Result<Graph> {
    let b = boundary_complex(c)?;
    if b.is_empty() {
        return Ok(Graph::empty(0));
    }
    let verts: Vec<usize> = b.simplices(0).iter().map(|s| s.vertices()[0]).collect();
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = b
        .simplices(1)
        .iter()
        .map(|e| (pos[&e.vertices()[0]], pos[&e.vertices()[1]]))
        .collect();
    Graph::new(verts.len(), &edges)
}
