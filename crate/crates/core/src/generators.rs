//! Deterministic graph generators used throughout the library and the CLI.

use crate::complex::whitney;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::refine::barycentric;

/// A parsed generator specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Cycle `C_n`, `n >= 3`.
    Cycle(usize),
    /// Complete graph `K_n`.
    Complete(usize),
    /// Wheel: a hub joined to a cycle rim of length `n >= 3`.
    Wheel(usize),
    Octahedron,
    Icosahedron,
    /// Join of `q + 1` zero-spheres: the `q`-dimensional cross polytope.
    CrossPolytope(usize),
    /// Triangulated torus `C_m x C_n` with a consistent diagonal, `m, n >= 4`.
    FlatTorus(usize, usize),
    /// Join of cycles/points: parameter 1 = a point, 2 = a zero sphere,
    /// `n >= 3` = the cycle `C_n`.
    JoinOf(Vec<usize>),
    /// Antipodal quotient of the barycentric refinement of the icosahedron.
    ProjectivePlane,
}

impl Generator {
    /// Parses the CLI form, e.g. `("flat-torus", &[4, 4])`.
    pub fn parse(name: &str, params: &[usize]) -> Result<Self> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "`{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match name {
            "cycle" => {
                want(1)?;
                if params[0] < 3 {
                    return Err(Error::InvalidParams("cycle needs n >= 3".into()));
                }
                Ok(Generator::Cycle(params[0]))
            }
            "complete" => {
                want(1)?;
                Ok(Generator::Complete(params[0]))
            }
            "wheel" => {
                want(1)?;
                if params[0] < 3 {
                    return Err(Error::InvalidParams("wheel needs rim >= 3".into()));
                }
                Ok(Generator::Wheel(params[0]))
            }
            "octahedron" => {
                want(0)?;
                Ok(Generator::Octahedron)
            }
            "icosahedron" => {
                want(0)?;
                Ok(Generator::Icosahedron)
            }
            "cross-polytope" => {
                want(1)?;
                Ok(Generator::CrossPolytope(params[0]))
            }
            "flat-torus" => {
                want(2)?;
                if params[0] < 4 || params[1] < 4 {
                    return Err(Error::InvalidParams("flat-torus needs m, n >= 4".into()));
                }
                Ok(Generator::FlatTorus(params[0], params[1]))
            }
            "join-of" => {
                if params.is_empty() {
                    return Err(Error::InvalidParams(
                        "join-of needs at least one part".into(),
                    ));
                }
                Ok(Generator::JoinOf(params.to_vec()))
            }
            "projective-plane" => {
                want(0)?;
                Ok(Generator::ProjectivePlane)
            }
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        match self {
            Generator::Cycle(n) => cycle(*n),
            Generator::Complete(n) => complete(*n),
            Generator::Wheel(n) => Ok(Graph::empty(1).join(&cycle(*n)?)),
            Generator::Octahedron => Ok(octahedron()),
            Generator::Icosahedron => Ok(icosahedron()),
            Generator::CrossPolytope(q) => Ok(cross_polytope(*q)),
            Generator::FlatTorus(m, n) => flat_torus(*m, *n),
            Generator::JoinOf(parts) => {
                let graphs = parts
                    .iter()
                    .map(|&p| match p {
                        1 => Ok(Graph::empty(1)),
                        2 => Ok(Graph::empty(2)),
                        n if n >= 3 => cycle(n),
                        _ => Err(Error::InvalidParams(
                            "join-of parts are 1, 2 or n >= 3".into(),
                        )),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Graph::join_all(&graphs))
            }
            Generator::ProjectivePlane => Ok(projective_plane()),
        }
    }
}

/// Library-level convenience mirroring the CLI `gen` command.
pub fn generate(name: &str, params: &[usize]) -> Result<Graph> {
    Generator::parse(name, params)?.build()
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParams("cycle needs n >= 3".into()));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push((a, b));
        }
    }
    Graph::new(n, &edges)
}

/// The 2-dimensional cross polytope.
pub fn octahedron() -> Graph {
    cross_polytope(2)
}

/// Join of `q + 1` zero-spheres.
pub fn cross_polytope(q: usize) -> Graph {
    let parts = vec![Graph::empty(2); q + 1];
    Graph::join_all(&parts)
}

/// Icosahedron as two pentagonal rings between poles. The vertex antipodal to
/// `v` is `antipodal_icosahedron(v)`; the map is a fixed-point-free
/// automorphism used by the projective-plane generator.
pub fn icosahedron() -> Graph {
    // 0 = north pole, 1..=5 upper ring, 6..=10 lower ring, 11 = south pole.
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((0, u(i)));
        edges.push((11, l(i)));
        edges.push((u(i), u(i + 1)));
        edges.push((l(i), l(i + 1)));
        edges.push((u(i), l(i)));
        edges.push((u(i), l(i + 1)));
    }
    Graph::new(12, &edges).expect("icosahedron edge list is valid")
}

/// Antipodal vertex in the labeling produced by [`icosahedron`].
pub fn antipodal_icosahedron(v: usize) -> usize {
    match v {
        0 => 11,
        11 => 0,
        1..=5 => 6 + (v - 1 + 3) % 5,
        _ => 1 + (v - 6 + 2) % 5,
    }
}

/// Triangulated flat torus on an `m x n` grid with diagonals `(i, j)-(i+1, j+1)`.
pub fn flat_torus(m: usize, n: usize) -> Result<Graph> {
    if m < 4 || n < 4 {
        return Err(Error::InvalidParams("flat-torus needs m, n >= 4".into()));
    }
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push((id(i, j), id(i + 1, j)));
            edges.push((id(i, j), id(i, j + 1)));
            edges.push((id(i, j), id(i + 1, j + 1)));
        }
    }
    Graph::new(m * n, &edges)
}

/// Antipodal quotient of the barycentric refinement of the icosahedron.
///
/// The refinement has the simplices of the icosahedron as vertices; the
/// antipodal automorphism acts on them without fixed points, and the quotient
/// identifies each simplex with its antipode. The 6-vertex quotient of the
/// icosahedron itself has complete unit spheres, so one refinement first is
/// the smallest route to a genuine 2-manifold.
pub fn projective_plane() -> Graph {
    let ico = icosahedron();
    let refined = barycentric(&whitney(&ico));
    let g = &refined.graph;
    let n = g.vertex_count();

    // Map each refinement vertex (a simplex) to its antipodal image.
    let index: std::collections::HashMap<&crate::complex::Simplex, usize> = refined
        .provenance
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut orbit = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for v in 0..n {
        if orbit[v] != usize::MAX {
            continue;
        }
        let image_verts: Vec<usize> = refined.provenance[v]
            .vertices()
            .iter()
            .map(|&x| antipodal_icosahedron(x))
            .collect();
        let image = index[&crate::complex::Simplex::new(image_verts)];
        let rep = reps.len();
        orbit[v] = rep;
        orbit[image] = rep;
        reps.push(v);
    }

    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        if orbit[a] != orbit[b] {
            edges.push((orbit[a], orbit[b]));
        }
    }
    Graph::new(reps.len(), &edges).expect("quotient edge list is valid")
}
