//! Serialization of the interchange formats.
//!
//! Graph JSON is the interchange unit: `{"vertices":[..],"edges":[[a,b],..]}`
//! with lexicographically sorted edges, so serialization is byte-stable.
//! Refined graphs add a provenance list, colorings carry their verification
//! flags, and censuses are degree-to-count maps.

use crate::chromatic::{Coloring, EdgeCensus};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::refine::RefinedGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphJson {
        vertices: (0..g.vertex_count()).collect(),
        edges: g.edges(),
    };
    let mut s = serde_json::to_string(&doc).expect("graph serializes");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_str(text)
        .map_err(|e| Error::Precondition(format!("bad graph JSON: {e}")))?;
    let n = doc.vertices.len();
    for (i, &v) in doc.vertices.iter().enumerate() {
        if v != i {
            return Err(Error::Precondition(
                "graph JSON vertices must be the dense labels 0..n".into(),
            ));
        }
    }
    Graph::new(n, &doc.edges)
}

#[derive(Serialize, Deserialize)]
struct RefinedGraphJson {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    provenance: Vec<(usize, Vec<usize>)>,
}

pub fn refined_graph_to_json(r: &RefinedGraph) -> String {
    let doc = RefinedGraphJson {
        vertices: (0..r.graph.vertex_count()).collect(),
        edges: r.graph.edges(),
        provenance: r
            .provenance
            .iter()
            .enumerate()
            .map(|(v, s)| (v, s.vertices().to_vec()))
            .collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("refined graph serializes");
    s.push('\n');
    s
}

pub fn refined_graph_from_json(text: &str) -> Result<RefinedGraph> {
    let doc: RefinedGraphJson = serde_json::from_str(text)
        .map_err(|e| Error::Precondition(format!("bad refined-graph JSON: {e}")))?;
    let n = doc.vertices.len();
    let graph = Graph::new(n, &doc.edges)?;
    if doc.provenance.len() != n {
        return Err(Error::Precondition(
            "provenance must cover every vertex".into(),
        ));
    }
    let mut provenance = vec![None; n];
    for (v, verts) in doc.provenance {
        if v >= n || verts.is_empty() {
            return Err(Error::Precondition("bad provenance entry".into()));
        }
        provenance[v] = Some(Simplex::new(verts));
    }
    Ok(RefinedGraph {
        graph,
        provenance: provenance.into_iter().map(|p| p.expect("total")).collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    colors: Vec<(usize, usize)>,
    verified: bool,
    #[serde(rename = "kempeFree")]
    kempe_free: bool,
}

pub fn coloring_to_json(col: &Coloring, verified: bool, kempe_free: bool) -> String {
    let doc = ColoringJson {
        colors: col.colors.iter().copied().enumerate().collect(),
        verified,
        kempe_free,
    };
    let mut s = serde_json::to_string(&doc).expect("coloring serializes");
    s.push('\n');
    s
}

pub fn coloring_from_json(text: &str) -> Result<Coloring> {
    let doc: ColoringJson = serde_json::from_str(text)
        .map_err(|e| Error::Precondition(format!("bad coloring JSON: {e}")))?;
    let n = doc.colors.len();
    let mut colors = vec![usize::MAX; n];
    for (v, c) in doc.colors {
        if v >= n {
            return Err(Error::Precondition("coloring vertex out of range".into()));
        }
        colors[v] = c;
    }
    if colors.contains(&usize::MAX) {
        return Err(Error::PartialColoring);
    }
    Ok(Coloring::new(colors))
}

#[derive(Serialize)]
struct CensusJson<'a> {
    interior: &'a BTreeMap<usize, usize>,
    boundary: &'a BTreeMap<usize, usize>,
}

pub fn census_to_json(census: &EdgeCensus) -> String {
    let mut s = serde_json::to_string(&CensusJson {
        interior: &census.interior,
        boundary: &census.boundary,
    })
    .expect("census serializes");
    s.push('\n');
    s
}

/// Eigenvalues, one per line, sorted ascending.
pub fn eigenvalues_to_csv(values: &[f64]) -> String {
    let mut out = String::new();
    for v in values {
        out.push_str(&format!("{v}\n"));
    }
    out
}

/// Histogram rows `binLeft,binRight,mass`.
pub fn histogram_to_csv(h: &crate::spectral::DosHistogram) -> String {
    let mut out = String::new();
    for (i, m) in h.masses.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", h.edges[i], h.edges[i + 1], m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Generator};
    use proptest::prelude::*;

    #[test]
    fn graph_round_trip_is_byte_identical() {
        let g = generators::icosahedron();
        let s1 = graph_to_json(&g);
        let g2 = graph_from_json(&s1).unwrap();
        let s2 = graph_to_json(&g2);
        assert_eq!(s1, s2);
        assert_eq!(g, g2);
    }

    #[test]
    fn refined_graph_round_trip() {
        let c = crate::complex::whitney(&Generator::Cycle(4).build().unwrap());
        let r = crate::refine::barycentric(&c);
        let s = refined_graph_to_json(&r);
        let r2 = refined_graph_from_json(&s).unwrap();
        assert_eq!(r.graph, r2.graph);
        assert_eq!(r.provenance, r2.provenance);
    }

    #[test]
    fn coloring_round_trip() {
        let col = Coloring::new(vec![0, 1, 2, 0]);
        let s = coloring_to_json(&col, true, false);
        assert!(s.contains("\"kempeFree\":false"));
        let col2 = coloring_from_json(&s).unwrap();
        assert_eq!(col, col2);
    }

    proptest! {
        #[test]
        fn random_graph_json_round_trips(n in 0usize..12, seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in (a + 1)..n {
                    if rng.gen_bool(0.4) {
                        edges.push((a, b));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let s1 = graph_to_json(&g);
            let g2 = graph_from_json(&s1).unwrap();
            prop_assert_eq!(&g, &g2);
            prop_assert_eq!(s1, graph_to_json(&g2));
        }
    }
}
