//! Canonical labeling and isomorphism checks for small graphs.
//!
//! Color refinement plus branch-and-pick-minimum canonical form, exact for
//! graphs on at most 64 vertices. Larger graphs fall back to an invariant
//! fingerprint (order, size, degree sequence, clique counts), which is what
//! comparisons of big refinements use.

use crate::complex::whitney;
use crate::graph::Graph;

const CANON_LIMIT: usize = 64;

/// Canonical upper-triangular adjacency bits, or `None` above the size limit.
pub fn canonical_form(g: &Graph) -> Option<Vec<u64>> {
    let n = g.vertex_count();
    if n > CANON_LIMIT {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let mut best: Option<Vec<u64>> = None;
    let init = refine(g, &(0..n).map(|_| 0u64).collect::<Vec<_>>());
    search(g, init, &mut best);
    best
}

/// Exact isomorphism for graphs that fit the canonical-form limit.
pub fn isomorphic(a: &Graph, b: &Graph) -> Option<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Some(false);
    }
    if degree_sequence(a) != degree_sequence(b) {
        return Some(false);
    }
    match (canonical_form(a), canonical_form(b)) {
        (Some(ca), Some(cb)) => Some(ca == cb),
        _ => None,
    }
}

/// Invariant fingerprint for comparisons beyond the exact limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub degree_sequence: Vec<usize>,
    pub f_vector: Vec<usize>,
}

pub fn fingerprint(g: &Graph) -> Fingerprint {
    Fingerprint {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        degree_sequence: degree_sequence(g),
        f_vector: whitney(g).f_vector().0,
    }
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Iterated neighbor-color refinement. Colors are dense ranks, stable under
/// relabeling of the input.
fn refine(g: &Graph, colors: &[u64]) -> Vec<u64> {
    let n = g.vertex_count();
    let mut cur = colors.to_vec();
    loop {
        let mut sigs: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut nbr: Vec<u64> = g.neighbors(v).iter().map(|&w| cur[w]).collect();
                nbr.sort_unstable();
                (cur[v], nbr)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u64> = sigs
            .drain(..)
            .map(|s| sorted.binary_search(&s).unwrap() as u64)
            .collect();
        if next == cur {
            return next;
        }
        cur = next;
    }
}

fn search(g: &Graph, colors: Vec<u64>, best: &mut Option<Vec<u64>>) {
    let n = g.vertex_count();
    // Find the smallest non-singleton color class.
    let mut cells: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let target = cells.values().find(|vs| vs.len() > 1).cloned();
    match target {
        None => {
            // Discrete: colors are a permutation; read off adjacency bits.
            let mut perm = vec![0usize; n];
            for (v, &c) in colors.iter().enumerate() {
                perm[c as usize] = v;
            }
            let words = (n * n).div_ceil(64);
            let mut bits = vec![0u64; words];
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if g.has_edge(perm[i], perm[j]) {
                        bits[idx / 64] |= 1u64 << (idx % 64);
                    }
                    idx += 1;
                }
            }
            if best.as_ref().map(|b| bits < *b).unwrap_or(true) {
                *best = Some(bits);
            }
        }
        Some(cell) => {
            for v in cell {
                // Split v off from its class; refinement re-ranks densely.
                let mut branched: Vec<u64> = colors.iter().map(|&c| c * 2).collect();
                branched[v] += 1;
                let refined = refine(g, &branched);
                search(g, refined, best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Generator};

    #[test]
    fn cycle_relabelings_are_isomorphic() {
        let c6 = Generator::Cycle(6).build().unwrap();
        let shuffled = Graph::new(6, &[(2, 4), (4, 0), (0, 5), (5, 1), (1, 3), (3, 2)]).unwrap();
        assert_eq!(isomorphic(&c6, &shuffled), Some(true));
    }

    #[test]
    fn cycle_vs_path_not_isomorphic() {
        let c4 = Generator::Cycle(4).build().unwrap();
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(isomorphic(&c4, &p4), Some(false));
    }

    #[test]
    fn same_degree_sequence_different_graphs() {
        // C6 vs two disjoint triangles: both 2-regular on six vertices.
        let c6 = Generator::Cycle(6).build().unwrap();
        let tt = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(isomorphic(&c6, &tt), Some(false));
    }

    #[test]
    fn octahedron_is_join_of_three_zero_spheres() {
        let s0 = Graph::empty(2);
        let j = Graph::join_all(&[s0.clone(), s0.clone(), s0]);
        assert_eq!(isomorphic(&j, &generators::octahedron()), Some(true));
    }

    #[test]
    fn fingerprint_separates_wheels() {
        let w5 = Generator::Wheel(5).build().unwrap();
        let w6 = Generator::Wheel(6).build().unwrap();
        assert_ne!(fingerprint(&w5), fingerprint(&w6));
    }
}
