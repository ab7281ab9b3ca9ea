//! Kirchhoff Laplacians, their spectra, and derived spectral statistics.
//!
//! Two engines: a dense symmetric eigensolver up to a size cap (default 4000,
//! override with `SOFTBARY_DENSE_CAP`), and an inertia-based eigenvalue
//! counter for distributional data beyond it. The spectral function F of a
//! graph is the right-continuous step encoding of its sorted spectrum on
//! [0, 1]; L1 distances between two such steps are computed exactly by
//! merging breakpoints.

use crate::complex::{whitney, FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::refine::{barycentric, soft_barycentric};
use nalgebra::DMatrix;

pub const DEFAULT_DENSE_CAP: usize = 4000;

pub fn dense_cap() -> usize {
    std::env::var("SOFTBARY_DENSE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DENSE_CAP)
}

/// Degree-minus-adjacency matrix, stored as degrees plus an edge list.
#[derive(Clone, Debug)]
pub struct KirchhoffMatrix {
    pub n: usize,
    pub degrees: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn kirchhoff(g: &Graph) -> KirchhoffMatrix {
    KirchhoffMatrix {
        n: g.vertex_count(),
        degrees: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
        edges: g.edges(),
    }
}

impl KirchhoffMatrix {
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            m[(v, v)] = self.degrees[v] as f64;
        }
        for &(a, b) in &self.edges {
            m[(a, b)] = -1.0;
            m[(b, a)] = -1.0;
        }
        m
    }
}

/// Sorted spectrum of one Kirchhoff matrix.
#[derive(Clone, Debug)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
}

impl SpectralSummary {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }
    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Full sorted spectrum via the dense symmetric eigensolver.
pub fn eigenvalues(m: &KirchhoffMatrix) -> Result<SpectralSummary> {
    eigenvalues_with_cap(m, dense_cap())
}

pub fn eigenvalues_with_cap(m: &KirchhoffMatrix, cap: usize) -> Result<SpectralSummary> {
    if m.n > cap {
        return Err(Error::DenseCapExceeded { n: m.n, cap });
    }
    if m.n == 0 {
        return Ok(SpectralSummary {
            eigenvalues: Vec::new(),
        });
    }
    let dense = m.to_dense();
    let eig = dense.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(SpectralSummary { eigenvalues: vals })
}

/// Outcome of an inertia-based eigenvalue count below a threshold.
#[derive(Clone, Copy, Debug)]
pub struct SpectralCount {
    pub count: usize,
    /// The shift actually factored, after any breakdown perturbations.
    pub shift_used: f64,
}

/// Number of eigenvalues strictly below `t`, by the inertia of `K - tI`
/// under a symmetric factorization with diagonal pivoting. A breakdown
/// (no usable pivot) retries with a slightly perturbed shift.
pub fn spectral_count(m: &KirchhoffMatrix, t: f64) -> Result<SpectralCount> {
    let mut shift = t;
    let step = 1e-7 * (1.0 + t.abs());
    for _ in 0..8 {
        match inertia_below(m, shift) {
            Ok(count) => {
                return Ok(SpectralCount {
                    count,
                    shift_used: shift,
                })
            }
            Err(_) => shift += step,
        }
    }
    Err(Error::FactorizationBreakdown(shift))
}

/// Symmetric factorization of `K - shift I` with diagonal pivoting; returns
/// the number of negative pivots. Sylvester's law makes that the count of
/// eigenvalues below the shift.
fn inertia_below(m: &KirchhoffMatrix, shift: f64) -> Result<usize> {
    let n = m.n;
    let mut a = m.to_dense();
    for i in 0..n {
        a[(i, i)] -= shift;
    }
    let scale: f64 =
        (1.0 + 2.0 * m.degrees.iter().copied().max().unwrap_or(0) as f64) + shift.abs();
    let tol = 1e-12 * scale;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut negatives = 0usize;
    for k in 0..n {
        // Largest remaining diagonal in magnitude.
        let (pivot_idx, pivot_val) = (k..n)
            .map(|i| (i, a[(perm[i], perm[i])]))
            .max_by(|x, y| x.1.abs().partial_cmp(&y.1.abs()).unwrap())
            .unwrap();
        if pivot_val.abs() <= tol {
            // Check whether the rest of the matrix is effectively zero.
            let mut max_off = 0.0f64;
            for i in k..n {
                for j in k..n {
                    max_off = max_off.max(a[(perm[i], perm[j])].abs());
                }
            }
            if max_off <= tol {
                return Ok(negatives); // exact zero block: remaining pivots are zeros
            }
            return Err(Error::FactorizationBreakdown(shift));
        }
        perm.swap(k, pivot_idx);
        let p = perm[k];
        if pivot_val < 0.0 {
            negatives += 1;
        }
        // Schur complement update; column p is never revisited afterwards.
        for i in (k + 1)..n {
            let ri = perm[i];
            let factor = a[(ri, p)] / pivot_val;
            if factor == 0.0 {
                continue;
            }
            for &rj in &perm[(k + 1)..n] {
                let delta = factor * a[(p, rj)];
                a[(ri, rj)] -= delta;
            }
        }
    }
    Ok(negatives)
}

/// Exact L1 distance on [0, 1] between the two spectral step functions.
/// F takes the value `lambda_k` on the interval (k/n, (k+1)/n].
pub fn spectral_function_l1(a: &SpectralSummary, b: &SpectralSummary) -> f64 {
    let n = a.n();
    let m = b.n();
    if n == 0 || m == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    let (mut i, mut j) = (0usize, 0usize); // current step index in a and b
    let mut x = 0.0f64;
    while i < n && j < m {
        let xa = (i + 1) as f64 / n as f64;
        let xb = (j + 1) as f64 / m as f64;
        let next = xa.min(xb);
        total += (next - x) * (a.eigenvalues[i] - b.eigenvalues[j]).abs();
        if xa <= next + f64::EPSILON {
            i += 1;
        }
        if xb <= next + f64::EPSILON {
            j += 1;
        }
        x = next;
    }
    total
}

/// Normalized histogram with explicit bin edges.
#[derive(Clone, Debug)]
pub struct DosHistogram {
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
}

impl DosHistogram {
    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }
}

fn histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> DosHistogram {
    assert!(bins >= 1 && hi > lo);
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
    let mut counts = vec![0usize; bins];
    for &v in values {
        let mut idx = ((v - lo) / width).floor() as i64;
        if idx < 0 {
            idx = 0;
        }
        if idx >= bins as i64 {
            idx = bins as i64 - 1;
        }
        counts[idx as usize] += 1;
    }
    let total = values.len().max(1) as f64;
    DosHistogram {
        edges,
        masses: counts.into_iter().map(|c| c as f64 / total).collect(),
    }
}

/// Density of states as a normalized eigenvalue histogram. Without an explicit
/// range the support is [0, lambda_max].
pub fn dos(a: &SpectralSummary, bins: usize, range: Option<(f64, f64)>) -> DosHistogram {
    let (lo, hi) = range.unwrap_or((0.0, a.max().max(f64::MIN_POSITIVE)));
    histogram(&a.eigenvalues, bins, lo, hi)
}

/// L1 distance between two histograms on identical bin edges.
pub fn histogram_l1(a: &DosHistogram, b: &DosHistogram) -> Result<f64> {
    if a.edges.len() != b.edges.len()
        || a.edges
            .iter()
            .zip(&b.edges)
            .any(|(x, y)| (x - y).abs() > 1e-12)
    {
        return Err(Error::BinMismatch);
    }
    Ok(a.masses
        .iter()
        .zip(&b.masses)
        .map(|(x, y)| (x - y).abs())
        .sum())
}

/// L1 distance between the integrated densities of states of two histograms
/// on identical bin edges: the integral over the range of the absolute
/// difference of their cumulative mass functions.
pub fn integrated_dos_l1(a: &DosHistogram, b: &DosHistogram) -> Result<f64> {
    if a.edges.len() != b.edges.len()
        || a.edges
            .iter()
            .zip(&b.edges)
            .any(|(x, y)| (x - y).abs() > 1e-12)
    {
        return Err(Error::BinMismatch);
    }
    let mut ca = 0.0;
    let mut cb = 0.0;
    let mut total = 0.0;
    for i in 0..a.masses.len() {
        ca += a.masses[i];
        cb += b.masses[i];
        total += (ca - cb).abs() * (a.edges[i + 1] - a.edges[i]);
    }
    Ok(total)
}

/// The multiplication-operator symbol of the hexagonal lattice Laplacian.
pub fn hex_symbol(x: f64, y: f64) -> f64 {
    6.0 - 2.0 * x.cos() - 2.0 * y.cos() - 2.0 * (x + y).cos()
}

/// Density of states of the hexagonal lattice, sampled on a uniform
/// `grid x grid` torus grid. The symbol has range [0, 9].
pub fn hex_dos(grid: usize, bins: usize) -> DosHistogram {
    assert!(grid >= 16, "hex grid too coarse");
    let mut values = Vec::with_capacity(grid * grid);
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    for i in 0..grid {
        for j in 0..grid {
            values.push(hex_symbol(i as f64 * step, j as f64 * step));
        }
    }
    histogram(&values, bins, 0.0, 9.0)
}

/// Pseudo-determinant, forest determinant and their ratio.
#[derive(Clone, Debug)]
pub struct TreeForestReport {
    /// log of the product of non-zero eigenvalues.
    pub log_pseudo_determinant: f64,
    /// log det(1 + K).
    pub log_forest_determinant: f64,
    /// det(1+K) / Det(K).
    pub tree_forest_index: f64,
    /// Exact integer values (Det(K), det(1+K)) when the graph is small enough.
    pub exact: Option<(i128, i128)>,
    pub connected: bool,
}

const EXACT_DET_LIMIT: usize = 12;

/// Matrix-tree and matrix-forest quantities of a graph. `Det(K)` counts rooted
/// spanning trees, `det(1+K)` rooted spanning forests. Exact integers come
/// from fraction-free elimination when `n <= 12`; the floating route uses the
/// spectrum. Disconnected graphs are flagged: the pseudo-determinant then
/// counts rooted forests per component rather than trees.
pub fn tree_forest(g: &Graph) -> Result<TreeForestReport> {
    let m = kirchhoff(g);
    let summary = eigenvalues(&m)?;
    let n = g.vertex_count();
    let components = g.components().len();
    let tol = 1e-9 * (1.0 + summary.max());
    let mut log_pseudo = 0.0;
    let mut zero_count = 0usize;
    for &lambda in &summary.eigenvalues {
        if lambda.abs() <= tol {
            zero_count += 1;
        } else {
            log_pseudo += lambda.ln();
        }
    }
    debug_assert_eq!(zero_count, components);
    let log_forest: f64 = summary.eigenvalues.iter().map(|l| (1.0 + l).ln()).sum();
    let exact = if n > 0 && n <= EXACT_DET_LIMIT {
        Some((exact_pseudo_determinant(g), exact_forest_determinant(g)))
    } else {
        None
    };
    Ok(TreeForestReport {
        log_pseudo_determinant: log_pseudo,
        log_forest_determinant: log_forest,
        tree_forest_index: (log_forest - log_pseudo).exp(),
        exact,
        connected: components <= 1,
    })
}

/// Product of non-zero Laplacian eigenvalues as an exact integer: per
/// component, n_i times the spanning-tree count of the component.
fn exact_pseudo_determinant(g: &Graph) -> i128 {
    let mut result: i128 = 1;
    for comp in g.components() {
        let h = g.induced(&comp);
        let k = h.vertex_count();
        if k == 1 {
            continue; // single vertex contributes an empty product
        }
        let mut reduced = vec![vec![0i128; k - 1]; k - 1];
        for v in 1..k {
            reduced[v - 1][v - 1] = h.degree(v) as i128;
        }
        for (a, b) in h.edges() {
            if a >= 1 && b >= 1 {
                reduced[a - 1][b - 1] = -1;
                reduced[b - 1][a - 1] = -1;
            }
        }
        result *= k as i128 * bareiss_determinant(reduced);
    }
    result
}

/// det(1 + K) as an exact integer.
fn exact_forest_determinant(g: &Graph) -> i128 {
    let n = g.vertex_count();
    let mut mat = vec![vec![0i128; n]; n];
    for (v, row) in mat.iter_mut().enumerate() {
        row[v] = 1 + g.degree(v) as i128;
    }
    for (a, b) in g.edges() {
        mat[a][b] = -1;
        mat[b][a] = -1;
    }
    bareiss_determinant(mat)
}

/// Fraction-free Gaussian elimination; exact for integer matrices.
fn bareiss_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Value of the logarithmic potential of the spectral measure at a real point.
#[derive(Clone, Copy, Debug)]
pub struct Potential {
    pub value: f64,
    /// Number of eigenvalues within 1e-12 of `z`, omitted from the sum.
    pub omitted: usize,
}

/// `-(1/n) sum log|z - lambda|`, omitting near-singular terms. At `z = 0`
/// this is the tree index, at `z = -1` the forest index (up to sign).
pub fn potential(a: &SpectralSummary, z: f64) -> Potential {
    let n = a.n().max(1);
    let mut total = 0.0;
    let mut omitted = 0;
    for &lambda in &a.eigenvalues {
        let d = (z - lambda).abs();
        if d < 1e-12 {
            omitted += 1;
        } else {
            total += d.ln();
        }
    }
    Potential {
        value: -total / n as f64,
        omitted,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refiner {
    Soft,
    Strong,
}

/// One refinement step of a convergence experiment.
#[derive(Clone, Debug)]
pub struct ConvergenceStep {
    pub f_vector: FVector,
    /// Dense spectrum when the size allows it.
    pub summary: Option<SpectralSummary>,
    pub histogram: DosHistogram,
    /// Exact L1 distance of the spectral functions of this and the next step.
    pub l1_to_next: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub steps: Vec<ConvergenceStep>,
    pub final_histogram: DosHistogram,
}

/// Iterates a refinement and records spectra, successive L1 distances and a
/// final density of states. Beyond the dense cap the spectrum per step is
/// replaced by a counting-based histogram on a fixed 512-point grid.
pub fn convergence_experiment(
    seed: &SimplicialComplex,
    steps: usize,
    refiner: Refiner,
    bins: usize,
    range: Option<(f64, f64)>,
) -> Result<ConvergenceReport> {
    let mut complex = seed.clone();
    let mut out: Vec<ConvergenceStep> = Vec::new();
    for step in 0..=steps {
        let graph = complex.skeleton_graph()?;
        let m = kirchhoff(&graph);
        let f_vector = complex.f_vector();
        let hist_range = range.unwrap_or((0.0, 2.0 * graph.max_degree().max(1) as f64));
        let (summary, histogram) = if m.n <= dense_cap() {
            let s = eigenvalues(&m)?;
            let h = dos(&s, bins, Some(hist_range));
            (Some(s), h)
        } else {
            (None, counting_histogram(&m, bins, hist_range)?)
        };
        out.push(ConvergenceStep {
            f_vector,
            summary,
            histogram,
            l1_to_next: None,
        });
        if step < steps {
            let refined = match refiner {
                Refiner::Soft => soft_barycentric(&complex)?,
                Refiner::Strong => barycentric(&complex),
            };
            complex = whitney(&refined.graph);
        }
    }
    for i in 0..out.len().saturating_sub(1) {
        if let (Some(a), Some(b)) = (&out[i].summary, &out[i + 1].summary) {
            out[i].l1_to_next = Some(spectral_function_l1(a, b));
        }
    }
    let final_histogram = out.last().expect("at least one step").histogram.clone();
    Ok(ConvergenceReport {
        steps: out,
        final_histogram,
    })
}

/// Histogram from inertia counts on a fixed evaluation grid.
fn counting_histogram(m: &KirchhoffMatrix, bins: usize, range: (f64, f64)) -> Result<DosHistogram> {
    const GRID: usize = 512;
    let (lo, hi) = range;
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
    // Counting runs on the coarser of the two grids to bound the work.
    let eval_bins = bins.min(GRID);
    let mut cumulative = vec![0usize; eval_bins + 1];
    for (i, c) in cumulative.iter_mut().enumerate() {
        let t = lo + (hi - lo) * i as f64 / eval_bins as f64;
        *c = spectral_count(m, t + 1e-9)?.count;
    }
    let total = m.n.max(1) as f64;
    let mut masses = vec![0.0; bins];
    for (b, mass) in masses.iter_mut().enumerate() {
        // Map the requested bin onto the evaluation grid.
        let i0 = b * eval_bins / bins;
        let i1 = ((b + 1) * eval_bins / bins).max(i0 + 1).min(eval_bins);
        *mass = (cumulative[i1] - cumulative[i0]) as f64 / total;
    }
    Ok(DosHistogram { edges, masses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Generator};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn kirchhoff_entries() {
        let k2 = kirchhoff(&Generator::Complete(2).build().unwrap());
        let d = k2.to_dense();
        assert_eq!(d[(0, 0)], 1.0);
        assert_eq!(d[(0, 1)], -1.0);
        let c4 = kirchhoff(&Generator::Cycle(4).build().unwrap());
        assert!(c4.degrees.iter().all(|&d| d == 2));
        let k4 = kirchhoff(&Generator::Complete(4).build().unwrap());
        assert!(k4.degrees.iter().all(|&d| d == 3));
    }

    #[test]
    fn complete_graph_spectrum() {
        for n in 2..=6 {
            let s = eigenvalues(&kirchhoff(&Generator::Complete(n).build().unwrap())).unwrap();
            assert!(s.eigenvalues[0].abs() < 1e-9);
            for &l in &s.eigenvalues[1..] {
                assert_relative_eq!(l, n as f64, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn cycle_spectrum_matches_closed_form() {
        let s = eigenvalues(&kirchhoff(&Generator::Cycle(4).build().unwrap())).unwrap();
        for (a, b) in s.eigenvalues.iter().zip(&[0.0, 2.0, 2.0, 4.0]) {
            assert_relative_eq!(a, b, epsilon = 1e-9);
        }
        let n = 8;
        let s = eigenvalues(&kirchhoff(&Generator::Cycle(n).build().unwrap())).unwrap();
        let mut expected: Vec<f64> = (0..n)
            .map(|k| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in s.eigenvalues.iter().zip(&expected) {
            assert_relative_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn dense_cap_is_reported() {
        let g = Generator::Cycle(5).build().unwrap();
        let err = eigenvalues_with_cap(&kirchhoff(&g), 4);
        assert!(matches!(err, Err(Error::DenseCapExceeded { .. })));
    }

    #[test]
    fn counting_matches_dense_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let n = rng.gen_range(5..=50);
            let g = random_graph(&mut rng, n, 0.3);
            let m = kirchhoff(&g);
            let s = eigenvalues(&m).unwrap();
            for i in 0..=100 {
                let t = s.max() * i as f64 / 100.0 + 0.0137;
                let dense_count = s.eigenvalues.iter().filter(|&&l| l < t).count();
                let counted = spectral_count(&m, t).unwrap().count;
                assert_eq!(counted, dense_count, "n = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn spectral_count_trivial_examples() {
        let k4 = kirchhoff(&Generator::Complete(4).build().unwrap());
        assert_eq!(spectral_count(&k4, 1.0).unwrap().count, 1);
        let c4 = kirchhoff(&Generator::Cycle(4).build().unwrap());
        assert_eq!(spectral_count(&c4, 3.0).unwrap().count, 3);
    }

    #[test]
    fn l1_distance_examples() {
        let k2 = eigenvalues(&kirchhoff(&Generator::Complete(2).build().unwrap())).unwrap();
        assert_eq!(spectral_function_l1(&k2, &k2), 0.0);
        let empty2 = eigenvalues(&kirchhoff(&Graph::empty(2))).unwrap();
        assert_relative_eq!(spectral_function_l1(&k2, &empty2), 1.0, epsilon = 1e-12);

        // Lidskii bound: one edge modification moves F by at most 4/n = 1.
        let c4 = eigenvalues(&kirchhoff(&Generator::Cycle(4).build().unwrap())).unwrap();
        let chord = eigenvalues(&kirchhoff(
            &Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap(),
        ))
        .unwrap();
        let d = spectral_function_l1(&c4, &chord);
        assert!(d > 0.0 && d <= 1.0 + 1e-12);
    }

    #[test]
    fn l1_merging_matches_fine_sampling() {
        // Independent route: numeric sampling of the step functions.
        let a = eigenvalues(&kirchhoff(&Generator::Cycle(5).build().unwrap())).unwrap();
        let b = eigenvalues(&kirchhoff(&Generator::Wheel(6).build().unwrap())).unwrap();
        let exact = spectral_function_l1(&a, &b);
        let samples = 400_000;
        let mut approx_val = 0.0;
        for i in 0..samples {
            let x = (i as f64 + 0.5) / samples as f64;
            let fa = a.eigenvalues[((x * a.n() as f64).ceil() as usize).clamp(1, a.n()) - 1];
            let fb = b.eigenvalues[((x * b.n() as f64).ceil() as usize).clamp(1, b.n()) - 1];
            approx_val += (fa - fb).abs() / samples as f64;
        }
        assert_relative_eq!(exact, approx_val, epsilon = 1e-4);
    }

    #[test]
    fn dos_masses_sum_to_one() {
        let s = eigenvalues(&kirchhoff(&generators::octahedron())).unwrap();
        let h = dos(&s, 16, None);
        assert_relative_eq!(h.total_mass(), 1.0, epsilon = 1e-12);

        let k2 = eigenvalues(&kirchhoff(&Generator::Complete(2).build().unwrap())).unwrap();
        let h = dos(&k2, 2, Some((0.0, 2.0)));
        assert_eq!(h.masses, vec![0.5, 0.5]);
    }

    #[test]
    fn hex_dos_support_and_singularity() {
        let h = hex_dos(200, 128);
        assert_relative_eq!(h.total_mass(), 1.0, epsilon = 1e-12);
        // Range [0, 9]: nothing outside by construction; peak near 8.
        let interior = &h.masses[1..127];
        let (argmax, _) = interior
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let peak_left = h.edges[argmax + 1];
        assert!(
            (7.5..=8.5).contains(&peak_left),
            "peak bin starts at {peak_left}"
        );
    }

    /// Spanning trees by brute force over edge subsets.
    fn spanning_trees_brute(g: &Graph) -> u64 {
        let edges = g.edges();
        let n = g.vertex_count();
        if n == 0 {
            return 0;
        }
        let mut count = 0;
        for mask in 0u32..(1 << edges.len()) {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let chosen: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let sub = Graph::new(n, &chosen).unwrap();
            if sub.is_connected() && !sub.has_any_cycle() {
                count += 1;
            }
        }
        count
    }

    /// Rooted spanning forests by brute force: every acyclic edge subset,
    /// weighted by the product of its tree sizes (one root per tree).
    fn rooted_forests_brute(g: &Graph) -> u64 {
        let edges = g.edges();
        let n = g.vertex_count();
        let mut total = 0u64;
        for mask in 0u32..(1 << edges.len()) {
            let chosen: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let sub = Graph::new(n, &chosen).unwrap();
            if sub.has_any_cycle() {
                continue;
            }
            total += sub
                .components()
                .iter()
                .map(|c| c.len() as u64)
                .product::<u64>();
        }
        total
    }

    #[test]
    fn matrix_tree_and_forest_examples() {
        let k4 = Generator::Complete(4).build().unwrap();
        let r = tree_forest(&k4).unwrap();
        assert_eq!(r.exact.unwrap().0, 64); // 4 * 16 rooted spanning trees

        let k2 = Generator::Complete(2).build().unwrap();
        let r = tree_forest(&k2).unwrap();
        assert_eq!(r.exact.unwrap().1, 3);
        assert_eq!(rooted_forests_brute(&k2), 3);
    }

    #[test]
    fn matrix_tree_and_forest_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut connected_seen = 0;
        while connected_seen < 12 {
            let n = rng.gen_range(2..=6);
            let g = random_graph(&mut rng, n, 0.6);
            if !g.is_connected() {
                continue;
            }
            connected_seen += 1;
            let r = tree_forest(&g).unwrap();
            let (det_k, det_1k) = r.exact.unwrap();
            assert_eq!(det_k as u64, n as u64 * spanning_trees_brute(&g));
            assert_eq!(det_1k as u64, rooted_forests_brute(&g));
            // Exact and floating routes agree.
            assert_relative_eq!(
                (det_k as f64).ln(),
                r.log_pseudo_determinant,
                max_relative = 1e-9
            );
            assert_relative_eq!(
                (det_1k as f64).ln(),
                r.log_forest_determinant,
                max_relative = 1e-9
            );
            assert!(r.tree_forest_index > 1.0);
        }
    }

    #[test]
    fn potential_closed_forms() {
        let k2 = eigenvalues(&kirchhoff(&Generator::Complete(2).build().unwrap())).unwrap();
        let p0 = potential(&k2, 0.0);
        assert_eq!(p0.omitted, 1);
        assert_relative_eq!(p0.value, -0.5 * 2.0f64.ln(), epsilon = 1e-9);
        let pm1 = potential(&k2, -1.0);
        assert_eq!(pm1.omitted, 0);
        assert_relative_eq!(
            pm1.value,
            -0.5 * (1.0f64.ln() + 3.0f64.ln()),
            epsilon = 1e-9
        );

        let c4 = eigenvalues(&kirchhoff(&Generator::Cycle(4).build().unwrap())).unwrap();
        let p = potential(&c4, 0.0);
        assert_eq!(p.omitted, 1);
        assert_relative_eq!(
            p.value,
            -0.25 * (2.0f64.ln() + 2.0f64.ln() + 4.0f64.ln()),
            epsilon = 1e-9
        );
    }

    #[test]
    fn c5_soft_refinement_spectra_are_fixed() {
        let c = whitney(&Generator::Cycle(5).build().unwrap());
        let report = convergence_experiment(&c, 3, Refiner::Soft, 32, None).unwrap();
        let base = &report.steps[0].summary.as_ref().unwrap().eigenvalues;
        for step in &report.steps[1..] {
            let vals = &step.summary.as_ref().unwrap().eigenvalues;
            for (a, b) in base.iter().zip(vals) {
                assert_relative_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn eigenvalue_sum_is_twice_edge_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let g = random_graph(&mut rng, 24, 0.3);
            let s = eigenvalues(&kirchhoff(&g)).unwrap();
            let sum: f64 = s.eigenvalues.iter().sum();
            assert_relative_eq!(sum, 2.0 * g.edge_count() as f64, max_relative = 1e-8);
        }
    }
}
