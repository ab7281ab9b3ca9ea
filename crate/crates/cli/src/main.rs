//! Command-line front end: generators, refinement pipelines, spectral
//! experiments, colorings and censuses, all emitting deterministic file
//! artifacts plus a one-line JSON summary on stdout.
//!
//! Exit codes: 0 success, 1 verified domain failures (coloring failure
//! certificates, non-manifold signals), 2 usage or input errors.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use softbary::chromatic::{self, ChromaticResult, Coloring};
use softbary::complex::{whitney, SimplicialComplex};
use softbary::error::Error;
use softbary::generators::Generator;
use softbary::graph::Graph;
use softbary::json as fmt;
use softbary::recognize::{classify_with_cap, ManifoldReport};
use softbary::refine::{barycentric, dual_graph, soft_barycentric};
use softbary::spectral::{self, Refiner};
use std::path::{Path, PathBuf};

/// Classification in summaries is skipped above this size; use the
/// `classify` command with an explicit cap for big graphs.
const SUMMARY_CLASSIFY_LIMIT: usize = 2000;
const SUMMARY_CLASSIFY_CAP: u64 = 5_000_000;

#[derive(Parser)]
#[command(
    name = "softbary",
    version,
    about = "Whitney complexes, barycentric refinements, spectra and colorings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph.
    Gen {
        #[arg(long)]
        name: String,
        /// Integer parameters, comma separated.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Iterate a barycentric refinement.
    Refine {
        #[arg(long, conflicts_with = "strong")]
        soft: bool,
        #[arg(long)]
        strong: bool,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Manifold classification report.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 20_000_000)]
        cap: u64,
    },
    /// Dual graph of the Whitney complex.
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// f-vector and Euler characteristic.
    Fvector {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Sorted Kirchhoff spectrum as CSV.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Density of states histogram as CSV.
    Dos {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 256)]
        bins: usize,
        /// Histogram range `lo,hi`; defaults to [0, lambda_max].
        #[arg(long, value_delimiter = ',')]
        range: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hexagonal-lattice reference density of states.
    Hexdos {
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[arg(long, default_value_t = 128)]
        bins: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Refinement convergence experiment with per-step artifacts.
    Converge {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[arg(long, conflicts_with = "strong")]
        soft: bool,
        #[arg(long)]
        strong: bool,
        #[arg(long, default_value_t = 128)]
        bins: usize,
        /// Histogram range `lo,hi`; defaults to [0, 2 * max degree].
        #[arg(long, value_delimiter = ',')]
        range: Option<Vec<f64>>,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Matrix-tree and matrix-forest report.
    Treeforest {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Logarithmic potential of the spectral measure at a real point.
    Potential {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        z: f64,
    },
    /// Vertex coloring: exact search or the refinement construction.
    Color {
        #[arg(long, conflicts_with = "construct")]
        exact: bool,
        /// Color the soft refinement via a dual coloring.
        #[arg(long)]
        construct: bool,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = chromatic::DEFAULT_CHROMATIC_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// With --construct, also write the refined graph here.
        #[arg(long)]
        out_refined: Option<PathBuf>,
    },
    /// Acyclic-leaning 3-coloring of the dual graph.
    Dualcolor {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Two-part induced-forest cover from a proper coloring.
    Forestcover {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Fisk complex of a manifold.
    Fisk {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Edge-degree census of a 3-dimensional complex.
    Edgecensus {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge-set distance between two graphs on one vertex set.
    Distance {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(summary) => {
            println!("{summary}");
        }
        Err(e) => {
            let code = match &e {
                Error::AcyclicColoringFailure(_)
                | Error::PropagationConflict(_, _)
                | Error::NotManifoldAt(_)
                | Error::ImproperColoring(_, _) => 1,
                _ => 2,
            };
            eprintln!("error: {e}");
            println!("{}", json!({ "error": e.to_string(), "exit": code }));
            std::process::exit(code);
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    fmt::graph_from_json(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| {
                Error::Precondition(format!("cannot create {}: {e}", dir.display()))
            })?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn parse_range(range: Option<Vec<f64>>) -> Result<Option<(f64, f64)>, Error> {
    match range {
        None => Ok(None),
        Some(r) if r.len() == 2 && r[1] > r[0] => Ok(Some((r[0], r[1]))),
        Some(_) => Err(Error::Precondition(
            "--range takes `lo,hi` with hi > lo".into(),
        )),
    }
}

fn report_json(report: &ManifoldReport) -> Value {
    json!({
        "kind": report.kind.as_str(),
        "dimension": report.dimension,
        "boundaryVertices": report.boundary_vertices,
        "witness": report.witness,
        "contractible": match report.contractible {
            softbary::Decision::Yes => "yes",
            softbary::Decision::No => "no",
            softbary::Decision::Undecided => "undecided-at-cap",
        },
    })
}

/// Standard summary block: f-vector, Euler characteristic, classification.
fn describe(g: &Graph) -> Value {
    let c = whitney(g);
    let f = c.f_vector();
    let classification = if g.vertex_count() <= SUMMARY_CLASSIFY_LIMIT {
        report_json(&classify_with_cap(g, SUMMARY_CLASSIFY_CAP))
    } else {
        Value::String("skipped (graph too large; run classify)".into())
    };
    json!({
        "fvector": f.0,
        "chi": f.euler_characteristic(),
        "classification": classification,
    })
}

fn complex_of(path: &Path) -> Result<SimplicialComplex, Error> {
    Ok(whitney(&read_graph(path)?))
}

fn run(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::Gen { name, params, out } => {
            let g = Generator::parse(&name, &params)?.build()?;
            write_file(&out, &fmt::graph_to_json(&g))?;
            Ok(json!({
                "command": "gen", "name": name, "params": params,
                "summary": describe(&g), "outputs": [out],
            })
            .to_string())
        }
        Command::Refine {
            soft,
            strong,
            steps,
            input,
            out,
        } => {
            let refiner = if strong {
                Refiner::Strong
            } else {
                Refiner::Soft
            };
            let _ = soft;
            let mut g = read_graph(&input)?;
            let mut last = None;
            for _ in 0..steps {
                let c = whitney(&g);
                let r = match refiner {
                    Refiner::Soft => soft_barycentric(&c)?,
                    Refiner::Strong => barycentric(&c),
                };
                g = r.graph.clone();
                last = Some(r);
            }
            match last {
                Some(r) => write_file(&out, &fmt::refined_graph_to_json(&r))?,
                None => write_file(&out, &fmt::graph_to_json(&g))?,
            }
            Ok(json!({
                "command": "refine",
                "mode": if matches!(refiner, Refiner::Strong) { "strong" } else { "soft" },
                "steps": steps, "summary": describe(&g), "outputs": [out],
            })
            .to_string())
        }
        Command::Classify { input, cap } => {
            let g = read_graph(&input)?;
            let report = classify_with_cap(&g, cap);
            let c = whitney(&g);
            Ok(json!({
                "command": "classify",
                "fvector": c.f_vector().0,
                "chi": c.euler_characteristic(),
                "classification": report_json(&report),
                "outputs": [],
            })
            .to_string())
        }
        Command::Dual { input, out } => {
            let c = complex_of(&input)?;
            let d = dual_graph(&c)?;
            write_file(&out, &fmt::graph_to_json(&d))?;
            Ok(json!({
                "command": "dual", "facets": d.vertex_count(),
                "summary": describe(&d), "outputs": [out],
            })
            .to_string())
        }
        Command::Fvector { input } => {
            let g = read_graph(&input)?;
            Ok(json!({ "command": "fvector", "summary": describe(&g), "outputs": [] }).to_string())
        }
        Command::Spectrum { input, out } => {
            let g = read_graph(&input)?;
            let s = spectral::eigenvalues(&spectral::kirchhoff(&g))?;
            write_file(&out, &fmt::eigenvalues_to_csv(&s.eigenvalues))?;
            Ok(json!({
                "command": "spectrum", "n": s.n(), "lambdaMax": s.max(),
                "summary": describe(&g), "outputs": [out],
            })
            .to_string())
        }
        Command::Dos {
            input,
            bins,
            range,
            out,
        } => {
            let g = read_graph(&input)?;
            let s = spectral::eigenvalues(&spectral::kirchhoff(&g))?;
            let range = parse_range(range)?;
            let h = spectral::dos(&s, bins, range);
            write_file(&out, &fmt::histogram_to_csv(&h))?;
            Ok(json!({
                "command": "dos", "bins": bins, "mass": h.total_mass(),
                "summary": describe(&g), "outputs": [out],
            })
            .to_string())
        }
        Command::Hexdos { grid, bins, out } => {
            if grid < 16 || bins == 0 {
                return Err(Error::Precondition(
                    "hexdos needs --grid >= 16 and --bins >= 1".into(),
                ));
            }
            let h = spectral::hex_dos(grid, bins);
            write_file(&out, &fmt::histogram_to_csv(&h))?;
            Ok(json!({
                "command": "hexdos", "grid": grid, "bins": bins,
                "mass": h.total_mass(), "outputs": [out],
            })
            .to_string())
        }
        Command::Converge {
            input,
            steps,
            soft,
            strong,
            bins,
            range,
            outdir,
        } => {
            let refiner = if strong {
                Refiner::Strong
            } else {
                Refiner::Soft
            };
            let _ = soft;
            let c = complex_of(&input)?;
            let range = parse_range(range)?;
            let report = spectral::convergence_experiment(&c, steps, refiner, bins, range)?;
            let mut step_docs = Vec::new();
            let mut outputs: Vec<String> = Vec::new();
            for (i, step) in report.steps.iter().enumerate() {
                let name = format!("step{i}.csv");
                write_file(&outdir.join(&name), &fmt::histogram_to_csv(&step.histogram))?;
                outputs.push(outdir.join(&name).display().to_string());
                step_docs.push(json!({
                    "fvector": step.f_vector.0,
                    "l1ToNext": step.l1_to_next,
                    "histogramRef": name,
                }));
            }
            write_file(
                &outdir.join("final.csv"),
                &fmt::histogram_to_csv(&report.final_histogram),
            )?;
            outputs.push(outdir.join("final.csv").display().to_string());
            let doc = json!({ "steps": step_docs, "final": { "histogramRef": "final.csv" } });
            let mut text = doc.to_string();
            text.push('\n');
            write_file(&outdir.join("report.json"), &text)?;
            outputs.push(outdir.join("report.json").display().to_string());
            Ok(json!({
                "command": "converge", "steps": steps,
                "mode": if matches!(refiner, Refiner::Strong) { "strong" } else { "soft" },
                "report": doc, "outputs": outputs,
            })
            .to_string())
        }
        Command::Treeforest { input } => {
            let g = read_graph(&input)?;
            let r = spectral::tree_forest(&g)?;
            Ok(json!({
                "command": "treeforest",
                "logPseudoDeterminant": r.log_pseudo_determinant,
                "logForestDeterminant": r.log_forest_determinant,
                "treeForestIndex": r.tree_forest_index,
                "exact": r.exact.map(|(t, f)| json!({ "pseudoDeterminant": t.to_string(), "forestDeterminant": f.to_string() })),
                "connected": r.connected,
                "outputs": [],
            })
            .to_string())
        }
        Command::Potential { input, z } => {
            let g = read_graph(&input)?;
            let s = spectral::eigenvalues(&spectral::kirchhoff(&g))?;
            let p = spectral::potential(&s, z);
            Ok(json!({
                "command": "potential", "z": z, "value": p.value,
                "omitted": p.omitted, "outputs": [],
            })
            .to_string())
        }
        Command::Color {
            exact,
            construct,
            input,
            budget,
            out,
            out_refined,
        } => {
            let g = read_graph(&input)?;
            if construct {
                let c = whitney(&g);
                let dual = chromatic::dual_acyclic_3color(&c)?;
                let rc = chromatic::color_soft_refinement(&c, &dual.coloring)?;
                let kempe = chromatic::kempe_free(&rc.refined.graph, &rc.coloring)?;
                let mut outputs = Vec::new();
                if let Some(path) = &out {
                    write_file(path, &fmt::coloring_to_json(&rc.coloring, true, kempe))?;
                    outputs.push(path.display().to_string());
                }
                if let Some(path) = &out_refined {
                    write_file(path, &fmt::refined_graph_to_json(&rc.refined))?;
                    outputs.push(path.display().to_string());
                }
                return Ok(json!({
                    "command": "color", "mode": "construct",
                    "colors": rc.coloring.color_count(),
                    "refinedVertices": rc.refined.graph.vertex_count(),
                    "outputs": outputs,
                })
                .to_string());
            }
            let _ = exact;
            let result = chromatic::chromatic_number(&g, budget);
            let (doc, coloring) = match &result {
                ChromaticResult::Exact { value, coloring } => (json!({ "exact": value }), coloring),
                ChromaticResult::Bracket {
                    lower,
                    upper,
                    coloring,
                } => (json!({ "lower": lower, "upper": upper }), coloring),
            };
            let mut outputs = Vec::new();
            if let Some(path) = &out {
                let verified = chromatic::verify_coloring(&g, coloring)?;
                let kempe = verified && chromatic::kempe_free(&g, coloring)?;
                write_file(path, &fmt::coloring_to_json(coloring, verified, kempe))?;
                outputs.push(path.display().to_string());
            }
            Ok(json!({
                "command": "color", "mode": "exact", "result": doc,
                "colorsUsed": coloring.color_count(), "outputs": outputs,
            })
            .to_string())
        }
        Command::Dualcolor { input, out } => {
            let c = complex_of(&input)?;
            let outcome = chromatic::dual_acyclic_3color(&c)?;
            write_file(
                &out,
                &fmt::coloring_to_json(&outcome.coloring, true, outcome.kempe_free),
            )?;
            Ok(json!({
                "command": "dualcolor",
                "facets": outcome.dual.vertex_count(),
                "colors": outcome.coloring.color_count(),
                "kempeFree": outcome.kempe_free,
                "acyclicPairs": outcome.acyclic_pairs,
                "outputs": [out],
            })
            .to_string())
        }
        Command::Forestcover { input, coloring } => {
            let g = read_graph(&input)?;
            let text = std::fs::read_to_string(&coloring)
                .map_err(|e| Error::Precondition(format!("cannot read coloring: {e}")))?;
            let col: Coloring = fmt::coloring_from_json(&text)?;
            let cover = chromatic::two_forest_cover(&g, &col)?;
            let verified = chromatic::verify_forest_cover(&g, &cover);
            Ok(json!({
                "command": "forestcover",
                "parts": cover.parts,
                "verified": verified,
                "outputs": [],
            })
            .to_string())
        }
        Command::Fisk { input } => {
            let c = complex_of(&input)?;
            let f = chromatic::fisk_complex(&c)?;
            Ok(json!({
                "command": "fisk",
                "simplices": f.simplices.iter().map(|s| s.vertices().to_vec()).collect::<Vec<_>>(),
                "componentCount": f.components.len(),
                "componentSizes": f.components.iter().map(Vec::len).collect::<Vec<_>>(),
                "outputs": [],
            })
            .to_string())
        }
        Command::Edgecensus { input, out } => {
            let c = complex_of(&input)?;
            let census = chromatic::edge_degree_stats(&c)?;
            let mut outputs = Vec::new();
            if let Some(path) = &out {
                write_file(path, &fmt::census_to_json(&census))?;
                outputs.push(path.display().to_string());
            }
            Ok(json!({
                "command": "edgecensus",
                "interior": census.interior,
                "boundary": census.boundary,
                "outputs": outputs,
            })
            .to_string())
        }
        Command::Distance { a, b } => {
            let ga = read_graph(&a)?;
            let gb = read_graph(&b)?;
            let d = ga.graph_distance(&gb)?;
            Ok(json!({ "command": "distance", "distance": d, "outputs": [] }).to_string())
        }
    }
}
