//! End-to-end CLI tests, including the reproducibility criterion: identical
//! invocations must produce byte-identical artifacts.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_softbary"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).expect("artifact exists")
}

#[test]
fn criterion_14_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let (_, _, code) = run(&["gen", "--name", "icosahedron", "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, _, code) = run(&["gen", "--name", "icosahedron", "--out", b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(read(&a), read(&b), "identical runs write identical bytes");

    // Round trip: parse the artifact, reserialize through another command.
    let refined_a = dir.path().join("ra.json");
    let refined_b = dir.path().join("rb.json");
    for (src, dst) in [(&a, &refined_a), (&b, &refined_b)] {
        let (stdout, _, code) = run(&[
            "refine",
            "--soft",
            "--steps",
            "1",
            "--in",
            src.to_str().unwrap(),
            "--out",
            dst.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(
            stdout.contains("\"fvector\":[32,90,60]"),
            "summary: {stdout}"
        );
    }
    assert_eq!(read(&refined_a), read(&refined_b));

    // Histograms reproduce byte for byte as well.
    let h1 = dir.path().join("h1.csv");
    let h2 = dir.path().join("h2.csv");
    for h in [&h1, &h2] {
        let (_, _, code) = run(&[
            "dos",
            "--in",
            a.to_str().unwrap(),
            "--bins",
            "64",
            "--out",
            h.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(read(&h1), read(&h2));
    println!("ACCEPTANCE 14 (reproducibility): PASS - gen, refine and dos artifacts are byte-identical across runs");
}

#[test]
fn gen_profile_matches_interface() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let (stdout, _, code) = run(&["gen", "--name", "icosahedron", "--out", g.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"fvector\":[12,30,20]"));
    let text = std::fs::read_to_string(&g).unwrap();
    assert!(text.starts_with("{\"vertices\":[0,1,2"));
    assert!(text.contains("\"edges\":[[0,1]"));
}

#[test]
fn usage_errors_exit_two() {
    let (_, stderr, code) = run(&["gen", "--name", "nonesuch", "--out", "/tmp/x.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown generator"));

    let (_, _, code) = run(&["classify", "--in", "/nonexistent/path.json"]);
    assert_eq!(code, 2);

    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn pipeline_gen_dual_color_cover() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let d = dir.path().join("dual.json");
    let col = dir.path().join("col.json");
    assert_eq!(
        run(&["gen", "--name", "icosahedron", "--out", g.to_str().unwrap()]).2,
        0
    );
    let (stdout, _, code) = run(&[
        "dual",
        "--in",
        g.to_str().unwrap(),
        "--out",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"facets\":20"));
    let (stdout, _, code) = run(&[
        "dualcolor",
        "--in",
        g.to_str().unwrap(),
        "--out",
        col.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"kempeFree\":true"));
    let (stdout, _, code) = run(&[
        "forestcover",
        "--in",
        d.to_str().unwrap(),
        "--coloring",
        col.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"verified\":true"));
}

#[test]
fn spectral_and_construct_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(
        run(&["gen", "--name", "octahedron", "--out", g.to_str().unwrap()]).2,
        0
    );

    let eigs = dir.path().join("eigs.csv");
    let (stdout, _, code) = run(&["spectrum", "--in", g.to_str().unwrap(), "--out", eigs.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"lambdaMax\":6"));
    let text = std::fs::read_to_string(&eigs).unwrap();
    assert_eq!(text.lines().count(), 6);

    let (stdout, _, code) = run(&["potential", "--in", g.to_str().unwrap(), "--z", "0"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"omitted\":1"));

    let hex = dir.path().join("hex.csv");
    let (stdout, _, code) = run(&["hexdos", "--grid", "64", "--bins", "32", "--out", hex.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"mass\":1"));
    let (_, _, code) = run(&["hexdos", "--grid", "4", "--out", hex.to_str().unwrap()]);
    assert_eq!(code, 2, "coarse grids are usage errors");

    let (stdout, _, code) = run(&["fisk", "--in", g.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"componentCount\":0"));

    let col = dir.path().join("col.json");
    let refined = dir.path().join("refined.json");
    let (stdout, _, code) = run(&[
        "color",
        "--construct",
        "--in",
        g.to_str().unwrap(),
        "--out",
        col.to_str().unwrap(),
        "--out-refined",
        refined.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"colors\":3"), "octahedron construction: {stdout}");
    assert!(stdout.contains("\"refinedVertices\":14"));
    assert!(std::fs::read_to_string(&col).unwrap().contains("\"verified\":true"));
    assert!(std::fs::read_to_string(&refined).unwrap().contains("\"provenance\""));

    let (stdout, _, code) = run(&["color", "--exact", "--in", g.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"exact\":3"));

    let b = dir.path().join("b.json");
    assert_eq!(run(&["gen", "--name", "cross-polytope", "--params", "2", "--out", b.to_str().unwrap()]).2, 0);
    let (stdout, _, code) = run(&["distance", "--a", g.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"distance\":0"), "both generators build the same labeled graph");
}

#[test]
fn classify_and_census_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(
        run(&[
            "gen",
            "--name",
            "join-of",
            "--params",
            "4,4",
            "--out",
            g.to_str().unwrap()
        ])
        .2,
        0
    );
    let (stdout, _, code) = run(&["classify", "--in", g.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"kind\":\"sphere\""));
    assert!(stdout.contains("\"dimension\":3"));
    let (stdout, _, code) = run(&["edgecensus", "--in", g.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"interior\":{\"4\":24}"));
}

#[test]
fn dos_range_flag() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let h = dir.path().join("h.csv");
    assert_eq!(
        run(&["gen", "--name", "flat-torus", "--params", "4,4", "--out", g.to_str().unwrap()]).2,
        0
    );
    let (stdout, _, code) = run(&[
        "dos",
        "--in",
        g.to_str().unwrap(),
        "--bins",
        "16",
        "--range",
        "0,9.01",
        "--out",
        h.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"mass\":1"));
    let text = std::fs::read_to_string(&h).unwrap();
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().next().unwrap().starts_with("0,"));

    // A malformed range is a usage error.
    let (_, stderr, code) = run(&[
        "dos",
        "--in",
        g.to_str().unwrap(),
        "--range",
        "5",
        "--out",
        h.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("lo,hi"));
}

#[test]
fn converge_writes_report_and_steps() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let outdir = dir.path().join("conv");
    assert_eq!(
        run(&[
            "gen",
            "--name",
            "cycle",
            "--params",
            "5",
            "--out",
            g.to_str().unwrap()
        ])
        .2,
        0
    );
    let (stdout, _, code) = run(&[
        "converge",
        "--in",
        g.to_str().unwrap(),
        "--steps",
        "2",
        "--soft",
        "--bins",
        "32",
        "--outdir",
        outdir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    // Cycles are fixed points: successive spectra agree to rounding noise.
    let doc: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    for step in doc["report"]["steps"].as_array().unwrap() {
        if let Some(l1) = step["l1ToNext"].as_f64() {
            assert!(l1.abs() < 1e-12, "fixed point moved by {l1}");
        }
    }
    assert!(outdir.join("report.json").exists());
    assert!(outdir.join("step0.csv").exists());
    assert!(outdir.join("final.csv").exists());
}
