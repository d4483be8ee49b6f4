use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fa2_core::generate::erdos_renyi;
use fa2_core::{read_layout_tsv, LayoutMatrix};
use tempfile::TempDir;

const TRIANGLE_PLUS: &str = "source,target\nA,B\nB,C\nC,A\nC,D\n";

fn fa2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fa2"))
        .args(args)
        .output()
        .expect("failed to run fa2")
}

fn ok(args: &[&str]) -> String {
    let out = fa2(args);
    assert!(
        out.status.success(),
        "fa2 {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = fa2(args);
    assert!(!out.status.success(), "fa2 {args:?} unexpectedly succeeded");
    String::from_utf8(out.stderr).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn positions(tsv: &str) -> Vec<(String, [f64; 2])> {
    read_layout_tsv(tsv).unwrap().0
}

#[test]
fn layout_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let a = ok(&["layout", s(&g), "--seed", "10"]);
    let b = ok(&["layout", s(&g), "--seed", "10"]);
    assert_eq!(a, b);
    assert_eq!(positions(&a).len(), 4);
    let c = ok(&["layout", s(&g), "--seed", "11"]);
    assert_ne!(a, c);
}

#[test]
fn drawn_seed_is_reported_and_reproduces_the_run() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let out = fa2(&["layout", s(&g), "--iterations", "20"]);
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    let seed = stderr.trim().strip_prefix("seed: ").expect("seed line");
    let again = ok(&["layout", s(&g), "--iterations", "20", "--seed", seed]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), again);
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", &erdos_renyi(80, 5.0, 3).to_edge_list_csv());
    let one = ok(&["layout", s(&g), "--seed", "4", "--workers", "1"]);
    let four = ok(&["layout", s(&g), "--seed", "4", "--workers", "4"]);
    assert_eq!(one, four);
}

#[test]
fn warm_start_continues_from_given_positions() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let prev = dir.path().join("prev.tsv");
    ok(&["layout", s(&g), "--seed", "1", "-o", s(&prev)]);
    let warm = ok(&[
        "layout",
        s(&g),
        "--pos",
        s(&prev),
        "--iterations",
        "50",
        "--seed",
        "1",
    ]);
    let fresh = ok(&["layout", s(&g), "--iterations", "50", "--seed", "1"]);
    assert_ne!(warm, fresh);

    // the same continuation through the library
    let graph = fa2_core::parse_edge_list(TRIANGLE_PLUS).unwrap();
    let start = read_layout_tsv(&fs::read_to_string(&prev).unwrap())
        .unwrap()
        .align_to(&graph)
        .unwrap();
    let params = fa2_core::Fa2Params {
        iterations: 50,
        seed: Some(1),
        ..Default::default()
    };
    let run = fa2_core::run_layout(&graph, &params, Some(&start)).unwrap();
    assert_eq!(
        warm,
        fa2_core::write_layout_tsv(&graph, &run.positions).unwrap()
    );
}

#[test]
fn warm_start_mismatch_names_counts() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let pos = write(&dir, "p.tsv", "A\t0\t0\nB\t1\t0\nC\t0\t1\n");
    let err = fails(&["layout", s(&g), "--pos", s(&pos)]);
    assert!(err.contains("expected 4 rows, got 3"), "{err}");
    assert!(err.contains("missing: D"), "{err}");
}

#[test]
fn bad_input_file_is_an_error() {
    let dir = TempDir::new().unwrap();
    let err = fails(&["layout", s(&dir.path().join("nope.csv"))]);
    assert!(err.contains("nope.csv"), "{err}");
    let g = write(&dir, "g.csv", "source,target,weight\nA,B,-1\n");
    let err = fails(&["layout", s(&g)]);
    assert!(err.contains("negative weight at line 2"), "{err}");
}

#[test]
fn diagnostics_and_snapshots() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let out = dir.path().join("tri.tsv");
    let diag = dir.path().join("diag.csv");
    let snaps = dir.path().join("snaps");
    ok(&[
        "layout",
        s(&g),
        "--seed",
        "2",
        "--iterations",
        "30",
        "--plotstep",
        "10",
        "-o",
        s(&out),
        "--diagnostics",
        s(&diag),
        "--snapshots",
        s(&snaps),
    ]);
    let diag = fs::read_to_string(diag).unwrap();
    let mut lines = diag.lines();
    assert_eq!(
        lines.next(),
        Some("iteration,global_swinging,global_traction,global_speed,effective_tolerance")
    );
    assert_eq!(lines.count(), 30);
    let mut names: Vec<String> = fs::read_dir(&snaps)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        ["tri_iter10.svg", "tri_iter20.svg", "tri_iter30.svg"]
    );
    for name in names {
        let svg = fs::read_to_string(snaps.join(name)).unwrap();
        roxmltree::Document::parse(&svg).unwrap();
    }
}

fn svg_doc(svg: &str) -> roxmltree::Document<'_> {
    roxmltree::Document::parse(svg).unwrap()
}

fn by_class<'a>(doc: &'a roxmltree::Document<'a>, class: &str) -> Vec<roxmltree::Node<'a, 'a>> {
    doc.descendants()
        .filter(|n| n.attribute("class") == Some(class))
        .collect()
}

#[test]
fn render_defaults() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let layout = write(&dir, "l.tsv", "A\t0\t0\nB\t10\t0\nC\t5\t8\nD\t5\t20\n");
    let svg = ok(&["render", s(&g), s(&layout)]);
    let doc = svg_doc(&svg);
    assert_eq!(by_class(&doc, "node").len(), 4);
    assert_eq!(by_class(&doc, "edge").len(), 4);
    assert_eq!(by_class(&doc, "arrow").len(), 4);
    let labels = &by_class(&doc, "labels")[0];
    assert_eq!(labels.attribute("font-size"), Some("3em"));
    assert_eq!(labels.attribute("fill"), Some("#000000"));
    // default vertex size 3 on a 2000px canvas: 3 * 2000 / 200
    for node in by_class(&doc, "node") {
        assert_eq!(node.attribute("r"), Some("30"));
    }
}

#[test]
fn render_sizes_and_colors_from_attributes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let attrs = write(
        &dir,
        "a.csv",
        "id,continent,assets\nA,Europe,10\nB,Asia,20\nC,Europe,30\nD,Asia,10\n",
    );
    let style = write(
        &dir,
        "s.json",
        r##"{"attribute": "continent", "mapping": {"Asia": "#FF0000"}}"##,
    );
    let layout = write(&dir, "l.tsv", "A\t0\t0\nB\t10\t0\nC\t5\t8\nD\t5\t20\n");
    let svg = ok(&[
        "render",
        s(&g),
        s(&layout),
        "--attributes",
        s(&attrs),
        "--style",
        s(&style),
        "--vertex-size-attr",
        "assets",
        "--edge-color",
        "#00ff00",
    ]);
    let doc = svg_doc(&svg);
    let nodes = by_class(&doc, "node");
    let radii: Vec<&str> = nodes.iter().map(|n| n.attribute("r").unwrap()).collect();
    // assets 10, 20, 30, 10 onto sizes [1, 6], times 10 px per size unit
    assert_eq!(radii, ["10", "35", "60", "10"]);
    let fills: Vec<&str> = nodes.iter().map(|n| n.attribute("fill").unwrap()).collect();
    assert_eq!(fills[1], "#ff0000");
    assert_eq!(fills[3], "#ff0000");
    assert_ne!(fills[0], "#ff0000");
    assert_eq!(fills[0], fills[2]);
    for e in by_class(&doc, "edge") {
        assert_eq!(e.attribute("stroke"), Some("#00ff00"));
    }
}

#[test]
fn render_rejects_mismatched_node_sets() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.csv", TRIANGLE_PLUS);
    let short = write(&dir, "short.tsv", "A\t0\t0\nB\t10\t0\nC\t5\t8\n");
    let err = fails(&["render", s(&g), s(&short)]);
    assert!(err.contains("missing: D"), "{err}");
    let wrong = write(&dir, "wrong.tsv", "A\t0\t0\nB\t10\t0\nC\t5\t8\nZ\t1\t1\n");
    let err = fails(&["render", s(&g), s(&wrong)]);
    assert!(
        err.contains("missing: D") && err.contains("unexpected: Z"),
        "{err}"
    );
}

fn transform(dir: &TempDir, layout: &str, args: &[&str]) -> Vec<(String, [f64; 2])> {
    let l = write(dir, "in.tsv", layout);
    let mut all = vec!["transform", s(&l)];
    all.extend_from_slice(args);
    positions(&ok(&all))
}

#[test]
fn transform_examples() {
    let dir = TempDir::new().unwrap();
    let scaled = transform(&dir, "a\t0\t0\nb\t2\t0\n", &["--scale", "2"]);
    assert_eq!(
        scaled,
        [
            ("a".to_string(), [-1.0, 0.0]),
            ("b".to_string(), [3.0, 0.0])
        ]
    );

    let input = "p\t3.5\t-1\nq\t-2\t4\nr\t10\t0.25\n";
    let back = transform(&dir, input, &["--rotate", "90", "--rotate", "-90"]);
    for ((_, a), (_, b)) in positions(input).iter().zip(&back) {
        assert!((a[0] - b[0]).abs() < 1e-9 && (a[1] - b[1]).abs() < 1e-9);
    }

    let centered = transform(&dir, input, &["--center", "0,0"]);
    let layout = LayoutMatrix(centered.iter().map(|(_, p)| *p).collect());
    let c = layout.centroid().unwrap();
    assert!(c[0].abs() < 1e-12 && c[1].abs() < 1e-12);
}

#[test]
fn transform_chains_mixed_flags() {
    let dir = TempDir::new().unwrap();
    // centroid (1, 0) -> rotate 90 about it -> double -> move centroid to (5, 5)
    let out = transform(
        &dir,
        "a\t0\t0\nb\t2\t0\n",
        &["--rotate", "90", "--scale", "2", "--center", "5,5"],
    );
    let expect = [[5.0, 3.0], [5.0, 7.0]];
    for ((_, got), want) in out.iter().zip(expect) {
        assert!(
            (got[0] - want[0]).abs() < 1e-12 && (got[1] - want[1]).abs() < 1e-12,
            "{got:?}"
        );
    }
}

#[test]
fn transform_rejects_bad_scale() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "in.tsv", "a\t0\t0\n");
    let err = fails(&["transform", s(&l), "--scale", "-2"]);
    assert!(err.contains("scale factor must be positive"), "{err}");
}

fn manifest(dir: &TempDir, periods: &[(&str, &str)], params: &str) -> PathBuf {
    let entries: Vec<String> = periods
        .iter()
        .map(|(label, graph)| format!(r#"{{"label": "{label}", "graph": "{graph}"}}"#))
        .collect();
    write(
        dir,
        "manifest.json",
        &format!(
            r#"{{"periods": [{}], "params": {params}}}"#,
            entries.join(", ")
        ),
    )
}

#[test]
fn single_period_timeseries_matches_layout() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p1.csv", &erdos_renyi(40, 4.0, 9).to_edge_list_csv());
    let m = manifest(&dir, &[("2008-08-22", "p1.csv")], r#"{"seed": 21}"#);
    let out = dir.path().join("out");
    ok(&["timeseries", s(&m), "-o", s(&out)]);
    let layout = ok(&["layout", s(&g), "--seed", "21"]);
    assert_eq!(
        fs::read_to_string(out.join("2008-08-22.tsv")).unwrap(),
        layout
    );
    assert!(out.join("2008-08-22.svg").exists());
    assert_eq!(
        fs::read_to_string(out.join("displacement.csv")).unwrap(),
        "from_period,to_period,node_id,displacement\n"
    );
}

fn mean_displacement(csv: &str) -> f64 {
    let vals: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    vals.iter().sum::<f64>() / vals.len() as f64
}

#[test]
fn chaining_unchanged_graphs_is_stable() {
    let dir = TempDir::new().unwrap();
    write(&dir, "g.csv", &erdos_renyi(60, 5.0, 12).to_edge_list_csv());
    let periods = [("t1", "g.csv"), ("t2", "g.csv"), ("t3", "g.csv")];
    let chained = dir.path().join("chained");
    let fresh = dir.path().join("fresh");
    let m = manifest(&dir, &periods, r#"{"seed": 3}"#);
    ok(&["timeseries", s(&m), "-o", s(&chained), "--no-svg"]);
    let m = write(
        &dir,
        "fresh.json",
        &fs::read_to_string(&m)
            .unwrap()
            .replace(r#""params""#, r#""chain": false, "params""#),
    );
    ok(&["timeseries", s(&m), "-o", s(&fresh), "--no-svg"]);

    let csv = fs::read_to_string(chained.join("displacement.csv")).unwrap();
    let fresh_csv = fs::read_to_string(fresh.join("displacement.csv")).unwrap();
    for (from, to) in [("t1", "t2"), ("t2", "t3")] {
        let pick = |text: &str| -> String {
            text.lines()
                .filter(|l| l.starts_with(&format!("{from},{to},")) || l.starts_with("from_"))
                .map(|l| format!("{l}\n"))
                .collect()
        };
        let layout =
            read_layout_tsv(&fs::read_to_string(chained.join(format!("{from}.tsv"))).unwrap())
                .unwrap()
                .positions();
        let chained_mean = mean_displacement(&pick(&csv));
        let fresh_mean = mean_displacement(&pick(&fresh_csv));
        assert!(
            chained_mean < 0.05 * layout.diameter(),
            "{from}->{to}: {chained_mean} vs diameter {}",
            layout.diameter()
        );
        assert!(
            chained_mean < fresh_mean,
            "{chained_mean} vs fresh {fresh_mean}"
        );
    }
}

#[test]
fn timeseries_reports_failing_period() {
    let dir = TempDir::new().unwrap();
    write(&dir, "ok.csv", TRIANGLE_PLUS);
    write(&dir, "bad.csv", "source,target,weight\nA,B,x\n");
    let m = manifest(&dir, &[("good", "ok.csv"), ("2009-01-02", "bad.csv")], "{}");
    let err = fails(&["timeseries", s(&m), "-o", s(&dir.path().join("out"))]);
    assert!(err.contains("period 2009-01-02"), "{err}");
}

#[test]
fn bench_writes_csv_and_slope() {
    let out = fa2(&[
        "bench",
        "--nodes",
        "20,40",
        "--iterations",
        "5",
        "--reps",
        "2",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("n_nodes,iterations,repetitions,mean_seconds,stddev_seconds,ci95_low,ci95_high")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("20,5,2,") && rows[1].starts_with("40,5,2,"));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("log-log slope (iterations=5):"), "{stderr}");
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["layout", "timeseries", "transform", "render", "bench"] {
        let help = ok(&[sub, "--help"]);
        assert!(help.contains("Usage: fa2"), "{sub}: {help}");
    }
    let help = ok(&["layout", "--help"]);
    for flag in [
        "--iterations",
        "--plotstep",
        "--linlog",
        "--stronggravity",
        "--gravity",
        "--pos",
        "--center",
        "--jittertol",
    ] {
        assert!(help.contains(flag), "layout --help lacks {flag}");
    }
}
