use std::process::Command;

use beta_trees::tree::parse_tree;
use beta_trees::verify::{joint_distribution_with, run_check, Check, Sequential};
use beta_trees::{BicubicMap, Stat};
use beta_trees_cli::codec::{CoeffJson, DistJson, ExprJson, MapJson, MapStatsJson, ReportJson, StatsJson, TreeJson};
use beta_trees_cli::{run, Parallel, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

const EXAMPLE: &str = "(4 (0) (0) (1 (0)) (2 (1 (3 (2 (1 (0))) (0)))))";
const G_OF_EXAMPLE: &str = "(2 (1 (2 (1 (0 (0)))) (0 (0 (1 (0) (0) (0))))))";

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("beta-trees").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = cli(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

#[test]
fn stats_of_the_running_example() {
    let s: StatsJson = serde_json::from_str(&ok(&["stats", "--tree", EXAMPLE])).unwrap();
    assert_eq!((s.root, s.sub, s.rzero, s.rmod, s.open, s.exc), (4, 4, 1, 2, 2, 6));
    assert_eq!((s.nodes, s.edges), (12, 11));
}

#[test]
fn g_and_its_json_form() {
    assert_eq!(ok(&["g", "--tree", EXAMPLE]).trim(), G_OF_EXAMPLE);
    let j: TreeJson = serde_json::from_str(&ok(&["g", "--tree", EXAMPLE, "--format", "json"])).unwrap();
    assert_eq!(j.to_tree().unwrap().to_string(), G_OF_EXAMPLE);
    let json_input = serde_json::to_string(&TreeJson::from(&parse_tree(G_OF_EXAMPLE).unwrap())).unwrap();
    assert_eq!(ok(&["g", "--tree", &json_input]).trim(), EXAMPLE);
}

#[test]
fn expressions_round_trip_through_the_cli() {
    for sem in ["rho-mu", "sigma-nu"] {
        let literal = ok(&["expr", "--tree", EXAMPLE, "--semantics", sem]);
        assert_eq!(ok(&["eval", "--expr", literal.trim()]).trim(), EXAMPLE);
        let json = ok(&["expr", "--tree", EXAMPLE, "--semantics", sem, "--format", "json"]);
        let _: ExprJson = serde_json::from_str(&json).unwrap();
        assert_eq!(ok(&["eval", "--expr", &json, "--semantics", sem]).trim(), EXAMPLE);
    }
    let literal = ok(&["expr", "--tree", EXAMPLE, "--semantics", "rho-mu"]);
    assert_eq!(ok(&["eval", "--expr", literal.trim(), "--semantics", "rho-mu"]).trim(), EXAMPLE);
    let (code, _, _) = cli(&["eval", "--expr", literal.trim(), "--semantics", "sigma-nu"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, err) = cli(&["eval", "--expr", r#"{"kind":"black"}"#]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn enumerate_formats_agree() {
    assert_eq!(ok(&["enumerate", "--nodes", "4", "--format", "count"]).trim(), "12");
    assert_eq!(ok(&["--jobs", "1", "enumerate", "--nodes", "6", "--format", "count"]).trim(), "288");
    let text = ok(&["enumerate", "--nodes", "4", "--format", "text"]);
    let jsonl = ok(&["enumerate", "--nodes", "4"]);
    assert_eq!(text.lines().count(), 12);
    for (code, line) in text.lines().zip(jsonl.lines()) {
        let j: TreeJson = serde_json::from_str(line).unwrap();
        assert_eq!(j.to_tree().unwrap().to_string(), code);
    }
}

#[test]
fn dist_matches_the_library_and_is_transposable() {
    let d: DistJson = serde_json::from_str(&ok(&["dist", "--nodes", "7", "--pair", "root,rmod"])).unwrap();
    let table = joint_distribution_with(&Sequential, 7, (Stat::Root, Stat::Rmod));
    assert_eq!(d.total, table.total().to_string());
    assert_eq!(d.counts.len(), table.iter().count());
    let t: DistJson = serde_json::from_str(&ok(&["dist", "--nodes", "7", "--pair", "rmod,root"])).unwrap();
    let mut a: Vec<_> = d.counts.iter().map(|c| (c.a, c.b, c.count.clone())).collect();
    let mut b: Vec<_> = t.counts.iter().map(|c| (c.a, c.b, c.count.clone())).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    let (code, _, err) = cli(&["dist", "--nodes", "4", "--pair", "root,height"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown statistic"));
}

#[test]
fn fixed_points_are_listed_in_order() {
    let out = ok(&["fixed-points", "--nodes", "6", "--list"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("20"));
    let listed: Vec<&str> = lines.collect();
    assert_eq!(listed.len(), 20);
    for code in &listed {
        assert_eq!(ok(&["g", "--tree", code]).trim(), *code);
    }
    let parallel = ok(&["--jobs", "2", "fixed-points", "--nodes", "6", "--list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&parallel).unwrap();
    assert_eq!(v["count"], 20);
    let from_json: Vec<&str> = v["trees"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(from_json, listed);
}

#[test]
fn map_commands() {
    let json = ok(&["map", "from-tree", EXAMPLE]);
    let m: MapJson = serde_json::from_str(&json).unwrap();
    let stats: MapStatsJson = serde_json::from_str(&ok(&["map", "stats", &json])).unwrap();
    assert_eq!(stats.vertices, 22);
    assert_eq!((stats.one, stats.f1r3, stats.f3r2, stats.b, stats.s1r3), (6, 4, 2, 1, 4));
    assert_eq!(ok(&["map", "to-tree", &json]).trim(), EXAMPLE);
    let same: MapStatsJson = serde_json::from_str(&ok(&["map", "stats", "--tree", EXAMPLE])).unwrap();
    assert_eq!(same, stats);

    let rotated = ok(&["map", "phi", &json, "--times", "3"]);
    let back: MapJson = serde_json::from_str(&rotated).unwrap();
    assert_eq!(back, m);
    let once: MapStatsJson =
        serde_json::from_str(&ok(&["map", "stats", &ok(&["map", "phi", &json])])).unwrap();
    assert_eq!(once.f1r3, stats.f3r2);

    let dot = ok(&["map", "from-tree", EXAMPLE, "--format", "dot"]);
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches(" -- ").count(), 33);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.json");
    std::fs::write(&path, &json).unwrap();
    assert_eq!(ok(&["map", "to-tree", &format!("@{}", path.display())]).trim(), EXAMPLE);
}

#[test]
fn malformed_inputs_exit_with_usage_status() {
    let (code, _, err) = cli(&["stats", "--tree", "(2 (0))"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("invalid"), "{err}");
    let (code, _, err) = cli(&["stats", "--tree", "(1 (0)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("syntax error"), "{err}");
    let mut bad = MapJson::from(&BicubicMap::theta());
    bad.alpha.swap(0, 1);
    let (code, _, err) = cli(&["map", "stats", &serde_json::to_string(&bad).unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("invalid bicubic map"), "{err}");
    let (code, _, _) = cli(&["verify", "everything"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = cli(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn gf_dump_and_check() {
    let coeffs: Vec<CoeffJson> = serde_json::from_str(&ok(&["gf", "--order", "2", "--dump"])).unwrap();
    let got: Vec<(usize, usize, usize, &str)> = coeffs.iter().map(|c| (c.n, c.a, c.b, c.coeff.as_str())).collect();
    assert_eq!(got, vec![(0, 0, 0, "1"), (1, 1, 1, "1"), (2, 1, 1, "1"), (2, 1, 2, "1"), (2, 2, 1, "1")]);
    assert!(ok(&["gf", "--order", "6"]).starts_with("PASS gf"));
}

#[test]
fn verify_reports_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "verify", "prop15", "--max-nodes", "6", "--report", "json"];
    let first: Vec<ReportJson> = serde_json::from_str(&ok(&args)).unwrap();
    assert!(first[0].passed);
    assert!(first[0].notes.iter().any(|n| n.contains("A003645")));
    assert!(dir.path().join("prop15-n6.json").exists());
    let second: Vec<ReportJson> = serde_json::from_str(&ok(&args)).unwrap();
    assert_eq!(first, second);

    let text = ok(&["verify", "all", "--max-nodes", "5"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), Check::ALL.len());
}

#[test]
fn a_wrong_reference_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b003645.txt");
    std::fs::write(&path, "0 1\n1 4\n2 21\n").unwrap();
    let (code, out, _) = cli(&["verify", "prop15", "--max-nodes", "4", "--oeis", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.starts_with("FAIL prop15"), "{out}");
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let par = Parallel::new(Some(3)).unwrap();
    for check in [Check::Census, Check::Involution, Check::Equidist, Check::ConjFp, Check::Prop3, Check::Phi] {
        assert_eq!(run_check(&par, check, 7), run_check(&Sequential, check, 7), "{check}");
    }
    for n in 1..=7 {
        for pair in [(Stat::Root, Stat::Rmod), (Stat::Rzero, Stat::Sub)] {
            assert_eq!(joint_distribution_with(&par, n, pair), joint_distribution_with(&Sequential, n, pair));
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_beta-trees");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["enumerate", "--nodes", "3", "--format", "count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
    assert_eq!(status(&["stats", "--tree", "(0 (0))"]).status.code(), Some(2));
    assert_eq!(status(&["enumerate"]).status.code(), Some(2));
}
