use std::path::PathBuf;
use std::process::Command;

use mdcli::input::{parse_document, to_graph};
use mdcli::output::{to_json, CommandOutput, OutputDocument};
use mdcore::rated::fixtures;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mdinv").chain(args.iter().copied());
    let code = mdcli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn json(args: &[&str]) -> OutputDocument {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let r = run(&all);
    assert_eq!(r.code, 0, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn fixtures_match_library_graphs() {
    for (name, g) in fixtures::all() {
        let text = std::fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        assert_eq!(to_graph(&parse_document(&text).unwrap()).unwrap(), g, "{name}");
    }
}

#[test]
fn jumps() {
    assert_eq!(run(&["jumps", "--input", &fixture("tn1.json")]).out, "1\n2\n");
    assert_eq!(run(&["jumps", "--input", &fixture("conical_torus.json")]).out, "1\n");
    let text = std::fs::read_to_string(fixture("self_glued.json")).unwrap();
    assert_eq!(run_with_stdin(&["jumps", "--input", "-"], &text).out, "1\n3/2\n");
}

#[test]
fn input_errors_name_the_path() {
    let r = run(&["jumps", "--input", &fixture("bad_rate.json")]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("nodes[0].rate"), "{}", r.err);

    let cases = [
        (r#"{"schema_version": "2"}"#, "schema_version"),
        (r#"{"schema_version": "1", "extra": 1}"#, "extra"),
        (r#"{"schema_version": "1", "nodes": [{"id": "n", "rate": 2.5, "kind": "fibered"}]}"#, "nodes[0].rate"),
        (
            r#"{"schema_version": "1", "nodes": [{"id": "n", "rate": 2, "kind": "fibered", "fiber_rank": 1, "monodromy": ["y"]}]}"#,
            "nodes[0].monodromy[0]",
        ),
        (
            r#"{"schema_version": "1", "nodes": [{"id": "n", "rate": 2, "kind": "fibered", "fiber_rank": 1, "monodromy": ["x1"]}],
                "edges": [{"id": "e", "ends": [{"node": "n", "mu": "t", "lambda": "x1"}, {"node": "n", "mu": "q", "lambda": "x1"}]}]}"#,
            "edges[0].ends[1].mu",
        ),
        (
            r#"{"schema_version": "1", "nodes": [{"id": "n", "rate": 2, "kind": "fibered", "fiber_rank": 1, "monodromy": ["x1"]}],
                "edges": [{"id": "e", "ends": [{"node": "n", "mu": "t", "lambda": "t"}, {"node": "n", "mu": "t", "lambda": "x1"}]}]}"#,
            "edges[0].ends[0].lambda",
        ),
        (
            r#"{"schema_version": "1", "nodes": [{"id": "n", "rate": 2, "kind": "conical", "generators": [], "complex": {"ranks": [1], "boundaries": []}}]}"#,
            "nodes[0].rate",
        ),
        (r#"{"schema_version": "1"}"#, "nodes"),
    ];
    for (doc, path) in cases {
        let r = run_with_stdin(&["jumps"], doc);
        assert_eq!(r.code, 2, "{doc}");
        assert!(r.err.contains(path), "{doc}: {}", r.err);
    }
    let r = run(&["invariants", "--input", &fixture("tn1.json"), "--b", "1/2"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("--b"));
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn invariants_single_and_all() {
    let doc = json(&["invariants", "--input", &fixture("tn1.json"), "--b", "1", "--check"]);
    let CommandOutput::Invariants(d) = doc.result else { panic!() };
    let l = &d.levels[0];
    assert_eq!(l.homology[1].rank, 1);
    assert_eq!(l.pi1_abelian.rank, 1);
    assert_eq!(l.collapsed, vec!["n2"]);
    assert!(d.checks.unwrap().all_pass());

    let CommandOutput::Invariants(all) = json(&["invariants", "--input", &fixture("tn1.json"), "--b", "all"]).result
    else {
        panic!()
    };
    assert_eq!(all.intervals.len(), 2);
    assert!(all.infinity.is_some());
    assert_eq!(all.structure_maps.len(), 2);
    assert_eq!(all.structure_maps[0].homology[1].to_matrix().shape(), (1, 2));

    let level = |b: &str| {
        let CommandOutput::Invariants(mut d) = json(&["invariants", "--input", &fixture("rates_123.json"), "--b", b]).result
        else {
            panic!()
        };
        let mut l = d.levels.remove(0);
        l.b.clear();
        l
    };
    assert_eq!(level("inf"), level("3"));
}

#[test]
fn text_table_columns() {
    let r = run(&["invariants", "--input", &fixture("tn1.json"), "--check"]);
    assert_eq!(r.code, 0);
    let mut lines = r.out.lines();
    let header: Vec<&str> = lines.next().unwrap().split('|').map(str::trim).collect();
    assert_eq!(header, ["b", "pi1", "H0", "H1", "H2", "H3", "checks"]);
    let first = lines.next().unwrap();
    let (b, rest) = first.split_once(" | ").unwrap();
    assert_eq!(b.trim(), "[1, 2)");
    let (pi1, groups) = rest.split_once(" >").unwrap();
    assert_eq!(format!("{} >", pi1.trim()), "< c@n1 | >");
    let cells: Vec<&str> = groups.split(" | ").map(str::trim).skip(1).collect();
    assert_eq!(cells, ["Z", "Z", "0", "0", "hurewicz=pass d2=pass"]);
    assert!(r.out.contains("constancy=pass"));
    let quiet = run(&["invariants", "--input", &fixture("tn1.json"), "--quiet"]);
    assert_eq!((quiet.code, quiet.out.as_str()), (0, ""));
    let small = run(&["invariants", "--input", &fixture("tn1.json"), "--max-degree", "1", "--b", "2"]);
    let header: Vec<&str> = small.out.lines().next().unwrap().split('|').map(str::trim).collect();
    assert_eq!(header, ["b", "pi1", "H0", "H1", "checks"]);
}

#[test]
fn bcone_examples() {
    let link = fixture("wedge3_link.json");
    let cone = |b: &str, q: &str, k: &str| {
        let CommandOutput::Bcone(c) =
            json(&["bcone", "--input", &link, "--b", b, "--b-query", q, "--degree", k]).result
        else {
            panic!()
        };
        c
    };
    let low = cone("3/2", "1", "1");
    assert!(low.pi1.generators.is_empty());
    assert_eq!((low.homology.rank, low.pi1_abelian.rank), (0, 0));
    let high = cone("3/2", "3/2", "1");
    assert_eq!((high.homology.rank, high.pi1_abelian.rank), (3, 3));
    let link_group = cone("1", "5", "1");
    assert_eq!(link_group.pi1.generators, vec!["a", "b", "c"]);
    assert_eq!(run(&["bcone", "--input", &fixture("tn1.json"), "--b", "1", "--b-query", "1"]).code, 2);
}

#[test]
fn thicken_examples() {
    let CommandOutput::Thicken(t) = json(&["thicken", "--input", &fixture("interval.json")]).result else {
        panic!()
    };
    assert_eq!(t.pieces.len(), 3);
    let CommandOutput::Thicken(t) =
        json(&["thicken", "--input", &fixture("triangle.json"), "--sample", "25", "--point", "1/3,1/3"]).result
    else {
        panic!()
    };
    assert_eq!(t.pieces.len(), 7);
    assert_eq!(t.points.len(), 26);
    for p in &t.points {
        assert_eq!(p.value, vec!["5"]);
        assert_eq!(p.weight_sum, "1");
    }
    let r = run(&["thicken", "--input", &fixture("interval.json"), "--point", "3/2"]);
    assert_eq!(r.code, 3);
    let r = run(&["thicken", "--input", &fixture("interval.json"), "--point", "1/2,1/2"]);
    assert_eq!(r.code, 2);
    let r = run(&["thicken", "--input", &fixture("interval.json"), "--point", "0.5"]);
    assert_eq!(r.code, 2);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let commands: Vec<Vec<String>> = vec![
        vec!["jumps".into(), "--input".into(), fixture("rates_123.json")],
        vec!["invariants".into(), "--input".into(), fixture("rates_123.json"), "--check".into()],
        vec!["invariants".into(), "--input".into(), fixture("self_glued.json"), "--b".into(), "4/3".into()],
        vec!["bcone".into(), "--input".into(), fixture("wedge3_link.json"), "--b".into(), "3/2".into(), "--b-query".into(), "inf".into()],
        vec!["thicken".into(), "--input".into(), fixture("triangle.json"), "--sample".into(), "10".into()],
    ];
    for args in commands {
        let mut argv: Vec<&str> = args.iter().map(String::as_str).collect();
        argv.extend(["--format", "json"]);
        let first = run(&argv);
        assert_eq!(first.code, 0, "{}", first.err);
        assert_eq!(run(&argv).out, first.out);
        let parsed: OutputDocument = serde_json::from_str(&first.out).unwrap();
        assert_eq!(to_json(&parsed), first.out);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mdinv");
    let ok = Command::new(bin).args(["jumps", "--input", &fixture("tn1.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1\n2\n");
    let bad = Command::new(bin).args(["jumps", "--input", &fixture("bad_rate.json")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let outside = Command::new(bin)
        .args(["thicken", "--input", &fixture("interval.json"), "--point=-1"])
        .output()
        .unwrap();
    assert_eq!(outside.status.code(), Some(3));
}
