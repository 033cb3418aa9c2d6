use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::{env, fs};

use projsys::constructions::{ConstructionArgs, ConstructionId};
use serde_json::Value;

fn projsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projsys"))
        .args(args)
        .env_remove("PROJSYS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = projsys(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Compares against tests/golden/<name>; UPDATE_GOLDEN=1 rewrites the file.
fn golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

#[test]
fn construct_then_params_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&str, &[&str], ConstructionArgs)] = &[
        ("elliptic_quadric", &["--q", "4"], ConstructionArgs { q: 4, ..Default::default() }),
        ("denniston", &["--q", "8", "--degree", "4"], ConstructionArgs { q: 8, degree: Some(4), ..Default::default() }),
        ("trivial_spike", &["--q", "3", "--k", "4", "--s", "2"], ConstructionArgs { q: 3, k: Some(4), s: Some(2), ..Default::default() }),
        ("cap8_pg32", &["--q", "2"], ConstructionArgs { q: 2, ..Default::default() }),
    ];
    for (name, flags, args) in cases {
        let file = dir.path().join(format!("{name}.gm"));
        let mut argv = vec!["construct", name];
        argv.extend_from_slice(flags);
        argv.extend(["--out", file.to_str().unwrap()]);
        ok(&argv);
        let from_file = json(&["params", "--in", file.to_str().unwrap()]);
        let id: ConstructionId = name.parse().unwrap();
        let in_memory = serde_json::to_value(id.build(args).unwrap().params()).unwrap();
        assert_eq!(from_file["result"], in_memory, "{name}");
    }
}

#[test]
fn elliptic_quadric_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("o.gm");
    ok(&["construct", "elliptic_quadric", "--q", "4", "--out", file.to_str().unwrap()]);
    let p = &json(&["params", "--in", file.to_str().unwrap()])["result"];
    let got: Vec<u64> = ["n", "k", "d", "s", "t"].iter().map(|f| p[f].as_u64().unwrap()).collect();
    assert_eq!(got, [17, 4, 12, 2, 1]);
}

#[test]
fn construct_to_stdout_is_a_gm_file() {
    let text = ok(&["construct", "hyperoval", "--q", "4"]);
    let ps = projsys::ProjectiveSystem::from_gm(&text).unwrap();
    assert_eq!(ps.params().n, 6);
}

#[test]
fn union_reads_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.gm");
    let u = dir.path().join("u.gm");
    ok(&["construct", "full_space", "--q", "2", "--k", "3", "--out", a.to_str().unwrap()]);
    let a = a.to_str().unwrap();
    ok(&["construct", "union", "--from", a, "--from", a, "--out", u.to_str().unwrap()]);
    let p = &json(&["params", "--in", u.to_str().unwrap()])["result"];
    assert_eq!((p["n"].as_u64(), p["d"].as_u64()), (Some(14), Some(8)));
}

#[test]
fn rank_deficient_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.gm");
    fs::write(&file, "q 2 poly 0\nk 3 n 3\n1 0 1\n0 1 1\n0 0 0\n").unwrap();
    let out = projsys(&["params", "--in", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("RankDeficient"), "{}", stderr(&out));

    let out = projsys(&["params", "--in", file.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["error"], "RankDeficient");
    assert_valid(&validator(), &v);
}

#[test]
fn usage_errors_exit_2() {
    for argv in [
        &["bogus"][..],
        &["bounds", "--k", "3"],
        &["integrality", "--n", "20", "--k", "4", "--q", "8", "--s", "2"],
        &["construct", "no_such_thing", "--q", "4"],
        &["bounds", "--table", "5"],
        &["verify", "--suite", "nope"],
    ] {
        assert_eq!(projsys(argv).status.code(), Some(2), "{argv:?}");
    }
}

#[test]
fn integrality_reports_unreduced_gamma() {
    let out = ok(&["integrality", "--n", "29", "--k", "4", "--q", "8", "--s", "2"]);
    assert!(out.lines().nth(1).unwrap().starts_with("0\tgamma\t3654/10\t1827/5\tfalse"));
    golden("integrality_29_4_8_2.tsv", &out);
    let v = json(&["integrality", "--n", "29", "--k", "4", "--q", "8", "--s", "2"]);
    assert_eq!(v["result"]["reports"][0]["gamma"]["value"], "3654/10");
    assert_eq!(v["result"]["reports"][0]["gamma"]["integer"], false);
    assert_eq!(v["result"]["all_integer"], false);
}

#[test]
fn near_full_length_mode_is_inferred() {
    let v = json(&["integrality", "--n", "28", "--k", "4", "--q", "8", "--s", "2"]);
    assert_eq!(v["result"]["mode"], "near_full_length");
    assert!(v["result"]["reports"][0]["alpha"].is_object());
}

#[test]
fn golden_tables() {
    golden("bounds_4_8_2.tsv", &ok(&["bounds", "--k", "4", "--q", "8", "--s", "2"]));
    golden("kappa_2_8.tsv", &ok(&["kappa", "--q", "8", "--s", "2"]));
    golden(
        "table3_small.tsv",
        &ok(&["bounds", "--table", "3", "--range", "k=3..5,q=2..5,s=0..2"]),
    );
    golden(
        "table4_small.tsv",
        &ok(&["bounds", "--table", "4", "--range", "k=3..4,q=3..4,s=1..2,t=0..2"]),
    );
    golden("kappa_table_64.tsv", &ok(&["kappa", "--table", "--max-q", "64"]));
}

#[test]
fn tsv_headers_are_frozen() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("o.gm");
    ok(&["construct", "conic", "--q", "5", "--out", file.to_str().unwrap()]);
    let f = file.to_str().unwrap();
    let cases: &[(&[&str], &str)] = &[
        (&["params", "--in", f], "n\tk\tq\td\td_perp\ts\tt\tk_perp\tprojective\tdegenerate\tgriesmer_met"),
        (&["bounds", "--k", "3", "--q", "4", "--s", "1"], "direction\tvalue\trule_id\tbinding\tcitation\tconditions\twitness"),
        (&["bounds", "--table", "3", "--range", "k=3,q=4,s=1"], "k\tq\ts\tlower\tlower_rule\tupper\tupper_rule"),
        (&["bounds", "--table", "4", "--range", "k=3,q=4,s=1,t=1"], "k\tq\ts\tt\tlower\tlower_rule\tupper\tupper_rule"),
        (&["integrality", "--n", "17", "--k", "4", "--q", "4", "--s", "2"], "j\tquantity\tvalue\treduced\tinteger"),
        (&["kappa", "--q", "4", "--s", "2"], "q\ts\tkappa\tlower\tlower_rule\tlower_witness\tupper\tupper_rule\tupper_reason\tprobes"),
        (&["search", "--k", "3", "--q", "2", "--s", "0"], "n_max\texhaustive\tbudget_exhausted\tnodes\twitness_file\tdual_defect\trules_used"),
    ];
    for (argv, header) in cases {
        let out = ok(argv);
        assert_eq!(out.lines().next(), Some(*header), "{argv:?}");
        let width = header.split('\t').count();
        for line in out.lines().skip(1) {
            assert_eq!(line.split('\t').count(), width, "{argv:?}: {line}");
        }
    }
}

#[test]
fn json_outputs_validate_against_schema() {
    let v = validator();
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("o.gm");
    let witness = dir.path().join("w.gm");
    let f = file.to_str().unwrap();
    let w = witness.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["construct", "elliptic_quadric", "--q", "3", "--out", f],
        vec!["construct", "hyperoval", "--q", "8"],
        vec!["params", "--in", f],
        vec!["bounds", "--k", "4", "--q", "8", "--s", "2"],
        vec!["bounds", "--k", "3", "--q", "5", "--s", "2", "--t", "1", "--d", "12"],
        vec!["bounds", "--table", "4", "--range", "k=3,q=4,s=1,t=0..1"],
        vec!["integrality", "--n", "29", "--k", "4", "--q", "8", "--s", "2"],
        vec!["integrality", "--n", "28", "--k", "4", "--q", "8", "--s", "2"],
        vec!["kappa", "--q", "8", "--s", "2"],
        vec!["kappa", "--q", "2", "--s", "0", "--search", "--budget", "100000"],
        vec!["search", "--k", "4", "--q", "2", "--s", "1", "--out", w],
    ];
    for argv in runs {
        let doc = json(&argv);
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["seed"], 0);
        assert_valid(&v, &doc);
    }
}

#[test]
fn search_writes_certified_witness() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.gm");
    let w = witness.to_str().unwrap();
    let cert = json(&["search", "--k", "5", "--q", "2", "--s", "1", "--out", w]);
    let r = &cert["result"];
    assert_eq!(r["n_max"], 7);
    assert_eq!(r["exhaustive"], true);
    assert_eq!(r["witness_file"], w);
    assert!(r["rules_used"].as_array().unwrap().iter().any(|u| u["rule_id"] == "fat_flat"));
    let p = &json(&["params", "--in", w])["result"];
    assert_eq!((p["n"].as_u64(), p["k"].as_u64(), p["s"].as_u64()), (Some(7), Some(5), Some(1)));
    assert_eq!(r["witness_params"], *p);
}

#[test]
fn thread_env_var_does_not_change_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("w{threads}.gm"));
        let out = Command::new(env!("CARGO_BIN_EXE_projsys"))
            .args(["search", "--k", "4", "--q", "2", "--s", "1", "--out", path.to_str().unwrap()])
            .env("PROJSYS_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        files.push(fs::read_to_string(path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let out = Command::new(env!("CARGO_BIN_EXE_projsys"))
        .args(["search", "--k", "3", "--q", "2", "--s", "0"])
        .env("PROJSYS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kappa_search_probes_past_the_engine() {
    // κ(0, 2) has no exclusion; search finds even-weight codes above the
    // constructive lower end
    let v = json(&["kappa", "--q", "2", "--s", "0", "--search", "--budget", "100000"]);
    let probes = v["result"]["entries"][0]["probes"].as_array().unwrap();
    assert!(!probes.is_empty());
    assert!(probes.iter().all(|p| p["verdict"] != "ruled_out"));
}

#[test]
fn verify_suite_reports_every_criterion() {
    let out = projsys(&["verify", "--suite", "paper-tables", "--seed", "0"]);
    // two criteria are false as stated, so the suite exits 1
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("seed 0"));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id\tstatus\telapsed_ms\tlimit_ms\ttitle\tdetail"));
    let mut failed = Vec::new();
    let mut total = 0;
    for line in lines {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 6, "{line}");
        total += 1;
        if cols[1] == "FAIL" {
            failed.push(cols[0].to_string());
        }
    }
    assert_eq!(total, 11);
    assert_eq!(failed, ["6a", "7b"]);
}
