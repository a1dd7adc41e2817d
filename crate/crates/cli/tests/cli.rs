//! End-to-end tests of the `crossmod` binary: exit codes, output formats,
//! and flag behavior.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crossmod"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("failed to run crossmod")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp_file(name: &str, content: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn corpus_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file)
}

#[test]
fn invariant_values_match_published_numbers() {
    for (input, cm, expected) in [
        ("spun_trefoil", "A", "4/3"),
        ("spun_hopf", "A", "18/1"),
        ("sigma_prime", "A", "24/1"),
        ("trivial_sphere_K2", "conj_S3", "1/1"),
        ("trivial_torus_pair", "A", "36/1"),
    ] {
        let out = run(&["invariant", input, "--cm", cm, "--via", "both"]);
        assert!(out.status.success(), "{input}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(
            text.contains(&format!("invariant:   {expected}")),
            "{input}: expected {expected} in\n{text}"
        );
    }
    // Each single path gives the same value as the cross-checked run.
    for via in ["diagram", "presentation"] {
        let out = run(&["invariant", "spun_trefoil", "--cm", "A", "--via", via]);
        assert!(out.status.success());
        assert!(stdout(&out).contains("invariant:   4/3"), "via {via}");
    }
}

#[test]
fn json_report_has_exactly_the_run_report_fields() {
    let out = run(&["invariant", "spun_trefoil", "--cm", "A", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        vec!["coefficient", "count", "exponent", "input", "invariant", "jobs", "wall_time_s"]
    );
    assert_eq!(obj["count"], "12");
    assert_eq!(obj["exponent"], 2);
    assert_eq!(obj["invariant"], "4/3");
}

#[test]
fn jobs_flag_is_deterministic() {
    let mut counts = Vec::new();
    for jobs in ["1", "4", "16"] {
        let out = run(&["invariant", "spun_hopf", "--cm", "conj_S3", "--jobs", jobs, "--format", "json"]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        counts.push(v["count"].as_str().unwrap().to_string());
    }
    assert_eq!(counts[0], counts[1]);
    assert_eq!(counts[0], counts[2]);
}

#[test]
fn validate_exit_codes() {
    for file in ["spun_trefoil.kwb", "spun_hopf.cmp", "conj_S3.cm"] {
        let out = run(&["validate", corpus_path(file).to_str().unwrap()]);
        assert!(out.status.success(), "{file}: {}", stderr(&out));
    }

    // A mutated corpus file must fail with a position in the message.
    let good = std::fs::read_to_string(corpus_path("spun_trefoil.kwb")).unwrap();
    let bad = good.replace("under_out=C ", "under_out=Q ");
    let path = tmp_file("broken.kwb", &bad);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("undefined arc `Q`"), "{err}");
    assert!(err.contains("line"), "{err}");

    let path = tmp_file("empty.kwb", "");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn extract_round_trips_and_matches_counts() {
    let out_path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("trefoil_extracted.cmp");
    let out = run(&["extract", "spun_trefoil", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let p = crossmod::presentation::parse_presentation(&text).unwrap();
    assert_eq!(p.base_names.len(), 7);
    assert_eq!(p.two_relations.len(), 2);

    let out = run(&["invariant", out_path.to_str().unwrap(), "--cm", "A"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("invariant:   4/3"));

    // A diagram with no 2-relations extracts to a .cmp with none.
    let out = run(&["extract", "trivial_sphere_K3"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("rel2"));

    // A bandless diagram extracts to a .cmp with no principal generators.
    let path = tmp_file("bandless.kwb", "kwb v1\ncircles 1\narc X circle 0\n");
    let out = run(&["extract", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("pgen"));
}

#[test]
fn dual_path_disagreement_exits_two() {
    // Breaking a last-end case makes the strict coloring count drop below
    // the extracted-presentation count under a faithful-boundary
    // coefficient, which `--via both` must flag.
    let good = std::fs::read_to_string(corpus_path("trivial_sphere_K3.kwb")).unwrap();
    let bad = good.replace("end e last  case=2", "end e last  case=1");
    let path = tmp_file("inconsistent.kwb", &bad);
    let out = run(&["invariant", path.to_str().unwrap(), "--cm", "conj_S3", "--via", "both"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("dual-path disagreement"), "{}", stderr(&out));

    // The single-path runs still succeed on the same file.
    let out = run(&["invariant", path.to_str().unwrap(), "--cm", "conj_S3", "--via", "diagram"]);
    assert!(out.status.success());
}

#[test]
fn examples_listing_and_filter() {
    let out = run(&["examples"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().count() >= 8);

    let out = run(&["examples", "sphere"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("trivial_sphere_K1"));

    let out = run(&["examples", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v.as_array().unwrap();
    assert!(rows.len() >= 12);
    assert!(rows.iter().any(|r| r["name"] == "spun_trefoil"
        && r["files"].as_array().unwrap().len() == 2));
}

#[test]
fn input_errors_exit_one() {
    let out = run(&["invariant", "no_such", "--cm", "A"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown example"), "{}", stderr(&out));

    let out = run(&["invariant", "spun_trefoil", "--cm", "no_such_cm"]);
    assert_eq!(out.status.code(), Some(1));

    // The diagram path cannot run on a presentation input.
    let out = run(&["invariant", "spun_trefoil.cmp", "--cm", "A", "--via", "both"]);
    assert_eq!(out.status.code(), Some(1));

    // A coefficient is not a countable input.
    let out = run(&["invariant", "A", "--cm", "A"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corpus_env_override_is_honored() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("corpus_override");
    std::fs::create_dir_all(&dir).unwrap();
    // A doctored spun_trefoil that also kills f: the override must change
    // the corpus-name lookup result.
    let original = std::fs::read_to_string(corpus_path("spun_trefoil.cmp")).unwrap();
    let doctored = format!("{original}rel2 ( 1 ) f ^ +1\n");
    std::fs::write(dir.join("spun_trefoil.cmp"), doctored).unwrap();
    let out = bin()
        .args(["invariant", "spun_trefoil.cmp", "--cm", "A", "--format", "json"])
        .env("CROSSMOD_CORPUS", &dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // φ(X) = φ(Y) still has 2 choices and e stays free (3), but f = 1 only:
    // the count drops from 12 to 6.
    assert_eq!(v["count"], "6");
}
