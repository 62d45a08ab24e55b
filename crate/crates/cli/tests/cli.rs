use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn quad74(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quad74"))
        .args(args)
        .env_remove("QUAD74_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = quad74(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn report(text: &str) -> serde_json::Value {
    let last = text.lines().last().expect("report line");
    serde_json::from_str::<serde_json::Value>(last).unwrap()["report"].clone()
}

#[test]
fn oracle_z3_counts_nine() {
    assert_eq!(
        stdout(&["oracle", "--group", "cyclic:3", "--pairs", "full"]),
        "count 9\n"
    );
}

#[test]
fn oracle_list_matches_count() {
    let text = stdout(&[
        "--format", "json", "oracle", "--group", "cyclic:3", "--list",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[9], r#"{"count":9}"#);
    assert!(lines[0].starts_with(r#"{"alpha":"#));
}

#[test]
fn find_configs_z3_verified() {
    let text = stdout(&[
        "--format",
        "json",
        "--verify",
        "find-configs",
        "--group",
        "cyclic:3",
    ]);
    assert_eq!(text.lines().count(), 10);
    let r = report(&text);
    assert_eq!(r["pipeline_count"], 9);
    assert_eq!(r["oracle_total_count"], 9);
    assert_eq!(r["verified"], true);
}

#[test]
fn fano_span_four_is_one() {
    let text = stdout(&["span-check", "--file", &data("fano.tri"), "--s", "4"]);
    assert_eq!(text.lines().next(), Some("max 1"));
}

#[test]
fn fano_is_already_linear() {
    let text = stdout(&["linearize", "--file", &data("fano.tri")]);
    assert_eq!(text, std::fs::read_to_string(data("fano.tri")).unwrap());
}

#[test]
fn empty_pairs_file_gives_nothing() {
    let file = format!("file:{}", data("empty.csv"));
    let text = stdout(&[
        "--format",
        "json",
        "find-configs",
        "--group",
        "dihedral:4",
        "--pairs",
        &file,
    ]);
    assert_eq!(text.lines().count(), 1);
    assert_eq!(report(&text)["pipeline_count"], 0);
}

#[test]
fn sym3_above_half_matches_oracle() {
    let text = stdout(&[
        "--format",
        "json",
        "--verify",
        "find-configs",
        "--group",
        "sym:3",
        "--scope",
        "above:1/2",
    ]);
    let r = report(&text);
    assert_eq!(r["verified"], true);
    assert_eq!(r["pipeline_count"], r["oracle_window_count"]);
    assert!(r["pipeline_count"].as_u64().unwrap() > 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let cases: [&[&str]; 4] = [
        &[
            "--format",
            "json",
            "--seed",
            "11",
            "find-configs",
            "--group",
            "sym:4",
            "--pairs",
            "random:0.6",
            "--scope",
            "above:0",
            "--verify",
        ],
        &[
            "--format",
            "json",
            "--seed",
            "3",
            "oracle",
            "--group",
            "random-latin:10:4",
            "--pairs",
            "random:0.8",
            "--list",
        ],
        &[
            "--format",
            "json",
            "--seed",
            "5",
            "random-construction",
            "--n",
            "30",
            "--delta",
            "0.6",
        ],
        &[
            "--format",
            "json",
            "build-hypergraph",
            "--group",
            "dihedral:5",
            "--pairs",
            "random:0.7",
        ],
    ];
    for args in cases {
        let one = stdout(&[&["--threads", "1"], args].concat());
        let eight = stdout(&[&["--threads", "8"], args].concat());
        assert_eq!(one, eight, "{args:?}");
    }
}

#[test]
fn seed_comes_from_env() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_quad74"));
        cmd.env_remove("QUAD74_SEED");
        if let Some(v) = env {
            cmd.env("QUAD74_SEED", v);
        }
        let out = cmd
            .args(extra)
            .args(["gen-pairs", "--n", "9", "--pairs", "random:0.5"])
            .output()
            .unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(run(Some("42"), &[]), run(None, &["--seed", "42"]));
    assert_ne!(run(Some("42"), &[]), run(None, &["--seed", "43"]));
}

#[test]
fn table_file_group() {
    let spec = format!("table:{}", data("z3.tbl"));
    assert_eq!(stdout(&["oracle", "--group", &spec]), "count 9\n");
}

#[test]
fn user_errors_exit_two() {
    let bad: [&[&str]; 6] = [
        &["oracle", "--group", "cyclic:0"],
        &["oracle", "--group", "nonsense:3"],
        &["oracle", "--group", "cyclic:3", "--pairs", "random:2"],
        &[
            "oracle",
            "--group",
            &format!("latin:{}", data("not_latin.tbl")),
        ],
        &["find-configs", "--group", "sym:3", "--subgroup", "1,3"],
        &["no-such-command"],
    ];
    for args in bad {
        let out = quad74(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn quasigroup_rejected_by_pipeline_but_not_oracle() {
    let out = quad74(&["find-configs", "--group", "random-latin:6:1"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&["oracle", "--group", "random-latin:6:1"]);
    assert!(text.starts_with("count "));
}
