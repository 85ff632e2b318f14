use std::process::{Command, Output};

const E: &str = "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]";

fn treeregex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treeregex"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn build_reports_counts_and_emits_json() {
    let o = treeregex(&["build", "--expr", E, "--construction", "kpos"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("7 states, 23 transitions"), "{}", stderr(&o));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["states"].as_array().unwrap().len(), 7);
    assert_eq!(json["transitions"].as_array().unwrap().len(), 23);
}

#[test]
fn build_emits_dot() {
    let o = treeregex(&["build", "--expr", E, "--construction", "follow", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("doublecircle"));
}

#[test]
fn build_of_zero_is_empty_with_a_warning() {
    let o = treeregex(&["build", "--expr", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(json["states"].as_array().unwrap().is_empty());
}

#[test]
fn build_writes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("treeregex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.json");
    let o = treeregex(&["build", "--expr", "f(a)", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"states\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn run_accepts_and_rejects() {
    let cases = [
        ("kpos", "h(f(b))", "accept"),
        ("kpos", "a", "reject"),
        ("equation", "g(b,a)", "accept"),
    ];
    for (construction, tree, verdict) in cases {
        let o = treeregex(&["run", "--expr", E, "--construction", construction, "--tree", tree]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).lines().next(), Some(verdict), "{construction} {tree}");
    }
}

#[test]
fn stats_lists_every_construction() {
    let o = treeregex(&["stats", "--expr", E]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for (name, states, rules) in [
        ("kpos", 7, 23),
        ("follow", 5, 17),
        ("equation", 5, 15),
        ("kcc", 7, 23),
    ] {
        let row = text.lines().find(|l| l.starts_with(name)).unwrap();
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[1..], [states.to_string(), rules.to_string()], "{row}");
    }
    let row = text.lines().find(|l| l.starts_with("vmerge")).unwrap();
    assert_eq!(row.split_whitespace().nth(1), Some("4"));
}

#[test]
fn compare_passes_on_the_running_example() {
    let o = treeregex(&["compare", "--expr", E, "--depth", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn compare_over_generated_expressions() {
    let o = treeregex(&["compare", "--count", "20", "--seed", "3", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn gen_is_reproducible() {
    let a = treeregex(&["gen", "--seed", "9", "--count", "5"]);
    let b = treeregex(&["gen", "--seed", "9", "--count", "5"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn user_errors_exit_two() {
    let cases: [&[&str]; 4] = [
        &["build", "--expr", "g(a"],
        &["build", "--expr", "k(a)"],
        &["run", "--expr", E, "--tree", "g(a)"],
        &["build", "--expr", "f(a)", "--alphabet", "a:0 f:x"],
    ];
    for args in cases {
        let o = treeregex(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error"), "{}", stderr(&o));
    }
}
