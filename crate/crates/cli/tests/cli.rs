use std::path::{Path, PathBuf};
use std::process::Command;

fn repo(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
}

fn qk(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qk")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The lines between the two fences.
fn report(stdout: &str) -> Vec<&str> {
    let lines: Vec<&str> = stdout.lines().collect();
    let fences: Vec<usize> = (0..lines.len()).filter(|&i| lines[i] == "---report---").collect();
    assert_eq!(fences.len(), 2, "{stdout}");
    lines[fences[0] + 1..fences[1]].to_vec()
}

#[test]
fn every_fixture_validates() {
    let mut seen = 0;
    for entry in std::fs::read_dir(repo("fixtures")).unwrap() {
        let p = entry.unwrap().path();
        let run = qk(&["validate", path(&p)]);
        assert_eq!(run.code, 0, "{}: {}", p.display(), run.stdout);
        seen += 1;
    }
    assert!(seen >= 7);
}

#[test]
fn broken_composition_is_a_property_failure() {
    let run = qk(&["validate", path(&data("broken_composition.qk"))]);
    assert_eq!(run.code, 1);
    let lines = report(&run.stdout);
    let failures: Vec<_> = lines.iter().filter(|l| l.contains("CompositionFailure")).collect();
    assert_eq!(failures.len(), 1, "{lines:?}");
    assert!(failures[0].contains("(a, b, c)"));
}

#[test]
fn input_errors_exit_with_two() {
    let dangling = qk(&["validate", path(&data("dangling.qk"))]);
    assert_eq!(dangling.code, 2);
    assert!(report(&dangling.stdout).iter().any(|l| l.contains("unresolved reference `nowhere`")));
    let syntax = qk(&["validate", path(&data("syntax.qk"))]);
    assert_eq!(syntax.code, 2);
    assert!(report(&syntax.stdout).iter().any(|l| l.contains("line 3, column 1")));
    let missing = qk(&["validate", "no/such/file.qk"]);
    assert_eq!(missing.code, 2);
    let unknown = qk(&["check", path(&repo("fixtures/diamond.qk")), "nothing"]);
    assert_eq!(unknown.code, 2);
    let wrong = qk(&["check", path(&repo("fixtures/diamond.qk")), "diamond", "topological"]);
    assert_eq!(wrong.code, 2);
}

#[test]
fn diamond_is_total() {
    let run = qk(&["check", path(&repo("fixtures/diamond.qk")), "diamond_cat", "total"]);
    assert_eq!(run.code, 0);
    assert!(report(&run.stdout).contains(&"total: true (6 presheaves, all suprema found)"));
}

#[test]
fn comma_category_is_not_topological() {
    let run = qk(&["check", path(&repo("fixtures/comma_bmono.qk")), "comma_bmono", "topological"]);
    assert_eq!(run.code, 1);
    assert!(report(&run.stdout).contains(&"topological: false; witness: empty sink"));
}

#[test]
fn antichain_fails_all_eight_conditions() {
    let run = qk(&["check", path(&repo("fixtures/antichain2.qk")), "antichain_cat", "all"]);
    assert_eq!(run.code, 1);
    let lines = report(&run.stdout);
    let names = [
        "yoneda has a left adjoint",
        "totally cocomplete",
        "all suprema",
        "tensored and conically cocomplete",
        "dual yoneda has a right adjoint",
        "totally complete",
        "all infima",
        "cotensored and conically complete",
    ];
    for n in names {
        let line = lines.iter().find(|l| l.starts_with(&format!("{n}: "))).unwrap();
        assert!(line.starts_with(&format!("{n}: false")), "{line}");
    }
    assert!(lines.contains(&"consistent: yes"));
}

#[test]
fn cap_exceeded_exits_with_three() {
    let run = qk(&["check", path(&repo("fixtures/benzene.qk")), "benzene", "all", "--max-presheaves", "3"]);
    assert_eq!(run.code, 3);
    assert!(report(&run.stdout).iter().any(|l| l.starts_with("error: too large")));
}

#[test]
fn macneille_of_the_antichain() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.qk");
    let dot = dir.path().join("m.dot");
    let run = qk(&[
        "complete",
        path(&repo("fixtures/antichain2.qk")),
        "antichain",
        "macneille",
        "-o",
        path(&out),
        "--dot",
        path(&dot),
    ]);
    assert_eq!(run.code, 0);
    let lines = report(&run.stdout);
    assert!(lines.contains(&"elements: 4"));
    assert!(lines.contains(&"matches cut oracle: yes"));
    assert_eq!(qk(&["validate", path(&out)]).code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn reconstruction_of_the_diamond() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.qk");
    let run = qk(&["complete", path(&repo("fixtures/diamond.qk")), "diamond", "reconstruct", "-o", path(&out)]);
    assert_eq!(run.code, 0);
    assert!(report(&run.stdout).contains(&"L ≅ IΦ: yes (J={a,b}, M={a,b})"));
    let check = qk(&["check", path(&out), "diamond_reconstructed", "total"]);
    assert_eq!(check.code, 0);
}

#[test]
fn isbell_of_the_identity_on_a_lattice_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("i.qk");
    let run = qk(&["complete", path(&data("diamond_identity.qk")), "id", "isbell", "-o", path(&out)]);
    assert_eq!(run.code, 0);
    let lines = report(&run.stdout);
    assert!(lines.contains(&"fixed points: 4"));
    assert!(lines.contains(&"E ≅ IΦ: yes (certificate: trivial)"));
    assert_eq!(qk(&["validate", path(&out)]).code, 0);
}

#[test]
fn final_lifts_in_the_comma_category() {
    let file = repo("fixtures/comma_bmono.qk");
    let empty = qk(&["final-lift", path(&file), "empty"]);
    assert_eq!(empty.code, 1);
    assert!(report(&empty.stdout).contains(&"final lift: none"));
    let via = qk(&["final-lift", path(&file), "via_e"]);
    assert_eq!(via.code, 0);
    assert!(report(&via.stdout).contains(&"final lift: e"));
}

#[test]
fn extension_into_the_diamond() {
    let file = data("extension.qk");
    let run = qk(&["extend", path(&file), "f", "g"]);
    assert_eq!(run.code, 0);
    assert!(report(&run.stdout).contains(&"extension: a -> a, b -> b, c -> top"));
    let blocked = qk(&["extend", path(&file), "into_pair", "g"]);
    assert_eq!(blocked.code, 1);
    assert!(report(&blocked.stdout).iter().any(|l| l.starts_with("reason: not total")));
}

#[test]
fn dot_export() {
    let diamond = qk(&["export-dot", path(&repo("fixtures/diamond.qk")), "diamond"]);
    assert_eq!(diamond.code, 0);
    assert!(diamond.stdout.starts_with("digraph"));
    assert_eq!(diamond.stdout.matches("->").count(), 4);
    let nodes = diamond.stdout.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->") && !l.contains('=')).count();
    assert_eq!(nodes, 4);

    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.qk");
    std::fs::write(&one, "[lattice one]\nelements = x\n").unwrap();
    let single = qk(&["export-dot", path(&one), "one"]);
    assert_eq!(single.code, 0);
    assert_eq!(single.stdout.matches("->").count(), 0);
    assert!(single.stdout.contains("\"x\";"));

    let metric = qk(&["export-dot", path(&repo("fixtures/fin_metric.qk")), "line3"]);
    assert_eq!(metric.code, 0);
    assert!(!metric.stdout.contains("digraph"));
    assert!(metric.stdout.contains("x | 0 | 1 | 2"));
}
