use std::io::Write;
use std::process::{Command, Output, Stdio};

use pv_cli::report::{GroupsOut, ShapeOut, TowerOut};
use pv_core::abgroup::FGAbelianGroup;

const ROTATION: &str = r#"{"schema":1,"datum":{"n":1,
    "even":{"free_rank":1,"relations":[]},
    "odd":{"free_rank":1,"relations":[]},
    "endos":[{"even":[[1]],"odd":[[1]]}]}}"#;

// Z/4 in even degree, generator negated: the extension is not determined.
const NEGATION: &str = r#"{"schema":1,"datum":{"n":1,
    "even":{"free_rank":1,"relations":[[4]]},
    "odd":{"free_rank":0,"relations":[]},
    "endos":[{"even":[[-1]],"odd":[]}]}}"#;

fn pv(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pv"))
        .args(args)
        .env("PV_COLOR", "never")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn rank1_from_stdin() {
    let o = pv(&["rank1"], Some(ROTATION));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"K0\":\"Z^2\",\"K1\":\"Z^2\",\"ambiguous\":false}\n");
}

#[test]
fn rank1_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(ROTATION.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();
    let o = pv(&["rank1", path], None);
    assert_eq!(stdout(&o), stdout(&pv(&["rank1"], Some(ROTATION))));
}

#[test]
fn fixed_outputs() {
    let o = pv(&["homog", "--series", "A", "--n", "2", "--k", "1"], None);
    assert_eq!(stdout(&o), "{\"even\":\"Z\",\"odd\":\"Z\"}\n");
    let o = pv(&["oracle", "--n", "3"], None);
    assert_eq!(stdout(&o), "{\"match\":true}\n");
    let o = pv(&["koszul"], Some(ROTATION));
    let spots: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(spots["spots"].as_array().unwrap().len(), 2);
}

#[test]
fn deterministic() {
    for args in [
        &["koszul", "--n", "4", "--seed", "7"][..],
        &["homog", "--series", "B", "--n", "3", "--k", "2", "--tower"][..],
        &["shape", "--n", "3", "--series", "A"][..],
    ] {
        let a = pv(args, None);
        let b = pv(args, None);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
    }
    let a = pv(&["tower", "--format", "text"], Some(NEGATION));
    assert_eq!(a.stdout, pv(&["tower", "--format", "text"], Some(NEGATION)).stdout);
}

#[test]
fn json_round_trips() {
    let o = pv(&["homog", "--series", "A", "--n", "3", "--k", "1", "--tower"], None);
    let t: TowerOut = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.levels.len(), 2);
    for l in &t.levels {
        l.even.parse::<FGAbelianGroup>().unwrap();
        l.odd.parse::<FGAbelianGroup>().unwrap();
    }
    assert_eq!(serde_json::to_string(&t).unwrap() + "\n", stdout(&o));

    let o = pv(&["homog", "--series", "C", "--n", "4", "--k", "3"], None);
    let g: GroupsOut = serde_json::from_str(&stdout(&o)).unwrap();
    let even: FGAbelianGroup = g.even.parse().unwrap();
    assert_eq!(even.to_string(), g.even);

    let o = pv(&["shape", "--n", "2", "--w", "2"], None);
    let s: ShapeOut = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((s.n, s.w), (2, 2));
    assert!(!s.objects.is_empty());
}

#[test]
fn strict_exits_on_ambiguity() {
    let o = pv(&["rank1"], Some(NEGATION));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"ambiguous\":true"));
    let o = pv(&["rank1", "--strict"], Some(NEGATION));
    assert_eq!(o.status.code(), Some(3));
    let o = pv(&["rank1", "--strict"], Some(ROTATION));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let o = pv(&["rank1"], Some(&ROTATION.replace("\"n\":1", "\"n\":1,\"extra\":0")));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: datum.extra: unknown field"));
    let o = pv(&["rank1", "/nonexistent/datum.json"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/datum.json"));
    assert_eq!(
        pv(&["koszul", "--n", "2", "--trials", "0"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        pv(&["homog", "--series", "D", "--n", "2", "--k", "1"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn color_setting() {
    let o = pv(
        &["homog", "--series", "A", "--n", "2", "--k", "1", "--format", "text"],
        None,
    );
    assert!(!stdout(&o).contains('\x1b'));
    assert!(stdout(&o).starts_with("degree  group\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_pv"))
        .args(["oracle", "--n", "2", "--format", "text"])
        .env("PV_COLOR", "sometimes")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
