use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotoid-bracket"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_biquandle() {
    let out = run(&["verify", "biquandle", &fixture("biquandle-a.txt")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("result: valid\n"));
    let out = run(&["verify", "biquandle", &fixture("alexander-5-3-2.txt")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_broken_biquandle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "biquandle n=2\n1 1\n2 2\nover\n1 1\n1 1\n").unwrap();
    let out = run(&["verify", "biquandle", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"), "{}", stdout(&out));
    fs::write(&path, "biquandle n=2\n1 1\n2 x\n").unwrap();
    let out = run(&["verify", "biquandle", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("3:3:"), "{}", stderr(&out));
}

#[test]
fn verify_brackets() {
    let out = run(&[
        "verify",
        "bracket",
        &fixture("biquandle-a.txt"),
        &fixture("bracket-a.txt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("result: valid\ndelta=2 w=1\n"));
    let out = run(&[
        "verify",
        "bracket",
        &fixture("biquandle-b.txt"),
        &fixture("bracket-b.txt"),
    ]);
    assert!(stdout(&out).ends_with("delta=6 w=2\n"));
    let out = run(&[
        "verify",
        "bracket",
        &fixture("biquandle-a.txt"),
        &fixture("bracket-a-corrupt.txt"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(
        text.contains("equation-1: FAIL [(x,y,z)=(1,2,3)]"),
        "{text}"
    );
    assert!(text.ends_with("result: invalid\n"));
}

#[test]
fn color_matrices() {
    let out = run(&[
        "color",
        &fixture("biquandle-a.txt"),
        &fixture("unknotoid.txt"),
    ]);
    assert_eq!(
        stdout(&out),
        "knotoid unknotoid\n[1 0 0]\n[0 1 0]\n[0 0 1]\nline: [[1,0,0],[0,1,0],[0,0,1]]\ncolorings: 3\n"
    );
    let out = run(&[
        "color",
        &fixture("biquandle-a.txt"),
        &fixture("knotoid-4.4.txt"),
    ]);
    assert!(stdout(&out).contains("line: [[0,0,0],[0,0,0],[0,0,0]]\ncolorings: 0\n"));
    let out = run(&["color", &fixture("biquandle-a.txt"), &fixture("kink.txt")]);
    assert!(stdout(&out).contains("line: [[1,0,0],[0,1,0],[0,0,1]]"));
    let out = run(&[
        "color",
        &fixture("biquandle-a.txt"),
        &fixture("knotoid-4.3.txt"),
        "--list",
    ]);
    assert!(stdout(&out).ends_with(
        "colorings: 3\ntail 1 head 3: [1 2 3 1 2 1 2 2 3]\ntail 2 head 1: [2 3 1 2 3 2 3 3 1]\ntail 3 head 2: [3 1 2 3 1 3 1 1 2]\n"
    ));
}

#[test]
fn bracket_golden() {
    let out = run(&[
        "bracket",
        &fixture("biquandle-a.txt"),
        &fixture("bracket-a.txt"),
        &fixture("knotoid-3.1.txt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "knotoid 3.1\n\
         delta=2 w=1 mod=5\n\
         [0    0    u^4]\n\
         [u^3  0    0]\n\
         [0    u^4  0]\n\
         json: [[[],[],[[4,1]]],[[[3,1]],[],[]],[[],[[4,1]],[]]]\n\
         polynomial: u^3+2u^4\n"
    );
    let out = run(&[
        "bracket",
        &fixture("biquandle-b.txt"),
        &fixture("bracket-b.txt"),
        &fixture("knotoid-3.1.txt"),
    ]);
    assert!(stdout(&out).contains("[u  0    0]\n[0  u^4  0]\n[0  0    u^2]\n"));
    let out = run(&[
        "bracket",
        &fixture("biquandle-a.txt"),
        &fixture("bracket-a.txt"),
        &fixture("unknotoid.txt"),
    ]);
    assert!(stdout(&out).contains("[u^2  0    0]\n[0    u^2  0]\n[0    0    u^2]\n"));
}

#[test]
fn open_arc_switch() {
    let args = |cfg: &str| {
        let out = run(&[
            "bracket",
            &fixture("biquandle-a.txt"),
            &fixture("bracket-a.txt"),
            &fixture("unknotoid.txt"),
            "--config",
            cfg,
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        stdout(&out)
    };
    assert!(args("open-arc-delta=off").contains("[u  0  0]\n"));
    assert!(args("open-arc-delta=on").contains("[u^2  0    0]\n"));
    let out = run(&["bracket", "a", "b", "c", "--config", "colour=on"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_groups() {
    let out = run(&[
        "table",
        &fixture("biquandle-b.txt"),
        &fixture("bracket-b.txt"),
        &fixture("knotoids.txt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let names: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('[') && !l.is_empty() && !l.starts_with("delta"))
        .collect();
    assert_eq!(names, ["2.1, 4.4", "3.1, 4.3", "4.1", "5.14", "5.27"]);
    assert!(text.contains("[0  0  u+u^2+u^4]\n4.1\n"));
    assert!(text.contains("[0  0  3]\n5.14\n"));
    assert_eq!(
        stdout(&run(&[
            "table",
            &fixture("biquandle-b.txt"),
            &fixture("bracket-b.txt"),
            &fixture("knotoids.txt")
        ])),
        text
    );
}

#[test]
fn table_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "# nothing\n").unwrap();
    let out = run(&[
        "table",
        &fixture("biquandle-b.txt"),
        &fixture("bracket-b.txt"),
        empty.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out), "delta=6 w=2 mod=7\n");
    let twins = dir.path().join("twins.txt");
    fs::write(
        &twins,
        "knotoid p crossings 1\nU1+ O1+\nknotoid q crossings 1\nU1+ O1+\n",
    )
    .unwrap();
    let out = run(&[
        "table",
        &fixture("biquandle-b.txt"),
        &fixture("bracket-b.txt"),
        twins.to_str().unwrap(),
    ]);
    assert!(stdout(&out).ends_with("\np, q\n"), "{}", stdout(&out));
}

#[test]
fn distinguish_exit_codes() {
    let (bq, br) = (fixture("biquandle-b.txt"), fixture("bracket-b.txt"));
    let out = run(&[
        "distinguish",
        &bq,
        &br,
        &fixture("knotoid-3.1.txt"),
        &fixture("knotoid-5.27.txt"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.matches("polynomial: u+u^2+u^4").count(), 2);
    assert!(text.ends_with("different\n"));
    let out = run(&[
        "distinguish",
        &bq,
        &br,
        &fixture("knotoid-3.1.txt"),
        &fixture("knotoid-3.1.txt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("equal\n"));

    let dir = tempfile::tempdir().unwrap();
    let moved = dir.path().join("moved.txt");
    let out = run(&[
        "moves",
        &fixture("knotoid-3.1.txt"),
        "--r1",
        "2:-:uo",
        "--output",
        moved.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "distinguish",
        &bq,
        &br,
        &fixture("knotoid-3.1.txt"),
        moved.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn alexander_matches_fixture() {
    let out = run(&["alexander", "5", "3", "2"]);
    assert_eq!(
        stdout(&out),
        fs::read_to_string(fixture("alexander-5-3-2.txt")).unwrap()
    );
    let out = run(&["alexander", "6", "2", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn connect_and_moves() {
    let out = run(&[
        "connect",
        &fixture("unknotoid.txt"),
        &fixture("knotoid-3.1.txt"),
        "--name",
        "3.1",
    ]);
    assert_eq!(
        stdout(&out),
        fs::read_to_string(fixture("knotoid-3.1.txt")).unwrap()
    );
    let out = run(&["connect", &fixture("kink.txt"), &fixture("kink.txt")]);
    assert_eq!(
        stdout(&out),
        "knotoid kink#kink crossings 2\nU1+ O1+ U2+ O2+\n"
    );
    let out = run(&["moves", &fixture("kink.txt"), "--mirror"]);
    assert_eq!(stdout(&out), "knotoid kink crossings 1\nO1- U1-\n");
    let out = run(&[
        "moves",
        &fixture("unknotoid.txt"),
        "--r2",
        "0:0:parallel:over:+",
    ]);
    assert_eq!(
        stdout(&out),
        "knotoid unknotoid crossings 2\nO1+ O2- U1+ U2-\n"
    );
    let out = run(&["moves", &fixture("kink.txt"), "--r1", "9:+:uo"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["moves", &fixture("kink.txt"), "--r1", "0:*:uo"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let bq = dir.path().join("one.txt");
    fs::write(&bq, "biquandle n=1\n1\nover\n1\n").unwrap();
    let outdir = dir.path().join("found");
    let out = run(&[
        "search",
        bq.to_str().unwrap(),
        "--modulus",
        "5",
        "--output",
        outdir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_dir(&outdir).unwrap().count(), 16);
    let first = fs::read_to_string(outdir.join("bracket-001.txt")).unwrap();
    assert_eq!(first, "bracket n=1 mod=5\n1 1\n");
    let out = run(&[
        "search",
        &fixture("biquandle-a.txt"),
        "--modulus",
        "5",
        "--limit",
        "1",
    ]);
    assert!(stdout(&out).starts_with("found 1 brackets\n"));
}

#[test]
fn size_guard() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.txt");
    let seq: Vec<String> = (1..=25)
        .flat_map(|i| [format!("U{i}+"), format!("O{i}+")])
        .collect();
    fs::write(
        &big,
        format!("knotoid big crossings 25\n{}\n", seq.join(" ")),
    )
    .unwrap();
    let out = run(&["color", &fixture("biquandle-a.txt"), big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--force"));
    let out = run(&[
        "color",
        &fixture("biquandle-a.txt"),
        big.to_str().unwrap(),
        "--force",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("colorings: 3\n"));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "knotoid k crossings 1\nU1+ X1+\n").unwrap();
    let out = run(&["color", &fixture("biquandle-a.txt"), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("2:5:"), "{}", stderr(&out));
    let out = run(&["color"]);
    assert_eq!(out.status.code(), Some(2));
}
