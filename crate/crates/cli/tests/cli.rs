use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn presentation(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "presentations",
        name,
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn overlap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overlap"))
        .args(args)
        .output()
        .expect("spawn overlap")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn temp_presentation(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn check_reports_conditions() {
    let o = overlap(&["check", &presentation("p2.txt")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("C(4): yes; k=1\n"), "{out}");
    assert!(out.contains("decomposition: aeb=(a|e|b)\n"));
    assert!(out.contains("decomposition: afb=(a|f|b)\n"));
    assert!(out.contains("Lmax: 3\n"));
    assert!(out.contains("pieces: 2\n"));

    let o = overlap(&["check", &presentation("not_c4.txt")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("C(3): yes; C(4): no (dcd = d·c·d)\n"));

    let o = overlap(&["check", &presentation("free.txt")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("C(4): yes (vacuous)\n"));
}

#[test]
fn check_rejects_malformed_files() {
    let f = temp_presentation("generators: a b\nrelation: a = x\n");
    let o = overlap(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(
        code(&overlap(&["check", "/nonexistent/presentation.txt"])),
        2
    );
}

#[test]
fn eq_exit_codes() {
    let p2 = presentation("p2.txt");
    assert_eq!(code(&overlap(&["eq", &p2, "a e b", "a f b"])), 0);
    assert_eq!(code(&overlap(&["eq", &p2, "a e", "a f"])), 1);
    assert_eq!(
        code(&overlap(&["eq", &p2, "a e b", "a e b", "--prefix", "a"])),
        0
    );
    assert_eq!(code(&overlap(&["eq", &p2, "aeb", "afb", "--compact"])), 0);
    // "a e" is not a piece of P2.
    assert_eq!(
        code(&overlap(&["eq", &p2, "a e b", "a e b", "--prefix", "a e"])),
        2
    );
    assert_eq!(code(&overlap(&["eq", &p2, "a z", "a"])), 2);

    let o = overlap(&["eq", &presentation("not_c4.txt"), "a", "a"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not C(4)"));
}

#[test]
fn eq_trace_and_stats() {
    let o = overlap(&[
        "eq",
        &presentation("p2.txt"),
        "a e",
        "a f",
        "--trace",
        "--stats",
    ]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let traced: Vec<&str> = out
        .lines()
        .filter_map(|l| l.strip_prefix("trace: "))
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    assert_eq!(traced, ["C6", "A:no"]);
    assert!(out.contains("answer: NO\n"));
    assert!(out.contains("calls: 2\n"));
    // (k+2)·min(|u|,|v|)+1 with k = 1.
    assert!(out.contains("bound: 7\n"));
}

#[test]
fn oracle_verdicts() {
    let o = overlap(&["oracle", &presentation("p1.txt"), "abab", "cdcd"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("answer: YES\n"));
    assert!(stdout(&o).contains("depth: 2\n"));

    let o = overlap(&["oracle", &presentation("p2.txt"), "ae", "af"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("answer: NO\n"));
    assert!(stdout(&o).contains("closure: 1\n"));

    let o = overlap(&[
        "oracle",
        &presentation("growing.txt"),
        "ab",
        "ba",
        "--max-len",
        "6",
        "--max-states",
        "10",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("answer: UNKNOWN\n"));
    assert!(stdout(&o).contains("complete: no\n"));
}

#[test]
fn pieces_and_decompose() {
    let p4 = presentation("p4.txt");
    let o = overlap(&["pieces", &p4]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pieces: 3\n"));
    assert_eq!(code(&overlap(&["pieces", &p4, "a b"])), 0);
    assert_eq!(code(&overlap(&["pieces", &p4, "b e"])), 1);

    let o = overlap(&["decompose", &p4]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("decomposition: abe=(ab|e|) partner=fab\n"));
    assert!(stdout(&o).contains("k: 2\n"));
    assert_eq!(
        code(&overlap(&["decompose", &presentation("growing.txt")])),
        1
    );
}

#[test]
fn fuzz_agrees_with_oracle() {
    for (file, len) in [("p2.txt", "7"), ("p1.txt", "8")] {
        let o = overlap(&[
            "fuzz",
            &presentation(file),
            "--pairs",
            "1000",
            "--len",
            len,
            "--seed",
            "1",
        ]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(stdout(&o).ends_with("1000/1000 agree\n"));
    }
}

#[test]
fn random_fuzz_is_reproducible() {
    let a = overlap(&["fuzz", "--random", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    let out = stdout(&a);
    assert!(out.starts_with("presentation: ⟨"), "{out}");
    assert!(out.contains("draws: "));
    assert!(out.ends_with(" agree\n"));
    let b = overlap(&["fuzz", "--random", "--seed", "7"]);
    assert_eq!(out, stdout(&b));
}

#[test]
fn bench_reports_rows() {
    let o = overlap(&[
        "bench",
        &presentation("p2.txt"),
        "--min-len",
        "256",
        "--max-len",
        "1024",
        "--samples",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("row: ")).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].contains("len=0 ") && rows[0].contains("calls=1 "));
    for row in &rows[1..] {
        let field = |k: &str| -> usize {
            row.split(' ')
                .find_map(|f| f.strip_prefix(k))
                .unwrap()
                .parse()
                .unwrap()
        };
        let len = field("len=");
        assert!(field("calls=") <= 3 * len + 1);
        assert_eq!(field("bound="), 3 * len + 1);
    }
    assert!(out.contains("bound-violations: 0\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&overlap(&[])), 2);
    assert_eq!(code(&overlap(&["fuzz"])), 2);
    assert_eq!(
        code(&overlap(&[
            "bench",
            &presentation("p2.txt"),
            "--growth-factor",
            "1"
        ])),
        2
    );
}
