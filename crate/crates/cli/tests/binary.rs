use std::fs;
use std::process::Command;

fn homind(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homind")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn counts_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c4.g");
    let g = dir.path().join("k2.g");
    fs::write(&f, "4 0-1 1-2 2-3 0-3\n").unwrap();
    fs::write(&g, "2 0-1").unwrap();
    let (code, out, _) = homind(&["hom", "count", f.to_str().unwrap(), g.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "2\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let class = dir.path().join("c.class");
    let k = dir.path().join("k.g");
    // thirteen component types exceed the vector bound
    let mut text = String::from("union-closed\n3 0-1 0-2 1-2\n4 0-1 1-2 2-3 0-3\n");
    for leaves in 1..=11 {
        text.push_str(&(leaves + 1).to_string());
        for v in 1..=leaves {
            text.push_str(&format!(" 0-{v}"));
        }
        text.push('\n');
    }
    fs::write(&class, text).unwrap();
    fs::write(&k, "2 0-1\n").unwrap();
    let class = class.to_str().unwrap();
    let (code, _, err) = homind(&["closure", "hd-check", class, "--bound", "1"]);
    assert_eq!(code, 3, "{err}");
    let (code, out, _) = homind(&["closure", "member", class, k.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("RESULT IN\n"));
    let (code, _, _) = homind(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, out, _) = homind(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn selftest_reports_each_criterion() {
    let (code, out, _) = homind(&["selftest", "4a", "6"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS [")).count(), 2);
    assert!(out.ends_with("RESULT PASS (0 failing of 2)\n"));
    let (code, _, _) = homind(&["selftest", "99"]);
    assert_eq!(code, 2);
}
