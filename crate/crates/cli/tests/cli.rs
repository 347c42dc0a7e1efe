use std::path::PathBuf;
use std::process::Command;

use mackeylab::json::{parse_mackey, parse_zmackey};
use mackeylab::zhat::WittElement;
use mackeylab_cli::execute_args;

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn bin(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_mackeylab")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

const GOLDEN: &[(&[&str], &str)] = &[
    (&["marks", "--group", "cyclic:4"], "marks_cyclic4.txt"),
    (&["--json", "marks", "--group", "cyclic:4"], "marks_cyclic4.json"),
    (&["zhat", "idem", "-p", "2", "-l", "1", "-N", "5"], "idem_p2_l1_n5.txt"),
    (&["dbh", "-N", "6", "--deg", "1"], "dbh_n6_deg1.txt"),
    (&["--json", "dbh", "-N", "6", "--deg", "1"], "dbh_n6_deg1.json"),
    (&["zhat", "mul", "e2*e3", "-N", "10"], "mul_e2_e3.txt"),
    (&["tate", "--n", "2", "--module", "trivZ"], "tate_n2_trivz.txt"),
];

#[test]
fn golden_files_are_byte_stable() {
    for (args, file) in GOLDEN {
        let want = golden(file);
        for _ in 0..2 {
            let (out, err, code) = bin(args);
            assert_eq!((code, err.as_str()), (0, ""), "{args:?}");
            assert_eq!(out, want, "{args:?}");
        }
        assert_eq!(execute_args(args.iter().copied()).0, want);
    }
}

#[test]
fn golden_contents() {
    assert!(golden("marks_cyclic4.txt").lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["G/C2", "2", "2", "0"]));
    assert_eq!(golden("idem_p2_l1_n5.txt"), "1 - 1/3*e3 - 1/5*e5\n");
    assert_eq!(golden("mul_e2_e3.txt"), "e6\n");
    assert_eq!(golden("tate_n2_trivz.txt"), "even: Z/2\nodd: 0\n");
    let dbh = golden("dbh_n6_deg1.txt");
    for n in 2..=6 {
        assert!(dbh.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == [n.to_string(), format!("Z/{n}")]));
    }
}

#[test]
fn exit_codes() {
    let (out, err, code) = bin(&["zhat", "idem", "-p", "2", "-l", "2", "-N", "5"]);
    assert_eq!((out.as_str(), code), ("", 1));
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "domain");

    let (_, err, code) = bin(&["marks", "--group", "cyclic:x"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "malformed-input");

    assert_eq!(bin(&["zhat", "mul", "e2*(", "-N", "4"]).2, 2);
    assert_eq!(bin(&["marks"]).2, 2);
    assert_eq!(bin(&["tate", "--n", "3", "--module", "perm:1,0"]).2, 1);
    assert_eq!(bin(&["--version"]).2, 0);
}

#[test]
fn json_outputs_round_trip() {
    for input in ["burnside:S3", "fixed:C2b:D8"] {
        let (text, _, code) = execute_args(["--json", "mackey", "check", input]);
        assert_eq!(code, 0);
        assert!(text.contains("\"passed\": true"));
        let (text, _, _) = execute_args(["--json", "mackey", "psi", input, "--subgroup", "G"]);
        let m = parse_mackey(&text).unwrap();
        assert!(m.check_axioms().unwrap().passed());
    }
    let (text, _, _) = execute_args(["--json", "zhat", "show", "burnside", "-N", "8"]);
    let z = parse_zmackey(&text).unwrap();
    assert!(z.check().passed());
    assert_eq!(z.bound(), 8);

    let (text, _, _) = execute_args(["--json", "zhat", "idem", "-p", "3", "-l", "2", "-N", "12"]);
    let e: WittElement = serde_json::from_str(&text).unwrap();
    let (plain, _, _) = execute_args(["zhat", "idem", "-p", "3", "-l", "2", "-N", "12"]);
    assert_eq!(format!("{e}\n"), plain);
}

#[test]
fn other_commands() {
    let run = |a: &[&str]| {
        let (out, err, code) = execute_args(a.iter().copied());
        assert_eq!(code, 0, "{a:?}: {err}");
        out
    };
    assert_eq!(run(&["bmul", "--group", "S3", "G/C2", "G/C3"]), "G/e\nghost (6, 0, 0, 0)\n");
    assert!(run(&["homs", "--group", "cyclic:2", "--source", "G/e", "--target", "G/e"]).starts_with("2 basis spans"));
    assert_eq!(run(&["mackey", "eval", "burnside:S3", "--gset", "2*G/e+G/G"]), "Z^6\n");
    assert!(run(&["mackey", "phi", "burnside:cyclic:4", "--subgroup", "C2"]).contains("G/G    Z^2"));
    assert!(run(&["mackey", "infl", "burnside:cyclic:2", "--group", "cyclic:4", "--subgroup", "C2"]).contains("G/e    0"));
    assert!(run(&["zhat", "filt", "burnside", "--n", "6"]).contains("quotient Z^4"));
    assert!(run(&["zhat", "ptypical", "burnside", "-p", "2", "--level", "2", "--ring", "Z_(2)"]).contains("isomorphic true"));
    assert!(run(&["zhat", "roundtrip", "burnside", "-N", "6"]).contains("surjective true"));
    assert_eq!(run(&["glue", "--n", "4", "-l", "2", "--module", "trivZ"]), "tate (p = 2): even Z/2, odd 0\nmultiplicity 1\n");
    assert!(run(&["zhat", "glue", "--n", "6", "-l", "1", "--module", "trivZ"]).starts_with("zero"));
    assert_eq!(run(&["zhat", "check", "burnside"]), "pass\n");
    assert!(run(&["mackey", "fuzz", "burnside:cyclic:4", "--seed", "3", "--count", "10"]).contains("mutations rejected"));
}
