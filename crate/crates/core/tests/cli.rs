use std::path::PathBuf;
use std::process::{Command, Output};

use nilprim::arith;
use nilprim::construct;
use nilprim::matgrp::Sylow2Kind;
use nilprim::singer;
use serde_json::Value;

/// Runs the binary on a whitespace-separated command line.
fn nilprim(cmd: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilprim"))
        .args(cmd.split_whitespace())
        .output()
        .unwrap()
}

fn code(cmd: &str) -> Option<i32> {
    nilprim(cmd).status.code()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, contents: &[u8]) -> String {
    let dir = std::env::temp_dir().join(format!("nilprim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn kind_arg(k: Sylow2Kind) -> &'static str {
    match k {
        Sylow2Kind::Quaternion8 => "q8",
        Sylow2Kind::GeneralisedQuaternion => "gq",
        Sylow2Kind::Dihedral => "dihedral",
        Sylow2Kind::Semidihedral => "sd",
        _ => unreachable!(),
    }
}

fn construct_then_verify(cmd: &str) {
    let out = nilprim(cmd);
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(0), "{cmd}: {err}");
    let name = cmd.replace(' ', "_") + ".json";
    let file = scratch(&name, &out.stdout);
    let v = nilprim(&format!("verify --stable {file}"));
    let report = String::from_utf8_lossy(&v.stdout);
    assert_eq!(v.status.code(), Some(0), "{cmd}: {report}");
    assert_eq!(json(&v)["passed"], true);
}

#[test]
fn round_trip_degree_two() {
    for q in [3u64, 7, 11] {
        for (kind, s) in construct::admissible_sylows_gl2(q) {
            for c in arith::divisors(q - 1).into_iter().filter(|c| c % 2 == 1) {
                let k = kind_arg(kind);
                construct_then_verify(&format!(
                    "construct --n 2 --q {q} --kind {k} --s {s} --c {c}"
                ));
            }
        }
        for d in arith::divisors(q * q - 1) {
            if singer::is_primitive_cyclic(d, 2, q).unwrap() {
                construct_then_verify(&format!("construct --n 2 --q {q} --kind cyclic --c {d}"));
            }
        }
    }
}

#[test]
fn round_trip_degree_six() {
    construct_then_verify("construct --n 6 --q 3 --kind q8 --c 13");
    construct_then_verify("construct --n 6 --q 3 --kind q8 --c 13 --blowup");
    let mut built = 0;
    for (kind, s) in construct::admissible_sylows_gl2(27) {
        for c in [1u64, 13] {
            let cmd = format!(
                "construct --n 6 --q 3 --kind {} --s {s} --c {c}",
                kind_arg(kind)
            );
            let out = nilprim(&cmd);
            match out.status.code() {
                Some(0) => {
                    construct_then_verify(&cmd);
                    built += 1;
                }
                // Blow-ups that become reducible are refused with a reason.
                Some(2) => assert!(!out.stderr.is_empty()),
                other => panic!("{cmd} exited {other:?}"),
            }
        }
    }
    assert!(built >= 2);
    for d in arith::divisors(728) {
        if singer::is_primitive_cyclic(d, 6, 3).unwrap() {
            construct_then_verify(&format!("construct --n 6 --q 3 --kind cyclic --c {d}"));
        }
    }
}

#[test]
fn monomial_dihedral_fails_verify() {
    let d8 = br#"{"schema":1,"n":2,"q":3,"generators":["0,1;1,0","1,0;0,2"]}"#;
    let file = scratch("d8.json", d8);
    let out = nilprim(&format!("verify --stable {file}"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"][0]["witness"]["verdict"], "imprimitive");
}

#[test]
fn tampered_generator_is_a_parse_error() {
    let bad = br#"{"schema":1,"n":2,"q":3,"generators":["1,2;2,1"]}"#;
    let file = scratch("singular.json", bad);
    assert_eq!(code(&format!("verify {file}")), Some(2));
    let garbage = scratch("garbage.json", b"not json");
    assert_eq!(code(&format!("verify {garbage}")), Some(2));
}

#[test]
fn inadmissible_construct_exits_2_with_reason() {
    let out = nilprim("construct --n 2 --q 3 --kind d --s 3");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("D8 is monomial"));
    assert_eq!(code("construct --n 4 --q 3 --kind q8"), Some(2));
    assert_eq!(code("enumerate --n 2 --q 4"), Some(2));
    assert_eq!(code("enumerate --n 2 --q 6"), Some(2));
}

#[test]
fn caps_exit_3() {
    assert_eq!(code("--table-cap 4 enumerate --n 6 --q 3"), Some(3));
    let sd16 = nilprim("construct --n 2 --q 3 --kind sd");
    let file = scratch("sd16.json", &sd16.stdout);
    assert_eq!(
        code(&format!("--sweep-cap 2 oracle irreducible {file}")),
        Some(3)
    );
}

#[test]
fn enumerate_counts() {
    let census = |cmd: &str| {
        let out = nilprim(cmd);
        assert_eq!(out.status.code(), Some(0));
        json(&out)
    };
    let c = census("enumerate --n 2 --q 3 --nonabelian-only");
    assert_eq!(c["classes"].as_array().unwrap().len(), 2);
    let c = census("enumerate --n 3 --q 3 --nonabelian-only");
    assert_eq!(c["classes"].as_array().unwrap().len(), 0);
    let c = census("enumerate --n 6 --q 3 --certify --jobs 2");
    for r in c["classes"].as_array().unwrap() {
        let oracle = &r["certificate"]["oracle"];
        assert_eq!(oracle["irreducible"], true);
        assert_eq!(oracle["block_systems"], 0);
    }
    assert_eq!(c["counts"]["nonabelian"], 2);
}

#[test]
fn output_is_byte_stable() {
    let runs = |cmd: &str| {
        let a = nilprim(cmd);
        let b = nilprim(cmd);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        a.stdout
    };
    runs("enumerate --n 2 --q 7");
    runs("enumerate --n 6 --q 3 --table");
    let g = runs("construct --n 6 --q 3 --kind sd --c 13");
    let file = scratch("stable.json", &g);
    runs(&format!("verify --stable {file}"));
    runs(&format!("oracle blocks --stable {file}"));
}

#[test]
fn oracle_subcommands() {
    let q8 = nilprim("construct --n 6 --q 3 --kind q8 --c 13");
    let blown = nilprim("construct --n 6 --q 3 --kind q8 --c 13 --blowup");
    let a = scratch("o-q8.json", &q8.stdout);
    let b = scratch("o-blown.json", &blown.stdout);
    let conj = nilprim(&format!("oracle conjugate {a} --other {b} --stable"));
    assert_eq!(conj.status.code(), Some(0));
    assert!(json(&conj)["witness"].is_string());
    assert_eq!(
        json(&nilprim(&format!("oracle centralizer {a}")))["witness"],
        3
    );
    assert_eq!(code(&format!("oracle absolute {a}")), Some(1));
    assert_eq!(
        code(&format!("oracle irreducible --mode full {a}")),
        Some(0)
    );
    assert_eq!(code(&format!("oracle conjugate {a}")), Some(2));
}
