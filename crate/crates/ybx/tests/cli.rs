use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ybx::format;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn ybx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybx")).args(args).output().unwrap()
}

fn ybx_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybx"))
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn vertices_listing() {
    for (n, lines) in [("1", 1), ("2", 6), ("3", 15)] {
        let o = ybx(&["vertices", "--n", n]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).lines().count(), lines);
    }
    assert_eq!(code(&ybx(&["vertices", "--n", "0"])), 2);
}

#[test]
fn check_exit_codes() {
    let (us, ut) = (data("uq3_s.toml"), data("uq3_t.toml"));
    let ok = ybx(&["check", "--s", s(&us), "--t", s(&ut)]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).lines().last().unwrap().starts_with("verdict SOLVABLE"));
    let broken = ybx(&["check", "--s", s(&us), "--t", s(&data("broken_t.toml"))]);
    assert_eq!(code(&broken), 1);
    assert!(stdout(&broken).contains("FAILS"));
    assert_eq!(
        code(&ybx(&[
            "check",
            "--s",
            s(&data("zero_b.toml")),
            "--t",
            s(&data("uq2_t.toml"))
        ])),
        2
    );
    assert_eq!(
        code(&ybx(&["check", "--s", s(&data("missing.toml")), "--t", s(&ut)])),
        2
    );
    assert_eq!(code(&ybx(&["check", "--s", s(&us), "--t", s(&data("uq2_t.toml"))])), 2);
    assert_eq!(code(&ybx(&["check", "--s", s(&us)])), 2);
}

#[test]
fn check_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let o = ybx(&[
        "check",
        "--s",
        s(&data("uq3_s.toml")),
        "--t",
        s(&data("uq3_t.toml")),
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 6 + 30 + 1);
    assert!(text.lines().next().unwrap().starts_with("DeltaEq(0,1) "));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn solve_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.toml");
    let (us, ut) = (data("uq3_s.toml"), data("uq3_t.toml"));
    assert_eq!(code(&ybx(&["solve", "--s", s(&us), "--t", s(&ut), "--out", s(&r)])), 0);
    let v = ybx(&["verify", "--r", s(&r), "--s", s(&us), "--t", s(&ut), "--mode", "both"]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).contains("729/729 OK"));

    let zero = dir.path().join("zero.toml");
    format::write_text(&zero, &format::r_to_string(&ybx_core::RWeightSet::zero(3))).unwrap();
    assert_eq!(
        code(&ybx(&["verify", "--r", s(&zero), "--s", s(&us), "--t", s(&ut)])),
        0
    );

    let text = std::fs::read_to_string(&r).unwrap();
    let perturbed = dir.path().join("perturbed.toml");
    let changed = text.replacen("[B]\n\"0,1\" = \"", "[B]\n\"0,1\" = \"1", 1);
    assert_ne!(changed, text);
    std::fs::write(&perturbed, changed).unwrap();
    let v = ybx(&[
        "verify",
        "--r",
        s(&perturbed),
        "--s",
        s(&us),
        "--t",
        s(&ut),
        "--mode",
        "both",
    ]);
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).lines().any(|l| l.starts_with("FAIL (")));

    let r2 = dir.path().join("r2.toml");
    assert_eq!(
        code(&ybx(&[
            "verify",
            "--r",
            s(&r),
            "--s",
            s(&data("uq2_s.toml")),
            "--t",
            s(&ut)
        ])),
        2
    );
    assert_eq!(
        code(&ybx(&[
            "solve",
            "--s",
            s(&us),
            "--t",
            s(&data("broken_t.toml")),
            "--out",
            s(&r2)
        ])),
        1
    );
    assert!(!r2.exists());
    let (s2, t2) = (data("uq2_s.toml"), data("uq2_t.toml"));
    assert_eq!(
        code(&ybx(&[
            "solve",
            "--s",
            s(&s2),
            "--t",
            s(&t2),
            "--out",
            s(&r2),
            "--aux",
            "0"
        ])),
        2
    );
    assert_eq!(
        code(&ybx(&[
            "solve",
            "--s",
            s(&us),
            "--t",
            s(&ut),
            "--out",
            s(&r2),
            "--aux",
            "2"
        ])),
        0
    );
}

#[test]
fn solve_equal_weights_gives_permutation() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.toml");
    let us = data("uq3_s.toml");
    assert_eq!(code(&ybx(&["solve", "--s", s(&us), "--t", s(&us), "--out", s(&r)])), 0);
    let r = format::read_r(&r).unwrap();
    for slot in ybx_core::RSlot::all(3) {
        let expected = if matches!(slot, ybx_core::RSlot::B(..)) { 0 } else { 1 };
        assert_eq!(*r.get(slot), ybx_core::Scalar::from(expected));
    }
}

#[test]
fn enumerate_counts() {
    for (n, count) in [("2", 14), ("3", 72), ("4", 204)] {
        let o = ybx(&["enumerate", "--n", n]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).lines().last().unwrap(), format!("count {count}"));
        assert_eq!(stdout(&o).lines().count(), count + 1);
    }
    let o = ybx(&["enumerate", "--n", "3", "--classes"]);
    assert_eq!(stdout(&o).lines().last().unwrap(), "classes 16");
    assert_eq!(code(&ybx(&["enumerate", "--n", "0"])), 2);
}

#[test]
fn twists() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.toml");
    let (us, ut) = (data("uq3_s.toml"), data("uq3_t.toml"));
    assert_eq!(
        code(&ybx(&[
            "twist",
            "--weights",
            s(&us),
            "--rho",
            s(&data("rho_identity.toml")),
            "--out",
            s(&out)
        ])),
        0
    );
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&us).unwrap());

    let (s2, t2) = (dir.path().join("s2.toml"), dir.path().join("t2.toml"));
    let rho = data("rho_valid.toml");
    assert_eq!(
        code(&ybx(&["twist", "--weights", s(&us), "--rho", s(&rho), "--out", s(&s2)])),
        0
    );
    assert_eq!(
        code(&ybx(&["twist", "--weights", s(&ut), "--rho", s(&rho), "--out", s(&t2)])),
        0
    );
    assert_eq!(code(&ybx(&["check", "--s", s(&s2), "--t", s(&t2)])), 0);

    let zeta = data("zeta_valid.toml");
    assert_eq!(
        code(&ybx(&[
            "twist",
            "--weights",
            s(&s2),
            "--zeta",
            s(&zeta),
            "--out",
            s(&s2)
        ])),
        0
    );
    assert_eq!(
        code(&ybx(&[
            "twist",
            "--weights",
            s(&t2),
            "--zeta",
            s(&zeta),
            "--out",
            s(&t2)
        ])),
        0
    );
    assert_eq!(code(&ybx(&["check", "--s", s(&s2), "--t", s(&t2)])), 0);

    for bad in [["--rho", "rho_bad.toml"], ["--zeta", "zeta_bad.toml"]] {
        let o = ybx(&["twist", "--weights", s(&us), bad[0], s(&data(bad[1])), "--out", s(&out)]);
        assert_eq!(code(&o), 2);
    }
    assert_eq!(code(&ybx(&["twist", "--weights", s(&us), "--out", s(&out)])), 2);
}

#[test]
fn partition_functions() {
    let o = ybx(&["partition", "--grid", s(&data("grid_1x1.toml"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "Z = 1/2");
    let o = ybx(&[
        "partition",
        "--grid",
        s(&data("grid_nonconserving.toml")),
        "--method",
        "both",
    ]);
    assert_eq!(stdout(&o).trim(), "Z = 0/1");
    let o = ybx(&[
        "partition",
        "--grid",
        s(&data("grid_3x3.toml")),
        "--method",
        "both",
        "--list-states",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("state 0 weight ")));
    assert_eq!(text.lines().filter(|l| l.starts_with("Z = ")).count(), 1);
    let guarded = ybx_env(
        &["partition", "--grid", s(&data("grid_3x3.toml")), "--method", "brute"],
        "YBX_MAX_STATES",
        "4",
    );
    assert_eq!(code(&guarded), 2);
    let bad_env = ybx_env(
        &["partition", "--grid", s(&data("grid_1x1.toml"))],
        "YBX_MAX_STATES",
        "lots",
    );
    assert_eq!(code(&bad_env), 2);
}

#[test]
fn generators() {
    let dir = tempfile::tempdir().unwrap();
    let (ps, pt) = (dir.path().join("s.toml"), dir.path().join("t.toml"));
    let uq = |q: &str| {
        ybx(&[
            "gen",
            "--family",
            "uq-gln",
            "--n",
            "3",
            "--q",
            q,
            "--zs",
            "3",
            "--zt",
            "5",
            "--out-s",
            s(&ps),
            "--out-t",
            s(&pt),
        ])
    };
    assert_eq!(code(&uq("2")), 0);
    assert_eq!(std::fs::read(&ps).unwrap(), std::fs::read(data("uq3_s.toml")).unwrap());
    assert_eq!(code(&uq("1")), 2);
    let scaled = |zt: &str| {
        ybx(&[
            "gen",
            "--family",
            "scaled",
            "--n",
            "3",
            "--a0",
            "2",
            "--b0",
            "3",
            "--c0",
            "5/2",
            "--zs-list",
            "1,2,3",
            "--zt-list",
            zt,
            "--out-s",
            s(&ps),
            "--out-t",
            s(&pt),
        ])
    };
    assert_eq!(code(&scaled("2,4,6")), 0);
    assert_eq!(code(&scaled("2,4,7")), 2);
    let sample = || {
        ybx(&[
            "gen",
            "--family",
            "sample",
            "--n",
            "3",
            "--seed",
            "7",
            "--out-s",
            s(&ps),
            "--out-t",
            s(&pt),
        ])
    };
    assert_eq!(code(&sample()), 0);
    let first = (std::fs::read(&ps).unwrap(), std::fs::read(&pt).unwrap());
    assert_eq!(code(&sample()), 0);
    assert_eq!(first, (std::fs::read(&ps).unwrap(), std::fs::read(&pt).unwrap()));
    assert_eq!(
        code(&ybx(&[
            "gen",
            "--family",
            "sample",
            "--n",
            "3",
            "--out-s",
            s(&ps),
            "--out-t",
            s(&pt)
        ])),
        2
    );
}

fn pipeline(dir: &Path, gen: &[&str]) {
    let (ps, pt, pr) = (dir.join("s.toml"), dir.join("t.toml"), dir.join("r.toml"));
    let mut args = vec!["gen"];
    args.extend_from_slice(gen);
    args.extend(["--out-s", s(&ps), "--out-t", s(&pt)]);
    assert_eq!(code(&ybx(&args)), 0, "{gen:?}");
    assert_eq!(code(&ybx(&["check", "--s", s(&ps), "--t", s(&pt)])), 0, "{gen:?}");
    assert_eq!(
        code(&ybx(&["solve", "--s", s(&ps), "--t", s(&pt), "--out", s(&pr)])),
        0,
        "{gen:?}"
    );
    let v = ybx(&["verify", "--r", s(&pr), "--s", s(&ps), "--t", s(&pt), "--mode", "both"]);
    assert_eq!(code(&v), 0, "{gen:?}");
}

#[test]
fn pipeline_closure() {
    let dir = tempfile::tempdir().unwrap();
    pipeline(
        dir.path(),
        &["--family", "uq-gln", "--n", "3", "--q", "2", "--zs", "3", "--zt", "5"],
    );
    pipeline(
        dir.path(),
        &[
            "--family",
            "scaled",
            "--n",
            "3",
            "--a0",
            "2",
            "--b0",
            "-3",
            "--c0",
            "7/2",
            "--zs-list",
            "1,2,5",
            "--zt-list",
            "-3,-6,-15",
        ],
    );
    for seed in 0..20 {
        let seed = seed.to_string();
        let n = if seed.len() % 2 == 0 { "2" } else { "3" };
        pipeline(dir.path(), &["--family", "sample", "--n", n, "--seed", &seed]);
    }
}

#[test]
fn invariants_listing() {
    let o = ybx(&[
        "invariants",
        "--s",
        s(&data("uq2_s.toml")),
        "--t",
        s(&data("uq2_t.toml")),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn sample_states_are_admissible() {
    for (name, colors) in [("sample_state_a.toml", 2), ("sample_state_b.toml", 4)] {
        let state = format::read_state(&data(name)).unwrap();
        assert_eq!((state.rows(), state.cols()), (3, 4));
        assert_eq!(state.first_inadmissible(), None, "{name}");
        let max = state.horizontal.iter().chain(&state.vertical).flatten().max().unwrap();
        assert_eq!(*max + 1, colors);
    }
}
