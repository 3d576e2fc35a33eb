// End-to-end runs of the command line binary against small fixture files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const FIG_FLT: &str = "params 1\n\
    grid 0 0 1 2 3 4 5\n\
    s 1 @ 0\n\
    s 2 @ 0\n\
    s 3 @ 1\n\
    s 4 @ 1\n\
    s 1 2 @ 2\n\
    s 2 3 @ 2\n\
    s 3 4 @ 2\n\
    s 1 4 @ 2\n\
    s 1 3 @ 5\n\
    s 1 2 3 @ 5\n\
    s 1 3 4 @ 5\n";

const TWO_FLT: &str = "params 2\n\
    grid 0 0 1 2\n\
    grid 1 0 1 2\n\
    s u @ 0 0\n\
    s v @ 0 0\n\
    s u v @ 1 1\n";

const EX_POSET: &str = "elt a\nelt b\nelt c\nelt d\nle a b\nle b c\nle b d\n";

const EX_MODULE: &str = "dim a 4\ndim b 3\ndim c 1\ndim d 0\n\
    map a b 1 0 0 0 0 1 0 0 0 0 1 0\n\
    map b c 1 0 0\n\
    map b d\n";

const EX_FN: &str = "a 1\nb 2\nc 4\nd 0\n";

const DIAMOND_POSET: &str =
    "elt bot\nelt p\nelt q\nelt top\nle bot p\nle bot q\nle p top\nle q top\n";

const DIAMOND_MODULE: &str = "dim bot 1\ndim p 1\ndim q 0\ndim top 0\n\
    map bot p 1\nmap bot q\nmap p top\nmap q top\n";

const DIAMOND_IVL: &str = "poset diamond.poset\nmodule diamond.module\n\
    f0 bot 0\nf0 p 1\nf0 q 2\nf0 top 2\n\
    f1 bot 0\nf1 p 2\nf1 q 1\nf1 top 2\n";

const CHAIN_035: &str = "elt 0 0\nelt 3 3\nelt 5 5\nle 0 3\nle 3 5\n";
const CHAIN_0123: &str = "elt 0 0\nelt 1 1\nelt 2 2\nelt 3 3\nle 0 1\nle 1 2\nle 2 3\n";

fn galoisph() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_galoisph"));
    c.env_remove("GALOISPH_FIELD");
    c
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn diagram_reports_the_square_bar() {
    let dir = tempfile::tempdir().unwrap();
    let flt = put(dir.path(), "fig.flt", FIG_FLT);
    let out = dir.path().join("fig.dgm");
    let r = galoisph()
        .args(["diagram"])
        .arg(&flt)
        .args(["--dim", "1", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(r.status.success(), "{}", stderr(&r));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("flavor bar"));
    assert!(text.contains("poset fig.poset"));
    assert!(text.contains("2 5 1"));
    assert!(dir.path().join("fig.poset").exists());
}

#[test]
fn routes_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let flt = put(dir.path(), "fig.flt", FIG_FLT);
    for sub in ["a", "b"] {
        fs::create_dir(dir.path().join(sub)).unwrap();
    }
    let left = dir.path().join("a/fig.dgm");
    let right = dir.path().join("b/fig.dgm");
    for (route, out) in [("kernel", &left), ("presentation", &right)] {
        let r = galoisph()
            .args(["diagram"])
            .arg(&flt)
            .args(["--dim", "1", "--route", route, "--out"])
            .arg(out)
            .output()
            .unwrap();
        assert!(r.status.success(), "{}", stderr(&r));
    }
    assert_eq!(fs::read(&left).unwrap(), fs::read(&right).unwrap());
}

#[test]
fn diagram_streams_without_out() {
    let dir = tempfile::tempdir().unwrap();
    let flt = put(dir.path(), "fig.flt", FIG_FLT);
    let r = galoisph()
        .args(["diagram"])
        .arg(&flt)
        .args(["--dim", "1"])
        .output()
        .unwrap();
    assert!(r.status.success());
    let text = stdout(&r);
    assert!(text.contains("flavor bar"));
    assert!(text.contains("2 5 1"));
}

#[test]
fn empty_filtration_yields_empty_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let flt = put(dir.path(), "none.flt", "");
    let r = galoisph()
        .args(["diagram"])
        .arg(&flt)
        .args(["--dim", "0"])
        .output()
        .unwrap();
    assert!(r.status.success(), "{}", stderr(&r));
    let text = stdout(&r);
    assert!(text.contains("flavor bar"));
    assert_eq!(text.lines().count(), 2, "no interval rows expected: {text}");
}

#[test]
fn bottleneck_matches_known_values() {
    let dir = tempfile::tempdir().unwrap();
    put(dir.path(), "c.poset", CHAIN_035);
    let l = put(dir.path(), "l.dgm", "flavor bar\nposet c.poset\n0 5 1\n");
    let r = put(dir.path(), "r.dgm", "flavor bar\nposet c.poset\n3 5 1\n");
    let o = galoisph().arg("bottleneck").arg(&l).arg(&r).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "5/2");

    let o = galoisph().arg("bottleneck").arg(&l).arg(&l).output().unwrap();
    assert_eq!(stdout(&o).trim(), "0");

    put(dir.path(), "d.poset", CHAIN_0123);
    let x = put(dir.path(), "x.dgm", "flavor bar\nposet d.poset\n0 3 1\n1 2 1\n");
    let y = put(dir.path(), "y.dgm", "flavor bar\nposet d.poset\n1 3 2\n");
    let o = galoisph().arg("bottleneck").arg(&x).arg(&y).output().unwrap();
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn bottleneck_certificate_is_written() {
    let dir = tempfile::tempdir().unwrap();
    put(dir.path(), "c.poset", CHAIN_035);
    let l = put(dir.path(), "l.dgm", "flavor bar\nposet c.poset\n0 5 1\n");
    let r = put(dir.path(), "r.dgm", "flavor bar\nposet c.poset\n3 5 1\n");
    let cert = dir.path().join("b.cert");
    let o = galoisph()
        .arg("bottleneck")
        .arg(&l)
        .arg(&r)
        .arg("--certificate")
        .arg(&cert)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("cost 5/2"));
    assert!(text.contains("DIAG"));
}

#[test]
fn negative_mass_is_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    put(dir.path(), "c.poset", CHAIN_035);
    let l = put(dir.path(), "neg.dgm", "flavor bar\nposet c.poset\n0 5 -1\n");
    let r = put(dir.path(), "r.dgm", "flavor bar\nposet c.poset\n3 5 1\n");
    let o = galoisph().arg("bottleneck").arg(&l).arg(&r).output().unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("nonnegative representative"));
}

#[test]
fn stability_prints_a_passing_schedule() {
    let dir = tempfile::tempdir().unwrap();
    put(dir.path(), "diamond.poset", DIAMOND_POSET);
    put(dir.path(), "diamond.module", DIAMOND_MODULE);
    let ivl = put(dir.path(), "diamond.ivl", DIAMOND_IVL);
    let cert = dir.path().join("stab.cert");
    let o = galoisph()
        .arg("stability")
        .arg(&ivl)
        .arg("--certificate")
        .arg(&cert)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("epsilon 1"));
    assert!(text.contains("criticals 0 1/2 1"));
    assert!(text.contains("final <= epsilon: PASS"));
    assert!(fs::read_to_string(&cert).unwrap().starts_with("cost 1"));
}

#[test]
fn tampered_interleaving_is_exit_five() {
    let dir = tempfile::tempdir().unwrap();
    put(dir.path(), "diamond.poset", DIAMOND_POSET);
    put(dir.path(), "diamond.module", DIAMOND_MODULE);
    let bad = DIAMOND_IVL.replace("f1 bot 0", "f1 bot 1").replace("f1 p 2", "f1 p 0");
    let ivl = put(dir.path(), "diamond.ivl", &bad);
    let o = galoisph().arg("stability").arg(&ivl).output().unwrap();
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn fiber_restricts_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let flt = put(dir.path(), "two.flt", TWO_FLT);
    let o = galoisph()
        .arg("fiber")
        .arg(&flt)
        .args(["--line", "0,0;1,1", "--dim", "0", "--check"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("check: equivalent"));
    assert!(text.contains("0 1 1"));
    assert!(text.contains("0 inf 1"));
}

#[test]
fn fiber_rejects_bad_lines_with_exit_six() {
    let dir = tempfile::tempdir().unwrap();
    let flt = put(dir.path(), "two.flt", TWO_FLT);
    for line in ["0,0;0,-1", "0,0;0,0", "0,0;1", "0;1,1"] {
        let o = galoisph()
            .arg("fiber")
            .arg(&flt)
            .args(["--line", line])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(6), "line {line}: {}", stderr(&o));
    }
}

#[test]
fn mobius_inverts_and_restores() {
    let dir = tempfile::tempdir().unwrap();
    let poset = put(dir.path(), "ex.poset", EX_POSET);
    let func = put(dir.path(), "ex.fn", EX_FN);
    let derived = dir.path().join("derived.fn");
    let o = galoisph()
        .arg("mobius")
        .arg(&poset)
        .arg(&func)
        .args(["--direction", "invert", "--out"])
        .arg(&derived)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&derived).unwrap(), "a 1\nb 1\nc 2\nd -2\n");

    let o = galoisph()
        .arg("mobius")
        .arg(&poset)
        .arg(&derived)
        .args(["--direction", "zeta"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a 1\nb 2\nc 4\nd 0\n");
}

#[test]
fn rank_compare_agrees_on_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let poset = put(dir.path(), "ex.poset", EX_POSET);
    let module = put(dir.path(), "ex.module", EX_MODULE);
    let o = galoisph()
        .arg("rank")
        .arg(&poset)
        .arg(&module)
        .arg("--compare")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("a a 1"));
    assert!(text.contains("a b 2"));
    assert!(text.contains("a c 1"));
    assert!(text.contains("compare: equal"));
}

#[test]
fn selftest_is_deterministic_and_seeded() {
    let run = || {
        galoisph()
            .args(["selftest", "--seed", "3", "--iters", "5"])
            .output()
            .unwrap()
    };
    let (first, second) = (run(), run());
    assert!(first.status.success(), "{}", stderr(&first));
    assert_eq!(stdout(&first), stdout(&second));
    let text = stdout(&first);
    assert!(text.contains("selftest: PASS"));
    assert_eq!(text.matches("5/5 pass").count(), 5, "{text}");
}

#[test]
fn missing_and_malformed_inputs_are_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = galoisph()
        .arg("diagram")
        .arg(dir.path().join("absent.flt"))
        .args(["--dim", "0"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("absent.flt"));

    let poset = put(dir.path(), "bad.poset", "nonsense line\n");
    let func = put(dir.path(), "ex.fn", EX_FN);
    let o = galoisph().arg("mobius").arg(&poset).arg(&func).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn closure_violation_is_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let flt = put(dir.path(), "open.flt", "grid 0 0 1\ns 1 2 @ 0\n");
    let o = galoisph()
        .arg("diagram")
        .arg(&flt)
        .args(["--dim", "0"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("missing"));
}

#[test]
fn field_flag_and_env_are_honored() {
    let o = galoisph()
        .args(["--field", "5", "selftest", "--iters", "3"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));

    let o = galoisph()
        .env("GALOISPH_FIELD", "3")
        .args(["selftest", "--iters", "3"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));

    let o = galoisph()
        .env("GALOISPH_FIELD", "banana")
        .args(["selftest", "--iters", "3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let o = galoisph()
        .args(["--field", "6", "selftest", "--iters", "3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    // The flag wins: a broken environment value is never consulted.
    let o = galoisph()
        .env("GALOISPH_FIELD", "banana")
        .args(["--field", "2", "selftest", "--iters", "3"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
}
