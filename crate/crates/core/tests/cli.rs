//! The command-line tool against golden text reports and exit codes.
//!
//! Set `TEACHDIM_BLESS=1` to rewrite the files under `tests/golden/`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use teachdim::fixtures::colluding_learner;
use teachdim::hc;
use teachdim::preference::file as pref_file;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn teachdim(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_teachdim"))
        .args(args)
        .current_dir(root())
        .env_remove("TEACHDIM_BUDGET_NODES")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str, actual: &str) {
    let path = root().join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("TEACHDIM_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = teachdim(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

#[test]
fn compute_reports() {
    golden("compute_all_warmuth", &ok(&["compute", "all", "fixtures/warmuth.hc"]));
    golden("compute_vcd_powerset3", &ok(&["compute", "vcd", "fixtures/powerset3.hc"]));
    golden("compute_nctd_singleton", &ok(&["compute", "nctd", "fixtures/singleton.hc"]));
    let mut rows = String::new();
    for name in ["const", "global", "gvs", "local", "lvs"] {
        let pref = format!("fixtures/warmuth_{name}.pref");
        let out = ok(&["compute", "tdsigma", "--class", "fixtures/warmuth.hc", "--pref", &pref, "--h0", "h1"]);
        rows.push_str(&format!("{name}: {}", out.lines().last().unwrap()));
        rows.push('\n');
    }
    golden("tdsigma_warmuth_h1", &rows);
    golden(
        "tdsigma_lvs_all_starts",
        &ok(&["compute", "tdsigma", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_lvs.pref", "--h0", "all"]),
    );
}

#[test]
fn simulate_reports() {
    golden(
        "simulate_lvs_h9",
        &ok(&["simulate", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_lvs.pref", "--h0", "h1", "--target", "h9", "--sequence", "(x1,0)"]),
    );
    golden(
        "simulate_const_h1",
        &ok(&["simulate", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_const.pref", "--h0", "h1", "--target", "h1", "--sequence", "x1,x2,x4"]),
    );
    let empty = ok(&["simulate", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_lvs.pref", "--h0", "h1", "--target", "h1", "--sequence", ""]);
    assert!(empty.contains("reached h1 -> h1 in 0 steps"), "{empty}");

    // a sequence that stops short is a failed run
    let (code, out, _) = teachdim(&["simulate", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_const.pref", "--h0", "h1", "--target", "h1", "--sequence", "x1"]);
    assert_eq!(code, 1);
    assert!(out.contains("did not reach"));
}

#[test]
fn reproductions_pass() {
    for target in ["table2", "powerset7-gap", "subadditivity", "family-sizes", "lower-bounds"] {
        golden(&format!("reproduce_{target}"), &ok(&["reproduce", target]));
    }
    let out = ok(&["reproduce", "family-sizes", "--m", "5"]);
    assert!(out.contains("C(5) = 541"));
    let out = ok(&["reproduce", "lower-bounds", "--d", "7"]);
    assert!(out.contains("at least 1 examples"));
    assert!(ok(&["family-size", "--m", "4"]).contains("C(4) = 75"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (class, sigma, _) = colluding_learner();
    let hc_path = dir.path().join("trap.hc");
    let pref_path = dir.path().join("trap.pref");
    fs::write(&hc_path, hc::serialize(&class)).unwrap();
    fs::write(&pref_path, pref_file::to_json(&sigma, &class).unwrap()).unwrap();
    let (c, p) = (hc_path.to_str().unwrap(), pref_path.to_str().unwrap());

    let (code, out, _) = teachdim(&["verify", "collusion-free", "--class", c, "--pref", p, "--h0", "d"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("counterexample"));

    let out = ok(&["verify", "collusion-free", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_gvs.pref", "--h0", "h1"]);
    assert!(out.contains("holds"));
    let out = ok(&["verify", "family", "--family", "global", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_global.pref"]);
    assert!(out.contains("holds"));
    let (code, _, _) = teachdim(&["verify", "family", "--family", "global", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_lvs.pref"]);
    assert_eq!(code, 1);
}

#[test]
fn failures_carry_reason_codes() {
    let (code, out, _) = teachdim(&["--format", "json", "compute", "vcd", "missing.hc"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["reason"], "input");

    let (code, _, err) = teachdim(&["compute", "tdsigma", "--class", "fixtures/powerset3.hc", "--pref", "fixtures/warmuth_const.pref"]);
    assert_eq!(code, 2);
    assert!(err.contains("error[binding]"), "{err}");

    let (code, _, err) = teachdim(&["--budget-nodes", "1", "compute", "tdsigma", "--class", "fixtures/warmuth.hc", "--pref", "fixtures/warmuth_const.pref"]);
    assert_eq!(code, 3);
    assert!(err.contains("error[resource]"), "{err}");

    let (code, _, _) = teachdim(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["--format", "json", "compute", "all", "fixtures/warmuth.hc"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
    assert_eq!(v["provenance"]["inputs"][0]["role"], "class");
}

fn certificate(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(format!("{name}.cert.json"))).unwrap()).unwrap()
}

fn reloaded_td(dir: &Path, name: &str, h0: &str) -> String {
    let class = dir.join(format!("{name}.hc"));
    let pref = dir.join(format!("{name}.pref"));
    let out = ok(&["--format", "json", "compute", "tdsigma", "--class", class.to_str().unwrap(), "--pref", pref.to_str().unwrap(), "--h0", h0]);
    let v: Value = serde_json::from_str(&out).unwrap();
    v["td"][0]["value"].to_string()
}

#[test]
fn constructions_reload_to_their_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();

    ok(&["construct", "powerset7-local", "--out", d]);
    let cert = certificate(dir.path(), "powerset7-local");
    assert_eq!(cert["verified_td"]["value"], 3);
    assert_eq!(reloaded_td(dir.path(), "powerset7-local", "0"), "3");

    ok(&["construct", "double", "--out", d, "--name", "d1"]);
    ok(&["construct", "double", "--class", &format!("{d}/d1.hc"), "--in", &format!("{d}/d1.pref"), "--out", d, "--name", "d2"]);
    for name in ["d1", "d2"] {
        let cert = certificate(dir.path(), name);
        assert_eq!(reloaded_td(dir.path(), name, "0"), cert["verified_td"]["value"].to_string());
    }
    assert_eq!(certificate(dir.path(), "d2")["verified_td"]["value"], 4);

    let (c1, p1) = (format!("{d}/d1.hc"), format!("{d}/d1.pref"));
    ok(&["construct", "union", &c1, &p1, &c1, &p1, "--out", d, "--name", "u"]);
    let cert = certificate(dir.path(), "u");
    assert_eq!(reloaded_td(dir.path(), "u", "0"), cert["verified_td"]["value"].to_string());

    ok(&["construct", "order-global", "--class", "fixtures/warmuth.hc", "--ranks", "0,1,2,3,4,5,6,7,8,9", "--out", d, "--name", "wg"]);
    let cert = certificate(dir.path(), "wg");
    assert_eq!(reloaded_td(dir.path(), "wg", "0"), cert["verified_td"]["value"].to_string());

    ok(&["construct", "search-gap", "--out", d]);
    let cert = certificate(dir.path(), "search-gap");
    assert_eq!(cert["nctd"], 1);
    assert_eq!(cert["rtd"], 2);
    assert_eq!(reloaded_td(dir.path(), "search-gap", "all"), "1");
}
