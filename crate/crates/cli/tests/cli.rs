use std::path::PathBuf;
use std::process::{Command, Output};

use veerdil_cli::CompileLine;

const MU4: f64 = 6.854101966249685;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veerdil")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn temp_file(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("veerdil-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn lines(text: &str) -> Vec<CompileLine> {
    text.lines().map(|l| l.parse().unwrap()).collect()
}

#[test]
fn dilatation_of_m003() {
    let out = stdout(&["dilatation", "cPcbbbdxm_10"]);
    let last = out.lines().last().unwrap();
    assert!(last.ends_with("2.6180 -1"), "{last}");
    assert!(out.contains("lambda [2.618033988"));
    let short = stdout(&["dilatation", "cPcbbbdxm_10", "--prec", "3"]);
    assert!(short.contains("lambda [2.618, 2.618]"), "{short}");
}

#[test]
fn filter_below_cutoff() {
    let out = stdout(&["filter", &data("betti_one.txt"), "--below", "6.86", "--jobs", "3"]);
    assert_eq!(lines(&out).len(), 18);
    // Compile lines round to four places; the JSON rows carry the full value.
    let json = stdout(&["filter", &data("betti_one.txt"), "--below", "6.86", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let values: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(values.len(), 18);
    assert_eq!(values.iter().filter(|&&x| x < MU4 - 1e-6).count(), 13);
    assert_eq!(values.iter().filter(|&&x| (x - MU4).abs() < 1e-6).count(), 5);
    let fewer = lines(&stdout(&["filter", &data("betti_one.txt"), "--below", "5"]));
    assert_eq!(fewer.len(), 7);
}

#[test]
fn bounds_at_cutoff() {
    let out = stdout(&["bounds", "--value", "6.86"]);
    assert!(out.contains("F1 16.966") && out.contains("F2 16.975"), "{out}");
    assert!(out.contains("8log3 14.023"));
    assert!(out.contains("one-cusp 16.975"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["bounds", "--value", "6.86", "--json"])).unwrap();
    assert!((v["f1"].as_f64().unwrap() - 16.966).abs() < 1e-3);
    let below = stdout(&["bounds", "--value", "3"]);
    assert!(below.contains("one-cusp n/a"));
}

#[test]
fn batch_preserves_order() {
    let body = "# mixed order, census indices on some lines\n\
                fLMPcbcdeeehhhhvc_12211\n\
                900 cPcbbbiht_12\n\
                dLQacccjsnk_200\n\
                \n\
                eLPkaccddjnkaj_2002\n\
                fLLQcbeddeehhbghh_01110\n";
    let f = temp_file("order.txt", body);
    let serial = stdout(&["batch", &f, "--jobs", "1"]);
    for _ in 0..3 {
        assert_eq!(stdout(&["batch", &f, "--jobs", "4"]), serial);
    }
    let rows = lines(&serial);
    let got: Vec<(u64, &str)> = rows.iter().map(|r| (r.index, r.sig.as_str())).collect();
    assert_eq!(
        got,
        vec![
            (2, "fLMPcbcdeeehhhhvc_12211"),
            (900, "cPcbbbiht_12"),
            (4, "dLQacccjsnk_200"),
            (6, "eLPkaccddjnkaj_2002"),
            (7, "fLLQcbeddeehhbghh_01110"),
        ]
    );
    assert_eq!(rows[2].extra, -9);
    assert_eq!(serial.lines().last().unwrap(), "7 fLLQcbeddeehhbghh_01110 6.8541 2");
}

#[test]
fn batch_reports_failures_in_place() {
    let f = temp_file("bad.txt", "cPcbbbdxm_10\nnot_a_sig\ncPcbbbiht_12\n");
    let out = run(&["batch", &f]);
    assert!(!out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1], "2 not_a_sig error parse");
    assert!(rows[2].starts_with("3 cPcbbbiht_12 2.6180"));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error batch 1 of 3"));
}

#[test]
fn min_dilatation_b2() {
    let out = stdout(&["min-dilatation", "fLLQcbeddeehhbghh_01110"]);
    assert!(out.contains("method Midpoint"));
    assert!(out.lines().last().unwrap().ends_with("6.8541 2"));
    let out = stdout(&["min-dilatation", "pLLvLAMPPAQbefgikjjimlnnoooxxhvcqrfrhfjrmla_211120020212120"]);
    assert!(out.contains("method Solver"), "{out}");
    assert!(out.lines().last().unwrap().ends_with("2963.7181 9"));
}

#[test]
fn errors_are_one_machine_readable_line() {
    for (args, kind) in [
        (vec!["dilatation", "cPcbbbdxm"], "parse"),
        (vec!["info", "bPcbbbdxm_10"], "parse"),
        (vec!["min-dilatation", "cPcbbbdxm_10"], "wrong-betti"),
        (vec!["dilatation", "fLLQcbeddeehhbghh_01110"], "wrong-betti"),
        (vec!["bounds", "--value", "0.5"], "domain"),
        (vec!["batch", "/nonexistent/file"], "io"),
    ] {
        let out = run(&args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with(&format!("error {kind} ")), "{args:?}: {err}");
    }
    let out = run(&["--json", "min-dilatation", "cPcbbbdxm_10"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "wrong-betti");
}

#[test]
fn validate_reports_each_stage() {
    let out = stdout(&["validate", "eLPkaccddjnkaj_2002"]);
    assert_eq!(out, "tetrahedra 4\ngluing ok\ntaut ok\nveering ok\n");
    // Same gluings with a different angle choice.
    let out = run(&["validate", "cPcbbbdxm_00"]);
    assert!(!out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "tetrahedra 2\ngluing ok\ntaut not transverse taut: edge 0 has 3 π corners\nveering skipped\n");
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error not-transverse-taut "));
}

#[test]
fn structured_dumps() {
    let info = stdout(&["info", "cPcbbbdxm_10"]);
    for row in ["tetrahedra 2", "b1 1", "torsion 5", "branch-cycles 1", "toggles 2", "red-fans 0"] {
        assert!(info.lines().any(|l| l == row), "{row} missing from\n{info}");
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&["info", "--json", "fLLQcbeddeehhbghh_01110"])).unwrap();
    assert_eq!(v["b1"], "2");

    let d: serde_json::Value = serde_json::from_str(&stdout(&["dual", "--json", "cPcbbbdxm_10"])).unwrap();
    assert_eq!(d["graph"]["n_vertices"], 2);
    assert_eq!(d["sectors"].as_array().unwrap().len(), 2);

    let c = stdout(&["conditions", "cPcbbbdxm_10"]);
    assert!(c.ends_with("m003 true\n"));
    assert_eq!(c.lines().filter(|l| l.contains("toggle") && l.contains("bsbf 1")).count(), 2);
    let c = stdout(&["conditions", "cPcbbbiht_12"]);
    assert!(c.ends_with("m003 false\n"));
}
