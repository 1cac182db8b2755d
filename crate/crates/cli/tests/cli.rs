//! End-to-end checks of the `dts` binary: exit codes, formats, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn dts(args: &[&str], stdin: Option<&str>, dir: &Path) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dts"));
    cmd.args(args).current_dir(dir);
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn dts");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    child.wait_with_output().expect("wait")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

const D4_1: &str = "DTS v=4\n0 3 2\n1 2 3\n2 1 0\n3 0 1\n";

#[test]
fn verify_accepts_valid_and_rejects_broken_designs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dts(&["verify"], Some(D4_1), tmp.path());
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("VALID DTS(4)"));

    let broken = "DTS v=4\n0 1 2\n3 1 2\n";
    let out = dts(&["verify"], Some(broken), tmp.path());
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("(1,2)"), "{}", stdout(&out));

    let garbage = "DTS v=4\n0 1\n";
    let out = dts(&["verify"], Some(garbage), tmp.path());
    assert_eq!(code(&out), 3);
}

#[test]
fn seq_find_and_count() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dts(&["seq", "count", "--l", "4"], Some(D4_1), tmp.path());
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "8");

    let show = dts(&["catalog", "show", "D7.4.926"], None, tmp.path());
    let design = stdout(&show);
    let out = dts(&["seq", "find", "--l", "7"], Some(&design), tmp.path());
    assert_eq!(code(&out), 1, "no 7-good sequencing exists");
    let out = dts(&["seq", "find", "--l", "6"], Some(&design), tmp.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("SEQ "));

    let out = dts(&["seq", "maxl"], Some(&design), tmp.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("maxl 6 certified"), "{}", stdout(&out));
}

#[test]
fn budget_exhaustion_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let show = dts(&["catalog", "show", "D7.4.926"], None, tmp.path());
    let design = stdout(&show);
    let out = dts(
        &["--budget-nodes", "3", "seq", "find", "--l", "7"],
        Some(&design),
        tmp.path(),
    );
    assert_eq!(code(&out), 2, "{}", stdout(&out));
}

#[test]
fn prove_emits_checkable_trees() {
    let tmp = tempfile::tempdir().unwrap();
    let show = dts(&["catalog", "show", "GADGET12"], None, tmp.path());
    let design = stdout(&show);

    let tree = tmp.path().join("proof.json");
    let out = dts(
        &["prove", "--emit-json-tree", tree.to_str().unwrap()],
        Some(&design),
        tmp.path(),
    );
    assert_eq!(code(&out), 1, "refutation is the negative result");
    let text = stdout(&out);
    assert!(text.contains("Case 1"), "{text}");
    assert!(text.contains("Case 2"), "{text}");

    let out = dts(&["check-proof", tree.to_str().unwrap()], None, tmp.path());
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("proof OK"));

    // tampering must be caught
    let json = std::fs::read_to_string(&tree).unwrap();
    let bad = json.replacen("\"cycle\"", "\"cycle_was\"", 1);
    let tampered = tmp.path().join("tampered.json");
    std::fs::write(&tampered, bad).unwrap();
    let out = dts(&["check-proof", tampered.to_str().unwrap()], None, tmp.path());
    assert_eq!(code(&out), 3, "structurally broken JSON is an input error");

    // a sequenceable design proves with exit 0 and a witness
    let out = dts(&["prove"], Some(D4_1), tmp.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("SEQ "));
}

#[test]
fn build_good_round_trips_through_verify() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dts(&["build", "good", "--v", "12"], None, tmp.path());
    assert_eq!(code(&out), 0);
    let design = stdout(&out);
    let verify = dts(&["verify", "--l", "12"], Some(&design), tmp.path());
    assert_eq!(code(&verify), 0, "{}", stdout(&verify));
    assert!(stdout(&verify).contains("SEQ is 12-good"));

    let out = dts(&["build", "good", "--v", "5"], None, tmp.path());
    assert_eq!(code(&out), 3, "inadmissible order");
}

#[test]
fn build_bad_emits_certificate() {
    let tmp = tempfile::tempdir().unwrap();
    let cert = tmp.path().join("cert.json");
    let out = dts(
        &["build", "bad", "--v", "15", "--cert", cert.to_str().unwrap()],
        None,
        tmp.path(),
    );
    assert_eq!(code(&out), 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(json["pattern"].as_array().unwrap().len(), 14);

    // the emitted design parses and the prover refutes it
    let design = stdout(&out);
    let prove = dts(&["prove"], Some(&design), tmp.path());
    assert_eq!(code(&prove), 1);
}

#[test]
fn climb_is_deterministic_per_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let a = dts(&["--seed", "7", "climb", "--v", "9"], None, tmp.path());
    let b = dts(&["--seed", "7", "climb", "--v", "9"], None, tmp.path());
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let c = dts(&["--seed", "8", "climb", "--v", "9"], None, tmp.path());
    assert_ne!(stdout(&a), stdout(&c));

    let verify = dts(&["verify"], Some(&stdout(&a)), tmp.path());
    assert_eq!(code(&verify), 0);
}

#[test]
fn climb_protect_keeps_the_gadget() {
    let tmp = tempfile::tempdir().unwrap();
    let show = dts(&["catalog", "show", "GADGET12"], None, tmp.path());
    let gadget_file = tmp.path().join("gadget.dts");
    std::fs::write(&gadget_file, stdout(&show)).unwrap();

    let out = dts(
        &["--seed", "3", "climb", "--v", "9", "--protect", gadget_file.to_str().unwrap()],
        None,
        tmp.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let design = stdout(&out);
    for line in stdout(&show).lines().skip(1).take(12) {
        assert!(design.contains(line), "missing protected triple {line}");
    }
}

#[test]
fn census_on_tts4() {
    let tmp = tempfile::tempdir().unwrap();
    let tts = "TTS v=4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
    let file = tmp.path().join("tts4.tts");
    std::fs::write(&file, tts).unwrap();
    let out = dts(&["census", "--tts", file.to_str().unwrap()], None, tmp.path());
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("classes=3"), "{text}");
    assert!(text.contains("with_v_good=3"), "{text}");
}

#[test]
fn compose_with_fill_dir_and_bad_block() {
    let tmp = tempfile::tempdir().unwrap();
    let pbd = "PBD v=9\n0 1 2\n3 4 5\n6 7 8\n0 3 6\n1 4 7\n2 5 8\n0 4 8\n1 5 6\n2 3 7\n0 5 7\n1 3 8\n2 4 6\n";
    let pbd_file = tmp.path().join("ag23.pbd");
    std::fs::write(&pbd_file, pbd).unwrap();
    let fill_dir = tmp.path().join("fill");
    std::fs::create_dir(&fill_dir).unwrap();
    std::fs::write(fill_dir.join("dts3.dts"), "DTS v=3\n0 1 2\n2 1 0\nSEQ 0 2 1\n").unwrap();
    let out = dts(
        &["compose", "--pbd", pbd_file.to_str().unwrap(), "--fill", fill_dir.to_str().unwrap()],
        None,
        tmp.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let verify = dts(&["verify", "--l", "9"], Some(&stdout(&out)), tmp.path());
    assert_eq!(code(&verify), 0, "{}", stdout(&verify));

    // single block of size 7 filled with a bad design
    let single = "PBD v=7\n0 1 2 3 4 5 6\n";
    let pbd_file = tmp.path().join("single.pbd");
    std::fs::write(&pbd_file, single).unwrap();
    let show = dts(&["catalog", "show", "D7.4.926"], None, tmp.path());
    let bad_file = tmp.path().join("bad.dts");
    std::fs::write(&bad_file, stdout(&show)).unwrap();
    let out = dts(
        &[
            "compose",
            "--pbd",
            pbd_file.to_str().unwrap(),
            "--bad-block",
            "0",
            "--bad",
            bad_file.to_str().unwrap(),
        ],
        None,
        tmp.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let prove = dts(&["prove"], Some(&stdout(&out)), tmp.path());
    assert_eq!(code(&prove), 1);
}

#[test]
fn catalog_list_and_unknown_name() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dts(&["catalog", "list"], None, tmp.path());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("D7.4.926"));
    assert!(text.contains("GADGET12"));

    let out = dts(&["catalog", "show", "NOPE"], None, tmp.path());
    assert_eq!(code(&out), 3);
}

#[test]
fn manifest_records_inputs_and_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = tmp.path().join("run.json");
    let design_out = tmp.path().join("out.dts");
    let out = dts(
        &[
            "--manifest",
            manifest.to_str().unwrap(),
            "--out",
            design_out.to_str().unwrap(),
            "build",
            "good",
            "--v",
            "9",
        ],
        None,
        tmp.path(),
    );
    assert_eq!(code(&out), 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(json["exit_code"], 0);
    assert_eq!(json["outputs"][0]["path"], design_out.to_str().unwrap());
    let digest = json["outputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
}

#[test]
fn suite_single_check_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dts(&["suite", "--only", "C1"], None, tmp.path());
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("PASS C1"), "{}", stdout(&out));
}
