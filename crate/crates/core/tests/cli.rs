use std::path::Path;
use std::process::{Command, Output};

fn percolab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_percolab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn oracle_prints_exact_values() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&percolab(&["oracle", "--p", "0.5", "--radius", "1"], dir.path()));
    assert!(text.starts_with("event,p,probability\n"));
    assert!(text.contains("isolated,0.5,0.0625\n"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.json"), r#"{"p": 0.0, "radius": 1, "event": "isolated"}"#).unwrap();
    let from_file = stdout(&percolab(&["oracle", "--config", "c.json"], dir.path()));
    assert_eq!(from_file, "event,p,probability\nisolated,0,1\n");
    let overridden = stdout(&percolab(&["oracle", "--config", "c.json", "--p", "1"], dir.path()));
    assert_eq!(overridden, "event,p,probability\nisolated,1,0\n");
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["saturation", "--p", "0.7", "--radii", "1,2,4", "--samples", "100", "--condition"];
    let printed = stdout(&percolab(&args, dir.path()));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", "s.csv"]);
    assert_eq!(stdout(&percolab(&with_out, dir.path())), "");
    assert_eq!(std::fs::read_to_string(dir.path().join("s.csv")).unwrap(), printed);
    assert!(printed.starts_with("R,s_hat,stderr,n\n1,"));
}

#[test]
fn pattern_libraries_are_written_and_readable() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&percolab(&["patterns", "--model", "even-rows", "--radius", "1", "--scan-radius", "8", "--out", "lib"], dir.path()));
    let lib = percolab::io::read_library(&dir.path().join("lib")).unwrap();
    assert_eq!((lib.len(), lib.r(), lib.stable()), (2, 1, true));
}

#[test]
fn dumped_edges_read_back() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&percolab(&["dump", "--p", "0.5", "--radius", "4", "--seed", "9", "--out", "e.csv"], dir.path()));
    let spec = percolab::GroupSpec::lattice(2).unwrap();
    let edges = percolab::io::read_edge_list_file(&spec, &dir.path().join("e.csv")).unwrap();
    let window = percolab::window_edges(&std::sync::Arc::new(spec), 4).unwrap();
    let expected = percolab::sample(&window, &percolab::Law::new(0.5).unwrap(), 0, 9).open_edges();
    assert_eq!(edges, expected);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| percolab(args, dir.path()).status.code().unwrap();
    assert_eq!(code(&["singularity", "--model", "even-rows", "--p", "1.5"]), 2);
    assert_eq!(code(&["saturation", "--radii", "4,2"]), 2);
    assert_eq!(code(&["singularity", "--model", "nonsense"]), 2);
    assert_eq!(code(&["bogus-command"]), 2);
    assert_eq!(code(&["dump", "--group", "f2", "--radius", "30"]), 3);
    assert_eq!(code(&["oracle", "--radius", "4"]), 3);
    // Horizontal edges only on rows congruent to 10 mod 20: a scan of radius 5
    // never sees them but the ring out to radius 10 does.
    let mut motif: String = (0..20).map(|y| format!("0 {y} 0 {}\n", y + 1)).collect();
    motif.push_str("0 10 1 10\n");
    std::fs::write(dir.path().join("motif.txt"), motif).unwrap();
    let model = "periodic:1,0;0,20;motif.txt";
    assert_eq!(code(&["singularity", "--model", model, "--radius", "1", "--scan-radius", "5"]), 4);
    assert_eq!(code(&["singularity", "--model", model, "--radius", "1", "--scan-radius", "5", "--force-unstable", "--samples", "10"]), 0);
    assert_eq!(code(&["singularity", "--model", model, "--radius", "1", "--scan-radius", "10", "--samples", "10"]), 0);
    assert_eq!(code(&["oracle", "--config", "missing.json"]), 1);
}
