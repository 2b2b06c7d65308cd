mod common;

use obstructor::cli::{flatten_value, parse_text, run};
use obstructor::complex::parse_complex_text;
use obstructor::equivariant::EssentialCycleCertificate;

fn obstructor(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("obstructor").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn corpus(name: &str) -> String {
    common::corpus_dir().join(name).display().to_string()
}

fn value(text: &str, key: &str) -> String {
    parse_text(text).into_iter().find(|(k, _)| k == key).map(|(_, v)| v).unwrap_or_else(|| panic!("no key {key} in\n{text}"))
}

#[test]
fn vankampen_on_k5() {
    let (code, out, _) = obstructor(&["vankampen", &corpus("k5.cplx"), "--dim", "2"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "obstruction"), "1");
    assert!(out.starts_with("# obstructor "));
    assert!(out.contains("# invocation: obstructor vankampen"));
    assert!(out.contains("# seed: 0"));
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, out, err) = obstructor(&["homology", "nosuchfile"]);
    assert_eq!(code, 2);
    assert!(err.contains("nosuchfile"));
    assert!(out.starts_with("# obstructor "));
}

#[test]
fn unknown_flags_are_rejected() {
    assert_eq!(obstructor(&["homology", &corpus("k4.cplx"), "--frobnicate"]).0, 2);
    assert_eq!(obstructor(&["nosuchcommand"]).0, 2);
}

#[test]
fn json_and_text_carry_the_same_pairs() {
    for args in [
        vec!["homology", &corpus("torus.cplx") as &str],
        vec!["deleted-product", &corpus("triangle_boundary.cplx")],
        vec!["filtration", "--window", "grid:1:3", "--radii", "1,2"],
    ] {
        let (_, text, _) = obstructor(&args);
        let mut json_args = vec!["--json"];
        json_args.extend(args.iter().copied());
        let (_, json, _) = obstructor(&json_args);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(flatten_value(&v["report"]), parse_text(&text), "{args:?}");
        assert_eq!(v["header"]["version"], env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn generated_fixtures() {
    let (code, octa, _) = obstructor(&["generate", "cross_polytope", "3"]);
    assert_eq!(code, 0);
    assert_eq!(parse_complex_text(&octa).unwrap().f_vector(), vec![6, 12, 8]);
    let (_, k5, _) = obstructor(&["generate", "k_n", "5"]);
    assert_eq!(parse_complex_text(&k5).unwrap().f_vector(), vec![5, 10]);
    let (_, grid, _) = obstructor(&["generate", "grid", "2", "4"]);
    let g = parse_complex_text(&grid).unwrap();
    assert_eq!(g.num_vertices(), 81);
    assert!(g.coords().is_some());
    assert_eq!(obstructor(&["generate", "grid", "2"]).0, 2);
    // identical invocations give identical bytes
    assert_eq!(obstructor(&["generate", "random", "8", "9", "--seed", "4"]), obstructor(&["generate", "random", "8", "9", "--seed", "4"]));
    assert_ne!(obstructor(&["generate", "random", "8", "9", "--seed", "4"]).1, obstructor(&["generate", "random", "8", "9", "--seed", "5"]).1);
}

#[test]
fn certificate_round_trip_and_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let octa = dir.path().join("octa.bundle");
    let (_, bundle, _) = obstructor(&["generate", "cross_polytope", "3", "--certificate"]);
    std::fs::write(&octa, &bundle).unwrap();
    let (code, out, _) = obstructor(&["verify-cycle", octa.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!((value(&out, "essential"), value(&out, "m"), value(&out, "deg2")), ("true".into(), "2".into(), "1".into()));

    // collapsing the involution onto the identity must be rejected with exit 1
    let mut cert = EssentialCycleCertificate::read(&octa).unwrap();
    cert.involution = (0..cert.involution.len() as u32).collect();
    let bad = dir.path().join("bad.bundle");
    std::fs::write(&bad, cert.to_json()).unwrap();
    let (code, out, _) = obstructor(&["verify-cycle", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(value(&out, "essential"), "false");

    let joined = dir.path().join("joined.bundle");
    let (code, out, _) = obstructor(&["join", octa.to_str().unwrap(), octa.to_str().unwrap(), "--out", joined.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "m"), "5");
    assert_eq!(obstructor(&["join", octa.to_str().unwrap(), bad.to_str().unwrap()]).0, 2);

    let (code, out, _) = obstructor(&["report", octa.to_str().unwrap(), joined.to_str().unwrap(), "--join", "1,2", "--ray", "1"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "join 1 2"), "m=8 bound=9");
    assert!(value(&out, "bound").starts_with("pobdim >= 9"));
    assert_eq!(obstructor(&["report", octa.to_str().unwrap(), "--ray", "3"]).0, 2);
}

#[test]
fn build_cycle_and_pro_homology_on_a_small_window() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.bundle");
    let (code, out, _) = obstructor(&["build-cycle", "--window", "grid:2:2", "--radii", "1,2", "--out", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "m"), "1");
    assert_eq!(obstructor(&["verify-cycle", cert.to_str().unwrap()]).0, 0);
    assert_eq!(obstructor(&["build-cycle", "--window", "grid:2", "--radii", "1,2"]).0, 2);

    let sys = dir.path().join("sys.json");
    let (code, out, _) =
        obstructor(&["pro-homology", "--window", "grid:2:2", "--radii", "1,2", "--dim", "0", "--out", sys.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "pro_trivial.verdict"), "YES");
    // the stored system reads back to the same analysis
    let (code, again, _) = obstructor(&["pro-homology", sys.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&again, "pro_trivial.verdict"), "YES");
    assert_eq!(value(&again, "dims"), value(&out, "dims"));
}
