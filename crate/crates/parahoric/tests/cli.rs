use std::path::PathBuf;
use std::process::Command;

use parahoric::commands::{self, AdmReport, Basis, BernsteinReport, CoefficientJson, DescribeReport, FacetSpec, TestFnReport};
use parahoric::descriptor::{self, GroupDescriptor};
use parahoric::formats;
use parahoric::verify::{minuscule, oracle};
use parahoric::{library, CliError};
use parahoric_core::hecke::HeckeAlgebra;
use parahoric_core::iwahori::IwahoriWeylGroup;
use parahoric_core::testfn::{self, Lift};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_parahoric"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn describe_examples() {
    let gl2 = commands::describe(&library::load("gl2").unwrap()).unwrap();
    assert!(gl2.text().contains("relative type A1, π₁ = Z, Ω ≅ Z"), "{}", gl2.text());
    let torus = commands::describe(&library::load("ramified_torus_2").unwrap()).unwrap();
    assert!(torus.text().contains("π₁ coinvariants Z, inertia acts by swap"), "{}", torus.text());
}

#[test]
fn malformed_pairing_names_invariant() {
    let err = descriptor::load_path(&data("bad_pairing.toml")).unwrap_err();
    assert!(matches!(err, CliError::Validation(_)));
    assert!(err.to_string().contains("pairing"), "{err}");
    let (code, _, stderr) = run(&["describe", "--descriptor", data("bad_pairing.toml").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("pairing"));
}

#[test]
fn non_reduced_relative_system_is_unsupported() {
    let (code, _, stderr) = run(&["describe", "--descriptor", data("su3_unramified.toml").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("non-reduced"), "{stderr}");
}

#[test]
fn bad_flags_exit_with_validation_code() {
    for args in [
        vec!["adm", "--descriptor", "gl2", "--mu", "1"],
        vec!["adm", "--descriptor", "gl2", "--mu", "0,1"],
        vec!["adm", "--descriptor", "gl2", "--mu", "1,x"],
        vec!["adm", "--descriptor", "gl2", "--mu", "1,0", "--facet", "7"],
        vec!["testfn", "--descriptor", "gl2", "--mu", "1,0", "--lift", "q"],
        vec!["describe", "--descriptor", "no_such_file.toml"],
        vec!["verify", "12"],
    ] {
        let (code, _, stderr) = run(&args);
        assert_eq!(code, 2, "{args:?}: {stderr}");
    }
    let (code, _, _) = run(&["testfn", "--descriptor", "gl2", "--mu", "1,0", "--lift", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn adm_gl2_has_three_elements() {
    let (code, out, _) = run(&["adm", "--descriptor", "gl2", "--mu", "1,0", "--facet", "iwahori"]);
    assert_eq!(code, 0);
    let r: AdmReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.count, 3);
    let w = IwahoriWeylGroup::build(&library::load("gl2").unwrap().datum).unwrap();
    let lam = w.coweight_to_lattice(&[1, 0]).unwrap();
    let parsed: std::collections::BTreeSet<_> = r.elements.iter().map(|e| formats::element_from_json(&w, e).unwrap()).collect();
    assert_eq!(parsed, oracle::subword_admissible(&w, &lam));
}

#[test]
fn testfn_gl2_integrality_passes() {
    let (code, out, _) = run(&["testfn", "--descriptor", "gl2", "--mu", "1,0", "--facet", "iwahori", "--lift", "ss"]);
    assert_eq!(code, 0);
    let r: TestFnReport = serde_json::from_str(&out).unwrap();
    assert!(r.integrality_report.integral);
    assert!(r.admissible_check.contained);
    assert_eq!(r.basis, Basis::Bernstein);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["basis", "coefficients", "support", "admissible_check", "integrality_report"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn json_round_trips() {
    // the Bernstein coweight must be Frobenius-invariant
    let cases: &[(&str, &str, &str)] = &[
        ("gl2", "1,0", "1,0"),
        ("gl3", "1,1,0", "2,0,-1"),
        ("res_gl2_ram2", "1,0,0,0", "1,0,0,0"),
        ("res_gl2_unr2", "1,0,0,0", "1,0,1,0"),
        ("pgl3", "1,0", "1,1"),
    ];
    for (name, mu, coweight) in cases {
        let (_, out, _) = run(&["describe", "--descriptor", name]);
        let d: DescribeReport = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&d).unwrap() + "\n", out);

        let (_, out, _) = run(&["adm", "--descriptor", name, "--mu", mu]);
        let a: AdmReport = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&a).unwrap() + "\n", out);

        let (_, out, _) = run(&["bernstein", "--descriptor", name, "--mu", coweight]);
        let b: BernsteinReport = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&b).unwrap() + "\n", out);

        for basis in ["bernstein", "iwahori-matsumoto"] {
            let (code, out, err) = run(&["testfn", "--descriptor", name, "--mu", mu, "--basis", basis]);
            assert_eq!(code, 0, "{name} {mu} {basis}: {err}");
            let t: TestFnReport = serde_json::from_str(&out).unwrap();
            assert_eq!(serde_json::to_string_pretty(&t).unwrap() + "\n", out);
        }
    }
}

#[test]
fn emitted_elements_re_ingest() {
    let l = library::load("res_gl2_ram2").unwrap();
    let b = commands::bernstein(&l, &[1, 0, 0, 0]).unwrap();
    let w = IwahoriWeylGroup::build(&l.datum).unwrap();
    let h = formats::hecke_from_json(&w, &b.element).unwrap();
    assert_eq!(h, HeckeAlgebra::new(&w).z(&b.label).element);
    let t = commands::testfn(&l, &[1, 0, 0, 0], &FacetSpec::Iwahori, &Lift::SemiSimple, Basis::IwahoriMatsumoto).unwrap();
    let terms: Vec<_> = t
        .coefficients
        .iter()
        .map(|c| match c {
            CoefficientJson::Term(t) => t.clone(),
            CoefficientJson::Bernstein { .. } => panic!("expected T_w terms"),
        })
        .collect();
    let z = formats::hecke_from_json(&w, &terms).unwrap();
    assert!(HeckeAlgebra::new(&w).is_central(&z));
}

#[test]
fn output_is_deterministic() {
    for format in ["json", "csv", "text"] {
        for verb in [
            vec!["describe", "--descriptor", "res_pgl2_unr3"],
            vec!["adm", "--descriptor", "gl3", "--mu", "1,0,0", "--facet", "0,1"],
            vec!["testfn", "--descriptor", "res_gl2_unr2", "--mu", "1,0,0,0", "--facet", "hyperspecial"],
        ] {
            let mut args = verb.clone();
            args.extend(["--format", format]);
            let first = run(&args);
            assert_eq!(first.0, 0, "{args:?}: {}", first.2);
            assert_eq!(first, run(&args));
        }
    }
}

#[test]
fn descriptor_toml_round_trips() {
    for (name, text) in library::SHIPPED {
        let d = GroupDescriptor::parse(text).unwrap();
        let again = GroupDescriptor::parse(&d.to_toml()).unwrap();
        assert_eq!(d, again, "{name}");
        assert_eq!(d.load().unwrap().datum, again.load().unwrap().datum);
    }
}

#[test]
fn unramified_factor_count_matches_double_cosets() {
    let e2f2 = GroupDescriptor::parse("name = \"Res GL2, e = f = 2\"\nfamily = \"GL\"\nn = 2\nq = 7\n\n[restriction]\ne = 2\nf = 2\n").unwrap().load().unwrap().datum;
    let mut groups: Vec<_> = ["gl2", "res_gl2_unr2", "res_sl2_unr3", "res_pgl2_ram2", "ramified_torus_3"].iter().map(|n| library::load(n).unwrap().datum).collect();
    groups.push(e2f2);
    for g in &groups {
        for m in 1..=6 {
            let red = testfn::reduce_unramified_base(g, 1, m).unwrap();
            assert_eq!(red.factors.len(), oracle::double_coset_count(g, m), "{} at m = {m}", g.name);
        }
    }
}

#[test]
fn unramified_restriction_support_under_identification() {
    for name in ["res_gl2_unr2", "res_gl2_unr3", "res_sl2_unr2", "res_pgl2_unr3"] {
        let g = library::load(name).unwrap().datum;
        for mu in minuscule(&g) {
            let s = testfn::setup(&g, &mu).unwrap();
            let z = s.test_function(&Lift::SemiSimple).unwrap();
            let adm = s.w.admissible_set(&s.lambda, &s.w.iwahori()).unwrap();
            assert!(testfn::support_in_admissible(&s.w, &z.central.unwrap().element, &adm, &s.w.iwahori()).contained);
            let red = testfn::reduce_unramified_base(&g, 1, s.m).unwrap();
            let (_, reassembled) = red.check_reassembly(&mu).unwrap();
            assert!(reassembled.central.is_some(), "{name} {mu:?}");
        }
    }
}

#[test]
fn verify_subset_from_cli() {
    let (code, out, _) = run(&["verify", "3,11"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
}
