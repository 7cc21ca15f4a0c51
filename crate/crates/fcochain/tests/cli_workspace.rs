//! End-to-end tests of the workspace format and the command layer:
//! deterministic reports, validation errors with locations, and the
//! re-load-what-you-emitted invariant.

use fcochain::cli::{execute_command, Options};
use fcochain::format::{load_workspace, ComplexEntry};

fn fixture() -> Vec<(String, String)> {
    let text = "\
[algebra A]
builtin dual_numbers

[bimodule D]
algebra A
builtin dual

[functor F]
kind tensor
bimodule D

[module M]
algebra A
builtin regular

[module Z]
algebra A
builtin zero

[complex C]
functor F
flavor left
window 0 2
term 0 M
term 1 M
term 2 M

[morphism id]
source C
target C
component 0
1 0
0 1
component 1
1 0
0 1
component 2
1 0
0 1

[morphism zero]
source C
target C
"
    .to_string();
    vec![("fixture.fc".into(), text)]
}

#[test]
fn validate_reports_every_entity() {
    let ws = load_workspace(&fixture()).unwrap();
    let report = execute_command(&ws, "validate", &["all".into()], &Options::default()).unwrap();
    assert!(report.all_ok());
    let kinds: Vec<&str> = report
        .records
        .iter()
        .filter_map(|r| r.get("kind"))
        .collect();
    assert!(kinds.contains(&"algebra"));
    assert!(kinds.contains(&"complex"));
    assert!(kinds.contains(&"morphism"));
}

#[test]
fn reports_are_deterministic() {
    let ws = load_workspace(&fixture()).unwrap();
    let opts = Options {
        seed: 3,
        emit: true,
        window: None,
    };
    let r1 = execute_command(&ws, "bridge", &["C".into()], &opts).unwrap();
    let r2 = execute_command(&ws, "bridge", &["C".into()], &opts).unwrap();
    assert_eq!(r1.render("structured", true), r2.render("structured", true));
    // the seed is echoed
    assert!(r1.render("text", false).contains("seed=3"));
}

#[test]
fn kernel_and_cokernel_commands() {
    let ws = load_workspace(&fixture()).unwrap();
    let r = execute_command(&ws, "kernel", &["zero".into()], &Options::default()).unwrap();
    assert!(r.all_ok());
    let r = execute_command(&ws, "cokernel", &["id".into()], &Options::default()).unwrap();
    assert!(r.all_ok());
}

#[test]
fn ses_check_reports_witnesses() {
    let ws = load_workspace(&fixture()).unwrap();
    let r = execute_command(
        &ws,
        "ses-check",
        &["id".into(), "zero".into()],
        &Options::default(),
    )
    .unwrap();
    let verdicts: Vec<&str> = r.records.iter().filter_map(|x| x.get("exact")).collect();
    assert_eq!(verdicts, vec!["false"]);
}

#[test]
fn emitted_bridge_complex_reloads_exactly() {
    let ws = load_workspace(&fixture()).unwrap();
    let opts = Options {
        seed: 0,
        emit: true,
        window: None,
    };
    let report = execute_command(&ws, "bridge", &["C".into()], &opts).unwrap();
    assert!(report.all_ok());
    assert_eq!(report.emitted.len(), 1);
    let ws2 = load_workspace(&[("emitted.fc".into(), report.emitted[0].clone())]).unwrap();
    let ComplexEntry::Right(bridged) = &ws2.complexes["bridged"] else {
        panic!("expected the emitted complex to be right-flavour");
    };
    // bridging the original again gives the same complex
    let ComplexEntry::Left(c) = &ws.complexes["C"] else {
        panic!()
    };
    let pair =
        fcochain::functor::AdjointPair::for_bimodule(c.functor().bimodule().clone()).unwrap();
    let direct = fcochain::bridge::adjoint_bridge(&pair, c).unwrap();
    assert!(direct.as_ref() == bridged.as_ref());
}

#[test]
fn pack_command_roundtrips() {
    let ws = load_workspace(&fixture()).unwrap();
    let r = execute_command(&ws, "pack", &["C".into()], &Options::default()).unwrap();
    assert!(r.all_ok());
    let rec = r
        .records
        .iter()
        .find(|x| x.get("record") == Some("pack"))
        .unwrap();
    assert_eq!(rec.get("roundtrip_identity"), Some("true"));
    assert_eq!(rec.get("total_algebra_dim"), Some("10"));
}

#[test]
fn split_decompose_reports_not_split_with_degree() {
    // identity-functor complex with a mult-by-x differential is not split;
    // build it in code, serialize, and run the command on the reloaded copy
    use fcochain::algebra::{dual_numbers, Bimodule, Module};
    use fcochain::complex::LeftComplex;
    use fcochain::functor::RepEndofunctor;
    use fcochain::linalg::ExactMatrix;
    use num::Zero;

    let a = dual_numbers();
    let f = RepEndofunctor::new(Bimodule::regular(a.clone())).unwrap();
    let reg = Module::regular(a.clone());
    let fa = f.apply(&reg);
    let mut kappa = ExactMatrix::zero(2, 4);
    for i in 0..2 {
        for ai in 0..2 {
            let prod = a.multiply(&a.basis_vector(i), &a.basis_vector(ai));
            for (p, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    kappa.set(p, i * 2 + ai, c.clone());
                }
            }
        }
    }
    let x_mult = a.left_mult_matrix(&a.basis_vector(1));
    let d1 = x_mult.mul(&kappa.mul(&fa.quot.section));
    let c = LeftComplex::new(f, 1, vec![reg.clone(), reg.clone()], vec![d1]).unwrap();
    let text = fcochain::format::emit_left_complex("C", &c);

    let ws = load_workspace(&[("x.fc".into(), text)]).unwrap();
    let r = execute_command(&ws, "split-decompose", &["C".into()], &Options::default()).unwrap();
    let rec = r
        .records
        .iter()
        .find(|x| x.get("record") == Some("split-decompose"))
        .unwrap();
    assert_eq!(rec.get("verdict"), Some("not-split"));
    assert_eq!(rec.get("degree"), Some("1"));
}

#[test]
fn nakayama_command_with_explicit_idempotents() {
    let text = "\
[algebra A2]
builtin path_algebra_an 2
";
    let ws = load_workspace(&[("a2.fc".into(), text.into())]).unwrap();
    let r = execute_command(
        &ws,
        "nakayama",
        &["A2".into(), "e0".into(), "e1".into()],
        &Options::default(),
    )
    .unwrap();
    assert!(r.all_ok());
    let dims: Vec<(&str, &str)> = r
        .records
        .iter()
        .filter(|x| x.get("record") == Some("nakayama"))
        .map(|x| {
            (
                x.get("projective_dim").unwrap(),
                x.get("injective_dim").unwrap(),
            )
        })
        .collect();
    assert_eq!(dims, vec![("2", "1"), ("1", "2")]);
}

#[test]
fn unknown_command_is_reported() {
    let ws = load_workspace(&fixture()).unwrap();
    let err = execute_command(&ws, "frobnicate", &[], &Options::default()).unwrap_err();
    assert!(err.to_string().contains("frobnicate"));
}

#[test]
fn selftest_passes() {
    let ws = load_workspace(&[]).unwrap();
    let opts = Options {
        seed: 2,
        emit: false,
        window: None,
    };
    let r = execute_command(&ws, "selftest", &[], &opts).unwrap();
    assert!(r.all_ok());
    assert!(r.records.len() > 10);
}

#[test]
fn binary_smoke_test() {
    let exe = env!("CARGO_BIN_EXE_fcochain");
    let dir = std::env::temp_dir().join("fcochain-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ws.fc");
    std::fs::write(&path, fixture()[0].1.as_bytes()).unwrap();
    let out = std::process::Command::new(exe)
        .args([
            "bridge",
            "C",
            "-f",
            path.to_str().unwrap(),
            "--format",
            "structured",
            "--seed",
            "7",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("record=bridge"));
    assert!(stdout.contains("roundtrip_identity=true"));
    assert!(stdout.contains("seed=7"));
}
