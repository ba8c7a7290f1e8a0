use super::*;
use crate::algebra::{iso_search, presentation_extract, IsoMode};

fn cfg(args: &[&str]) -> RunConfig {
    RunConfig::try_parse_from(std::iter::once("qhalg").chain(args.iter().copied())).unwrap()
}

fn result(args: &[&str]) -> Value {
    let (v, code) = report(&cfg(args));
    assert_eq!(code, 0, "{v}");
    v["result"].clone()
}

#[test]
fn bundled_files_round_trip() {
    for name in corpus::NAMES {
        let p = load_presentation(Path::new(&format!("examples/{name}.alg"))).unwrap();
        let a = build_algebra_capped(&p, DEFAULT_DEGREE_CAP).unwrap();
        let back = presentation_extract(&a.to_sc(), "x").unwrap().presentation;
        let b = build_algebra_capped(&back, DEFAULT_DEGREE_CAP).unwrap();
        assert!(iso_search(&a, &b, IsoMode::ByPosition, 0).is_witness(), "{name}");
        let again = parse_presentation(&write_presentation(&p)).unwrap();
        assert_eq!(presentation_json(&again), presentation_json(&p), "{name}");
    }
}

#[test]
fn check_sl2_flags_all_true() {
    let v = result(&["check", "examples/sl2_block.alg"]);
    let flags = v["flags"].as_object().unwrap();
    assert!(!flags.is_empty());
    for (k, x) in flags {
        assert_eq!(x, &json!(true), "{k}");
    }
}

#[test]
fn a3_pairing_is_zero() {
    let v = result(&["pairings", "--kind", "hom-ext1", "-i", "3", "-j", "1", "examples/a3_line.alg"]);
    let p = &v["pairings"][0];
    assert_eq!(p["rank"], json!(0));
    assert_eq!(p["left_kernel_dim"], json!(1));
}

#[test]
fn commute_on_k1() {
    let v = result(&["commute", "examples/k1.alg"]);
    assert_eq!(v["all_hold"], json!(true));
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["any"], json!("witness"));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        ["tables", "sl2_block"].as_slice(),
        ["ringel", "a3_line"].as_slice(),
        ["mine", "--count", "3", "--seed", "11"].as_slice(),
    ] {
        let x = serde_json::to_string(&report(&cfg(args)).0).unwrap();
        let y = serde_json::to_string(&report(&cfg(args)).0).unwrap();
        assert_eq!(x, y);
    }
}

#[test]
fn every_command_runs_on_sl2() {
    for c in ["info", "check", "tables", "tilting", "ringel", "koszul", "lincat", "commute"] {
        let (v, code) = report(&cfg(&[c, "sl2_block"]));
        assert_eq!(code, 0, "{c}: {v}");
        assert_eq!(v["schema"], json!(SCHEMA));
    }
    for k in ["hom-ext1", "bar", "tau", "higher", "graded"] {
        let (v, code) = report(&cfg(&["pairings", "--kind", k, "sl2_block"]));
        assert_eq!(code, 0, "{k}: {v}");
    }
    for o in ["std", "costd", "simple", "tilt"] {
        let (v, code) = report(&cfg(&["lincat", "--object", o, "sl2_block"]));
        assert_eq!(code, 0, "{o}: {v}");
    }
}

#[test]
fn error_codes() {
    let (v, code) = report(&cfg(&["check", "/nonexistent/nothing.alg"]));
    assert_eq!((v["error"]["code"].as_str(), code), (Some("io_error"), 3));
    let (v, code) = report(&cfg(&["tilting", "loop1"]));
    assert_eq!(code, 2, "{v}");
    let (v, code) = report(&cfg(&["pairings", "-i", "1", "-j", "3", "a3_line"]));
    assert_eq!((v["error"]["code"].as_str(), code), (Some("order_violation"), 2));
    let (v, code) = report(&cfg(&["pairings", "-i", "zz", "-j", "1", "a3_line"]));
    assert_eq!(code, 3, "{v}");
    let (_, code) = report(&cfg(&["check", "--field", "Fp:4", "k1"]));
    assert_eq!(code, 2);
}

#[test]
fn field_override_and_text_output() {
    let v = result(&["info", "--field", "Fp:7", "sl2_block"]);
    assert_eq!(v["field"], json!(Field::Fp(7).name()));
    let q = result(&["info", "sl2_block"]);
    assert_eq!(v["dim"], q["dim"]);
    let t = render_text(&report(&cfg(&["info", "k1"])).0);
    assert!(t.contains("command: info"));
}

#[test]
fn atomic_file_output() {
    let dir = std::env::temp_dir().join(format!("qhalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("r.json");
    let code = main_with_args(["qhalg", "info", "k1", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], json!("info"));
    assert!(!out.with_extension("partial").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}
