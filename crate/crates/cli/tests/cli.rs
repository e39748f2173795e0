use std::fs;
use std::path::{Path, PathBuf};

use mpd_cli::{fixtures, run_cli, EXIT_INPUT, EXIT_OK, EXIT_PARTIAL};
use mpd_core::group_file::GroupFile;
use mpd_core::pipeline::MuCertificate;
use mpd_core::{PermGroup, Permutation};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["mpd"];
    full.extend_from_slice(args);
    let code = run_cli(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn checked_in_fixtures_match_their_constructions() {
    for f in fixtures::all().unwrap() {
        let on_disk = fs::read_to_string(fixture(&format!("{}.grp", f.name))).unwrap();
        assert_eq!(
            on_disk,
            f.render(),
            "{} is stale; rerun the make_fixtures example",
            f.name
        );
    }
    for (name, text) in fixtures::hints().unwrap() {
        let on_disk = fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        assert_eq!(on_disk, text + "\n", "{name} is stale");
    }
}

#[test]
fn mu_json_for_pgl27() {
    let (code, out, _) = run(&["mu", "--json", &path("PGL27.grp")]);
    assert_eq!(code, EXIT_OK);
    let cert = MuCertificate::from_json(&out).unwrap();
    assert_eq!(cert.total, Some(8));
    assert_eq!(cert.minimal_normals[0].rule.as_deref(), Some("row 2"));
    assert!(cert.is_consistent());
}

#[test]
fn certificate_round_trips_through_json() {
    for name in ["S5.grp", "A5wrZ2.grp", "A5xA6.grp", "AutA6.grp"] {
        let (code, out, _) = run(&["mu", "--json", &path(name)]);
        assert_eq!(code, EXIT_OK, "{name}");
        let cert = MuCertificate::from_json(&out).unwrap();
        assert_eq!(cert.to_json() + "\n", out, "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["mu", "--json"], vec!["socle", "--json"], vec!["min-normal"]] {
        let mut a = args.clone();
        let p = path("A5xA6.grp");
        a.push(&p);
        assert_eq!(run(&a), run(&a));
    }
}

#[test]
fn mu_oracle_on_z6() {
    let (code, out, _) = run(&["mu-oracle", "--json", "--limit", "100", &path("Z6.grp")]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mu"], 5);
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn mu_agrees_with_oracle_on_small_fixtures() {
    for name in ["A5", "S5", "A6", "PSL27", "PGL27", "PSL28", "M10"] {
        let file = path(&format!("{name}.grp"));
        let (c1, out1, _) = run(&["mu", "--json", &file]);
        let (c2, out2, _) = run(&["mu-oracle", "--json", &file]);
        assert_eq!((c1, c2), (EXIT_OK, EXIT_OK), "{name}");
        let cert = MuCertificate::from_json(&out1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out2).unwrap();
        assert_eq!(cert.total, v["mu"].as_u64(), "{name}");
    }
}

#[test]
fn missing_hint_gives_partial_certificate() {
    let (code, out, _) = run(&["mu", "--json", &path("PSL34_2.grp")]);
    assert_eq!(code, EXIT_PARTIAL);
    let cert = MuCertificate::from_json(&out).unwrap();
    assert_eq!(cert.total, None);
    let f = cert.minimal_normals[0].failure.as_ref().unwrap();
    assert_eq!(f.kind, "hint-required");

    let (code, out, _) = run(&["mu", &path("PSL34_2.grp"), "--hint", &path("PSL34_2.hint.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("μ = 42\n"));
}

#[test]
fn quotient_and_order() {
    assert_eq!(run(&["mu-quotient", &path("S4modV4.grp")]).1, "μ = 3\n");
    assert_eq!(run(&["order", &path("S4modV4.grp")]).1, "6\n");
    assert_eq!(run(&["order", &path("M12.grp")]).1, "95040\n");
    assert_eq!(run(&["recognize", &path("PSL2_11.grp")]).1, "PSL(2,11)\n");
}

#[test]
fn input_errors_exit_with_one() {
    let (code, _, err) = run(&["socle", &path("D8.grp")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("Fitting-free"));
    assert_eq!(run(&["order", "/definitely/not/here.grp"]).0, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(run(&["mu", &path("S4modV4.grp")]).0, EXIT_INPUT);
    let bad = std::env::temp_dir().join("mpd-cli-bad-hint.json");
    fs::write(&bad, "{\"family\": \"PSL\"}").unwrap();
    let (code, _, _) = run(&["mu", &path("PSL34.grp"), "--hint", &bad.to_string_lossy()]);
    assert_eq!(code, EXIT_INPUT);
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_file_render_parse_round_trip(gens in prop::collection::vec(perm_strategy(9), 0..4)) {
        let file = GroupFile { degree: 9, generators: gens, kernel: None };
        let text = file.render(&["generated"]);
        prop_assert_eq!(GroupFile::parse(&text).unwrap(), file.clone());
        let g = PermGroup::new(9, file.generators.clone()).unwrap();
        prop_assert_eq!(file.group().unwrap().order(), g.order());
    }
}
