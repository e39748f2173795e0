//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mpd_core::aut_lift::{classify_aut, form_scalar, lift_aut, lift_psl_aut, projectively_equal, ProjectiveAut};
use mpd_core::ff::{commutation_dimension, solve_commutation, FFMatrix, Family, MatrixAut};
use mpd_core::group_file::GroupFile;
use mpd_core::hint::RecognitionHint;
use mpd_core::oracle::mu_oracle;
use mpd_core::pipeline::{mu_fitting_free, MuCertificate};
use mpd_core::simple_id::{mu_simple, SimpleName};
use mpd_core::small_group::{CayleyGroup, DEFAULT_SUBGROUP_LIMIT};
use mpd_core::socle::{socle_fitting_free, SocleOptions};
use mpd_core::{Error, PermGroup, Permutation};

const SL34: Family = Family::Sl { d: 3, p: 2, e: 2 };
const OMEGA8: Family = Family::OmegaPlus { d: 4 };

fn fixture_path(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fixture(name: &str) -> PermGroup {
    let text = std::fs::read_to_string(fixture_path(&format!("{name}.grp"))).unwrap();
    GroupFile::parse(&text).unwrap().group().unwrap()
}

fn hint(name: &str) -> RecognitionHint {
    RecognitionHint::from_json(&std::fs::read_to_string(fixture_path(&format!("{name}.hint.json"))).unwrap()).unwrap()
}

fn opts() -> SocleOptions {
    SocleOptions::default()
}

fn mu(g: &PermGroup, hints: &[RecognitionHint]) -> u64 {
    mu_fitting_free(g, hints, &opts()).unwrap().into_result().unwrap()
}

fn oracle(g: &PermGroup) -> u64 {
    let c = CayleyGroup::from_group(g, 5000).unwrap();
    mu_oracle(&c, DEFAULT_SUBGROUP_LIMIT).unwrap().0 as u64
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorize(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Every abelian group of order n, as lists of prime-power cyclic factors.
fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    factorize(n).into_iter().fold(vec![Vec::new()], |acc, (p, a)| {
        let mut out = Vec::new();
        for prefix in &acc {
            for part in partitions(a, a) {
                let mut t = prefix.clone();
                t.extend(part.iter().map(|&k| p.pow(k as u32)));
                out.push(t);
            }
        }
        out
    })
}

fn abelian_law() -> String {
    let mut count = 0;
    for n in 1..=200 {
        for parts in abelian_types(n) {
            let c = parts.iter().fold(CayleyGroup::cyclic(1), |acc, &k| {
                CayleyGroup::direct_product(&acc, &CayleyGroup::cyclic(k))
            });
            assert_eq!(c.order(), n);
            let (m, _) = mu_oracle(&c, DEFAULT_SUBGROUP_LIMIT).unwrap();
            let expected: usize = parts.iter().filter(|&&k| k > 1).sum();
            assert_eq!(m, expected, "abelian group with factors {parts:?}");
            count += 1;
        }
    }
    format!("{count} abelian groups")
}

fn known_values() -> String {
    let cases = [("PSL27", 7), ("PGL27", 8), ("A6", 6), ("AutA6", 10), ("M12_2", 24)];
    for (name, expected) in cases {
        assert_eq!(mu(&fixture(name), &[]), expected, "{name}");
    }
    "PSL27 7, PGL27 8, A6 6, AutA6 10, M12_2 24".into()
}

fn formula_rows() -> String {
    assert_eq!(mu_simple(&SimpleName::psl(3, 4).unwrap()).unwrap(), 21);
    assert_eq!(mu_simple(&SimpleName::psp(4, 4).unwrap()).unwrap(), 85);
    assert_eq!(mu_simple(&SimpleName::pomega_plus(8, 2).unwrap()).unwrap(), 120);
    "21, 85, 120".into()
}

fn pipeline_vs_oracle() -> String {
    let names = [
        "A5",
        "S5",
        "A6",
        "S6",
        "PSL27",
        "PGL27",
        "PSL28",
        "PGammaL28",
        "PSL2_11",
    ];
    for name in names {
        let g = fixture(name);
        assert!(g.order_u64().unwrap() <= 2000);
        assert_eq!(mu(&g, &[]), oracle(&g), "{name}");
    }
    format!("{} fixtures", names.len())
}

/// Socle from first principles: the minimal normal subgroups are the
/// minimal members among normal closures of single elements.
fn brute_force_socle(g: &PermGroup) -> PermGroup {
    let mut closures: Vec<PermGroup> = Vec::new();
    let mut seen: HashSet<Permutation> = HashSet::new();
    for x in g.elements(10_000).unwrap() {
        if x.is_identity() || seen.contains(&x) {
            continue;
        }
        let n = g.normal_closure(&[x]).unwrap();
        for y in n.elements(10_000).unwrap() {
            if g.normal_closure(std::slice::from_ref(&y)).unwrap().order() == n.order() {
                seen.insert(y);
            }
        }
        if !closures.iter().any(|c| c.same_group(&n)) {
            closures.push(n);
        }
    }
    let minimal: Vec<&PermGroup> = closures
        .iter()
        .filter(|n| !closures.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
        .collect();
    let gens = minimal.iter().flat_map(|n| n.generators().iter().cloned()).collect();
    PermGroup::new(g.degree(), gens).unwrap()
}

fn socle_oracle() -> String {
    let mut checked = 0;
    for f in mpd_cli::fixtures::all().unwrap() {
        if f.file.kernel.is_some() || ["Sym4", "D8", "Z6"].contains(&f.name) {
            continue;
        }
        let g = f.file.group().unwrap();
        if g.order_u64().is_none_or(|o| o > 10_000) {
            continue;
        }
        let soc = socle_fitting_free(&g, &opts()).unwrap();
        assert!(soc.socle.same_group(&brute_force_socle(&g)), "{}", f.name);
        checked += 1;
    }
    for name in ["Sym4", "D8"] {
        assert!(
            matches!(
                socle_fitting_free(&fixture(name), &opts()),
                Err(Error::NotFittingFree(_))
            ),
            "{name}"
        );
    }
    format!("{checked} fixtures, Sym4 and D8 rejected")
}

/// A random product of standard generators.
fn random_member(family: &Family, rng: &mut ChaCha8Rng) -> FFMatrix {
    let gens = family.standard_generators().unwrap();
    let mut m = FFMatrix::identity(&family.field().unwrap(), family.dim());
    for _ in 0..60 {
        m = m.mul(&gens[rng.gen_range(0..gens.len())]).unwrap();
    }
    m
}

/// The automorphism as seen projectively: each image moved within its
/// coset of scalars.
fn scramble(alpha: &MatrixAut, rng: &mut ChaCha8Rng) -> ProjectiveAut {
    let center = alpha.family().center().unwrap();
    let images = alpha
        .images()
        .iter()
        .map(|m| m.mul(&center[rng.gen_range(0..center.len())]).unwrap())
        .collect();
    ProjectiveAut::new(alpha.family(), images).unwrap()
}

fn lifting_suite() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let u = random_member(&SL34, &mut rng);
        let alpha = MatrixAut::conjugation(SL34, &u).unwrap();
        let lambda = scramble(&alpha, &mut rng);
        let (lifted, report) = lift_psl_aut(&lambda).unwrap();
        assert_eq!(lifted, alpha);
        assert!(report.unique);
        for (a, b) in lifted.images().iter().zip(lambda.images()) {
            assert!(projectively_equal(&SL34, a, b).unwrap());
        }
        assert_eq!(classify_aut(&lifted).unwrap().t_double_prime, 0);
    }
    let ti = MatrixAut::transpose_inverse(SL34).unwrap();
    assert_eq!(classify_aut(&ti).unwrap().t_double_prime, 1);
    let g = fixture("PSL34_2");
    assert_eq!(g.degree(), 42);
    assert_eq!(mu(&g, &[hint("PSL34_2")]), 42);
    "20 inner automorphisms, graph t'' = 1, degree-42 fixture 42".into()
}

fn schur() -> String {
    for fam in [Family::Sl { d: 3, p: 3, e: 1 }, SL34, Family::Sp4 { e: 2 }, OMEGA8] {
        let l = fam.standard_generators().unwrap();
        assert_eq!(commutation_dimension(&l, &l).unwrap(), 1, "{fam}");
        let f = solve_commutation(&l, &l).unwrap().unwrap();
        assert!(f.inverse().is_ok(), "{fam}");
        assert!(f.scalar_value().is_some(), "{fam}");
    }
    "SL(3,3), SL(3,4), Sp(4,4), Omega+(8,3)".into()
}

fn omega_form_test() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = OMEGA8.field().unwrap();
    let x = OMEGA8.form_matrix().unwrap();
    let l = OMEGA8.standard_generators().unwrap();
    for _ in 0..10 {
        let u = random_member(&OMEGA8, &mut rng);
        let alpha = MatrixAut::conjugation(OMEGA8, &u).unwrap();
        let (lifted, _) = lift_aut(&scramble(&alpha, &mut rng)).unwrap();
        let w = solve_commutation(&l, lifted.images()).unwrap().unwrap();
        let s = form_scalar(&OMEGA8, &w).unwrap().unwrap();
        // Normalize by a square root of the multiplier.
        let c = f.units().find(|&c| f.mul(c, c) == s).expect("multiplier is a square");
        let w = w.scale(f.inv(c).unwrap());
        assert_eq!(w.mul(&x).unwrap().mul(&w.transpose()).unwrap(), x);
        assert!(classify_aut(&lifted).unwrap().in_gamma);
    }
    "10 inner automorphisms".into()
}

fn certificates() -> Vec<String> {
    let mut out = Vec::new();
    for name in ["A5", "S6", "PGL27", "AutA6", "A5wrZ2", "A5xA6", "M12_2", "PSL34_2"] {
        let hints = if name == "PSL34_2" {
            vec![hint(name)]
        } else {
            Vec::new()
        };
        out.push(mu_fitting_free(&fixture(name), &hints, &opts()).unwrap().to_json());
    }
    out
}

fn determinism() -> String {
    let a = certificates();
    assert_eq!(a, certificates());
    for c in &a {
        assert_eq!(&MuCertificate::from_json(c).unwrap().to_json(), c);
    }
    // A separate process must print the same bytes.
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_mpd"))
            .args(["mu", "--json", "--seed", "0"])
            .arg(fixture_path("PSL34_2.grp"))
            .arg("--hint")
            .arg(fixture_path("PSL34_2.hint.json"))
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run();
    assert_eq!(first, run());
    assert_eq!(first, a[7].clone() + "\n");
    format!("{} certificates identical across runs and processes", a.len())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> String); 9] = [
        ("abelian law", abelian_law),
        ("known values", known_values),
        ("formula rows", formula_rows),
        ("pipeline agrees with oracle", pipeline_vs_oracle),
        ("socle agrees with brute force", socle_oracle),
        ("lifting suite", lifting_suite),
        ("commutation nullspace", schur),
        ("orthogonal form test", omega_form_test),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {} {name}: FAIL ({msg}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
