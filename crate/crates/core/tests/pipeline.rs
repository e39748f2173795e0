use mpd_core::constructions::{
    m10, pgaml, pgl, psl, psl2_11_on_11_points, psl3_points_and_lines, psl_hint, wreath_with_z2,
};
use mpd_core::group_file::GroupFile;
use mpd_core::oracle::mu_oracle;
use mpd_core::pipeline::{induced_aut_group, mu_fitting_free, mu_small_quotient, MuCertificate};
use mpd_core::small_group::{CayleyGroup, QuotientGroup, DEFAULT_SUBGROUP_LIMIT};
use mpd_core::socle::{socle_fitting_free, SocleOptions};
use mpd_core::{Error, PermGroup};

fn opts() -> SocleOptions {
    SocleOptions::default()
}

fn mu(g: &PermGroup) -> u64 {
    let cert = mu_fitting_free(g, &[], &opts()).unwrap();
    assert!(cert.is_consistent());
    cert.into_result().unwrap()
}

fn certificate(g: &PermGroup, hints: &[mpd_core::hint::RecognitionHint]) -> MuCertificate {
    let cert = mu_fitting_free(g, hints, &opts()).unwrap();
    assert!(cert.is_consistent());
    cert
}

fn oracle(g: &PermGroup) -> u64 {
    let c = CayleyGroup::from_group(g, 2000).unwrap();
    mu_oracle(&c, DEFAULT_SUBGROUP_LIMIT).unwrap().0 as u64
}

fn rule(cert: &MuCertificate, i: usize) -> &str {
    cert.minimal_normals[i].rule.as_deref().unwrap()
}

#[test]
fn small_almost_simple_groups_match_the_oracle() {
    let groups = [
        PermGroup::alternating(5),
        PermGroup::symmetric(5),
        psl(3, 2).unwrap(),
        pgl(2, 7).unwrap(),
        psl(2, 8).unwrap(),
    ];
    for g in &groups {
        let m = mu(g);
        assert_eq!(m, oracle(g), "order {}", g.order());
        assert!(m <= g.degree() as u64);
    }
}

#[test]
fn induced_automorphism_orders() {
    let g = PermGroup::symmetric(5);
    let soc = socle_fitting_free(&g, &opts()).unwrap();
    let data = induced_aut_group(&g, 0, &soc.factors, opts().budget).unwrap();
    assert_eq!(data.a_order, 120u32.into());
    assert_eq!(data.a_over_s().unwrap(), 2);

    let w = wreath_with_z2(&PermGroup::alternating(5)).unwrap();
    let soc = socle_fitting_free(&w, &opts()).unwrap();
    let data = induced_aut_group(&w, 0, &soc.factors, opts().budget).unwrap();
    assert_eq!(data.a_order, 60u32.into());
    assert_eq!(data.centralizer.order(), 60u32.into());
}

#[test]
fn table_rows_for_small_groups() {
    let cert = certificate(&pgl(2, 7).unwrap(), &[]);
    assert_eq!((cert.total, rule(&cert, 0)), (Some(8), "row 2"));

    let cert = certificate(&psl(3, 2).unwrap(), &[]);
    assert_eq!((cert.total, rule(&cert, 0)), (Some(7), "default"));

    // The three groups A6.2 and the full automorphism group.
    let s6 = certificate(&PermGroup::symmetric(6), &[]);
    assert_eq!((s6.total, rule(&s6, 0)), (Some(6), "default"));
    for g in [pgl(2, 9).unwrap(), m10().unwrap(), pgaml(2, 9).unwrap()] {
        let cert = certificate(&g, &[]);
        assert_eq!((cert.total, rule(&cert, 0)), (Some(10), "row 1"), "order {}", g.order());
    }
    assert_eq!(m10().unwrap().order(), 720u32.into());
    assert_eq!(pgaml(2, 9).unwrap().order(), 1440u32.into());
    assert_eq!(mu(&PermGroup::alternating(6)), 6);
}

#[test]
fn products_and_wreath_products() {
    let w = wreath_with_z2(&PermGroup::alternating(5)).unwrap();
    let cert = certificate(&w, &[]);
    assert_eq!(cert.total, Some(10));
    assert_eq!(cert.minimal_normals.len(), 1);
    assert_eq!(cert.minimal_normals[0].ell, 2);

    let p = PermGroup::direct_product(&[PermGroup::alternating(5), PermGroup::alternating(6)]);
    let cert = certificate(&p, &[]);
    assert_eq!(cert.total, Some(11));
    assert_eq!(cert.minimal_normals.len(), 2);

    assert_eq!(mu(&PermGroup::symmetric(7)), 7);
    assert_eq!(mu(&psl2_11_on_11_points().unwrap()), 11);
}

#[test]
fn psl34_with_and_without_hint() {
    let g = psl(3, 4).unwrap();
    let plain = certificate(&g, &[]);
    let hint = psl_hint(3, 4, false).unwrap();
    let hinted = certificate(&g, std::slice::from_ref(&hint));
    assert_eq!(plain.total, Some(21));
    assert_eq!(hinted.total, Some(21));
    assert!(hinted.hint_used && !plain.hint_used);
    assert!(hinted.minimal_normals[0].classifications.iter().all(|c| c.in_gamma));
}

#[test]
fn psl34_semilinear_extension_needs_hint_and_stays_default() {
    let g = pgaml(3, 4).unwrap();
    let cert = certificate(&g, &[]);
    assert_eq!(cert.minimal_normals[0].a_over_s, 6);
    assert_eq!(cert.total, None);
    assert!(cert.unsupported);
    assert!(matches!(cert.clone().into_result(), Err(Error::HintRequired(_))));

    let cert = certificate(&g, &[psl_hint(3, 4, false).unwrap()]);
    assert_eq!(cert.total, Some(21));
    assert!(cert.minimal_normals[0].classifications.iter().any(|c| c.t_prime == 1));
}

#[test]
fn psl34_graph_extension_doubles() {
    let g = psl3_points_and_lines(4, true).unwrap();
    assert_eq!(g.degree(), 42);
    let cert = certificate(&g, &[psl_hint(3, 4, true).unwrap()]);
    assert_eq!((cert.total, rule(&cert, 0)), (Some(42), "row 11"));
    assert!(cert.minimal_normals[0]
        .classifications
        .iter()
        .any(|c| c.t_double_prime == 1));

    let plain = certificate(&g, &[]);
    assert_eq!(plain.minimal_normals[0].failure.as_ref().unwrap().kind, "hint-required");
}

#[test]
fn inconsistent_hints_are_rejected() {
    let g = psl(3, 4).unwrap();
    let mut hint = psl_hint(3, 4, false).unwrap();
    let m0 = hint.generator_images[0].matrix.clone();
    hint.generator_images[0].matrix = hint.generator_images[5].matrix.clone();
    hint.generator_images[5].matrix = m0;
    let r = mu_fitting_free(&g, &[hint], &opts());
    assert!(matches!(r, Err(Error::BadHint(_))), "{r:?}");

    let mut hint = psl_hint(3, 4, false).unwrap();
    hint.field_convention = "conway".into();
    assert!(matches!(mu_fitting_free(&g, &[hint], &opts()), Err(Error::BadHint(_))));

    let mut hint = psl_hint(3, 4, false).unwrap();
    hint.factor_index = Some(3);
    assert!(matches!(mu_fitting_free(&g, &[hint], &opts()), Err(Error::BadHint(_))));
}

#[test]
fn non_fitting_free_inputs_fail() {
    for g in [
        PermGroup::symmetric(4),
        PermGroup::parse(4, &["(1,2,3,4)", "(1,3)"]).unwrap(),
    ] {
        assert!(matches!(
            mu_fitting_free(&g, &[], &opts()),
            Err(Error::NotFittingFree(_))
        ));
    }
}

#[test]
fn certificates_round_trip_and_repeat() {
    let w = wreath_with_z2(&PermGroup::alternating(5)).unwrap();
    let a = certificate(&w, &[]);
    let b = certificate(&w, &[]);
    assert_eq!(a.to_json(), b.to_json());
    let back = MuCertificate::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
    assert_eq!(back.to_json(), a.to_json());
}

#[test]
fn small_quotients() {
    let s4 = PermGroup::symmetric(4);
    let v4 = PermGroup::parse(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
    assert_eq!(
        mu_small_quotient(&QuotientGroup::new(s4.clone(), v4).unwrap(), 100).unwrap(),
        3
    );
    assert_eq!(
        mu_small_quotient(&QuotientGroup::new(s4.clone(), s4).unwrap(), 100).unwrap(),
        0
    );
    let s5 = PermGroup::symmetric(5);
    let q = QuotientGroup::new(s5.clone(), PermGroup::trivial(5)).unwrap();
    assert_eq!(mu_small_quotient(&q, 200).unwrap(), 5);
    assert!(matches!(mu_small_quotient(&q, 100), Err(Error::BoundExceeded { .. })));
}

#[test]
fn group_files() {
    let text = "# S4 mod the Klein group\ndegree 4\ngen (1,2,3,4)\ngen (1,2)\nkernel\ngen (1,2)(3,4)\ngen (1,3)(2,4)\n";
    let f = GroupFile::parse(text).unwrap();
    assert_eq!(f.degree, 4);
    assert_eq!(f.generators.len(), 2);
    assert_eq!(f.kernel.as_ref().unwrap().len(), 2);
    assert_eq!(mu_small_quotient(&f.quotient().unwrap(), 100).unwrap(), 3);
    let again = GroupFile::parse(&f.render(&["round trip"])).unwrap();
    assert_eq!(again, f);

    for bad in [
        "gen (1,2)",
        "degree 0",
        "degree 3\ngen (1,4)",
        "degree 3\nfoo",
        "degree 3\nkernel\nkernel",
        "",
        "degree 3\ndegree 4",
    ] {
        assert!(matches!(GroupFile::parse(bad), Err(Error::Parse(_))), "{bad:?}");
    }
    // (1,2) is not normal in S3.
    let f = GroupFile::parse("degree 3\ngen (1,2,3)\ngen (1,2)\nkernel\ngen (1,2)").unwrap();
    assert!(matches!(f.quotient(), Err(Error::Precondition(_))));
}

#[test]
fn mathieu_groups() {
    use mpd_core::constructions::{m12, m12_2, m24};
    assert_eq!(m24().unwrap().order_u64(), Some(244_823_040));
    let m = m12().unwrap();
    assert_eq!(m.order_u64(), Some(95_040));
    assert_eq!(mu(&m), 12);
    let g = m12_2(0).unwrap();
    assert_eq!(g.order_u64(), Some(190_080));
    let cert = certificate(&g, &[]);
    assert_eq!((cert.total, rule(&cert, 0)), (Some(24), "row 3"));
}
