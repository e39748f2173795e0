use std::sync::Arc;
use std::time::Instant;

use mpd_core::ff::{Family, Field, ProjectiveSpace};
use mpd_core::oracle::mu_oracle;
use mpd_core::simple_id::{
    mu_simple, mu_table_entry, name_simple, name_simple_cayley, names_of_order, names_up_to, order_table_self_check,
    prime_power, SimpleName, SELF_CHECK_BOUND,
};
use mpd_core::small_group::CayleyGroup;
use mpd_core::{Error, PermGroup};

/// PSL(d, q) acting on the points of PG(d-1, q).
fn psl(d: usize, q: u32) -> PermGroup {
    let (p, e) = prime_power(q as u64).unwrap();
    let family = Family::Sl { d, p: p as u32, e };
    let space = ProjectiveSpace::new(&family.field().unwrap(), d).unwrap();
    let gens = family
        .standard_generators()
        .unwrap()
        .iter()
        .map(|m| space.permutation(m).unwrap())
        .collect();
    PermGroup::new(space.len(), gens).unwrap()
}

fn name(s: &str) -> SimpleName {
    s.parse().unwrap()
}

#[test]
fn names_alternating_and_projective_groups() {
    assert_eq!(name_simple(&PermGroup::alternating(5)).unwrap(), name("Alt(5)"));
    assert_eq!(name_simple(&PermGroup::alternating(7)).unwrap(), name("Alt(7)"));
    assert_eq!(name_simple(&psl(3, 2)).unwrap(), name("PSL(2,7)"));
    assert_eq!(name_simple(&psl(2, 8)).unwrap(), name("PSL(2,8)"));
    assert_eq!(name_simple(&psl(2, 11)).unwrap(), name("PSL(2,11)"));
}

#[test]
fn order_20160_is_split_by_elements_of_order_six() {
    let l34 = psl(3, 4);
    assert_eq!(l34.degree(), 21);
    assert_eq!(name_simple(&l34).unwrap(), name("PSL(3,4)"));
    assert_eq!(name_simple(&PermGroup::alternating(8)).unwrap(), name("Alt(8)"));
    assert_eq!(name_simple(&psl(4, 2)).unwrap(), name("Alt(8)"));
}

#[test]
fn cayley_naming_matches() {
    let c = CayleyGroup::from_group(&psl(2, 7), 200).unwrap();
    assert_eq!(name_simple_cayley(&c).unwrap(), name("PSL(2,7)"));
    let s4 = CayleyGroup::from_group(&PermGroup::symmetric(4), 100).unwrap();
    assert_eq!(name_simple_cayley(&s4), Err(Error::NotSimple));
}

#[test]
fn non_simple_groups_are_rejected() {
    assert_eq!(name_simple(&PermGroup::symmetric(5)), Err(Error::NotSimple));
    assert_eq!(name_simple(&PermGroup::symmetric(3)), Err(Error::NotSimple));
    let a5xa5 = PermGroup::direct_product(&[PermGroup::alternating(5), PermGroup::alternating(5)]);
    assert_eq!(name_simple(&a5xa5), Err(Error::NotSimple));
    assert_eq!(name_simple(&PermGroup::trivial(3)), Err(Error::NotSimple));
}

#[test]
fn aliases_collapse() {
    assert_eq!(name("PSL(2,4)"), name("Alt(5)"));
    assert_eq!(name("PSL(2,5)"), name("Alt(5)"));
    assert_eq!(name("PSL(2,9)"), name("Alt(6)"));
    assert_eq!(name("PSL(3,2)"), name("PSL(2,7)"));
    assert_eq!(name("PSL(4,2)"), name("Alt(8)"));
    assert_eq!(name("PSU(4,2)"), name("PSp(4,3)"));
    assert!("PSL(2,3)".parse::<SimpleName>().is_err());
    assert!("Alt(4)".parse::<SimpleName>().is_err());
    assert!("PSL(2,6)".parse::<SimpleName>().is_err());
    assert!("PSp(4,2)".parse::<SimpleName>().is_err());
}

#[test]
fn display_round_trips() {
    for n in names_up_to(10_000_000) {
        let text = n.to_string();
        assert_eq!(text.parse::<SimpleName>().unwrap(), n, "{text}");
        let json = serde_json::to_string(&n).unwrap();
        assert_eq!(serde_json::from_str::<SimpleName>(&json).unwrap(), n);
    }
}

#[test]
fn orders_agree_with_actions_and_known_values() {
    for (d, q) in [(2, 4), (2, 7), (2, 8), (2, 11), (2, 13), (3, 3), (3, 4), (4, 3)] {
        let g = psl(d, q);
        let n = SimpleName::psl(d as u32, q as u64).unwrap();
        assert_eq!(g.order(), n.order().unwrap().into(), "{n}");
    }
    let known: [(&str, u128); 9] = [
        ("PSp(4,4)", 979_200),
        ("POmegaPlus(8,2)", 174_182_400),
        ("POmegaPlus(8,3)", 4_952_179_814_400),
        ("POmegaMinus(8,2)", 197_406_720),
        ("PSU(3,5)", 126_000),
        ("PSU(4,3)", 3_265_920),
        ("G2(3)", 4_245_696),
        ("M12", 95_040),
        ("Alt(8)", 20_160),
    ];
    for (s, order) in known {
        assert_eq!(name(s).order(), Some(order), "{s}");
    }
}

#[test]
fn order_lookup_is_injective_after_aliasing() {
    order_table_self_check(SELF_CHECK_BOUND).unwrap();
    assert_eq!(names_of_order(20_160).len(), 2);
    assert_eq!(names_of_order(60), vec![name("Alt(5)")]);
    assert_eq!(names_of_order(25_920), vec![name("PSp(4,3)")]);
    assert!(names_of_order(120).is_empty());
}

#[test]
fn table_values() {
    assert_eq!(mu_simple(&name("Alt(7)")).unwrap(), 7);
    assert_eq!(mu_simple(&name("PSL(3,4)")).unwrap(), 21);
    assert_eq!(mu_simple(&name("POmegaPlus(8,2)")).unwrap(), 120);
    assert_eq!(mu_simple(&name("PSp(4,4)")).unwrap(), 85);
    assert_eq!(mu_simple(&name("PSL(2,7)")).unwrap(), 7);
    assert_eq!(mu_simple(&name("PSL(2,8)")).unwrap(), 9);
    assert_eq!(mu_simple(&name("PSL(2,11)")).unwrap(), 11);
    assert_eq!(mu_simple(&name("PSL(2,9)")).unwrap(), 6);
    assert_eq!(mu_simple(&name("POmegaPlus(8,3)")).unwrap(), 1080);
    assert_eq!(mu_simple(&name("POmegaPlus(8,4)")).unwrap(), 255 * 65 / 3);
    assert_eq!(mu_simple(&name("POmegaPlus(10,3)")).unwrap(), 81 * 242 / 2);
    assert_eq!(mu_simple(&name("M12")).unwrap(), 12);
    assert_eq!(mu_simple(&name("ON")).unwrap(), 122_760);
    assert_eq!(mu_simple(&name("G2(3)")).unwrap(), 351);
    assert_eq!(mu_simple(&name("G2(9)")).unwrap(), (9u64.pow(6) - 1) / 8);
    assert_eq!(mu_simple(&name("PSU(3,5)")).unwrap(), 50);
    assert_eq!(mu_simple(&name("F4(2)")).unwrap(), 4095 * 17);
    assert_eq!(mu_table_entry(&name("PSL(2,7)")).unwrap().formula, "constant");
}

#[test]
fn unverified_names_are_unsupported() {
    for s in [
        "PSU(3,3)",
        "PSp(4,3)",
        "PSp(6,2)",
        "POmegaMinus(8,2)",
        "G2(4)",
        "POmegaPlus(10,2)",
    ] {
        assert!(matches!(mu_simple(&name(s)), Err(Error::Unsupported(_))), "{s}");
    }
}

#[test]
fn table_values_never_exceed_the_regular_degree() {
    let mut checked = 0;
    for n in names_up_to(SELF_CHECK_BOUND) {
        if let Ok(mu) = mu_simple(&n) {
            assert!((mu as u128) <= n.order().unwrap(), "{n}");
            assert!(mu > 0);
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn small_table_values_match_the_oracle() {
    let start = Instant::now();
    let mut groups: Vec<PermGroup> = [4, 5, 7, 8, 9, 11, 13].iter().map(|&q| psl(2, q)).collect();
    groups.push(PermGroup::alternating(5));
    groups.push(PermGroup::alternating(6));
    for g in groups {
        let n = name_simple(&g).unwrap();
        let c = CayleyGroup::from_group(&g, 2000).unwrap();
        let (mu, _) = mu_oracle(&c, 5000).unwrap();
        assert_eq!(mu as u64, mu_simple(&n).unwrap(), "{n}");
    }
    eprintln!("oracle checks took {:?}", start.elapsed());
}

#[test]
fn field_helper_sanity() {
    let f = Arc::new(Field::new(2, 2).unwrap());
    let space = ProjectiveSpace::new(&f, 3).unwrap();
    assert_eq!(space.len(), 21);
    assert_eq!(space.frobenius(1).unwrap().order_u64(), Some(2));
}
