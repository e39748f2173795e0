use num_bigint::BigUint;
use rustc_hash::FxHashSet;

use mpd_core::constructions::{pgaml, pgl, psl, psl2_11_on_11_points, wreath_with_z2};
use mpd_core::socle::{
    factor_action, minimal_normal_subgroups, minimal_normal_under, normalizer_of_factor, simple_factors,
    socle_fitting_free, SocleOptions,
};
use mpd_core::{Error, PermGroup, Permutation};

fn group(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::parse(n, gens).unwrap()
}

fn order(g: &PermGroup) -> u64 {
    g.order_u64().unwrap()
}

fn a5_x_a6() -> PermGroup {
    PermGroup::direct_product(&[PermGroup::alternating(5), PermGroup::alternating(6)])
}

fn opts() -> SocleOptions {
    SocleOptions::default()
}

/// Socle from first principles: the minimal normal subgroups are the
/// minimal members among normal closures of single elements.
fn brute_force_socle(g: &PermGroup) -> PermGroup {
    let mut closures: Vec<PermGroup> = Vec::new();
    let mut seen: FxHashSet<Permutation> = FxHashSet::default();
    for x in g.elements(10_000).unwrap() {
        if x.is_identity() || seen.contains(&x) {
            continue;
        }
        let n = g.normal_closure(&[x]).unwrap();
        for y in n.elements(10_000).unwrap() {
            // Elements of n whose closure is n itself are not worth revisiting.
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

fn fitting_free_fixtures() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("A5", PermGroup::alternating(5)),
        ("S5", PermGroup::symmetric(5)),
        ("A6", PermGroup::alternating(6)),
        ("S6", PermGroup::symmetric(6)),
        ("PSL(2,7)", psl(3, 2).unwrap()),
        ("PGL(2,7)", pgl(2, 7).unwrap()),
        ("PSL(2,8)", psl(2, 8).unwrap()),
        ("PGammaL(2,8)", pgaml(2, 8).unwrap()),
        ("PSL(2,11)", psl2_11_on_11_points().unwrap()),
        ("Aut(A6)", pgaml(2, 9).unwrap()),
        ("A5 wr 2", wreath_with_z2(&PermGroup::alternating(5)).unwrap()),
        (
            "A5 x A5",
            PermGroup::direct_product(&[PermGroup::alternating(5), PermGroup::alternating(5)]),
        ),
    ]
}

#[test]
fn fixture_orders() {
    let expected = [60, 120, 360, 720, 168, 336, 504, 1512, 660, 1440, 7200, 3600];
    for ((name, g), want) in fitting_free_fixtures().iter().zip(expected) {
        assert_eq!(order(g), want, "{name}");
    }
    assert_eq!(psl2_11_on_11_points().unwrap().degree(), 11);
}

#[test]
fn minimal_normal_examples() {
    let s5 = PermGroup::symmetric(5);
    let n = minimal_normal_under(&s5, &s5, 0).unwrap();
    assert!(n.group.same_group(&PermGroup::alternating(5)));
    assert!(!n.probabilistic);

    let w = wreath_with_z2(&PermGroup::alternating(5)).unwrap();
    let n = minimal_normal_under(&w, &w, 0).unwrap();
    assert_eq!(order(&n.group), 3600);

    let g = a5_x_a6();
    let n = minimal_normal_under(&g, &g, 0).unwrap();
    assert!([60, 360].contains(&order(&n.group)));
    assert!(n.group.is_normalized_by(&g));
}

#[test]
fn minimal_normal_rejects_bad_input() {
    let s4 = PermGroup::symmetric(4);
    assert!(matches!(
        minimal_normal_under(&s4, &PermGroup::trivial(4), 0),
        Err(Error::Precondition(_))
    ));
    let not_normal = group(4, &["(1,2)"]);
    assert!(matches!(
        minimal_normal_under(&s4, &not_normal, 0),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn socle_examples() {
    let d = socle_fitting_free(&PermGroup::symmetric(5), &opts()).unwrap();
    assert!(d.socle.same_group(&PermGroup::alternating(5)));
    assert_eq!(d.factors.len(), 1);
    assert!(d.fitting_free);

    let d = socle_fitting_free(&pgl(2, 7).unwrap(), &opts()).unwrap();
    assert_eq!(order(&d.socle), 168);

    let d = socle_fitting_free(&a5_x_a6(), &opts()).unwrap();
    assert_eq!(order(&d.socle), 21600);
    assert_eq!(d.minimal_normals, vec![vec![0], vec![1]]);
}

#[test]
fn non_fitting_free_groups_are_rejected() {
    let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
    for g in [
        PermGroup::symmetric(4),
        d8,
        group(6, &["(1,2,3,4,5,6)"]),
        PermGroup::alternating(4),
    ] {
        assert!(matches!(socle_fitting_free(&g, &opts()), Err(Error::NotFittingFree(_))));
    }
    // Alt(5) x Z3 has an abelian normal subgroup beside the simple one.
    let g = PermGroup::direct_product(&[PermGroup::alternating(5), group(3, &["(1,2,3)"])]);
    assert!(matches!(socle_fitting_free(&g, &opts()), Err(Error::NotFittingFree(_))));
    assert!(matches!(
        socle_fitting_free(&PermGroup::trivial(2), &opts()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn socle_matches_brute_force() {
    for (name, g) in fitting_free_fixtures() {
        if order(&g) > 10_000 {
            continue;
        }
        let d = socle_fitting_free(&g, &opts()).unwrap();
        assert!(d.socle.same_group(&brute_force_socle(&g)), "{name}");
    }
}

#[test]
fn socle_decomposition_invariants() {
    for (name, g) in fitting_free_fixtures() {
        let d = socle_fitting_free(&g, &opts()).unwrap();
        assert!(d.socle.is_normalized_by(&g), "{name}");
        let product: BigUint = d.factors.iter().map(|f| f.order()).product();
        assert_eq!(product, d.socle.order(), "{name}");
        for (i, a) in d.factors.iter().enumerate() {
            assert!(!a.is_abelian());
            for b in &d.factors[i + 1..] {
                for x in a.generators() {
                    for y in b.generators() {
                        assert_eq!(x * y, y * x, "{name}");
                    }
                }
                assert_eq!(a.intersect_with_normal(b, 1 << 20).unwrap().order(), 1u32.into());
            }
        }
        assert!(
            g.centralizer_of_normal(&d.socle, 1 << 20).unwrap().is_trivial(),
            "{name}"
        );
        // Each minimal normal N satisfies Soc(N) = Soc(G) ∩ N.
        for i in 0..d.minimal_normals.len() {
            let n = d.minimal_normal(i);
            let soc_n = socle_fitting_free(&n, &opts()).unwrap().socle;
            let meet = d.socle.intersect_with_normal(&n, 1 << 20).unwrap();
            assert!(soc_n.same_group(&meet), "{name}");
        }
    }
}

#[test]
fn factors_and_orbits() {
    let a5 = PermGroup::alternating(5);
    assert_eq!(simple_factors(&a5, &opts()).unwrap().len(), 1);
    let a5a5 = PermGroup::direct_product(&[a5.clone(), a5.clone()]);
    let f = simple_factors(&a5a5, &opts()).unwrap();
    assert_eq!(f.iter().map(order).collect::<Vec<_>>(), vec![60, 60]);

    let w = wreath_with_z2(&a5).unwrap();
    let d = socle_fitting_free(&w, &opts()).unwrap();
    assert_eq!(d.factors.len(), 2);
    assert_eq!(d.minimal_normals, vec![vec![0, 1]]);
    let n = normalizer_of_factor(&w, 0, &d.factors).unwrap();
    assert_eq!(order(&n), 3600);
    assert_eq!(factor_action(&w, &d.factors).unwrap().len(), w.generators().len());

    let g = a5_x_a6();
    let d = socle_fitting_free(&g, &opts()).unwrap();
    assert_eq!(
        minimal_normal_subgroups(&g, &d.factors).unwrap(),
        vec![vec![0], vec![1]]
    );
    assert_eq!(order(&normalizer_of_factor(&g, 0, &d.factors).unwrap()), 21600);

    let s5 = PermGroup::symmetric(5);
    let d = socle_fitting_free(&s5, &opts()).unwrap();
    assert!(normalizer_of_factor(&s5, 0, &d.factors).unwrap().same_group(&s5));
    assert!(normalizer_of_factor(&s5, 3, &d.factors).is_err());
}

#[test]
fn seeds_give_reproducible_results() {
    let g = wreath_with_z2(&PermGroup::alternating(5)).unwrap();
    let a = socle_fitting_free(&g, &SocleOptions { seed: 7, ..opts() }).unwrap();
    let b = socle_fitting_free(&g, &SocleOptions { seed: 7, ..opts() }).unwrap();
    assert_eq!(a.factors.len(), b.factors.len());
    for (x, y) in a.factors.iter().zip(&b.factors) {
        assert_eq!(x.generators(), y.generators());
    }
}
