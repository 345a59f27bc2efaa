use mckay_core::chartab::character_table;
use mckay_core::diagram::{
    canonical_null_vector, cartan, catalog_graph, classify, definiteness, detect_doubled, detect_product,
    DiagramType, Definiteness,
};
use mckay_core::group::{conjugacy_classes, diagonal, product, FiniteSubgroup};
use mckay_core::groupspec::{parse_spec, Family, GroupSpec};
use mckay_core::io::{graph_json, read_graph_json};
use mckay_core::mckay::{mckay_graph, reduced, ColoredMcKayGraph};
use mckay_core::quat::{canonical_key, pair_mul, qmul, Quaternion, UnitQuaternionPair};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit() -> impl Strategy<Value = Quaternion> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("away from zero", |(a, b, c, d)| a * a + b * b + c * c + d * d > 1e-2)
        .prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d).normalized())
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (2u32..=9).prop_map(Family::Cyclic),
        (1u32..=5).prop_map(Family::Dihedral),
        Just(Family::Tetrahedral),
        Just(Family::Octahedral),
        Just(Family::Icosahedral),
    ]
}

fn graph(g: &FiniteSubgroup) -> ColoredMcKayGraph {
    let part = conjugacy_classes(g);
    let t = character_table(g, &part, 0).unwrap();
    mckay_graph(g, &part, &t, 1e-6).unwrap()
}

fn sorted_degrees(g: &FiniteSubgroup) -> Vec<u32> {
    let part = conjugacy_classes(g);
    let mut d = character_table(g, &part, 0).unwrap().degrees().to_vec();
    d.sort_unstable();
    d
}

proptest! {
    #[test]
    fn products_stay_unit(p in unit(), q in unit()) {
        prop_assert!((qmul(p, q).norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multiplication_is_associative(p in unit(), q in unit(), r in unit()) {
        prop_assert!(qmul(qmul(p, q), r).max_dist(qmul(p, qmul(q, r))) < 1e-12);
    }

    #[test]
    fn conjugate_is_inverse(p in unit()) {
        prop_assert!(qmul(p, p.conj()).max_dist(Quaternion::ONE) < 1e-12);
    }

    #[test]
    fn trace_is_conjugation_invariant(p in unit(), q in unit()) {
        let c = qmul(qmul(q, p), q.conj());
        prop_assert!((c.a - p.a).abs() < 1e-12);
    }

    #[test]
    fn pair_inverse(p in unit(), q in unit()) {
        let x = UnitQuaternionPair::new(p, q);
        prop_assert!(pair_mul(x, x.inverse()).max_dist(UnitQuaternionPair::IDENTITY) < 1e-12);
    }

    #[test]
    fn keys_ignore_tiny_perturbations(p in unit(), q in unit(), shift in 1e-13f64..1e-12) {
        // away from a cell boundary the key does not move
        let x = UnitQuaternionPair::new(p, q);
        let grid = 1e-4;
        let mut c = x.coords();
        c.iter_mut().for_each(|v| *v += shift);
        let (k0, k1) = (canonical_key(x, grid), canonical_key(UnitQuaternionPair::from_coords(c), grid));
        for (i, (a, b)) in k0.iter().zip(&k1).enumerate() {
            let frac = (x.coords()[i] / grid).fract().abs();
            if (frac - 0.5).abs() > 1e-6 {
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn lookup_survives_perturbation(idx in 0usize..120, noise in prop::array::uniform8(-5e-7f64..5e-7)) {
        let g = Family::Icosahedral.build().unwrap();
        let mut c = g.element(idx).coords();
        c.iter_mut().zip(noise).for_each(|(v, e)| *v += e);
        prop_assert_eq!(g.index_of(UnitQuaternionPair::from_coords(c)), Some(idx));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_degrees_multiply(a in family(), b in family()) {
        let (ga, gb) = (a.build().unwrap(), b.build().unwrap());
        let mut want: Vec<u32> = sorted_degrees(&ga)
            .iter()
            .flat_map(|x| sorted_degrees(&gb).into_iter().map(move |y| x * y))
            .collect();
        want.sort_unstable();
        prop_assert_eq!(sorted_degrees(&product(&ga, &gb).unwrap()), want);
    }

    #[test]
    fn diagonal_degrees_match(f in family()) {
        let g = f.build().unwrap();
        prop_assert_eq!(sorted_degrees(&diagonal(&g).unwrap()), sorted_degrees(&g));
    }

    #[test]
    fn reduced_diagram_is_dynkin(f in family()) {
        let gr = graph(&f.build().unwrap());
        let t = classify(&reduced(&gr).unwrap().total_graph()).unwrap();
        prop_assert!(t.is_dynkin(), "{} reduced to {}", f, t);
    }

    #[test]
    fn graph_json_round_trips(f in family(), doubled in any::<bool>()) {
        let g = f.build().unwrap();
        let g = if doubled { diagonal(&g).unwrap() } else { g };
        let gr = graph(&g);
        let text = graph_json(&gr);
        let back = read_graph_json(&text).unwrap();
        prop_assert_eq!(graph_json(&back), text);
        prop_assert_eq!(back.dims(), gr.dims());
    }

    #[test]
    fn detectors_separate_products_from_diagonals(f in family(), g in family()) {
        let (gf, gg) = (f.build().unwrap(), g.build().unwrap());
        let prod = graph(&product(&gf, &gg).unwrap());
        prop_assert!(detect_product(&prod).is_some());
        prop_assert!(detect_doubled(&prod).is_none());
        let diag = graph(&diagonal(&gf).unwrap());
        prop_assert!(detect_product(&diag).is_none());
        prop_assert!(detect_doubled(&diag).is_some());
    }
}

fn spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        family().prop_map(GroupSpec::Family),
        family().prop_map(GroupSpec::Diag),
        (family(), family())
            .prop_map(|(a, b)| GroupSpec::Prod(Box::new(GroupSpec::Family(a)), Box::new(GroupSpec::Family(b)))),
        "[a-z]{1,8}\\.json".prop_map(|p| GroupSpec::Gens(p.into())),
    ]
}

proptest! {
    #[test]
    fn spec_display_parses_back(s in spec(), pad in "[ \t]{0,2}") {
        prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s.clone());
        let padded = format!("{pad}{s}{pad}");
        prop_assert_eq!(parse_spec(&padded).unwrap(), s);
    }

    #[test]
    fn parse_never_panics(text in "\\PC{0,20}") {
        let _ = parse_spec(&text);
    }
}

fn extended_catalog() -> Vec<DiagramType> {
    let mut v: Vec<DiagramType> = (1..=9).map(DiagramType::ExtA).collect();
    v.extend((4..=9).map(DiagramType::ExtD));
    v.extend((6..=8).map(DiagramType::ExtE));
    v
}

#[test]
fn catalog_null_vectors_and_definiteness() {
    for t in extended_catalog() {
        let g = catalog_graph(t).unwrap();
        let c = cartan(&g).unwrap();
        let x: Vec<i64> = canonical_null_vector(t).unwrap().iter().map(|&v| v as i64).collect();
        assert!(c.apply(&x).iter().all(|&v| v == 0), "{t}");
        assert_eq!(definiteness(&c).unwrap(), Definiteness::PositiveSemidefinite, "{t}");
        let finite = t.finite_part().unwrap();
        let c = cartan(&catalog_graph(finite).unwrap()).unwrap();
        assert_eq!(definiteness(&c).unwrap(), Definiteness::PositiveDefinite, "{finite}");
    }
}

/// `Σ_i |Σ_j n_ij x_j|² ≤ Σ_j |2 x_j|²` on Euclidean diagrams: the adjacency
/// spectral radius is 2.
#[test]
fn euclidean_spectral_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for t in extended_catalog() {
        let g = catalog_graph(t).unwrap();
        let n = g.len();
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ax = g.apply(&x);
            let lhs: f64 = ax.iter().map(|v| v * v).sum();
            let rhs: f64 = x.iter().map(|v| 4.0 * v * v).sum();
            assert!(lhs <= rhs + 1e-6, "{t}: {lhs} > {rhs}");
        }
    }
}
