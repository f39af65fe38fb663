use entloc::entry::{classify_entry_locus, ClassifyConfig, TypeIrreducibility};
use entloc::file::{format_variety, parse_variety};
use entloc::geometry::sample_points_by_slicing;
use entloc::secant::{collinear, secant_dims, two_decompositions, DecompositionSet};
use entloc::{build_catalog_variety, CatalogKey, ProjectivePoint};
use entloc_algebra::field::random_prime_near_2_31;
use entloc_algebra::{Budget, Field, PrimeField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_and_rng(seed: u64) -> (PrimeField, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (PrimeField::new(random_prime_near_2_31(&mut rng)).unwrap(), rng)
}

fn cheap_key() -> impl Strategy<Value = CatalogKey> {
    prop::sample::select(vec![
        CatalogKey::Rnc(3),
        CatalogKey::Rnc(4),
        CatalogKey::Rnc(5),
        CatalogKey::Scroll12,
        CatalogKey::ConeTwistedCubic,
        CatalogKey::Veronese5,
        CatalogKey::VeroneseProj4,
        CatalogKey::DelPezzo4,
        CatalogKey::Elliptic4,
        CatalogKey::RationalQuartic3,
    ])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn secant_dims_are_monotone_and_bounded(key in cheap_key(), seed in 0u64..1000) {
        let (f, mut rng) = field_and_rng(seed);
        let budget = Budget::default();
        let x = build_catalog_variety(key, seed, &f, &budget).unwrap();
        let p = secant_dims(&x, 4, 2, &mut rng, &budget).unwrap();
        let (n, _, _) = key.invariants();
        prop_assert_eq!(p.dim(1), Some(n));
        for w in p.entries.windows(2) {
            prop_assert!(w[0].dim <= w[1].dim);
        }
        for e in &p.entries {
            prop_assert!(e.dim <= e.expected && e.expected <= x.ambient());
            prop_assert_eq!(e.defective, e.dim < e.expected);
        }
    }

    #[test]
    fn a_known_pair_is_among_the_decompositions(key in prop::sample::select(vec![
        CatalogKey::Rnc(3), CatalogKey::Elliptic4, CatalogKey::RationalQuartic3,
    ]), seed in 0u64..1000) {
        let (f, mut rng) = field_and_rng(seed);
        let budget = Budget::default();
        let x = build_catalog_variety(key, seed, &f, &budget).unwrap();
        let pts = sample_points_by_slicing(&x, 2, &mut rng, &budget).unwrap();
        let (a, b) = (pts[0].clone(), pts[1].clone());
        let q: Vec<_> = a.coords().iter().zip(b.coords()).map(|(u, v)| f.add(u, v)).collect();
        let q = ProjectivePoint::new(&f, q).unwrap();
        prop_assume!(a != b && !x.contains(&q));
        match two_decompositions(&x, &q, &mut rng, &budget).unwrap() {
            DecompositionSet::Finite { pairs, .. } => {
                prop_assert!(pairs.iter().any(|(u, v)| (u == &a && v == &b) || (u == &b && v == &a)));
                for (u, v) in &pairs {
                    prop_assert!(x.contains(u) && x.contains(v) && collinear(u, v, &q));
                }
            }
            DecompositionSet::PositiveDimensional => prop_assert!(false, "curve in P^3 with infinitely many pairs"),
        }
    }

    #[test]
    fn variety_files_round_trip(key in cheap_key(), seed in 0u64..1000) {
        let (f, _) = field_and_rng(seed);
        let budget = Budget::default();
        let x = build_catalog_variety(key, seed, &f, &budget).unwrap();
        let y = parse_variety(&format_variety(&x), &f, &budget).unwrap();
        prop_assert_eq!(x.ideal().generators(), y.ideal().generators());
        prop_assert_eq!(x.hilbert(&budget).unwrap(), y.hilbert(&budget).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn entry_locus_sits_between_gamma_and_ambient(key in prop::sample::select(vec![
        CatalogKey::Scroll12, CatalogKey::ConeTwistedCubic, CatalogKey::VeroneseProj4, CatalogKey::DelPezzo4,
    ]), seed in 0u64..1000) {
        let (f, mut rng) = field_and_rng(seed);
        let budget = Budget::default();
        let x = build_catalog_variety(key, seed, &f, &budget).unwrap();
        let cfg = ClassifyConfig { ab_trials: 1, seed, ..ClassifyConfig::default() };
        let r = classify_entry_locus(&x, &cfg, &mut rng, &budget).unwrap().report;
        prop_assert!(r.gamma <= r.ell && r.ell <= x.ambient());
        prop_assert_eq!(r.components, r.component_degrees.len());
        prop_assert_eq!(r.component_degrees.iter().sum::<usize>() as u64, r.reduced_degree);
        prop_assert!(r.dimension_formula.holds);
        prop_assert!(r.components >= 1 && r.reduced_degree >= r.components as u64);
        prop_assert_eq!(r.type_irreducibility == TypeIrreducibility::I, r.components == 1);
    }
}
