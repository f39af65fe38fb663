//! Geometry results checked against facts that do not go through the code
//! under test: explicit secant pairs, plane-curve node counts, coordinate
//! changes and degree bookkeeping.

use entloc::entry::{entry_locus_ideal, entry_locus_ideal_parametrized, witness_exists};
use entloc::geometry::{general_point_off, project_to_plane, reduced_dim_degree, sample_point};
use entloc::secant::two_decompositions;
use entloc::segre::{is_segre_point, pair_segre_test, segre_count_elliptic_quartic};
use entloc::variety::vanishes_at;
use entloc::{build_catalog_variety, CatalogKey, LinearSubspace, ProjectivePoint, ProjectiveVariety, VarietyMeta};
use entloc_algebra::field::{primes_below_2_31, random_prime_near_2_31};
use entloc_algebra::zerodim::{radical, Quotient};
use entloc_algebra::{Budget, Field, Ideal, Matrix, MonomialOrder, PolyRing, Polynomial, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (PrimeField, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = PrimeField::new(random_prime_near_2_31(&mut rng)).unwrap();
    (f, rng)
}

fn catalog(key: CatalogKey, seed: u64, f: &PrimeField) -> ProjectiveVariety<PrimeField> {
    build_catalog_variety(key, seed, f, &Budget::default()).unwrap()
}

/// `q = a + b` for two sampled points, so `{a, b}` is a known decomposition.
fn secant_point<F: Field>(x: &ProjectiveVariety<F>, rng: &mut ChaCha8Rng) -> (ProjectivePoint<F>, ProjectivePoint<F>, ProjectivePoint<F>) {
    let f = x.field();
    loop {
        let a = sample_point(x, rng).unwrap();
        let b = sample_point(x, rng).unwrap();
        let q: Vec<F::Elem> = a.coords().iter().zip(b.coords()).map(|(u, v)| f.add(u, v)).collect();
        if let Ok(q) = ProjectivePoint::new(f, q) {
            if a != b && !x.contains(&q) {
                return (a, b, q);
            }
        }
    }
}

#[test]
fn entry_locus_contains_both_points_of_a_known_pair() {
    let budget = Budget::default();
    for seed in 1..=3 {
        let (f, mut rng) = setup(seed);
        for key in [CatalogKey::Scroll12, CatalogKey::VeroneseProj4] {
            let x = catalog(key, seed, &f);
            let (a, b, q) = secant_point(&x, &mut rng);
            let gamma = entry_locus_ideal(&x, &q, &mut rng, &budget).unwrap();
            assert!(vanishes_at(&gamma, a.coords()) && vanishes_at(&gamma, b.coords()), "{key}");
            assert!(witness_exists(&x, &q, &a));
            // Γ_q(X) ⊆ X
            let gb = gamma.groebner(MonomialOrder::Grevlex, &budget).unwrap();
            for g in x.ideal().generators() {
                assert!(gb.contains(g).unwrap(), "{key}: I(X) ⊄ Γ");
            }
        }
    }
}

#[test]
fn off_locus_points_have_no_witness() {
    let (f, mut rng) = setup(4);
    let x = catalog(CatalogKey::Scroll12, 4, &f);
    let q = general_point_off(&x, &mut rng).unwrap();
    let gamma = entry_locus_ideal(&x, &q, &mut rng, &Budget::default()).unwrap();
    let mut tested = 0;
    while tested < 10 {
        let a = sample_point(&x, &mut rng).unwrap();
        assert_eq!(witness_exists(&x, &q, &a), vanishes_at(&gamma, a.coords()));
        tested += 1;
    }
}

#[test]
fn strategies_agree_on_the_scroll() {
    let budget = Budget::default();
    for seed in 1..=3 {
        let (f, mut rng) = setup(seed);
        let x = catalog(CatalogKey::Scroll12, seed, &f);
        let q = general_point_off(&x, &mut rng).unwrap();
        let a = entry_locus_ideal(&x, &q, &mut rng, &budget).unwrap();
        let b = entry_locus_ideal_parametrized(&x, &q, &mut rng, &budget).unwrap();
        assert!(a.equals(&b, &budget).unwrap());
    }
}

#[test]
fn entry_locus_degree_does_not_depend_on_q() {
    let budget = Budget::default();
    let (f, mut rng) = setup(9);
    let x = catalog(CatalogKey::DelPezzo4, 9, &f);
    for _ in 0..5 {
        let q = general_point_off(&x, &mut rng).unwrap();
        let gamma = entry_locus_ideal(&x, &q, &mut rng, &budget).unwrap();
        let dd = reduced_dim_degree(&gamma, &mut rng, &budget).unwrap();
        assert_eq!((dd.dim, dd.reduced_degree), (Some(1), 4));
    }
}

/// Nodes of the image of `x` under projection from a general point to a
/// plane: singular points of the plane curve, on the chart `z2 = 1`.
fn plane_nodes<F: Field>(x: &ProjectiveVariety<F>, rng: &mut ChaCha8Rng) -> usize {
    let budget = Budget::default();
    let f = x.field();
    let m = Matrix::random(f, 3, x.ambient() + 1, rng);
    let image = project_to_plane(x.ideal(), &m, rng, &budget).unwrap();
    assert_eq!(image.generators().len(), 1);
    let g = &image.generators()[0];
    let aff = PolyRing::new(f.clone(), &["u", "v"], MonomialOrder::Grevlex).unwrap();
    let chart = [Polynomial::var(&aff, 0), Polynomial::var(&aff, 1), Polynomial::one(&aff)];
    let h = g.substitute(&chart);
    let sing = Ideal::new(&aff, vec![h.clone(), h.derivative(0), h.derivative(1)]);
    Quotient::new(&radical(&sing, &budget).unwrap(), &budget).unwrap().dim()
}

#[test]
fn plane_nodes_match_secants_through_the_centre() {
    // δ = (d-1)(d-2)/2 - g nodes; each is a secant line through the centre
    let cases = [(CatalogKey::Rnc(3), 1), (CatalogKey::Elliptic4, 2), (CatalogKey::RationalQuartic3, 3)];
    for seed in 1..=2 {
        let (f, mut rng) = setup(seed);
        for (key, delta) in cases {
            let x = catalog(key, seed, &f);
            assert_eq!(plane_nodes(&x, &mut rng), delta, "{key}");
            let q = general_point_off(&x, &mut rng).unwrap();
            let d = two_decompositions(&x, &q, &mut rng, &Budget::default()).unwrap();
            assert_eq!(d.count(), Some(delta), "{key}");
        }
    }
}

#[test]
fn segre_count_survives_coordinate_changes() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let primes = primes_below_2_31(240);
    let e = build_catalog_variety(CatalogKey::Elliptic4, 21, &Rationals, &budget).unwrap();
    for _ in 0..3 {
        // small integer entries keep the reduction mod other primes possible
        let m = loop {
            let rows: Vec<Vec<_>> = (0..4)
                .map(|_| (0..4).map(|_| Rationals.from_i64(rng.gen_range(-3..=3))).collect())
                .collect();
            let m = Matrix::from_rows(&Rationals, rows);
            if m.inverse().is_some() {
                break m;
            }
        };
        let moved = ProjectiveVariety::new(e.ideal().linear_substitution(&m), None, VarietyMeta::default()).unwrap();
        let c = segre_count_elliptic_quartic(&moved, &primes, &mut rng, &budget).unwrap();
        assert_eq!(c.count, 4);
        assert!(c.vertex_checks.iter().all(|v| v.verdict));
    }
}

#[test]
fn projection_degrees_divide() {
    let budget = Budget::default();
    let (f, mut rng) = setup(5);
    for key in [CatalogKey::Rnc(3), CatalogKey::Elliptic4, CatalogKey::RationalQuartic3] {
        let y = catalog(key, 5, &f);
        for _ in 0..5 {
            let o = general_point_off(&y, &mut rng).unwrap();
            let v = is_segre_point(&y, &o, &mut rng, &budget).unwrap();
            assert_eq!(v.source_degree % v.image_degree, 0);
            assert!(!v.verdict, "{key}: a random point is a Segre point");
        }
    }
}

#[test]
fn curves_of_different_degree_have_no_common_image() {
    let budget = Budget::default();
    let (f, mut rng) = setup(6);
    let y = catalog(CatalogKey::Rnc(3), 6, &f);
    let t = catalog(CatalogKey::Elliptic4, 6, &f);
    for _ in 0..10 {
        let o = loop {
            let o = ProjectivePoint::random(&f, 3, &mut rng);
            if !y.contains(&o) && !t.contains(&o) {
                break o;
            }
        };
        assert!(!pair_segre_test(&y, &t, &o, &mut rng, &budget).unwrap().equal);
    }
}

#[test]
fn skew_lines_are_never_pair_segre() {
    let budget = Budget::default();
    let (f, mut rng) = setup(7);
    let line = |pts: [usize; 2]| {
        let span = LinearSubspace::from_points(&pts.map(|i| ProjectivePoint::coordinate_point(&f, 3, i))).unwrap();
        let ring = entloc::variety::ambient_ring(&f, 3);
        ProjectiveVariety::new(span.ideal(&ring), None, VarietyMeta::default()).unwrap()
    };
    let (y, t) = (line([0, 1]), line([2, 3]));
    for _ in 0..10 {
        let o = ProjectivePoint::random(&f, 3, &mut rng);
        let r = pair_segre_test(&y, &t, &o, &mut rng, &budget).unwrap();
        assert!(!r.contained && !r.equal);
    }
}
