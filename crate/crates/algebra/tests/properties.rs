use entloc_algebra::field::{random_prime_near_2_31, rational_mod, PrimeField};
use entloc_algebra::{
    absolute_factor_count, eliminate, groebner_basis, hilbert_invariants, saturate, Budget, Field,
    Ideal, Matrix, Monomial, MonomialOrder, PolyRing, Polynomial, Rationals, Ring,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P: u64 = 32003;

type Term = (i64, Vec<u16>);

fn terms(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(
        (-9i64..=9, prop::collection::vec(0..=max_deg, nvars)),
        1..=max_terms,
    )
}

/// Terms of one fixed degree `d`: exponent vectors obtained by dropping `d`
/// balls into `nvars` bins.
fn homogeneous_terms(nvars: usize, d: u16, max_terms: usize) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(
        (-9i64..=9, prop::collection::vec(0..nvars, d as usize)),
        1..=max_terms,
    )
    .prop_map(move |ts| {
        ts.into_iter()
            .map(|(c, balls)| {
                let mut e = vec![0u16; nvars];
                for b in balls {
                    e[b] += 1;
                }
                (c, e)
            })
            .collect()
    })
}

fn build<F: Field>(r: &Ring<F>, ts: &[Term]) -> Polynomial<F> {
    let f = r.field();
    Polynomial::from_terms(
        r,
        ts.iter()
            .map(|(c, e)| (f.from_i64(*c), Monomial::from_exponents(e)))
            .collect(),
    )
}

fn fp_ring(n: usize) -> Ring<PrimeField> {
    PolyRing::with_prefix(PrimeField::new(P).unwrap(), "x", n, MonomialOrder::Grevlex)
}

fn q_ring(n: usize) -> Ring<Rationals> {
    PolyRing::with_prefix(Rationals, "x", n, MonomialOrder::Grevlex)
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Block(1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_pairs_reduce_to_zero(
        (ord, gens) in order().prop_flat_map(|ord| {
            // elimination orders on dense random input blow up quickly
            let deg = if ord == MonomialOrder::Grevlex { 3 } else { 1 };
            (Just(ord), prop::collection::vec(terms(3, deg, 4), 1..=3))
        })
    ) {
        let r = fp_ring(3);
        let i = Ideal::new(&r, gens.iter().map(|t| build(&r, t)).collect());
        let gb = groebner_basis(&i, ord, &Budget::default()).unwrap();
        prop_assume!(gb.len() <= 30);
        prop_assert!(gb.verify_s_pairs());
        prop_assert!(gb.is_reduced());
        for g in i.generators() {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn s_pairs_reduce_to_zero_over_q(gens in prop::collection::vec(terms(3, 2, 3), 1..=3)) {
        let r = q_ring(3);
        let i = Ideal::new(&r, gens.iter().map(|t| build(&r, t)).collect());
        let gb = groebner_basis(&i, MonomialOrder::Grevlex, &Budget::default()).unwrap();
        prop_assert!(gb.verify_s_pairs());
        prop_assert!(gb.is_reduced());
    }

    #[test]
    fn normal_form_is_idempotent(gens in prop::collection::vec(terms(3, 3, 4), 1..=3), f in terms(3, 4, 6)) {
        let r = fp_ring(3);
        let i = Ideal::new(&r, gens.iter().map(|t| build(&r, t)).collect());
        let gb = groebner_basis(&i, MonomialOrder::Grevlex, &Budget::default()).unwrap();
        let f = build(&r, &f);
        let once = gb.normal_form(&f).unwrap();
        prop_assert_eq!(gb.normal_form(&once).unwrap(), once.clone());
        // f - NF(f) lies in the ideal
        prop_assert!(gb.contains(&f.sub(&once)).unwrap());
    }

    #[test]
    fn eliminants_lie_in_the_ideal(gens in prop::collection::vec(terms(3, 2, 4), 1..=3)) {
        let r = fp_ring(3);
        let i = Ideal::new(&r, gens.iter().map(|t| build(&r, t)).collect());
        let e = eliminate(&i, 1, &Budget::default()).unwrap();
        let gb = groebner_basis(&i, MonomialOrder::Grevlex, &Budget::default()).unwrap();
        let back: Vec<Option<usize>> = (0..3usize).map(|v| v.checked_sub(1)).collect();
        for g in e.generators() {
            let lifted = g.transfer(&r, &back);
            prop_assert!(gb.contains(&lifted).unwrap());
        }
    }

    #[test]
    fn saturation_contains_and_is_idempotent(
        gens in prop::collection::vec(terms(3, 2, 3), 1..=2),
        by in terms(3, 1, 2),
    ) {
        let r = fp_ring(3);
        let i = Ideal::new(&r, gens.iter().map(|t| build(&r, t)).collect());
        let j = Ideal::new(&r, vec![build(&r, &by)]);
        let b = Budget::default();
        let s = saturate(&i, &j, &b).unwrap();
        prop_assert!(s.contains_ideal(&i, &b).unwrap());
        let s2 = saturate(&s, &j, &b).unwrap();
        prop_assert!(s.equals(&s2, &b).unwrap());
    }

    #[test]
    fn hilbert_invariant_under_linear_change(
        gens in prop::collection::vec(homogeneous_terms(4, 2, 4), 1..=3),
        seed in any::<u64>(),
    ) {
        let r = fp_ring(4);
        let i = Ideal::new(&r, gens.iter().map(|t| build(&r, t)).collect());
        let b = Budget::default();
        let base = hilbert_invariants(&i, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let (m, _) = Matrix::random_invertible(r.field(), 4, &mut rng);
            let changed = hilbert_invariants(&i.linear_substitution(&m), &b).unwrap();
            prop_assert_eq!(&changed, &base);
        }
    }

    #[test]
    fn hilbert_agrees_across_primes_and_q(
        gens in prop::collection::vec(homogeneous_terms(4, 2, 3), 1..=3),
        seed in any::<u64>(),
    ) {
        let rq = q_ring(4);
        let i = Ideal::new(&rq, gens.iter().map(|t| build(&rq, t)).collect());
        let b = Budget::default();
        let exact = hilbert_invariants(&i, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..2 {
            let p = random_prime_near_2_31(&mut rng);
            let fp = PrimeField::new(p).unwrap();
            let rp = PolyRing::with_prefix(fp, "x", 4, MonomialOrder::Grevlex);
            let ip = Ideal::new(
                &rp,
                i.generators()
                    .iter()
                    .map(|g| g.map_coeffs(&rp, |c: &BigRational| Ok(rational_mod(c, &fp).unwrap())).unwrap())
                    .collect(),
            );
            prop_assert_eq!(hilbert_invariants(&ip, &b).unwrap(), exact.clone());
        }
    }

    #[test]
    fn factor_count_invariant_under_affine_maps(
        factors in prop::collection::vec(terms(2, 2, 3), 1..=3),
        a in prop::array::uniform6(-5i64..=5),
        scale in 1i64..50,
    ) {
        let r = fp_ring(2);
        let f = factors.iter().fold(Polynomial::one(&r), |acc, t| acc.mul(&build(&r, t)));
        prop_assume!(!f.is_constant());
        prop_assume!(entloc_algebra::bivariate::is_squarefree(&f).unwrap());
        let fld = r.field();
        let base = absolute_factor_count(&f).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let lin = |p: i64, q: i64, c: i64| {
            x.scale(&fld.from_i64(p)).add(&y.scale(&fld.from_i64(q))).add(&Polynomial::constant(&r, fld.from_i64(c)))
        };
        let det = a[0] * a[4] - a[1] * a[3];
        prop_assume!(det.rem_euclid(P as i64) != 0);
        let g = f.substitute(&[lin(a[0], a[1], a[2]), lin(a[3], a[4], a[5])]);
        prop_assert_eq!(absolute_factor_count(&g).unwrap(), base);
        prop_assert_eq!(absolute_factor_count(&f.scale(&fld.from_i64(scale))).unwrap(), base);
    }
}
