use entloc_algebra::field::PrimeField;
use entloc_algebra::hilbert::hilbert_function_values;
use entloc_algebra::{
    absolute_factor_count, eliminate, groebner_basis, hilbert_invariants, parse_polynomial,
    saturate, saturate_irrelevant, squarefree_part, AlgebraError, Budget, Field, Ideal, Matrix,
    MonomialOrder, PolyRing, Polynomial, Rationals, Ring, UniPoly,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(vars: &[&str]) -> Ring<Rationals> {
    PolyRing::new(Rationals, vars, MonomialOrder::Grevlex).unwrap()
}

fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
    Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect())
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Sylvester resultant of two polynomials in `t` with coefficients in
/// `Q[x, y]`, evaluated at a point: the determinant of the Sylvester matrix
/// of the specialized univariate polynomials.
fn resultant_at(a: &[BigRational], b: &[BigRational]) -> BigRational {
    // a, b ascending coefficients in t
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = vec![vec![q(0); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    Matrix::from_rows(&Rationals, rows).determinant()
}

#[test]
fn basis_of_a_single_variable() {
    let r = ring(&["x", "y"]);
    let gb = groebner_basis(&ideal(&r, &["x"]), MonomialOrder::Grevlex, &Budget::default()).unwrap();
    let shown: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
    assert_eq!(shown, vec!["x"]);
}

#[test]
fn cuspidal_cubic_by_elimination() {
    let r = ring(&["t", "x", "y"]);
    let i = ideal(&r, &["x - t^2", "y - t^3"]);
    let gb = groebner_basis(&i, MonomialOrder::Block(1), &Budget::default()).unwrap();
    let elim = gb.eliminated(1);
    assert_eq!(elim.len(), 1);
    let g = &elim[0];
    // substitution oracle: g(t^2, t^3) = 0 identically
    let t = Polynomial::var(&r, 0);
    let sub = g.substitute(&[t.clone(), t.pow(2), t.pow(3)]);
    assert!(sub.is_zero());
    // minimality oracle: the resultant Res_t(x - t^2, y - t^3) is a
    // generator; compare values at sample points up to one global scalar
    let e = eliminate(&i, 1, &Budget::default()).unwrap();
    let h = &e.generators()[0];
    let mut ratio: Option<BigRational> = None;
    for (x, y) in [(2, 3), (5, -1), (-3, 7), (4, 4)] {
        let res = resultant_at(&[q(x), q(0), q(-1)], &[q(y), q(0), q(0), q(-1)]);
        let val = h.eval(&[q(x), q(y)]);
        assert_ne!(res, q(0));
        let r = val / res;
        if let Some(prev) = &ratio {
            assert_eq!(&r, prev);
        }
        ratio = Some(r);
    }
    assert_eq!(h.total_degree(), Some(3));
}

#[test]
fn circle_and_diagonal_in_shape_position() {
    let r = ring(&["x", "y"]);
    let gb = groebner_basis(
        &ideal(&r, &["x^2 + y^2 - 1", "x - y"]),
        MonomialOrder::Grevlex,
        &Budget::default(),
    )
    .unwrap();
    let leads: Vec<String> = gb
        .leading_monomials()
        .iter()
        .map(|m| Polynomial::monomial(&r, q(1), m.clone()).to_string())
        .collect();
    let mut leads = leads;
    leads.sort();
    assert_eq!(leads, vec!["x", "y^2"]);
    // hand substitution x = y gives 2 y^2 = 1: two solutions
    let y2 = gb.basis().iter().find(|g| g.degree_in(1) == 2).unwrap();
    assert_eq!(y2.to_string(), "y^2 - 1/2");
}

#[test]
fn normal_forms() {
    let r = ring(&["x", "y"]);
    let gb = groebner_basis(&ideal(&r, &["x"]), MonomialOrder::Grevlex, &Budget::default()).unwrap();
    let p = |s: &str| parse_polynomial(s, &r).unwrap();
    assert!(gb.normal_form(&p("x^2")).unwrap().is_zero());
    assert_eq!(gb.normal_form(&p("y")).unwrap(), p("y"));

    let r3 = ring(&["t", "x", "y"]);
    let gb = groebner_basis(
        &ideal(&r3, &["x - t^2", "y - t^3"]),
        MonomialOrder::Block(1),
        &Budget::default(),
    )
    .unwrap();
    assert!(gb
        .normal_form(&parse_polynomial("y^2 - x^3", &r3).unwrap())
        .unwrap()
        .is_zero());
}

#[test]
fn normal_form_rejects_foreign_ring() {
    let r = ring(&["x", "y"]);
    let other = ring(&["a", "b"]);
    let gb = groebner_basis(&ideal(&r, &["x"]), MonomialOrder::Grevlex, &Budget::default()).unwrap();
    let err = gb.normal_form(&parse_polynomial("a", &other).unwrap()).unwrap_err();
    assert_eq!(err, AlgebraError::RingMismatch);
}

/// The twisted cubic from the minors of `[y; (s^3, s^2 u, s u^2, u^3)]`.
fn twisted_cubic_by_minors() -> Ideal<Rationals> {
    let r = ring(&["s", "u", "y0", "y1", "y2", "y3"]);
    let param = ["s^3", "s^2*u", "s*u^2", "u^3"];
    let mut minors = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            minors.push(format!("y{i}*{} - y{j}*{}", param[j], param[i]));
        }
    }
    let refs: Vec<&str> = minors.iter().map(String::as_str).collect();
    let i = ideal(&r, &refs);
    let params = ideal(&r, &["s", "u"]);
    let sat = saturate(&i, &params, &Budget::default()).unwrap();
    eliminate(&sat, 2, &Budget::default()).unwrap()
}

#[test]
fn twisted_cubic_from_minors() {
    let tc = twisted_cubic_by_minors();
    assert_eq!(tc.generators().len(), 3);
    assert!(tc.generators().iter().all(|g| g.total_degree() == Some(2)));
    // each quadric vanishes on the parametrization
    let pr = ring(&["s", "u"]);
    let s = Polynomial::var(&pr, 0);
    let u = Polynomial::var(&pr, 1);
    let images = [s.pow(3), s.pow(2).mul(&u), s.mul(&u.pow(2)), u.pow(3)];
    for g in tc.generators() {
        assert!(g.substitute(&images).is_zero(), "{g}");
    }
    // 3 independent quadrics: the evaluation matrix of all 10 quadric
    // monomials at 10 sampled points has a 3-dimensional kernel
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut rows = Vec::new();
    for _ in 0..10 {
        let sv = Rationals.random(&mut rng);
        let uv = Rationals.random(&mut rng);
        let pt: Vec<BigRational> = images.iter().map(|p| p.eval(&[sv.clone(), uv.clone()])).collect();
        let mut row = Vec::new();
        for a in 0..4 {
            for b in a..4 {
                row.push(&pt[a] * &pt[b]);
            }
        }
        rows.push(row);
    }
    let m = Matrix::from_rows(&Rationals, rows);
    assert_eq!(m.kernel_basis().len(), 3);
}

#[test]
fn saturation_examples() {
    let r = ring(&["x", "y", "z"]);
    let b = Budget::default();
    let show = |i: Ideal<Rationals>| -> Vec<String> {
        let mut v: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
        v.sort();
        v
    };
    assert_eq!(show(saturate(&ideal(&r, &["x*y"]), &ideal(&r, &["x"]), &b).unwrap()), vec!["y"]);
    assert_eq!(show(saturate(&ideal(&r, &["x^2"]), &ideal(&r, &["x"]), &b).unwrap()), vec!["1"]);
    assert_eq!(
        show(saturate(&ideal(&r, &["x*z", "y*z"]), &ideal(&r, &["z"]), &b).unwrap()),
        vec!["x", "y"]
    );
}

#[test]
fn twisted_cubic_hilbert_invariants() {
    let tc = twisted_cubic_by_minors();
    let h = hilbert_invariants(&tc, &Budget::default()).unwrap();
    assert_eq!(h.projective_dim, Some(1));
    assert_eq!(h.degree, 3);
    assert_eq!(h.arithmetic_genus(), Some(0));

    // slicing oracle: a random hyperplane pulls back to a binary cubic with
    // 3 distinct roots
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c: Vec<BigRational> = (0..4).map(|_| Rationals.random(&mut rng)).collect();
    // h(s^3, s^2, s, 1) in the chart u = 1
    let cubic = UniPoly::new(&Rationals, vec![c[3].clone(), c[2].clone(), c[1].clone(), c[0].clone()]);
    assert_eq!(cubic.squarefree_part().unwrap().degree(), Some(3));

    // the degree-k part is spanned by the binary forms of degree 3k
    let vals = hilbert_function_values(&h, 8);
    for (k, v) in vals.iter().enumerate() {
        assert_eq!(*v, BigInt::from(3 * k + 1));
    }
}

#[test]
fn complete_intersection_of_two_quadrics() {
    let r = ring(&["x0", "x1", "x2", "x3"]);
    let i = ideal(
        &r,
        &[
            "x0^2 + x1^2 + x2^2 + x3^2",
            "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2",
        ],
    );
    let h = hilbert_invariants(&i, &Budget::default()).unwrap();
    // Koszul oracle: HS = (1 - t^2)^2 / (1 - t)^4; expand the series
    let num = [1i64, 0, -2, 0, 1];
    let coeff = |k: usize| -> i64 {
        // 1/(1-t)^4 has coefficients binom(k + 3, 3)
        (0..=k.min(4))
            .map(|i| num[i] * (((k - i + 1) * (k - i + 2) * (k - i + 3)) / 6) as i64)
            .sum()
    };
    let slope = coeff(21) - coeff(20);
    let constant = coeff(20) - slope * 20;
    assert_eq!(h.projective_dim, Some(1));
    assert_eq!(h.degree as i64, slope);
    assert_eq!(h.arithmetic_genus(), Some(1 - constant));
    assert_eq!(h.degree, 4);
    assert_eq!(h.arithmetic_genus(), Some(1));
}

#[test]
fn irrelevant_ideal_is_empty() {
    let r = ring(&["x0", "x1", "x2"]);
    let h = hilbert_invariants(&ideal(&r, &["x0", "x1", "x2"]), &Budget::default()).unwrap();
    assert!(h.is_empty());
    assert_eq!(h.degree, 0);
    assert_eq!(h.projective_dim, None);
}

#[test]
fn hilbert_requires_homogeneous_input() {
    let r = ring(&["x", "y"]);
    let err = hilbert_invariants(&ideal(&r, &["x^2 - y"]), &Budget::default()).unwrap_err();
    assert_eq!(err, AlgebraError::NotHomogeneous);
}

#[test]
fn kernel_examples() {
    let id = Matrix::identity(&Rationals, 3);
    assert!(id.kernel_basis().is_empty());
    assert_eq!(id.rank(), 3);
    let z = Matrix::zeros(&Rationals, 2, 4);
    assert_eq!(z.kernel_basis().len(), 4);
    let m = Matrix::from_i64(&Rationals, &[vec![1, 2], vec![2, 4]]);
    let k = m.kernel_basis();
    assert_eq!(m.rank(), 1);
    assert_eq!(k.len(), 1);
    // proportional to (2, -1)
    assert_eq!(&k[0][0] * q(-1), &k[0][1] * q(2));
}

#[test]
fn squarefree_examples() {
    let r = ring(&["x", "y"]);
    let p = |s: &str| parse_polynomial(s, &r).unwrap();
    let a = p("x - y").pow(2).mul(&p("x + y"));
    assert_eq!(squarefree_part(&a).unwrap(), p("x^2 - y^2"));
    let sq = p("x^2 - y^2");
    assert_eq!(squarefree_part(&sq).unwrap(), sq);
    assert_eq!(squarefree_part(&p("x^4 - 2*x^2*y^2 + y^4")).unwrap(), p("x^2 - y^2"));
}

#[test]
fn squarefree_needs_large_characteristic() {
    let f = PrimeField::new(3).unwrap();
    let r = PolyRing::new(f, &["x", "y"], MonomialOrder::Grevlex).unwrap();
    let p = parse_polynomial("x^3 + y^3 + x*y", &r).unwrap();
    assert!(matches!(
        squarefree_part(&p),
        Err(AlgebraError::CharacteristicTooSmall { .. })
    ));
}

#[test]
fn absolute_factor_examples() {
    let r = ring(&["x", "y"]);
    let p = |s: &str| parse_polynomial(s, &r).unwrap();
    assert_eq!(absolute_factor_count(&p("x^2 - y^2")).unwrap(), 2);
    assert_eq!(absolute_factor_count(&p("x^2 + y^2")).unwrap(), 2);
    assert_eq!(absolute_factor_count(&p("y^2 - x^3 + x")).unwrap(), 1);
}

#[test]
fn elliptic_curve_is_smooth_in_the_projective_plane() {
    // independent irreducibility oracle for y^2 - x^3 + x: the projective
    // closure is smooth, hence connected and irreducible
    let r = ring(&["x", "y", "z"]);
    let f = parse_polynomial("y^2*z - x^3 + x*z^2", &r).unwrap();
    let sing = Ideal::new(
        &r,
        vec![f.clone(), f.derivative(0), f.derivative(1), f.derivative(2)],
    );
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sat = saturate_irrelevant(&sing, &mut rng, &Budget::default()).unwrap();
    assert!(sat.is_unit(&Budget::default()).unwrap());
}

#[test]
fn budget_exhaustion_is_an_error() {
    let r = ring(&["x", "y", "z", "w"]);
    let i = ideal(
        &r,
        &["x^3 - y*z*w + 1", "y^3 - x*z + 2*w", "z^3 - x*y*w - 3", "w^2 - x*y + z"],
    );
    let err = groebner_basis(&i, MonomialOrder::Lex, &Budget::default().with_steps(5)).unwrap_err();
    assert!(matches!(err, AlgebraError::Budget(_)));
}
