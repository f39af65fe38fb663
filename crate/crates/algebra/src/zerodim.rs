//! Zero-dimensional affine ideals: the finite-dimensional quotient, minimal
//! polynomials, point counts and (over prime fields) the rational points.

use std::collections::HashMap;

use rand::Rng;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::ideal::{linear_form, Ideal};
use crate::linalg::Matrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::univariate::UniPoly;

/// The quotient `S/I` of a zero-dimensional ideal with its monomial basis.
pub struct Quotient<F: Field> {
    gb: GroebnerBasis<F>,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<F: Field> Quotient<F> {
    pub fn new(ideal: &Ideal<F>, budget: &Budget) -> Result<Self> {
        let gb = ideal.groebner(MonomialOrder::Grevlex, budget)?;
        let standard = standard_monomials(&gb)?;
        let index = standard
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(Quotient {
            gb,
            standard,
            index,
        })
    }

    /// `dim_F S/I`, the number of points counted with multiplicity.
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    /// Coordinates of the normal form in the standard-monomial basis.
    pub fn coords(&self, f: &Polynomial<F>) -> Result<Vec<F::Elem>> {
        let field = self.gb.ring().field();
        let nf = self.gb.normal_form(f)?;
        let mut v = vec![field.zero(); self.dim()];
        for (c, m) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    /// Minimal polynomial of multiplication by `h`.
    pub fn minimal_polynomial(&self, h: &Polynomial<F>, budget: &Budget) -> Result<UniPoly<F>> {
        let field = self.gb.ring().field().clone();
        let n = self.dim();
        if n == 0 {
            return Ok(UniPoly::one(&field));
        }
        let h = self.gb.normal_form(h)?;
        let mut powers: Vec<Vec<F::Elem>> = Vec::new();
        let mut cur = Polynomial::one(self.gb.ring());
        for k in 0..=n {
            budget.check_time()?;
            let v = self.coords(&cur)?;
            if k > 0 {
                let cols = Matrix::from_rows(&field, powers.clone()).transpose();
                if let Some(c) = cols.solve(&v) {
                    let mut coeffs: Vec<F::Elem> = c.iter().map(|x| field.neg(x)).collect();
                    coeffs.push(field.one());
                    return Ok(UniPoly::new(&field, coeffs));
                }
            }
            powers.push(v);
            cur = self.gb.normal_form(&cur.mul(&h))?;
        }
        Err(AlgebraError::Invalid("minimal polynomial exceeds the quotient dimension".into()))
    }
}

/// Standard monomials of a zero-dimensional basis; errors when the ideal
/// is positive-dimensional.
fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>) -> Result<Vec<Monomial>> {
    let n = gb.ring().nvars();
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let leads = gb.leading_monomials();
    let mut bound = vec![0u16; n];
    for v in 0..n {
        let pure = leads
            .iter()
            .filter(|m| m.degree() == m.exponent(v) as u32 && m.exponent(v) > 0)
            .map(|m| m.exponent(v))
            .min();
        match pure {
            Some(e) => bound[v] = e,
            None => {
                return Err(AlgebraError::Invalid(
                    "ideal is not zero-dimensional".into(),
                ))
            }
        }
    }
    let mut out = Vec::new();
    let mut e = vec![0u16; n];
    // enumerate the box below the pure powers, keeping non-multiples
    loop {
        let m = Monomial::from_exponents(&e);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Points of a zero-dimensional ideal.
#[derive(Clone, Debug)]
pub struct PointSet<F: Field> {
    /// Distinct points over the algebraic closure.
    pub count: usize,
    /// The points with coordinates in the base field (prime fields only;
    /// empty over ℚ).
    pub rational: Vec<Vec<F::Elem>>,
}

/// The radical `I + (sqfree(μ_i)(x_i))` with `μ_i` the minimal polynomial
/// of each coordinate.
pub fn radical<F: Field>(ideal: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
    let q = Quotient::new(ideal, budget)?;
    if q.dim() == 0 {
        return Ok(Ideal::unit(ideal.ring()));
    }
    let ring = ideal.ring();
    let mut extra = Vec::new();
    for v in 0..ring.nvars() {
        let x = Polynomial::var(ring, v);
        let mu = q.minimal_polynomial(&x, budget)?;
        let sq = mu.squarefree_part()?;
        if sq.degree() != mu.degree() {
            extra.push(sq.to_polynomial(ring, v));
        }
    }
    if extra.is_empty() {
        return Ok(ideal.clone());
    }
    ideal.with_generators(extra).reduced(budget)
}

/// Counts (and over `F_p` lists) the points of a zero-dimensional ideal.
pub fn solve<F: Field, R: Rng + ?Sized>(
    ideal: &Ideal<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<PointSet<F>> {
    let rad = radical(ideal, budget)?;
    let q = Quotient::new(&rad, budget)?;
    let count = q.dim();
    let field = rad.ring().field().clone();
    if count == 0 || field.characteristic() == 0 {
        return Ok(PointSet {
            count,
            rational: Vec::new(),
        });
    }
    let ring = q.basis().ring().clone();
    let n = ring.nvars();
    // a separating linear form has minimal polynomial of full degree
    for _ in 0..16 {
        let coeffs: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
        let l = linear_form(&ring, &coeffs);
        let mu = q.minimal_polynomial(&l, budget)?;
        if mu.degree() != Some(count) {
            continue;
        }
        // x_v = phi_v(L) in the quotient
        let mut lpow = Vec::with_capacity(count);
        let mut cur = Polynomial::one(&ring);
        for _ in 0..count {
            lpow.push(q.coords(&cur)?);
            cur = q.basis().normal_form(&cur.mul(&l))?;
        }
        let a = Matrix::from_rows(&field, lpow).transpose();
        let mut phis = Vec::with_capacity(n);
        for v in 0..n {
            let target = q.coords(&Polynomial::var(&ring, v))?;
            let c = a
                .solve(&target)
                .ok_or_else(|| AlgebraError::Invalid("coordinate outside span of powers".into()))?;
            phis.push(UniPoly::new(&field, c));
        }
        let roots = mu.roots(rng)?;
        let rational = roots
            .iter()
            .map(|t| phis.iter().map(|phi| phi.eval(t)).collect())
            .collect();
        return Ok(PointSet { count, rational });
    }
    Err(AlgebraError::Invalid("no separating linear form found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;
    use crate::ring::PolyRing;
    use rand::SeedableRng;

    #[test]
    fn circle_meets_diagonal() {
        let r = PolyRing::new(Rationals, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let i = Ideal::new(
            &r,
            vec![
                parse_polynomial("x^2 + y^2 - 1", &r).unwrap(),
                parse_polynomial("x - y", &r).unwrap(),
            ],
        );
        let q = Quotient::new(&i, &Budget::default()).unwrap();
        assert_eq!(q.dim(), 2);
        let mut rng = rand::rngs::StdRng::seed_from_u64(0);
        assert_eq!(solve(&i, &mut rng, &Budget::default()).unwrap().count, 2);
    }

    #[test]
    fn multiplicity_is_removed_and_points_listed() {
        let f = PrimeField::new(10007).unwrap();
        let r = PolyRing::new(f, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        // double point at (1, 2) and a simple point at (3, 4)
        let i = Ideal::new(
            &r,
            vec![
                parse_polynomial("x^3 - 5*x^2 + 7*x - 3", &r).unwrap(),
                parse_polynomial("y - x - 1", &r).unwrap(),
            ],
        );
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        let pts = solve(&i, &mut rng, &Budget::default()).unwrap();
        assert_eq!(pts.count, 2);
        let mut got = pts.rational.clone();
        got.sort();
        assert_eq!(got, vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn positive_dimensional_rejected() {
        let r = PolyRing::new(Rationals, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let i = Ideal::new(&r, vec![parse_polynomial("x*y", &r).unwrap()]);
        assert!(Quotient::new(&i, &Budget::default()).is_err());
    }
}
