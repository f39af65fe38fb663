//! Ideals and the elimination-based constructions built on Gröbner bases:
//! elimination, saturation, intersection and linear changes of coordinates.

use rand::Rng;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::linalg::Matrix;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    homogeneous: bool,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Self {
        let gens: Vec<Polynomial<F>> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .inspect(|g| {
                assert!(same_ring(g.ring(), ring), "generator from a different ring");
            })
            .collect();
        let homogeneous = gens.iter().all(|g| g.is_homogeneous());
        Ideal {
            ring: ring.clone(),
            gens,
            homogeneous,
        }
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: &Ring<F>) -> Self {
        Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn require_homogeneous(&self) -> Result<()> {
        if self.homogeneous {
            Ok(())
        } else {
            Err(AlgebraError::NotHomogeneous)
        }
    }

    pub fn groebner(&self, order: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis<F>> {
        groebner_basis(self, order, budget)
    }

    /// Grevlex basis, re-expressed in this ideal's ring order.
    pub fn reduced(&self, budget: &Budget) -> Result<Ideal<F>> {
        let gb = self.groebner(MonomialOrder::Grevlex, budget)?;
        Ok(Ideal::new(
            &self.ring,
            gb.basis().iter().map(|g| g.reorder(&self.ring)).collect(),
        ))
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        assert!(same_ring(&self.ring, &other.ring));
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial<F>>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        let gb = self.groebner(MonomialOrder::Grevlex, budget)?;
        for g in other.generators() {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        Ok(self.contains_ideal(other, budget)? && other.contains_ideal(self, budget)?)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::Grevlex, budget)?.is_unit())
    }

    /// Substitutes `x_i -> sum_j m[i][j] x_j`.
    pub fn linear_substitution(&self, m: &Matrix<F>) -> Ideal<F> {
        let images = linear_forms(&self.ring, m);
        Ideal::new(
            &self.ring,
            self.gens.iter().map(|g| g.substitute(&images)).collect(),
        )
    }

    /// Moves the ideal into `target` with the variable correspondence of
    /// [`Polynomial::transfer`].
    pub fn transfer(&self, target: &Ring<F>, source_of: &[Option<usize>]) -> Ideal<F> {
        Ideal::new(
            target,
            self.gens.iter().map(|g| g.transfer(target, source_of)).collect(),
        )
    }
}

/// The linear forms `sum_j m[i][j] x_j`, one per row.
pub fn linear_forms<F: Field>(ring: &Ring<F>, m: &Matrix<F>) -> Vec<Polynomial<F>> {
    assert_eq!(m.cols(), ring.nvars());
    (0..m.rows())
        .map(|i| linear_form(ring, m.row(i)))
        .collect()
}

pub fn linear_form<F: Field>(ring: &Ring<F>, coeffs: &[F::Elem]) -> Polynomial<F> {
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| (c.clone(), crate::monomial::Monomial::variable(ring.nvars(), j, 1)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Generators of `I ∩ k[x_k, .., x_{n-1}]`, returned in the subring on the
/// remaining variables (grevlex). `k = 0` returns the reduced basis of `I`.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, k: usize, budget: &Budget) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    if k > ring.nvars() {
        return Err(AlgebraError::Invalid(format!(
            "cannot eliminate {k} of {} variables",
            ring.nvars()
        )));
    }
    let order = if k == 0 {
        MonomialOrder::Grevlex
    } else {
        MonomialOrder::Block(k)
    };
    let gb = ideal.groebner(order, budget)?;
    let sub = ring.subring(k..ring.nvars(), MonomialOrder::Grevlex);
    let map: Vec<Option<usize>> = (k..ring.nvars()).map(Some).collect();
    let gens = gb
        .eliminated(k)
        .iter()
        .map(|g| g.transfer(&sub, &map))
        .collect();
    Ok(Ideal::new(&sub, gens))
}

/// `(I : g^∞)` via an auxiliary variable `w` and the relation `w g - 1`.
pub fn saturate_by_element<F: Field>(
    ideal: &Ideal<F>,
    g: &Polynomial<F>,
    budget: &Budget,
) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    if g.is_constant() {
        return Ok(ideal.clone());
    }
    let w = ring.fresh_name("w");
    let big = ring.prepend_vars(&[w], MonomialOrder::Block(1))?;
    let map: Vec<Option<usize>> = std::iter::once(None)
        .chain((0..ring.nvars()).map(Some))
        .collect();
    let mut gens: Vec<Polynomial<F>> = ideal
        .generators()
        .iter()
        .map(|f| f.transfer(&big, &map))
        .collect();
    let wg = Polynomial::var(&big, 0).mul(&g.transfer(&big, &map));
    gens.push(wg.sub(&Polynomial::one(&big)));
    let elim = eliminate(&Ideal::new(&big, gens), 1, budget)?;
    Ok(back_to(&elim, ring))
}

fn back_to<F: Field>(ideal: &Ideal<F>, ring: &Ring<F>) -> Ideal<F> {
    let map: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    ideal.transfer(ring, &map)
}

/// `(I : x_var^∞)` for homogeneous `I` using a grevlex basis with `x_var`
/// as the smallest variable: dividing every basis element by its largest
/// power of `x_var` gives a basis of the saturation.
pub fn saturate_by_variable<F: Field>(
    ideal: &Ideal<F>,
    var: usize,
    budget: &Budget,
) -> Result<Ideal<F>> {
    if !ideal.is_homogeneous() {
        let x = Polynomial::var(ideal.ring(), var);
        return saturate_by_element(ideal, &x, budget);
    }
    let ring = ideal.ring();
    let n = ring.nvars();
    // permuted ring: var moved to the end
    let perm: Vec<usize> = (0..n).filter(|&i| i != var).chain(std::iter::once(var)).collect();
    let names: Vec<String> = perm.iter().map(|&i| ring.vars()[i].clone()).collect();
    let pring = crate::ring::PolyRing::new(ring.field().clone(), &names, MonomialOrder::Grevlex)?;
    let to_perm: Vec<Option<usize>> = perm.iter().map(|&i| Some(i)).collect();
    let pideal = ideal.transfer(&pring, &to_perm);
    let gb = pideal.groebner(MonomialOrder::Grevlex, budget)?;
    let stripped: Vec<Polynomial<F>> = gb.basis().iter().map(|g| g.strip_var_power(n - 1)).collect();
    let mut back: Vec<Option<usize>> = vec![None; n];
    for (pos, &orig) in perm.iter().enumerate() {
        back[orig] = Some(pos);
    }
    Ok(Ideal::new(&pring, stripped).transfer(ring, &back))
}

/// `I ∩ J` via `u I + (1 - u) J` and elimination of `u`.
pub fn intersect<F: Field>(a: &Ideal<F>, b: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
    let ring = a.ring();
    assert!(same_ring(ring, b.ring()));
    let u = ring.fresh_name("u");
    let big = ring.prepend_vars(&[u], MonomialOrder::Block(1))?;
    let map: Vec<Option<usize>> = std::iter::once(None)
        .chain((0..ring.nvars()).map(Some))
        .collect();
    let uvar = Polynomial::var(&big, 0);
    let one_minus_u = Polynomial::one(&big).sub(&uvar);
    let mut gens = Vec::new();
    for f in a.generators() {
        gens.push(uvar.mul(&f.transfer(&big, &map)));
    }
    for f in b.generators() {
        gens.push(one_minus_u.mul(&f.transfer(&big, &map)));
    }
    let elim = eliminate(&Ideal::new(&big, gens), 1, budget)?;
    Ok(back_to(&elim, ring))
}

/// `(I : J^∞) = ∩_g (I : g^∞)` over the generators `g` of `J`.
pub fn saturate<F: Field>(ideal: &Ideal<F>, by: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
    assert!(same_ring(ideal.ring(), by.ring()));
    let mut acc: Option<Ideal<F>> = None;
    for g in by.generators() {
        let single = if g.len() == 1 && g.total_degree() == Some(1) {
            let var = g.support_vars()[0];
            saturate_by_variable(ideal, var, budget)?
        } else {
            saturate_by_element(ideal, g, budget)?
        };
        acc = Some(match acc {
            None => single,
            Some(prev) => intersect(&prev, &single, budget)?,
        });
    }
    match acc {
        // saturating by the zero ideal
        None => Ok(ideal.clone()),
        Some(i) => i.reduced(budget),
    }
}

/// `(I : m^∞)` for the irrelevant ideal `m`, computed as `(I : h^∞)` for a
/// random linear form `h`. A general `h` avoids every associated prime of
/// `I` other than `m`, so the two saturations agree.
pub fn saturate_irrelevant<F: Field, R: Rng + ?Sized>(
    ideal: &Ideal<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Ideal<F>> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let n = ring.nvars();
    if ideal.generators().is_empty() || n == 0 {
        return Ok(ideal.clone());
    }
    let field = ring.field();
    // y = T x with T random and invertible; the last coordinate is h
    let (t, tinv) = Matrix::random_invertible(field, n, rng);
    let in_y = ideal.linear_substitution(&tinv);
    let sat = saturate_by_variable(&in_y, n - 1, budget)?;
    sat.linear_substitution(&t).reduced(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::parse_polynomial;
    use crate::ring::PolyRing;

    fn ring(vars: &[&str]) -> Ring<Rationals> {
        PolyRing::new(Rationals, vars, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect())
    }

    fn gens_str(i: &Ideal<Rationals>) -> Vec<String> {
        i.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn eliminate_parameter_of_cusp() {
        let r = ring(&["t", "x", "y"]);
        let i = ideal(&r, &["x - t^2", "y - t^3"]);
        let e = eliminate(&i, 1, &Budget::default()).unwrap();
        assert_eq!(gens_str(&e), vec!["x^3 - y^2"]);
    }

    #[test]
    fn eliminate_nothing_is_groebner_basis() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2 + y^2 - 1", "x - y"]);
        let e = eliminate(&i, 0, &Budget::default()).unwrap();
        let gb = i.groebner(MonomialOrder::Grevlex, &Budget::default()).unwrap();
        assert_eq!(e.generators().len(), gb.len());
    }

    #[test]
    fn saturation_examples() {
        let b = Budget::default();
        let r = ring(&["x", "y", "z"]);
        let s = saturate(&ideal(&r, &["x*y"]), &ideal(&r, &["x"]), &b).unwrap();
        assert_eq!(gens_str(&s), vec!["y"]);
        let s = saturate(&ideal(&r, &["x^2"]), &ideal(&r, &["x"]), &b).unwrap();
        assert_eq!(gens_str(&s), vec!["1"]);
        let s = saturate(&ideal(&r, &["x*z", "y*z"]), &ideal(&r, &["z"]), &b).unwrap();
        let mut g = gens_str(&s);
        g.sort();
        assert_eq!(g, vec!["x", "y"]);
    }

    #[test]
    fn saturation_by_non_monomial_element() {
        let b = Budget::default();
        let r = ring(&["x", "y"]);
        // (x + y) * (x - 1) saturated by x - 1
        let s = saturate(&ideal(&r, &["x^2 + x*y - x - y"]), &ideal(&r, &["x - 1"]), &b).unwrap();
        assert_eq!(gens_str(&s), vec!["x + y"]);
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = ring(&["x", "y"]);
        let i = intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &Budget::default()).unwrap();
        assert_eq!(gens_str(&i), vec!["x*y"]);
    }

    #[test]
    fn irrelevant_saturation_removes_embedded_origin() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let r = ring(&["x", "y", "z"]);
        // line x = 0 with an embedded point at the origin of the cone
        let i = ideal(&r, &["x^2", "x*y", "x*z"]);
        let s = saturate_irrelevant(&i, &mut rng, &Budget::default()).unwrap();
        assert_eq!(gens_str(&s), vec!["x"]);
    }
}
