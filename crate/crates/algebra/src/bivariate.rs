//! Polynomials in at most two effective variables: gcd, squarefree part and
//! the count (and degrees) of absolutely irreducible factors.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};
use crate::univariate::{charpoly, UniPoly};

/// `f = sum_i c_i(y) x^i`, no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bi<F: Field> {
    field: F,
    c: Vec<UniPoly<F>>,
}

impl<F: Field> Bi<F> {
    fn new(field: &F, mut c: Vec<UniPoly<F>>) -> Self {
        while c.last().is_some_and(|u| u.is_zero()) {
            c.pop();
        }
        Bi {
            field: field.clone(),
            c,
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg_x(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> &UniPoly<F> {
        self.c.last().expect("nonzero")
    }

    fn content(&self) -> UniPoly<F> {
        self.c
            .iter()
            .fold(UniPoly::zero(&self.field), |acc, u| acc.gcd(u))
    }

    fn mul_uni(&self, u: &UniPoly<F>) -> Self {
        Bi::new(&self.field, self.c.iter().map(|c| c.mul(u)).collect())
    }

    fn div_uni(&self, u: &UniPoly<F>) -> Self {
        Bi::new(
            &self.field,
            self.c
                .iter()
                .map(|c| c.div_exact(u).expect("content divides"))
                .collect(),
        )
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let pp = self.div_uni(&self.content());
        // normalize: leading coefficient monic in y
        let l = pp.lc().leading().cloned().expect("nonzero");
        let inv = self.field.inv(&l).expect("nonzero");
        pp.mul_uni(&UniPoly::constant(&self.field, inv))
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let zero = UniPoly::zero(&self.field);
        Bi::new(
            &self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&zero).sub(o.c.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    fn shift_x(&self, k: usize) -> Self {
        let mut c = vec![UniPoly::zero(&self.field); k];
        c.extend(self.c.iter().cloned());
        Bi::new(&self.field, c)
    }

    /// Pseudo-remainder with respect to `x`.
    fn prem(&self, b: &Self) -> Self {
        let mut a = self.clone();
        let db = b.deg_x();
        while !a.is_zero() && a.deg_x() >= db {
            let shift = a.deg_x() - db;
            let t = b.mul_uni(a.lc()).shift_x(shift);
            a = a.mul_uni(b.lc()).sub(&t);
        }
        a
    }

    /// gcd, normalized as in [`Bi::primitive`] times a monic content.
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.deg_x() < b.deg_x() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().mul_uni(&c)
    }

    fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.primitive().mul_uni(&self.content().monic())
    }
}

/// Variables of a polynomial with at most two effective variables,
/// padded to a pair when possible.
fn plane_vars<F: Field>(polys: &[&Polynomial<F>]) -> Result<(usize, Option<usize>)> {
    let ring = polys[0].ring();
    let mut support: Vec<usize> = polys.iter().flat_map(|p| p.support_vars()).collect();
    support.sort_unstable();
    support.dedup();
    if support.len() > 2 {
        return Err(AlgebraError::Invalid(format!(
            "expected at most two effective variables, found {}",
            support.len()
        )));
    }
    let extra: Vec<usize> = (0..ring.nvars()).filter(|v| !support.contains(v)).collect();
    for v in extra {
        if support.len() >= 2 {
            break;
        }
        support.push(v);
    }
    match support.as_slice() {
        [] => Err(AlgebraError::Invalid("ring without variables".into())),
        [x] => Ok((*x, None)),
        [x, y, ..] => Ok((*x, Some(*y))),
    }
}

fn to_bi<F: Field>(p: &Polynomial<F>, x: usize, y: Option<usize>) -> Bi<F> {
    let f = p.field();
    let dx = p.degree_in(x) as usize;
    let dy = y.map_or(0, |y| p.degree_in(y) as usize);
    let mut c = vec![vec![f.zero(); dy + 1]; dx + 1];
    for (coef, m) in p.terms() {
        let i = m.exponent(x) as usize;
        let j = y.map_or(0, |y| m.exponent(y) as usize);
        c[i][j] = f.add(&c[i][j], coef);
    }
    Bi::new(f, c.into_iter().map(|v| UniPoly::new(f, v)).collect())
}

fn from_bi<F: Field>(b: &Bi<F>, ring: &Ring<F>, x: usize, y: Option<usize>) -> Polynomial<F> {
    let n = ring.nvars();
    let mut terms = Vec::new();
    for (i, u) in b.c.iter().enumerate() {
        for (j, coef) in u.coeffs().iter().enumerate() {
            if b.field.is_zero(coef) {
                continue;
            }
            let mut e = vec![0u16; n];
            e[x] += i as u16;
            if let Some(y) = y {
                e[y] += j as u16;
            }
            terms.push((coef.clone(), Monomial::from_exponents(&e)));
        }
    }
    Polynomial::from_terms(ring, terms)
}

/// Greatest common divisor of polynomials in at most two effective
/// variables (up to a nonzero scalar).
pub fn gcd2<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    let (x, y) = plane_vars(&[a, b])?;
    let g = to_bi(a, x, y).gcd(&to_bi(b, x, y));
    Ok(from_bi(&g, a.ring(), x, y))
}

fn check_char<F: Field>(f: &Polynomial<F>, need_above: u64) -> Result<()> {
    let p = f.field().characteristic();
    if p != 0 && p <= need_above {
        return Err(AlgebraError::CharacteristicTooSmall {
            char: p,
            need: need_above + 1,
        });
    }
    Ok(())
}

/// `gcd(f, ∂f/∂x, ∂f/∂y)`: the repeated part of `f`.
fn repeated_part<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let (x, y) = plane_vars(&[f])?;
    let mut g = to_bi(f, x, y);
    g = g.gcd(&to_bi(&f.derivative(x), x, y));
    if let Some(yv) = y {
        g = g.gcd(&to_bi(&f.derivative(yv), x, y));
    }
    Ok(from_bi(&g, f.ring(), x, y))
}

/// Squarefree part of a polynomial in at most two effective variables,
/// made monic. Dividing by the gcd with all partial derivatives also
/// removes repeated factors free of one of the variables.
pub fn squarefree_part<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    check_char(f, f.total_degree().unwrap_or(0) as u64)?;
    if f.is_constant() {
        return Ok(f.monic());
    }
    let g = repeated_part(f)?;
    let q = f.div_exact(&g).expect("gcd divides");
    Ok(q.monic())
}

pub fn is_squarefree<F: Field>(f: &Polynomial<F>) -> Result<bool> {
    Ok(repeated_part(f)?.is_constant())
}

/// The plane model in a fresh ring `Q[x, y]`, sheared `y -> y + c x`
/// until `gcd(f, ∂f/∂x) = 1`.
fn gao_ready<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let (x, y) = plane_vars(&[f])?;
    let field = f.field().clone();
    let plane = PolyRing::new(field.clone(), &["x", "y"], MonomialOrder::Grevlex)?;
    let mut map = vec![Some(x), None];
    if let Some(y) = y {
        map[1] = Some(y);
    }
    let g = f.transfer(&plane, &map);
    let xv = Polynomial::var(&plane, 0);
    let yv = Polynomial::var(&plane, 1);
    for c in 0..64i64 {
        let h = if c == 0 {
            g.clone()
        } else {
            let shifted = yv.add(&xv.scale(&field.from_i64(c)));
            g.substitute(&[xv.clone(), shifted])
        };
        if h.degree_in(0) == 0 {
            continue;
        }
        if gcd2(&h, &h.derivative(0))?.is_constant() {
            return Ok(h);
        }
    }
    Err(AlgebraError::Invalid("no shear makes the input coprime to its x-derivative".into()))
}

/// Solution space of `f (g_y - h_x) = g f_y - h f_x` with
/// `deg g <= (m - 1, n)` and `deg h <= (m, n - 1)`; rows of the returned
/// basis are `(g coefficients, h coefficients)` over `g_monos`, `h_monos`.
struct GaoSystem<F: Field> {
    g_monos: Vec<Monomial>,
    kernel: Vec<Vec<F::Elem>>,
}

fn gao_system<F: Field>(f: &Polynomial<F>) -> GaoSystem<F> {
    let ring = f.ring();
    let field = f.field();
    let m = f.degree_in(0) as u16;
    let n = f.degree_in(1) as u16;
    let fx = f.derivative(0);
    let fy = f.derivative(1);
    let mut g_monos = Vec::new();
    for i in 0..m {
        for j in 0..=n {
            g_monos.push(Monomial::from_exponents(&[i, j]));
        }
    }
    let mut h_monos = Vec::new();
    for i in 0..=m {
        for j in 0..n {
            h_monos.push(Monomial::from_exponents(&[i, j]));
        }
    }
    let mut columns: Vec<Polynomial<F>> = Vec::new();
    for mono in &g_monos {
        let g = Polynomial::monomial(ring, field.one(), mono.clone());
        columns.push(f.mul(&g.derivative(1)).sub(&g.mul(&fy)));
    }
    for mono in &h_monos {
        let h = Polynomial::monomial(ring, field.one(), mono.clone());
        columns.push(h.mul(&fx).sub(&f.mul(&h.derivative(0))));
    }
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    for col in &columns {
        for (_, mono) in col.terms() {
            let k = rows.len();
            rows.entry(mono.clone()).or_insert(k);
        }
    }
    let mut mat = Matrix::zeros(field, rows.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (c, mono) in col.terms() {
            mat.set(rows[mono], j, c.clone());
        }
    }
    GaoSystem {
        g_monos,
        kernel: mat.kernel_basis(),
    }
}

fn gao_preconditions<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let n = f.total_degree().unwrap_or(0) as u64;
    check_char(f, n * n.saturating_sub(1))?;
    if !is_squarefree(f)? {
        return Err(AlgebraError::NotSquarefree);
    }
    let h = gao_ready(f)?;
    let (m, n) = (h.degree_in(0) as u64, h.degree_in(1) as u64);
    check_char(&h, (2 * m).saturating_sub(1) * n)?;
    Ok(h)
}

/// Number of absolutely irreducible factors of a squarefree polynomial in
/// at most two effective variables.
pub fn absolute_factor_count<F: Field>(f: &Polynomial<F>) -> Result<usize> {
    if f.is_zero() {
        return Err(AlgebraError::Invalid("factor count of the zero polynomial".into()));
    }
    if f.is_constant() {
        return Ok(0);
    }
    let h = gao_preconditions(f)?;
    Ok(gao_system(&h).kernel.len())
}

/// Degrees of the absolutely irreducible factors, ascending.
///
/// A random solution `g` of the linear system is `λ_i f_x` on the `i`-th
/// factor, with distinct constants `λ_i`. On a general line meeting the
/// curve in `deg f` points, multiplication by `g / f_x` then has
/// characteristic polynomial `prod (T - λ_i)^{deg f_i}`, and its
/// squarefree decomposition lists the degrees.
pub fn absolute_factor_degrees<F: Field, R: Rng + ?Sized>(
    f: &Polynomial<F>,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if f.is_zero() {
        return Err(AlgebraError::Invalid("factor degrees of the zero polynomial".into()));
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let h = gao_preconditions(f)?;
    let d = h.total_degree().unwrap() as usize;
    let sys = gao_system(&h);
    if sys.kernel.len() == 1 {
        return Ok(vec![d]);
    }
    let field = h.field().clone();
    let fx = h.derivative(0);
    for _attempt in 0..32 {
        let mut g = Polynomial::zero(h.ring());
        for v in &sys.kernel {
            let c = field.random(rng);
            let part: Vec<_> = sys
                .g_monos
                .iter()
                .enumerate()
                .map(|(k, mono)| (field.mul(&c, &v[k]), mono.clone()))
                .collect();
            g = g.add(&Polynomial::from_terms(h.ring(), part));
        }
        // line x = a0 + a1 t, y = b0 + b1 t
        let a0 = field.random(rng);
        let a1 = field.random(rng);
        let b0 = field.random(rng);
        let b1 = field.random(rng);
        let restrict = |p: &Polynomial<F>| -> UniPoly<F> {
            let xt = UniPoly::new(&field, vec![a0.clone(), a1.clone()]);
            let yt = UniPoly::new(&field, vec![b0.clone(), b1.clone()]);
            let mut acc = UniPoly::zero(&field);
            for (c, mono) in p.terms() {
                let t = xt
                    .pow(mono.exponent(0) as u32)
                    .mul(&yt.pow(mono.exponent(1) as u32))
                    .scale(c);
                acc = acc.add(&t);
            }
            acc
        };
        let u = restrict(&h);
        if u.degree() != Some(d) || u.squarefree_part()?.degree() != Some(d) {
            continue;
        }
        let Some(fx_inv) = restrict(&fx).inverse_mod(&u) else {
            continue;
        };
        let lambda = restrict(&g).mul(&fx_inv).rem(&u);
        // matrix of multiplication by lambda on F[t]/(u)
        let mut mat = Matrix::zeros(&field, d, d);
        let mut col = lambda.clone();
        for j in 0..d {
            for i in 0..d {
                mat.set(i, j, col.coeff(i));
            }
            col = col.mul(&UniPoly::x(&field)).rem(&u);
        }
        // column j is lambda * t^j
        let chi = charpoly(&mat);
        let dec = chi.squarefree_decomposition()?;
        let total: usize = dec.iter().map(|(a, _)| a.degree().unwrap()).sum();
        if total != sys.kernel.len() {
            // two λ_i collided; resample
            continue;
        }
        let mut degrees: Vec<usize> = Vec::new();
        for (a, mult) in dec {
            for _ in 0..a.degree().unwrap() {
                degrees.push(mult as usize);
            }
        }
        degrees.sort_unstable();
        return Ok(degrees);
    }
    Err(AlgebraError::Invalid("factor degrees: no general line found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;
    use rand::SeedableRng;

    fn ring() -> Ring<Rationals> {
        PolyRing::new(Rationals, &["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    fn p(s: &str) -> Polynomial<Rationals> {
        parse_polynomial(s, &ring()).unwrap()
    }

    #[test]
    fn bivariate_gcd() {
        let g = gcd2(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")).unwrap();
        assert_eq!(g.monic(), p("x + y"));
        let g = gcd2(&p("x*y^2 + y^3"), &p("y^2")).unwrap();
        assert_eq!(g.monic(), p("y^2"));
        let g = gcd2(&p("x + 1"), &p("y")).unwrap();
        assert!(g.is_constant());
    }

    #[test]
    fn squarefree_removes_factor_free_of_a_variable() {
        let f = p("x^2*y + x^2");
        assert_eq!(squarefree_part(&f).unwrap(), p("x*y + x"));
    }

    #[test]
    fn counts() {
        assert_eq!(absolute_factor_count(&p("x^2 - y^2")).unwrap(), 2);
        assert_eq!(absolute_factor_count(&p("x^2 + y^2")).unwrap(), 2);
        assert_eq!(absolute_factor_count(&p("y^2 - x^3 + x")).unwrap(), 1);
        assert_eq!(absolute_factor_count(&p("y^2 - 2")).unwrap(), 2);
        assert_eq!(absolute_factor_count(&p("x*y - 1")).unwrap(), 1);
        assert!(matches!(
            absolute_factor_count(&p("x^2")),
            Err(AlgebraError::NotSquarefree)
        ));
    }

    #[test]
    fn degrees_of_three_conics() {
        let f = PrimeField::new(1_000_003).unwrap();
        let r = PolyRing::new(f, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let c1 = parse_polynomial("x^2 + y^2 - 1", &r).unwrap();
        let c2 = parse_polynomial("x^2 + 2*y^2 - 3", &r).unwrap();
        let c3 = parse_polynomial("x*y - 5", &r).unwrap();
        let prod = c1.mul(&c2).mul(&c3);
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        assert_eq!(absolute_factor_count(&prod).unwrap(), 3);
        assert_eq!(absolute_factor_degrees(&prod, &mut rng).unwrap(), vec![2, 2, 2]);
        let line = parse_polynomial("x + 3*y + 1", &r).unwrap();
        let mixed = c1.mul(&line);
        assert_eq!(absolute_factor_degrees(&mixed, &mut rng).unwrap(), vec![1, 2]);
    }
}
