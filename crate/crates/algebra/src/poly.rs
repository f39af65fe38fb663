//! Sparse multivariate polynomials in distributive form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Exponent, Monomial};
use crate::ring::{same_ring, Ring};

/// A polynomial: terms sorted strictly descending in the ring's order, no
/// zero coefficients. The zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        let mut p = Polynomial::zero(ring);
        if !ring.field().is_zero(&c) {
            p.terms.push((c, Monomial::one(ring.nvars())));
        }
        p
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring<F>, i: usize) -> Self {
        Polynomial::monomial(ring, ring.field().one(), Monomial::variable(ring.nvars(), i, 1))
    }

    pub fn monomial(ring: &Ring<F>, c: F::Elem, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let mut p = Polynomial::zero(ring);
        if !ring.field().is_zero(&c) {
            p.terms.push((c, m));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Ring<F>, mut terms: Vec<(F::Elem, Monomial)>) -> Self {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.1 == m => {
                    last.0 = field.add(&last.0, &c);
                }
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.0) {
                            out.pop();
                        }
                    }
                    out.push((c, m));
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.0) {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Terms already sorted and reduced; checked in debug builds.
    pub(crate) fn from_sorted_terms(ring: &Ring<F>, terms: Vec<(F::Elem, Monomial)>) -> Self {
        let p = Polynomial {
            ring: ring.clone(),
            terms,
        };
        debug_assert!(p.is_canonical());
        p
    }

    pub fn is_canonical(&self) -> bool {
        let order = self.ring.order();
        self.terms.iter().all(|(c, _)| !self.ring.field().is_zero(c))
            && self
                .terms
                .windows(2)
                .all(|w| order.cmp(&w[0].1, &w[1].1) == Ordering::Greater)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(F::Elem, Monomial)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.0)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(_, m)| m.exponent(var) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m0)) => self.terms.iter().all(|(_, m)| m.degree() == m0.degree()),
        }
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(_, m)| m.exponent(i) > 0))
            .collect()
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomial operands from different rings"
        );
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let one = self.field().one();
        self.merge(&one, None, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        let m1 = self.field().neg(&self.field().one());
        self.merge(&m1, None, other)
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (f.neg(c), m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, m)| (f.mul(a, c), m.clone())).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, t)| (f.mul(a, c), t.mul(m)))
                .collect(),
        }
    }

    /// `self + c * m * other`, with `m = 1` when `None`.
    fn merge(&self, c: &F::Elem, m: Option<&Monomial>, other: &Self) -> Self {
        let f = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &(F::Elem, Monomial)| -> (F::Elem, Monomial) {
            (
                f.mul(c, &t.0),
                match m {
                    Some(m) => t.1.mul(m),
                    None => t.1.clone(),
                },
            )
        };
        let mut pending: Option<(F::Elem, Monomial)> = other.terms.first().map(&shifted);
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some(a), Some(b)) => match order.cmp(&a.1, &b.1) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = other.terms.get(j).map(&shifted);
                    }
                    Ordering::Equal => {
                        let s = f.add(&a.0, &b.0);
                        if !f.is_zero(&s) {
                            out.push((s, a.1.clone()));
                        }
                        i += 1;
                        j += 1;
                        pending = other.terms.get(j).map(&shifted);
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = other.terms.get(j).map(&shifted);
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// `self - c * m * other`.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, other: &Self) -> Self {
        self.check_ring(other);
        let nc = self.field().neg(c);
        self.merge(&nc, Some(m), other)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (c, m) = &small.terms[0];
            return big.mul_term(c, m);
        }
        let f = self.field();
        let mut terms = Vec::with_capacity(small.len() * big.len());
        for (a, ma) in &small.terms {
            for (b, mb) in &big.terms {
                terms.push((f.mul(a, b), ma.mul(mb)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if self.field().is_one(c) => self.clone(),
            Some(c) => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = self.field();
        let mut terms = Vec::new();
        for (c, m) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let coeff = f.mul(c, &f.from_i64(e as i64));
            if f.is_zero(&coeff) {
                continue;
            }
            let mut m2 = m.clone();
            m2.set_exponent(var, e - 1);
            terms.push((coeff, m2));
        }
        // derivative of a sorted list stays sorted only for some orders
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let f = self.field();
        let mut acc = f.zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &f.pow(&point[v], e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; the images all live in the
    /// target ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .expect("at least one variable");
        let maxdeg: Vec<u32> = (0..self.ring.nvars()).map(|v| self.degree_in(v)).collect();
        // powers[v][e] = images[v]^e
        let powers: Vec<Vec<Polynomial<F>>> = images
            .iter()
            .zip(&maxdeg)
            .map(|(img, &d)| {
                let mut pw = vec![Polynomial::one(&target)];
                for e in 1..=d as usize {
                    let next = pw[e - 1].mul(img);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = Polynomial::zero(&target);
        for (c, m) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[v][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-expresses the polynomial in `target`: target variable `i` takes
    /// the exponent of source variable `source_of[i]` (or 0). Every source
    /// variable that occurs must be mapped.
    pub fn transfer(&self, target: &Ring<F>, source_of: &[Option<usize>]) -> Polynomial<F> {
        assert_eq!(source_of.len(), target.nvars());
        debug_assert!(self.support_vars().iter().all(|v| source_of.contains(&Some(*v))));
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.remap(source_of)))
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Same variables, re-sorted for `target`'s order.
    pub fn reorder(&self, target: &Ring<F>) -> Polynomial<F> {
        assert_eq!(target.vars(), self.ring.vars());
        if same_ring(target, &self.ring) {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    /// Maps coefficients into another field over the same variable names.
    pub fn map_coeffs<G: Field>(
        &self,
        target: &Ring<G>,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Polynomial<G>> {
        assert_eq!(target.nvars(), self.ring.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            terms.push((f(c)?, m.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(_, m)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Divides out the largest power of `var` dividing every term.
    pub fn strip_var_power(&self, var: usize) -> Self {
        let k = self
            .terms
            .iter()
            .map(|(_, m)| m.exponent(var))
            .min()
            .unwrap_or(0);
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut m2 = m.clone();
                m2.set_exponent(var, m.exponent(var) - k);
                (c.clone(), m2)
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Exact quotient `self / g`, `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        self.check_ring(g);
        let f = self.field();
        let (gc, gm) = g.terms.first()?;
        let gi = f.inv(gc)?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((c, m)) = rem.terms.first().cloned() {
            let qm = gm.quotient(&m)?;
            let qc = f.mul(&c, &gi);
            rem = rem.sub_mul_term(&qc, &qm, g);
            q.push((qc, qm));
        }
        Some(Polynomial::from_sorted_terms(&self.ring, q))
    }

    /// Substitutes a constant for one variable.
    pub fn specialize(&self, var: usize, value: &F::Elem) -> Self {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let e = m.exponent(var);
                let mut m2 = m.clone();
                m2.set_exponent(var, 0);
                (f.mul(c, &f.pow(value, e as u64)), m2)
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn coefficient_of(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(_, t)| t == m)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let field = self.field();
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let r = field.to_rational(c);
            let negative = r < num_rational::BigRational::from_integer(0.into());
            let abs = if negative { -r } else { r };
            if k == 0 {
                if negative {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = abs == num_rational::BigRational::from_integer(1.into());
            let mut first = true;
            if !unit || m.is_one() {
                if abs.is_integer() {
                    write!(out, "{}", abs.numer())?;
                } else {
                    write!(out, "{}/{}", abs.numer(), abs.denom())?;
                }
                first = false;
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(out, "*")?;
                }
                first = false;
                write!(out, "{}", self.ring.vars()[v])?;
                if e > 1 {
                    write!(out, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Exponent vector helper for tests and builders.
pub fn mono(exps: &[Exponent]) -> Monomial {
    Monomial::from_exponents(exps)
}
