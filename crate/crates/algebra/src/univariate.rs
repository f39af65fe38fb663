//! Dense univariate polynomials over a field.

use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        UniPoly::new(field, vec![field.one()])
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// `x - a`.
    pub fn linear(field: &F, a: &F::Elem) -> Self {
        UniPoly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn x(field: &F) -> Self {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64(field: &F, coeffs: &[i64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(f, (0..n).map(|i| f.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.leading().unwrap()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub_mul(&r[k], &c, dc);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (UniPoly::new(f, q), UniPoly::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor (zero iff both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        UniPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = UniPoly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    fn check_characteristic(&self) -> Result<()> {
        let p = self.field.characteristic();
        let d = self.degree().unwrap_or(0) as u64;
        if p != 0 && p <= d {
            return Err(AlgebraError::CharacteristicTooSmall { char: p, need: d + 1 });
        }
        Ok(())
    }

    /// Monic squarefree part `f / gcd(f, f')`.
    pub fn squarefree_part(&self) -> Result<Self> {
        self.check_characteristic()?;
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.monic());
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_exact(&g).expect("gcd divides").monic())
    }

    /// Yun's decomposition: monic squarefree, pairwise coprime `a_i` with
    /// `f = c * prod a_i^i`; entries with `a_i = 1` are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, u32)>> {
        self.check_characteristic()?;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let fp = self.derivative();
        let a0 = self.gcd(&fp);
        let mut b = self.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Distinct roots in the field, sorted by canonical representative.
    /// Needs a finite field of odd characteristic.
    pub fn roots<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<F::Elem>> {
        let f = &self.field;
        let p = f.characteristic();
        if p == 0 {
            return Err(AlgebraError::Invalid(
                "root finding needs a prime field".into(),
            ));
        }
        if self.is_zero() {
            return Err(AlgebraError::Invalid("roots of the zero polynomial".into()));
        }
        let m = self.monic();
        if m.degree() == Some(0) {
            return Ok(Vec::new());
        }
        // product of the distinct linear factors
        let xp = UniPoly::x(f).pow_mod(p, &m);
        let g = xp.sub(&UniPoly::x(f)).gcd(&m);
        let mut roots = Vec::new();
        split_linear(&g, rng, &mut roots);
        roots.sort_by_key(|r| f.to_rational(r));
        Ok(roots)
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let f = &self.field;
        // invariant: r_i = s_i * self (mod m)
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = f.inv(r0.leading().unwrap()).expect("nonzero");
        Some(s0.scale(&c).rem(m))
    }

    /// Converts from a polynomial in which only `var` occurs.
    pub fn from_polynomial(p: &Polynomial<F>, var: usize) -> Self {
        let f = p.field();
        let deg = p.degree_in(var) as usize;
        let mut coeffs = vec![f.zero(); deg + 1];
        for (c, m) in p.terms() {
            debug_assert!(m.degree() == m.exponent(var) as u32);
            let e = m.exponent(var) as usize;
            coeffs[e] = f.add(&coeffs[e], c);
        }
        UniPoly::new(f, coeffs)
    }

    pub fn to_polynomial(&self, ring: &Ring<F>, var: usize) -> Polynomial<F> {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (c.clone(), Monomial::variable(n, var, e as u16)))
                .collect(),
        )
    }
}

/// Cantor–Zassenhaus equal-degree splitting for degree-1 factors.
fn split_linear<F: Field, R: Rng + ?Sized>(g: &UniPoly<F>, rng: &mut R, out: &mut Vec<F::Elem>) {
    let f = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(f.neg(&m.coeff(0)));
        }
        Some(_) => {
            let p = f.characteristic();
            loop {
                let a = f.random(rng);
                let shifted = UniPoly::new(f, vec![a, f.one()]);
                let h = shifted
                    .pow_mod((p - 1) / 2, g)
                    .sub(&UniPoly::one(f))
                    .gcd(g);
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < g.degree().unwrap() {
                    let rest = g.div_exact(&h).expect("factor divides");
                    split_linear(&h, rng, out);
                    split_linear(&rest, rng, out);
                    return;
                }
            }
        }
    }
}

/// Characteristic polynomial of a square matrix by evaluation at
/// `n + 1` points and Lagrange interpolation; needs `|F| > n`.
pub fn charpoly<F: Field>(m: &crate::linalg::Matrix<F>) -> UniPoly<F> {
    let f = m.field();
    let n = m.rows();
    let xs: Vec<F::Elem> = (0..=n as i64).map(|i| f.from_i64(i)).collect();
    let ys: Vec<F::Elem> = xs
        .iter()
        .map(|x| {
            // det(x I - M)
            let mut a = m.clone();
            for i in 0..n {
                for j in 0..n {
                    let v = if i == j {
                        f.sub(x, m.get(i, j))
                    } else {
                        f.neg(m.get(i, j))
                    };
                    a.set(i, j, v);
                }
            }
            a.determinant()
        })
        .collect();
    interpolate(f, &xs, &ys)
}

/// The unique polynomial of degree `< xs.len()` through the given points.
pub fn interpolate<F: Field>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> UniPoly<F> {
    let mut acc = UniPoly::zero(f);
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = UniPoly::one(f);
        let mut denom = f.one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UniPoly::linear(f, xj));
                denom = f.mul(&denom, &f.sub(xi, xj));
            }
        }
        let c = f.div(&ys[i], &denom).expect("distinct nodes");
        acc = acc.add(&basis.scale(&c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;

    #[test]
    fn gcd_and_squarefree() {
        let q = Rationals;
        // (x-1)^2 (x+2)
        let f = UniPoly::from_i64(&q, &[2, -3, 0, 1]);
        assert_eq!(f.squarefree_part().unwrap(), UniPoly::from_i64(&q, &[-2, 1, 1]));
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (UniPoly::from_i64(&q, &[2, 1]), 1));
        assert_eq!(dec[1], (UniPoly::from_i64(&q, &[-1, 1]), 2));
    }

    #[test]
    fn roots_mod_p() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        // (x-3)(x-5)(x^2+1), with x^2+1 irreducible since 10007 = 3 mod 4
        let p = UniPoly::from_i64(&f, &[-3, 1])
            .mul(&UniPoly::from_i64(&f, &[-5, 1]))
            .mul(&UniPoly::from_i64(&f, &[1, 0, 1]));
        let r = p.roots(&mut rng).unwrap();
        assert_eq!(r, vec![3, 5]);
    }

    #[test]
    fn charpoly_of_companion() {
        let q = Rationals;
        let m = crate::linalg::Matrix::from_i64(&q, &[vec![0, -6], vec![1, 5]]);
        assert_eq!(charpoly(&m), UniPoly::from_i64(&q, &[6, -5, 1]));
    }

    #[test]
    fn small_characteristic_rejected() {
        let f = PrimeField::new(3).unwrap();
        let p = UniPoly::from_i64(&f, &[0, 0, 0, 1]);
        assert!(p.squarefree_part().is_err());
    }
}
