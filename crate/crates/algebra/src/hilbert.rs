//! Hilbert series and derived invariants of homogeneous ideals.
//!
//! The series of `S/I` equals that of `S/in(I)`, so everything is computed
//! from the leading monomials of a grevlex basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};

/// Dimension, degree and Hilbert polynomial of `Proj(S/I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertInvariants {
    /// `None` for the empty scheme.
    pub projective_dim: Option<usize>,
    /// 0 for the empty scheme.
    pub degree: u64,
    /// `Q(t)` with `HS(t) = Q(t) / (1 - t)^(dim + 1)`, ascending powers.
    pub numerator: Vec<i128>,
    /// Hilbert polynomial coefficients in ascending powers of `k`.
    pub hilbert_polynomial: Vec<BigRational>,
}

impl HilbertInvariants {
    pub fn is_empty(&self) -> bool {
        self.projective_dim.is_none()
    }

    /// `(-1)^dim (HP(0) - 1)`; `1 - c` for a curve with `HP = D k + c`.
    pub fn arithmetic_genus(&self) -> Option<i64> {
        let dim = self.projective_dim?;
        let hp0 = self
            .hilbert_polynomial
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let v = hp0 - BigRational::one();
        let v = if dim % 2 == 1 { -v } else { v };
        if !v.is_integer() {
            return None;
        }
        v.to_integer().to_i64()
    }

    /// Value of the Hilbert polynomial at `k`.
    pub fn hilbert_polynomial_at(&self, k: i64) -> BigRational {
        let x = BigRational::from_integer(k.into());
        let mut acc = BigRational::zero();
        for c in self.hilbert_polynomial.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

pub fn hilbert_invariants<F: Field>(ideal: &Ideal<F>, budget: &Budget) -> Result<HilbertInvariants> {
    ideal.require_homogeneous()?;
    let gb = ideal.groebner(MonomialOrder::Grevlex, budget)?;
    hilbert_from_monomials(&gb.leading_monomials(), ideal.ring().nvars(), budget)
}

/// Invariants of `S/M` for the monomial ideal `M` in `nvars` variables.
pub fn hilbert_from_monomials(
    gens: &[Monomial],
    nvars: usize,
    budget: &Budget,
) -> Result<HilbertInvariants> {
    let gens = minimalize(gens.to_vec());
    let mut steps = 0u64;
    let mut num = numerator(gens, &mut steps, budget)?;
    trim(&mut num);
    if num.is_empty() {
        return Ok(empty());
    }
    // divide by (1 - t) while Q(1) = 0
    let mut krull = nvars;
    while krull > 0 && num.iter().sum::<i128>() == 0 {
        num = divide_one_minus_t(&num);
        krull -= 1;
    }
    if krull == 0 {
        return Ok(empty());
    }
    let degree: i128 = num.iter().sum();
    let degree = u64::try_from(degree)
        .map_err(|_| AlgebraError::Invalid(format!("negative Hilbert degree {degree}")))?;
    let hp = hilbert_polynomial(&num, krull);
    Ok(HilbertInvariants {
        projective_dim: Some(krull - 1),
        degree,
        numerator: num,
        hilbert_polynomial: hp,
    })
}

fn empty() -> HilbertInvariants {
    HilbertInvariants {
        projective_dim: None,
        degree: 0,
        numerator: Vec::new(),
        hilbert_polynomial: Vec::new(),
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn trim(p: &mut Vec<i128>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<i128> {
    let mut v = vec![0i128; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

/// Numerator `N(t)` with `HS(S/M) = N(t) / (1 - t)^n`, by the pivot rule
/// `N(M) = N(M + (x)) + t N(M : x)`.
fn numerator(gens: Vec<Monomial>, steps: &mut u64, budget: &Budget) -> Result<Vec<i128>> {
    *steps += 1;
    budget.check_steps(*steps)?;
    if (*steps).is_multiple_of(1024) {
        budget.check_time()?;
    }
    if gens.iter().any(|m| m.is_one()) {
        return Ok(Vec::new());
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i128];
        for m in &gens {
            acc = poly_mul(&acc, &one_minus_t_pow(m.degree()));
        }
        return Ok(acc);
    }
    let nvars = gens[0].nvars();
    // pivot: the variable shared by the most non-pure-power generators
    let mut counts = vec![0usize; nvars];
    for m in gens.iter().filter(|m| m.exponents().iter().filter(|&&e| e > 0).count() > 1) {
        for (v, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let x = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nvars > 0");
    let xm = Monomial::variable(nvars, x, 1);

    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exponent(x) == 0).cloned().collect();
    plus.push(xm.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e[x] = e[x].saturating_sub(1);
            Monomial::from_exponents(&e)
        })
        .collect();
    let a = numerator(minimalize(plus), steps, budget)?;
    let b = numerator(minimalize(colon), steps, budget)?;
    let mut out = vec![0i128; a.len().max(b.len() + 1)];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i + 1] += v;
    }
    trim(&mut out);
    Ok(out)
}

/// Exact division by `1 - t`; requires `p(1) = 0`.
fn divide_one_minus_t(p: &[i128]) -> Vec<i128> {
    // p = (1 - t) q  =>  q_i = sum_{j <= i} p_j
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0i128;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    trim(&mut q);
    q
}

/// `sum_i q_i binom(k - i + d - 1, d - 1)` as a polynomial in `k`.
fn hilbert_polynomial(q: &[i128], krull: usize) -> Vec<BigRational> {
    let d = krull;
    let mut out = vec![BigRational::zero(); d];
    let mut fact = BigInt::one();
    for j in 1..d {
        fact *= BigInt::from(j);
    }
    for (i, &qi) in q.iter().enumerate() {
        if qi == 0 {
            continue;
        }
        // prod_{j=1}^{d-1} (k - i + j)
        let mut p = vec![BigRational::one()];
        for j in 1..d {
            let shift = BigRational::from_integer(BigInt::from(j as i64 - i as i64));
            let mut next = vec![BigRational::zero(); p.len() + 1];
            for (e, c) in p.iter().enumerate() {
                next[e + 1] += c;
                next[e] += c * &shift;
            }
            p = next;
        }
        let scale = BigRational::new(BigInt::from(qi), fact.clone());
        for (e, c) in p.into_iter().enumerate() {
            out[e] += c * &scale;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Hilbert function values `dim (S/M)_k` for `k = 0..len`, by expanding the
/// series. Used as an independent check of the numerator.
pub fn hilbert_function_values(inv: &HilbertInvariants, len: usize) -> Vec<BigInt> {
    let Some(dim) = inv.projective_dim else {
        return vec![BigInt::zero(); len];
    };
    // 1/(1-t)^(dim+1) has coefficients binom(k + dim, dim)
    let binom = |k: usize| -> BigInt {
        let mut v = BigInt::one();
        for j in 1..=dim {
            v = v * BigInt::from(k + j) / BigInt::from(j);
        }
        v
    };
    (0..len)
        .map(|k| {
            inv.numerator
                .iter()
                .enumerate()
                .filter(|(i, _)| *i <= k)
                .map(|(i, &q)| BigInt::from(q) * binom(k - i))
                .sum()
        })
        .map(|v: BigInt| if v.is_negative() { BigInt::zero() } else { v })
        .collect()
}
