//! Buchberger's algorithm with the Gebauer–Möller pair update (product and
//! chain criteria) and sugar-degree normal selection.

use std::cmp::Ordering;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// A reduced Gröbner basis: monic elements, no term of any element divisible
/// by another element's leading monomial. Sorted by ascending leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    source: Ideal<F>,
    ring: Ring<F>,
    basis: Vec<Polynomial<F>>,
}

type Terms<F> = Vec<(<F as Field>::Elem, Monomial)>;

/// `a - c * m * b` on raw sorted term lists.
fn sub_scaled<F: Field>(
    field: &F,
    order: MonomialOrder,
    a: &[(F::Elem, Monomial)],
    c: &F::Elem,
    m: &Monomial,
    b: &[(F::Elem, Monomial)],
) -> Terms<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Monomial> = b.first().map(|t| t.1.mul(m));
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), &bj) {
            (Some(ta), Some(mb)) => order.cmp(&ta.1, mb),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let coeff = field.neg(&field.mul(c, &b[j].0));
                out.push((coeff, bj.take().unwrap()));
                j += 1;
                bj = b.get(j).map(|t| t.1.mul(m));
            }
            Ordering::Equal => {
                let coeff = field.sub_mul(&a[i].0, c, &b[j].0);
                if !field.is_zero(&coeff) {
                    out.push((coeff, bj.take().unwrap()));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| t.1.mul(m));
            }
        }
    }
    out
}

struct Reducer<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
    // (leading monomial, divmask, index into polys)
    leads: Vec<(Monomial, u64, usize)>,
    polys: &'a [Polynomial<F>],
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(polys: &'a [Polynomial<F>], active: impl Iterator<Item = usize>) -> Self {
        let mut leads: Vec<(Monomial, u64, usize)> = active
            .map(|i| {
                let lm = polys[i].leading_monomial().expect("nonzero basis element").clone();
                let mask = lm.divmask();
                (lm, mask, i)
            })
            .collect();
        leads.sort_by_key(|l| l.0.degree());
        let ring = polys.first().expect("reducer over a nonempty basis").ring();
        let (field, order) = (ring.field(), ring.order());
        Reducer {
            field,
            order,
            leads,
            polys,
        }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.divmask();
        self.leads
            .iter()
            .find(|(lm, lmask, _)| lmask & !mask == 0 && lm.divides(m))
            .map(|l| l.2)
    }

    /// Full reduction; returns the remainder (not normalised) and the number
    /// of elementary steps taken.
    fn reduce(&self, f: &Polynomial<F>, budget: &Budget, top_only: bool) -> Result<(Polynomial<F>, u64)> {
        let ring = f.ring().clone();
        let mut rest: Terms<F> = f.terms().to_vec();
        let mut start = 0usize;
        let mut done: Terms<F> = Vec::new();
        let mut steps = 0u64;
        while let Some((c, m)) = rest.get(start) {
            match self.find(m) {
                Some(gi) => {
                    let g = &self.polys[gi];
                    let gl = g.terms();
                    let q = gl[0].1.quotient(m).expect("divisible");
                    let coeff = self.field.div(c, &gl[0].0).expect("monic-able");
                    rest = sub_scaled(self.field, self.order, &rest[start + 1..], &coeff, &q, &gl[1..]);
                    start = 0;
                    steps += 1;
                    if steps.is_multiple_of(256) {
                        budget.check_time()?;
                    }
                    budget.check_terms(rest.len() + done.len())?;
                }
                None => {
                    if top_only {
                        done.extend(rest.drain(start..));
                        break;
                    }
                    done.push(rest[start].clone());
                    start += 1;
                }
            }
        }
        Ok((Polynomial::from_sorted_terms(&ring, done), steps))
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, lcm: &Monomial) -> Polynomial<F> {
    let field = f.field();
    let (cf, mf) = &f.terms()[0];
    let (cg, mg) = &g.terms()[0];
    let uf = mf.quotient(lcm).expect("lcm divisible");
    let ug = mg.quotient(lcm).expect("lcm divisible");
    let a = f.mul_term(&field.inv(cf).expect("nonzero"), &uf);
    let scale = field.inv(cg).expect("nonzero");
    a.sub_mul_term(&scale, &ug, g)
}

struct Engine<'b, F: Field> {
    polys: Vec<Polynomial<F>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    order: MonomialOrder,
    budget: &'b Budget,
}

impl<'b, F: Field> Engine<'b, F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    /// Gebauer–Möller update after inserting polynomial `h`.
    fn update(&mut self, h: usize) {
        let lh = self.lm(h).clone();
        let candidates: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let mut c: Vec<(usize, Monomial, bool)> = candidates
            .iter()
            .map(|&g| {
                let lg = self.lm(g);
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();
        // chain criterion inside the new pairs
        let mut d: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g1, l1, coprime)) = c.pop() {
            let dominated = !coprime
                && (c.iter().any(|(_, l2, _)| l2.divides(&l1))
                    || d.iter().any(|(_, l2, _)| l2.divides(&l1)));
            if !dominated {
                d.push((g1, l1, coprime));
            }
        }
        // product criterion
        let e: Vec<(usize, Monomial)> = d
            .into_iter()
            .filter(|(_, _, coprime)| !coprime)
            .map(|(g, l, _)| (g, l))
            .collect();
        // chain criterion on old pairs
        let lcm_with_h = |this: &Self, g: usize| lh.lcm(this.lm(g));
        let old = std::mem::take(&mut self.pairs);
        let mut kept = Vec::with_capacity(old.len());
        for p in old {
            let drop = lh.divides(&p.lcm)
                && lcm_with_h(self, p.i) != p.lcm
                && lcm_with_h(self, p.j) != p.lcm;
            if !drop {
                kept.push(p);
            }
        }
        self.pairs = kept;
        for (g, l) in e {
            let sugar = (self.sugar[g] + l.degree() - self.lm(g).degree())
                .max(self.sugar[h] + l.degree() - lh.degree());
            self.pairs.push(Pair {
                i: g,
                j: h,
                lcm: l,
                sugar,
            });
        }
        for g in candidates {
            if lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn insert(&mut self, h: Polynomial<F>, sugar: u32) {
        self.polys.push(h.monic());
        self.sugar.push(sugar);
        self.active.push(false);
        let idx = self.polys.len() - 1;
        self.update(idx);
    }

    fn active_indices(&self) -> Vec<usize> {
        (0..self.polys.len()).filter(|&i| self.active[i]).collect()
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn groebner_basis<F: Field>(
    ideal: &Ideal<F>,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis<F>> {
    let ring = ideal.ring().with_order(order);
    let gens: Vec<Polynomial<F>> = ideal
        .generators()
        .iter()
        .map(|g| g.reorder(&ring))
        .filter(|g| !g.is_zero())
        .collect();
    let basis = buchberger(&ring, gens, budget)?;
    Ok(GroebnerBasis {
        source: ideal.clone(),
        ring,
        basis,
    })
}

fn buchberger<F: Field>(ring: &Ring<F>, gens: Vec<Polynomial<F>>, budget: &Budget) -> Result<Vec<Polynomial<F>>> {
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let mut engine = Engine {
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        order: ring.order(),
        budget,
    };
    // insert inputs by increasing leading monomial, each reduced by the previous ones
    let mut sorted = gens;
    let order = ring.order();
    sorted.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in sorted {
        let sugar = g.total_degree().unwrap_or(0);
        let reduced = if engine.polys.is_empty() {
            g
        } else {
            let act = engine.active_indices();
            let red = Reducer::new(&engine.polys, act.into_iter());
            red.reduce(&g, budget, false)?.0
        };
        if reduced.is_zero() {
            continue;
        }
        if reduced.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        engine.insert(reduced, sugar);
    }
    let mut steps = 0u64;
    while let Some(pair) = engine.select() {
        steps += 1;
        engine.budget.check_steps(steps)?;
        let s = s_polynomial(&engine.polys[pair.i], &engine.polys[pair.j], &pair.lcm);
        let act = engine.active_indices();
        let red = Reducer::new(&engine.polys, act.into_iter());
        let (h, _) = red.reduce(&s, budget, false)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        engine.insert(h, pair.sugar);
    }
    let active: Vec<Polynomial<F>> = engine
        .active_indices()
        .into_iter()
        .map(|i| engine.polys[i].clone())
        .collect();
    interreduce(active, budget)
}

/// Minimalises and tail-reduces a Gröbner basis.
fn interreduce<F: Field>(mut g: Vec<Polynomial<F>>, budget: &Budget) -> Result<Vec<Polynomial<F>>> {
    if g.is_empty() {
        return Ok(g);
    }
    let order = g[0].ring().order();
    g.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<usize> = (0..minimal.len()).filter(|&j| j != i).collect();
        let p = &minimal[i];
        let head = Polynomial::from_sorted_terms(p.ring(), p.terms()[..1].to_vec());
        let tail = Polynomial::from_sorted_terms(p.ring(), p.terms()[1..].to_vec());
        let reduced_tail = if others.is_empty() || tail.is_zero() {
            tail
        } else {
            Reducer::new(&minimal, others.into_iter()).reduce(&tail, budget, false)?.0
        };
        out.push(head.add(&reduced_tail).monic());
    }
    Ok(out)
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn source(&self) -> &Ideal<F> {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    fn coerce(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if same_ring(f.ring(), &self.ring) {
            return Ok(f.clone());
        }
        if f.ring().vars() != self.ring.vars() || f.ring().field() != self.ring.field() {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(f.reorder(&self.ring))
    }

    /// Remainder of multivariate division by the basis; zero iff `f` lies in
    /// the ideal. The result lives in the basis' ring.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        let f = self.coerce(f)?;
        if self.basis.is_empty() || f.is_zero() {
            return Ok(f);
        }
        let red = Reducer::new(&self.basis, 0..self.basis.len());
        Ok(red.reduce(&f, &Budget::unlimited(), false)?.0)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in (i + 1)..self.basis.len() {
                let lcm = self.basis[i]
                    .leading_monomial()
                    .unwrap()
                    .lcm(self.basis[j].leading_monomial().unwrap());
                let s = s_polynomial(&self.basis[i], &self.basis[j], &lcm);
                if !self.normal_form(&s).map(|r| r.is_zero()).unwrap_or(false) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the reducedness conditions.
    pub fn is_reduced(&self) -> bool {
        let field = self.ring.field();
        self.basis.iter().enumerate().all(|(i, g)| {
            field.is_one(g.leading_coeff().unwrap())
                && self.basis.iter().enumerate().all(|(j, h)| {
                    i == j
                        || g.terms()
                            .iter()
                            .all(|(_, m)| !h.leading_monomial().unwrap().divides(m))
                })
        })
    }

    /// The basis as an ideal in the basis' ring.
    pub fn to_ideal(&self) -> Ideal<F> {
        Ideal::new(&self.ring, self.basis.clone())
    }

    /// Basis elements lying in the subring of the variables `k..n`.
    pub fn eliminated(&self, k: usize) -> Vec<Polynomial<F>> {
        self.basis
            .iter()
            .filter(|g| g.support_vars().iter().all(|&v| v >= k))
            .cloned()
            .collect()
    }
}
