//! Secant dimensions by Terracini's lemma, and the decompositions of a point
//! as a sum of two points of a variety.

use entloc_algebra::field::{random_prime_near_2_31, rational_mod};
use entloc_algebra::zerodim;
use entloc_algebra::{
    hilbert_invariants, saturate_by_variable, AlgebraError, Budget, Field, Ideal, Matrix,
    MonomialOrder, PrimeField, Polynomial, Ring,
};
use rand::Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geometry::{affine_slice, sample_points_by_slicing};
use crate::variety::{ambient_ring, ProjectivePoint, ProjectiveVariety};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantEntry {
    pub s: usize,
    pub dim: usize,
    pub expected: usize,
    pub defective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantProfile {
    pub n: usize,
    pub r: usize,
    pub entries: Vec<SecantEntry>,
    /// Least `s` with `σ_s = ℙ^r`; `None` when not reached by `s_max`.
    pub r_gen: Option<usize>,
    /// `"parametrization"` or `"implicit"`.
    pub method: &'static str,
    /// Prime used when an implicit computation over ℚ was reduced.
    pub prime: Option<u64>,
}

impl SecantProfile {
    pub fn dim(&self, s: usize) -> Option<usize> {
        self.entries.iter().find(|e| e.s == s).map(|e| e.dim)
    }
}

/// `dim σ_s(X)` for `s = 1..=s_max`: the rank of the span of the affine
/// tangent spaces at `s` random points, minus one, maximized over `trials`.
///
/// Tangent spaces come from the parametrization when there is one;
/// otherwise from the Jacobian of the ideal at points found by slicing,
/// after reducing modulo a random prime in characteristic 0.
pub fn secant_dims<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    s_max: usize,
    trials: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<SecantProfile> {
    let r = x.ambient();
    let mut best = vec![0usize; s_max];
    let (method, prime) = if let Some(p) = x.parametrization() {
        let field = x.field();
        for _ in 0..trials.max(1) {
            let mut blocks: Vec<Vec<Vec<F::Elem>>> = Vec::new();
            while blocks.len() < s_max {
                let s: Vec<F::Elem> = (0..p.nparams()).map(|_| field.random(rng)).collect();
                if p.eval(&s).iter().all(|c| field.is_zero(c)) {
                    continue;
                }
                blocks.push(p.tangent_vectors(&s));
            }
            accumulate_ranks(field, &blocks, &mut best);
        }
        ("parametrization", None)
    } else if x.field().characteristic() == 0 {
        let p = random_prime_near_2_31(rng);
        let fp = PrimeField::new(p)?;
        let reduced = reduce_mod_p(x, &fp)?;
        implicit_ranks(&reduced, s_max, trials, &mut best, rng, budget)?;
        ("implicit", Some(p))
    } else {
        implicit_ranks(x, s_max, trials, &mut best, rng, budget)?;
        ("implicit", None)
    };
    let n = best[0].saturating_sub(1);
    let entries: Vec<SecantEntry> = best
        .iter()
        .enumerate()
        .map(|(i, &rank)| {
            let s = i + 1;
            let dim = rank.saturating_sub(1);
            let expected = (s * (n + 1) - 1).min(r);
            SecantEntry {
                s,
                dim,
                expected,
                defective: dim < expected,
            }
        })
        .collect();
    let r_gen = entries.iter().find(|e| e.dim == r).map(|e| e.s);
    Ok(SecantProfile {
        n,
        r,
        entries,
        r_gen,
        method,
        prime,
    })
}

/// `best[s-1] = max(best[s-1], rank of the first s blocks)`.
fn accumulate_ranks<G: Field>(field: &G, blocks: &[Vec<Vec<G::Elem>>], best: &mut [usize]) {
    let mut rows: Vec<Vec<G::Elem>> = Vec::new();
    for (i, block) in blocks.iter().enumerate().take(best.len()) {
        rows.extend(block.iter().cloned());
        let rank = Matrix::from_rows(field, rows.clone()).rank();
        best[i] = best[i].max(rank);
    }
}

fn implicit_ranks<G: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<G>,
    s_max: usize,
    trials: usize,
    best: &mut [usize],
    rng: &mut R,
    budget: &Budget,
) -> Result<()> {
    let field = x.field().clone();
    let jac: Vec<Vec<Polynomial<G>>> = x
        .ideal()
        .generators()
        .iter()
        .map(|g| (0..=x.ambient()).map(|v| g.derivative(v)).collect())
        .collect();
    for _ in 0..trials.max(1) {
        let pts = sample_points_by_slicing(x, s_max, rng, budget)?;
        let blocks: Vec<Vec<Vec<G::Elem>>> = pts
            .iter()
            .map(|p| {
                let rows: Vec<Vec<G::Elem>> = jac
                    .iter()
                    .map(|grad| grad.iter().map(|d| d.eval(p.coords())).collect())
                    .collect();
                Matrix::from_rows(&field, rows).kernel_basis()
            })
            .collect();
        accumulate_ranks(&field, &blocks, best);
    }
    Ok(())
}

/// The same variety over `F_p`, through the rational representatives of the
/// coefficients. Parametrizations are dropped.
pub fn reduce_mod_p<F: Field>(x: &ProjectiveVariety<F>, fp: &PrimeField) -> Result<ProjectiveVariety<PrimeField>> {
    let ring = ambient_ring(fp, x.ambient());
    let gens = x
        .ideal()
        .generators()
        .iter()
        .map(|g| {
            g.map_coeffs(&ring, |c| {
                rational_mod(&x.field().to_rational(c), fp).ok_or(AlgebraError::BadReduction(fp.modulus()))
            })
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ProjectiveVariety::new(Ideal::new(&ring, gens), None, x.meta.clone())
}

/// Unordered pairs `{a, b} ⊂ X` with `q ∈ ⟨a, b⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionSet<F: Field> {
    Finite {
        /// Number of pairs over the algebraic closure.
        count: usize,
        /// The pairs with coordinates in the base field (prime fields only).
        pairs: Vec<(ProjectivePoint<F>, ProjectivePoint<F>)>,
    },
    PositiveDimensional,
}

impl<F: Field> DecompositionSet<F> {
    pub fn count(&self) -> Option<usize> {
        match self {
            DecompositionSet::Finite { count, .. } => Some(*count),
            DecompositionSet::PositiveDimensional => None,
        }
    }

    pub fn pairs(&self) -> &[(ProjectivePoint<F>, ProjectivePoint<F>)] {
        match self {
            DecompositionSet::Finite { pairs, .. } => pairs,
            DecompositionSet::PositiveDimensional => &[],
        }
    }

    /// Equality of the listed pairs as a set of unordered pairs.
    pub fn same_pairs(&self, other: &Self) -> bool {
        let (a, b) = (self.pairs(), other.pairs());
        a.len() == b.len()
            && a.iter().all(|(p, q)| {
                b.iter()
                    .any(|(u, v)| (p == u && q == v) || (p == v && q == u))
            })
    }
}

/// The incidence ideal of `(s : a) ∈ ℙ^{r+1}` with `a ∈ X`, `a + s q ∈ X`,
/// `s ≠ 0`: the generators of `I(X)` at `a` together with the difference
/// quotients `(f(a + s q) - f(a)) / s`, saturated by `s`. Points `a + s q`
/// and `a` are distinct because `q ∉ X`.
pub(crate) fn incidence_ideal<F: Field>(
    x: &ProjectiveVariety<F>,
    q: &ProjectivePoint<F>,
    budget: &Budget,
) -> Result<Ideal<F>> {
    let ring = x.ring();
    let n = ring.nvars();
    let s_name = ring.fresh_name("s");
    let big: Ring<F> = ring.prepend_vars(&[s_name], MonomialOrder::Grevlex)?;
    let embed: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let s = Polynomial::var(&big, 0);
    let images: Vec<Polynomial<F>> = (0..n)
        .map(|i| Polynomial::var(&big, i + 1).add(&s.scale(&q.coords()[i])))
        .collect();
    let mut gens = Vec::new();
    for f in x.ideal().generators() {
        let fa = f.transfer(&big, &embed);
        let diff = f.substitute(&images).sub(&fa);
        let quotient = diff
            .div_exact(&s)
            .expect("f(a + s q) - f(a) vanishes at s = 0");
        gens.push(fa);
        gens.push(quotient);
    }
    let j = Ideal::new(&big, gens);
    Ok(saturate_by_variable(&j, 0, budget)?)
}

/// `S(X, q)` for two points: pairs of points of `X` whose span contains `q`.
pub fn two_decompositions<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    q: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<DecompositionSet<F>> {
    if x.contains(q) {
        return Err(GeomError::PointOnVariety);
    }
    let inc = incidence_ideal(x, q, budget)?;
    let h = hilbert_invariants(&inc, budget)?;
    match h.projective_dim {
        None => {
            return Ok(DecompositionSet::Finite {
                count: 0,
                pairs: Vec::new(),
            })
        }
        Some(0) => {}
        Some(_) => return Ok(DecompositionSet::PositiveDimensional),
    }
    // solutions on random affine charts; two charts must agree
    let mut runs: Vec<zerodim::PointSet<F>> = Vec::new();
    let chosen = loop {
        if runs.len() == 3 {
            return Err(GeomError::Exhausted("affine charts disagree on the solution count".into()));
        }
        let chart = affine_slice(&inc, 0, rng);
        runs.push(zerodim::solve(&chart, rng, budget)?);
        let last = runs.last().unwrap().count;
        if runs.iter().filter(|p| p.count == last).count() >= 2 {
            break runs.pop().unwrap();
        }
    };
    if chosen.count % 2 == 1 {
        return Err(GeomError::Exhausted("odd number of ordered decompositions".into()));
    }
    let field = x.field();
    let mut pairs: Vec<(ProjectivePoint<F>, ProjectivePoint<F>)> = Vec::new();
    for sol in &chosen.rational {
        let a_coords = sol[1..].to_vec();
        let b_coords: Vec<F::Elem> = a_coords
            .iter()
            .zip(q.coords())
            .map(|(a, qi)| field.add(a, &field.mul(&sol[0], qi)))
            .collect();
        let a = ProjectivePoint::new(field, a_coords)?;
        let b = ProjectivePoint::new(field, b_coords)?;
        debug_assert!(x.contains(&a) && x.contains(&b) && a != b);
        if !pairs.iter().any(|(u, v)| (u == &a && v == &b) || (u == &b && v == &a)) {
            pairs.push((a, b));
        }
    }
    Ok(DecompositionSet::Finite {
        count: chosen.count / 2,
        pairs,
    })
}

/// Exact check that `q` lies on the line through `a ≠ b`.
pub fn collinear<F: Field>(a: &ProjectivePoint<F>, b: &ProjectivePoint<F>, q: &ProjectivePoint<F>) -> bool {
    let m = Matrix::from_rows(
        a.field(),
        vec![a.coords().to_vec(), b.coords().to_vec(), q.coords().to_vec()],
    );
    a != b && m.rank() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_catalog_variety, CatalogKey};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn twisted_cubic_secants() {
        let f = PrimeField::new(1_000_003).unwrap();
        let b = Budget::default();
        let x = build_catalog_variety(CatalogKey::Rnc(3), 0, &f, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let prof = secant_dims(&x, 3, 2, &mut rng, &b).unwrap();
        assert_eq!(prof.n, 1);
        assert_eq!(prof.dim(2), Some(3));
        assert_eq!(prof.r_gen, Some(2));
    }
}
