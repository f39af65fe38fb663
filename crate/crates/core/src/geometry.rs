//! Implicitization, projections, cones, slices, spans and reduced degrees.

use std::collections::HashMap;

use entloc_algebra::ideal::linear_form;
use entloc_algebra::zerodim::{self, Quotient};
use entloc_algebra::{
    eliminate, gcd2, hilbert_invariants, saturate_irrelevant, Budget, Field, Ideal, Matrix,
    Monomial, MonomialOrder, PolyRing, Polynomial, Ring,
};
use rand::Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::variety::{
    ambient_ring, vanishes_at, LinearSubspace, Parametrization, ProjectivePoint, ProjectiveVariety, VarietyMeta,
};

/// All monomials of degree `d` in `n` variables.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == n {
            cur.push(left as u16);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Ideal of the closure of the image of `param` in `target`, generated in
/// degrees `≤ max_degree`.
///
/// In each degree `k` the forms of `I(X)_k` are the kernel of the linear map
/// `y^α ↦ φ^α`; only those not already in the ideal generated by lower
/// degrees are kept, so the result is a minimal generating set.
pub fn implicitize<F: Field>(
    param: &Parametrization<F>,
    target: &Ring<F>,
    max_degree: u32,
    budget: &Budget,
) -> Result<Ideal<F>> {
    let field = target.field().clone();
    let n = target.nvars();
    if param.forms().len() != n {
        return Err(GeomError::Precondition("form count differs from the target ring".into()));
    }
    let mut images: HashMap<Monomial, Polynomial<F>> = HashMap::new();
    images.insert(Monomial::one(n), Polynomial::one(param.ring()));
    let mut gens: Vec<Polynomial<F>> = Vec::new();
    for k in 1..=max_degree {
        budget.check_time()?;
        let monos = monomials_of_degree(n, k);
        let col_of: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        // image of y^α from the image of y^α / y_v
        let mut next = HashMap::with_capacity(monos.len());
        for m in &monos {
            let v = (0..n).find(|&v| m.exponent(v) > 0).expect("positive degree");
            let prev = Monomial::variable(n, v, 1).quotient(m).expect("divisible");
            let img = images[&prev].mul(&param.forms()[v]);
            next.insert(m.clone(), img);
        }
        images = next;
        let mut row_of: HashMap<Monomial, usize> = HashMap::new();
        for m in &monos {
            for (_, sm) in images[m].terms() {
                let len = row_of.len();
                row_of.entry(sm.clone()).or_insert(len);
            }
        }
        let mut a = Matrix::zeros(&field, row_of.len(), monos.len());
        for (j, m) in monos.iter().enumerate() {
            for (c, sm) in images[m].terms() {
                a.set(row_of[sm], j, c.clone());
            }
        }
        let kernel = a.kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        // rows spanning (lower-degree ideal)_k
        let mut span: Vec<Vec<F::Elem>> = Vec::new();
        for g in &gens {
            let gd = g.total_degree().unwrap();
            for mult in monomials_of_degree(n, k - gd) {
                let mut row = vec![field.zero(); monos.len()];
                for (c, gm) in g.terms() {
                    row[col_of[&gm.mul(&mult)]] = c.clone();
                }
                span.push(row);
            }
        }
        let mut rank = if span.is_empty() {
            0
        } else {
            Matrix::from_rows(&field, span.clone()).rank()
        };
        for v in kernel {
            span.push(v.clone());
            let new_rank = Matrix::from_rows(&field, span.clone()).rank();
            if new_rank > rank {
                rank = new_rank;
                let terms = v
                    .iter()
                    .zip(&monos)
                    .filter(|(c, _)| !field.is_zero(c))
                    .map(|(c, m)| (c.clone(), m.clone()))
                    .collect();
                gens.push(Polynomial::from_terms(target, terms));
            } else {
                span.pop();
            }
        }
    }
    Ok(Ideal::new(target, gens))
}

/// Image of a projection together with the matrix realizing it.
#[derive(Clone, Debug)]
pub struct Projection<F: Field> {
    pub image: ProjectiveVariety<F>,
    /// Rows are the linear forms vanishing on the center; the image point of
    /// `x` is `matrix · x`.
    pub matrix: Matrix<F>,
}

/// Projection of `X` from `center` into `ℙ^{r - dim center - 1}`.
///
/// Coordinates `y = T x` are chosen with `T = [C; L]`, `L` the equations of
/// the center and `C` a random completion, so that the center becomes the
/// span of the first coordinate points; those variables are eliminated.
pub fn project_image<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    center: &LinearSubspace<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Projection<F>> {
    let field = x.field().clone();
    let r = x.ambient();
    if center.ambient() != r {
        return Err(GeomError::Precondition("center lives in another ambient space".into()));
    }
    let c = center.basis().rows();
    if center.basis().rows() == 1 {
        let p = ProjectivePoint::new(&field, center.basis().row(0).to_vec())?;
        if x.contains(&p) {
            return Err(GeomError::CenterMeetsVariety);
        }
    } else {
        let meet = x.ideal().sum(&center.ideal(x.ring()));
        if !saturate_irrelevant(&meet, rng, budget)?.is_unit(budget)? {
            return Err(GeomError::CenterMeetsVariety);
        }
    }
    let l = center.equation_matrix();
    let tinv = loop {
        let mut rows = Matrix::random(&field, c, r + 1, rng).to_rows();
        rows.extend(l.to_rows());
        if let Some(inv) = Matrix::from_rows(&field, rows).inverse() {
            break inv;
        }
    };
    let in_y = x.ideal().linear_substitution(&tinv);
    let elim = eliminate(&in_y, c, budget)?;
    let target = ambient_ring(&field, r - c);
    let map: Vec<Option<usize>> = (0..=r - c).map(Some).collect();
    let ideal = elim.transfer(&target, &map).reduced(budget)?;
    let param = match x.parametrization() {
        Some(p) => Some(p.compose(&l)?),
        None => None,
    };
    let meta = VarietyMeta {
        name: format!("{}/projected", x.name()),
        n: x.meta.n,
        d: None,
        g: None,
        seed: x.meta.seed,
    };
    Ok(Projection {
        image: ProjectiveVariety::new(ideal, param, meta)?,
        matrix: l,
    })
}

/// Cone over `base ⊂ ℙ^{r-1}` with vertex the new coordinate point `e_r`.
pub fn cone_over<F: Field>(base: &ProjectiveVariety<F>) -> Result<ProjectiveVariety<F>> {
    let field = base.field().clone();
    let r = base.ambient() + 1;
    let ring = ambient_ring(&field, r);
    let map: Vec<Option<usize>> = (0..=r).map(|i| (i < r).then_some(i)).collect();
    let ideal = base.ideal().transfer(&ring, &map);
    let param = match base.parametrization() {
        None => None,
        Some(p) => {
            let m = p.nparams();
            let pring = PolyRing::with_prefix(field.clone(), "s", m + 1, MonomialOrder::Grevlex);
            let pmap: Vec<Option<usize>> = (0..=m).map(|i| (i < m).then_some(i)).collect();
            let mut forms: Vec<Polynomial<F>> =
                p.forms().iter().map(|f| f.transfer(&pring, &pmap)).collect();
            // free cone parameter, raised to the common degree
            forms.push(Polynomial::var(&pring, m).pow(p.degree()));
            Some(Parametrization::new(&pring, forms)?)
        }
    };
    let meta = VarietyMeta {
        name: format!("cone({})", base.name()),
        n: base.meta.n.map(|n| n + 1),
        d: base.meta.d,
        g: base.meta.g,
        seed: base.meta.seed,
    };
    ProjectiveVariety::new(ideal, param, meta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimDegree {
    /// `None` for the empty set.
    pub dim: Option<usize>,
    /// Degree of the reduced structure.
    pub reduced_degree: u64,
    /// Degree of the scheme, from the Hilbert polynomial.
    pub hilbert_degree: u64,
}

/// Dimension and reduced degree of `V(I)`.
///
/// The reduced degree is the number of distinct points of `V(I) ∩ H_1 ∩ .. ∩
/// H_dim` for random hyperplanes, counted on a random affine chart. Two
/// slices must agree; a third one arbitrates.
pub fn reduced_dim_degree<F: Field, R: Rng + ?Sized>(
    ideal: &Ideal<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<DimDegree> {
    let h = hilbert_invariants(ideal, budget)?;
    let Some(dim) = h.projective_dim else {
        return Ok(DimDegree {
            dim: None,
            reduced_degree: 0,
            hilbert_degree: 0,
        });
    };
    let mut counts: Vec<usize> = Vec::new();
    for _ in 0..3 {
        counts.push(slice_point_count(ideal, dim, rng, budget)?);
        if let Some(&c) = counts
            .iter()
            .find(|&&c| counts.iter().filter(|&&d| d == c).count() >= 2)
        {
            return Ok(DimDegree {
                dim: Some(dim),
                reduced_degree: c as u64,
                hilbert_degree: h.degree,
            });
        }
    }
    Err(GeomError::Exhausted(format!("slice counts disagree: {counts:?}")))
}

/// Adds `k` random hyperplanes and a random affine chart `ℓ = 1`.
pub fn affine_slice<F: Field, R: Rng + ?Sized>(ideal: &Ideal<F>, k: usize, rng: &mut R) -> Ideal<F> {
    let ring = ideal.ring();
    let mut extra: Vec<Polynomial<F>> = (0..k).map(|_| random_linear_form(ring, rng)).collect();
    extra.push(random_linear_form(ring, rng).sub(&Polynomial::one(ring)));
    ideal.with_generators(extra)
}

fn slice_point_count<F: Field, R: Rng + ?Sized>(
    ideal: &Ideal<F>,
    dim: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<usize> {
    let sliced = affine_slice(ideal, dim, rng);
    let rad = zerodim::radical(&sliced, budget)?;
    Ok(Quotient::new(&rad, budget)?.dim())
}

pub fn random_linear_form<F: Field, R: Rng + ?Sized>(ring: &Ring<F>, rng: &mut R) -> Polynomial<F> {
    let field = ring.field();
    let coeffs: Vec<F::Elem> = (0..ring.nvars()).map(|_| field.random(rng)).collect();
    linear_form(ring, &coeffs)
}

/// Linear span of `V(I)` for an ideal already saturated by the irrelevant
/// ideal.
pub fn span_of_saturated<F: Field>(ideal: &Ideal<F>, budget: &Budget) -> Result<LinearSubspace<F>> {
    let ring = ideal.ring();
    let field = ring.field();
    let n = ring.nvars();
    let gb = ideal.groebner(MonomialOrder::Grevlex, budget)?;
    if gb.is_unit() {
        return Err(GeomError::Precondition("empty zero set has no span".into()));
    }
    let rows: Vec<Vec<F::Elem>> = gb
        .basis()
        .iter()
        .filter(|g| g.total_degree() == Some(1))
        .map(|g| {
            let mut row = vec![field.zero(); n];
            for (c, m) in g.terms() {
                let v = (0..n).find(|&v| m.exponent(v) == 1).expect("linear term");
                row[v] = c.clone();
            }
            row
        })
        .collect();
    LinearSubspace::from_equations(field, n - 1, &Matrix::from_rows(field, rows))
}

/// `ℓ = dim ⟨V(I)⟩` together with the span.
pub fn span_dim<F: Field, R: Rng + ?Sized>(
    ideal: &Ideal<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<(usize, LinearSubspace<F>)> {
    let sat = saturate_irrelevant(ideal, rng, budget)?;
    let span = span_of_saturated(&sat, budget)?;
    Ok((span.dim(), span))
}

/// Point of a parametrized variety at random parameter values.
pub fn sample_point<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    rng: &mut R,
) -> Result<ProjectivePoint<F>> {
    let p = x.parametrization().ok_or(GeomError::MissingParametrization)?;
    let field = x.field();
    for _ in 0..16 {
        let s: Vec<F::Elem> = (0..p.nparams()).map(|_| field.random(rng)).collect();
        if let Ok(pt) = ProjectivePoint::new(field, p.eval(&s)) {
            return Ok(pt);
        }
    }
    Err(GeomError::Exhausted("parametrization keeps hitting base points".into()))
}

/// Base-field points of `X` found by slicing with random linear spaces of
/// complementary dimension. Only prime fields have enough of them.
pub fn sample_points_by_slicing<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    count: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<Vec<ProjectivePoint<F>>> {
    let field = x.field().clone();
    if field.characteristic() == 0 {
        return Err(GeomError::Precondition(
            "sampling by slicing needs a prime field".into(),
        ));
    }
    let dim = hilbert_invariants(x.ideal(), budget)?
        .projective_dim
        .ok_or_else(|| GeomError::Precondition("empty variety".into()))?;
    let mut out: Vec<ProjectivePoint<F>> = Vec::new();
    for _ in 0..64 * count.max(1) {
        let sliced = affine_slice(x.ideal(), dim, rng);
        let pts = zerodim::solve(&sliced, rng, budget)?;
        for p in pts.rational {
            let pt = ProjectivePoint::new(&field, p)?;
            if !out.contains(&pt) {
                out.push(pt);
            }
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(GeomError::Exhausted("no rational points on random slices".into()))
}

/// A point with nonzero coordinates that lies off `X`.
pub fn general_point_off<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    rng: &mut R,
) -> Result<ProjectivePoint<F>> {
    for _ in 0..16 {
        let p = ProjectivePoint::random(x.field(), x.ambient(), rng);
        if !x.contains(&p) {
            return Ok(p);
        }
    }
    Err(GeomError::Exhausted("random points keep landing on the variety".into()))
}

/// `I(X) + (h)` for a random hyperplane `h`.
pub fn hyperplane_section<F: Field, R: Rng + ?Sized>(ideal: &Ideal<F>, rng: &mut R) -> Ideal<F> {
    ideal.with_generators([random_linear_form(ideal.ring(), rng)])
}

/// Arithmetic genus of a random hyperplane section.
pub fn sectional_genus<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<i64> {
    let h = hilbert_invariants(&hyperplane_section(x.ideal(), rng), budget)?;
    h.arithmetic_genus()
        .ok_or_else(|| GeomError::Precondition("hyperplane section is empty".into()))
}

/// Ideal of `V(I)` inside `span ≅ ℙ^ℓ`, in coordinates `y_0..y_ℓ` (named
/// `x_0..x_ℓ`) with `x = Σ y_j b_j` for the basis rows `b_j` of `span`.
pub fn restrict_to_span<F: Field>(ideal: &Ideal<F>, span: &LinearSubspace<F>, budget: &Budget) -> Result<Ideal<F>> {
    let field = ideal.ring().field().clone();
    let basis = span.basis();
    let target = ambient_ring(&field, basis.rows() - 1);
    let images: Vec<Polynomial<F>> = (0..basis.cols())
        .map(|i| {
            let coeffs: Vec<F::Elem> = (0..basis.rows()).map(|j| basis.get(j, i).clone()).collect();
            linear_form(&target, &coeffs)
        })
        .collect();
    let gens = ideal.generators().iter().map(|g| g.substitute(&images)).collect();
    Ok(Ideal::new(&target, gens).reduced(budget)?)
}

/// Whether `V(I)` is a cone with vertex `v`: `v ∈ V(I)` and the
/// derivative `D_v` along `v` maps `I` into itself. Then `I` is invariant
/// under translation by `v` (for characteristic 0 or larger than the
/// degrees), so every component of `V(I)` contains `v`.
pub fn is_cone_with_vertex<F: Field>(ideal: &Ideal<F>, v: &ProjectivePoint<F>, budget: &Budget) -> Result<bool> {
    if !vanishes_at(ideal, v.coords()) {
        return Ok(false);
    }
    let field = ideal.ring().field();
    let gb = ideal.groebner(MonomialOrder::Grevlex, budget)?;
    for g in ideal.generators() {
        let mut dv = Polynomial::zero(ideal.ring());
        for (i, c) in v.coords().iter().enumerate() {
            if !field.is_zero(c) {
                dv = dv.add(&g.derivative(i).scale(c));
            }
        }
        if !gb.contains(&dv)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Plane curves in `z_0, z_1, z_2`, handled through the chart `z_2 = 1`.
pub(crate) mod plane {
    use super::*;

    pub fn affine_ring<F: Field>(field: &F) -> Ring<F> {
        PolyRing::new(field.clone(), &["u", "v"], MonomialOrder::Grevlex).expect("distinct names")
    }

    pub fn dehomogenize<F: Field>(f: &Polynomial<F>, target: &Ring<F>) -> Polynomial<F> {
        let images = [
            Polynomial::var(target, 0),
            Polynomial::var(target, 1),
            Polynomial::one(target),
        ];
        f.substitute(&images)
    }

    /// The curve part `gcd(generators)` of a homogeneous ideal in three
    /// variables, as an affine polynomial on the chart `z_2 = 1`.
    pub fn curve_part<F: Field>(ideal: &Ideal<F>) -> Result<Polynomial<F>> {
        let aff = affine_ring(ideal.ring().field());
        let mut g = Polynomial::zero(&aff);
        for f in ideal.generators() {
            let a = dehomogenize(f, &aff);
            g = if g.is_zero() { a } else { gcd2(&g, &a)? };
        }
        Ok(g)
    }
}

/// Plane model of a curve: its image under a projection to `ℙ^2` given by
/// the 3 rows of `m`. Returns the image ideal in `z_0, z_1, z_2`.
pub fn project_to_plane<F: Field, R: Rng + ?Sized>(
    ideal: &Ideal<F>,
    m: &Matrix<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Ideal<F>> {
    let field = ideal.ring().field().clone();
    let n = ideal.ring().nvars();
    let tinv = loop {
        let mut rows = Matrix::random(&field, n - 3, n, rng).to_rows();
        rows.extend(m.to_rows());
        if let Some(inv) = Matrix::from_rows(&field, rows).inverse() {
            break inv;
        }
    };
    let in_y = ideal.linear_substitution(&tinv);
    let elim = eliminate(&in_y, n - 3, budget)?;
    let target = PolyRing::with_prefix(field, "z", 3, MonomialOrder::Grevlex);
    Ok(elim.transfer(&target, &[Some(0), Some(1), Some(2)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use entloc_algebra::{parse_polynomial, PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ideal<F: Field>(r: &Ring<F>, gens: &[&str]) -> Ideal<F> {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect())
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(5, 3).len(), 35);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }

    #[test]
    fn conic_from_parametrization() {
        let pr = PolyRing::new(Rationals, &["s", "t"], MonomialOrder::Grevlex).unwrap();
        let forms = ["s^2", "s*t", "t^2"]
            .iter()
            .map(|f| parse_polynomial(f, &pr).unwrap())
            .collect();
        let p = Parametrization::new(&pr, forms).unwrap();
        let r = ambient_ring(&Rationals, 2);
        let i = implicitize(&p, &r, 3, &Budget::default()).unwrap();
        assert_eq!(i.generators().len(), 1);
        let expected = parse_polynomial("x0*x2 - x1^2", &r).unwrap();
        let g = &i.generators()[0];
        assert!(g.scale(&Rationals.from_i64(-1)) == expected || *g == expected);
    }

    #[test]
    fn double_line_has_reduced_degree_one() {
        let r = ambient_ring(&PrimeField::new(32003).unwrap(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let dd = reduced_dim_degree(&ideal(&r, &["x0^2"]), &mut rng, &Budget::default()).unwrap();
        assert_eq!(dd.dim, Some(1));
        assert_eq!(dd.hilbert_degree, 2);
        assert_eq!(dd.reduced_degree, 1);
    }

    #[test]
    fn spans_of_small_configurations() {
        let r = ambient_ring(&Rationals, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = Budget::default();
        // two coordinate points
        let pts = ideal(&r, &["x2", "x3", "x0*x1"]);
        assert_eq!(span_dim(&pts, &mut rng, &b).unwrap().0, 1);
        let cubic = ideal(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        assert_eq!(span_dim(&cubic, &mut rng, &b).unwrap().0, 3);
        let r4 = ambient_ring(&Rationals, 4);
        let conic = ideal(&r4, &["x3", "x4", "x0*x2 - x1^2"]);
        assert_eq!(span_dim(&conic, &mut rng, &b).unwrap().0, 2);
    }

    #[test]
    fn plane_conic_cone() {
        let r = ambient_ring(&Rationals, 2);
        let conic = ProjectiveVariety::new(ideal(&r, &["x0*x2 - x1^2"]), None, VarietyMeta::default()).unwrap();
        let cone = cone_over(&conic).unwrap();
        let h = cone.hilbert(&Budget::default()).unwrap();
        assert_eq!((h.projective_dim, h.degree), (Some(2), 2));
        let v = ProjectivePoint::coordinate_point(&Rationals, 3, 3);
        assert!(cone.contains(&v));
    }
}
