//! Segre points of space curves: projections that fail to be birational,
//! the cone vertices of an elliptic quartic, and pair-Segre points.

use entloc_algebra::univariate::interpolate;
use entloc_algebra::{
    intersect, saturate_by_element, saturate_irrelevant, Budget, Field, Ideal, Matrix, MonomialOrder,
    PrimeField, UniPoly,
};
use rand::Rng;
use serde::Serialize;

use crate::entry::component_count;
use crate::error::{GeomError, Result};
use crate::geometry::{project_image, reduced_dim_degree, span_dim};
use crate::secant::{collinear, reduce_mod_p};
use crate::variety::{LinearSubspace, ProjectivePoint, ProjectiveVariety};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreVerdict {
    pub o: Vec<String>,
    pub curve: String,
    /// `image_degree < source_degree`.
    pub verdict: bool,
    pub image_degree: u64,
    pub source_degree: u64,
}

/// Whether the projection from `o` restricted to the irreducible curve `Y`
/// is non-birational, detected by a drop of the reduced degree.
pub fn is_segre_point<F: Field, R: Rng + ?Sized>(
    y: &ProjectiveVariety<F>,
    o: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<SegreVerdict> {
    if y.contains(o) {
        return Err(GeomError::PointOnVariety);
    }
    let source = reduced_dim_degree(y.ideal(), rng, budget)?;
    if source.dim != Some(1) {
        return Err(GeomError::Precondition(format!("expected a curve, got dimension {:?}", source.dim)));
    }
    let components = component_count(y.ideal(), 3, rng, budget)?;
    if components.count != 1 {
        return Err(GeomError::Precondition(format!(
            "curve has {} components",
            components.count
        )));
    }
    let center = LinearSubspace::from_points(std::slice::from_ref(o))?;
    let image = project_image(y, &center, rng, budget)?;
    let image_degree = reduced_dim_degree(image.image.ideal(), rng, budget)?.reduced_degree;
    Ok(SegreVerdict {
        o: o.to_strings(),
        curve: y.name().to_string(),
        verdict: image_degree < source.reduced_degree,
        image_degree,
        source_degree: source.reduced_degree,
    })
}

/// The finite variant for `Y = {a, b}`: `o` lies on the line `⟨a, b⟩` and
/// differs from both points.
pub fn is_segre_point_finite<F: Field>(a: &ProjectivePoint<F>, b: &ProjectivePoint<F>, o: &ProjectivePoint<F>) -> bool {
    o != a && o != b && collinear(a, b, o)
}

/// The pencil of quadrics through a complete intersection of two quadrics
/// in `ℙ^3`, as symmetric matrices `A`, `B`.
#[derive(Clone, Debug)]
pub struct QuadricPencil<F: Field> {
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    /// `det(t A + B)`; the binary form is `μ^4 det((λ/μ) A + B)`.
    pub det: UniPoly<F>,
}

impl<F: Field> QuadricPencil<F> {
    /// Reads the pencil off the quadrics of the reduced basis of `ideal`.
    pub fn from_ideal(ideal: &Ideal<F>, budget: &Budget) -> Result<Self> {
        let ring = ideal.ring();
        let field = ring.field().clone();
        if ring.nvars() != 4 {
            return Err(GeomError::Precondition("pencil needs a curve in P^3".into()));
        }
        let half = field
            .inv(&field.from_i64(2))
            .ok_or_else(|| GeomError::Precondition("characteristic 2".into()))?;
        let gb = ideal.groebner(MonomialOrder::Grevlex, budget)?;
        if gb.basis().iter().any(|g| g.total_degree().is_some_and(|d| d < 2)) {
            return Err(GeomError::Precondition("curve is degenerate".into()));
        }
        let quadrics: Vec<_> = gb.basis().iter().filter(|g| g.total_degree() == Some(2)).collect();
        if quadrics.len() != 2 {
            return Err(GeomError::Precondition(format!(
                "expected a pencil of quadrics, found {} independent quadrics",
                quadrics.len()
            )));
        }
        let sym = |g: &entloc_algebra::Polynomial<F>| {
            let mut m = Matrix::zeros(&field, 4, 4);
            for (c, mono) in g.terms() {
                let vars: Vec<usize> = (0..4).flat_map(|v| std::iter::repeat_n(v, mono.exponent(v) as usize)).collect();
                let (i, j) = (vars[0], vars[1]);
                if i == j {
                    m.set(i, i, c.clone());
                } else {
                    let h = field.mul(c, &half);
                    m.set(i, j, h.clone());
                    m.set(j, i, h);
                }
            }
            m
        };
        let (a, b) = (sym(quadrics[0]), sym(quadrics[1]));
        let det = pencil_determinant(&a, &b);
        if det.is_zero() {
            return Err(GeomError::Precondition("every member of the pencil is singular".into()));
        }
        Ok(QuadricPencil { a, b, det })
    }

    /// Number of distinct singular members, roots of `det(λA + μB)` on `ℙ^1`.
    pub fn singular_member_count(&self) -> Result<usize> {
        let sq = self.det.squarefree_part()?;
        let finite = sq.degree().unwrap_or(0);
        let at_infinity = usize::from(self.det.degree().unwrap_or(0) < 4);
        Ok(finite + at_infinity)
    }

    /// Singular members with parameters in the base field, as `(λ, μ)`.
    fn rational_members<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Matrix<F>>> {
        let field = self.a.field().clone();
        let mut out: Vec<Matrix<F>> = Vec::new();
        for t in self.det.roots(rng)? {
            let mut m = self.b.clone();
            for i in 0..4 {
                for j in 0..4 {
                    let v = field.add(&field.mul(&t, self.a.get(i, j)), self.b.get(i, j));
                    m.set(i, j, v);
                }
            }
            out.push(m);
        }
        if self.det.degree().unwrap_or(0) < 4 {
            out.push(self.a.clone());
        }
        Ok(out)
    }
}

fn pencil_determinant<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> UniPoly<F> {
    let field = a.field();
    let xs: Vec<F::Elem> = (0..5).map(|i| field.from_i64(i)).collect();
    let ys: Vec<F::Elem> = xs
        .iter()
        .map(|t| {
            let mut m = b.clone();
            for i in 0..4 {
                for j in 0..4 {
                    m.set(i, j, field.add(&field.mul(t, a.get(i, j)), b.get(i, j)));
                }
            }
            m.determinant()
        })
        .collect();
    interpolate(field, &xs, &ys)
}

#[derive(Clone, Debug)]
pub struct SegreCount {
    /// Distinct singular members of the pencil, over the algebraic closure.
    pub count: usize,
    /// `count < 4`: the pencil has a repeated singular member.
    pub non_generic: bool,
    /// Prime over which the vertices were found.
    pub prime: Option<u64>,
    /// Cone vertices, when all singular members are defined over `F_prime`.
    pub vertices: Vec<ProjectivePoint<PrimeField>>,
    /// [`is_segre_point`] on each vertex.
    pub vertex_checks: Vec<SegreVerdict>,
    /// Primes tried before a split one was found.
    pub primes_tried: usize,
}

/// Number of quadric cones containing an elliptic quartic `C ⊂ ℙ^3`.
///
/// The count is taken over the base field from the squarefree part of the
/// determinant of the pencil. Vertices are kernels of the singular members
/// over the first prime, among the characteristic of the base field and
/// then `primes`, where all of them are defined. Reducing modulo a
/// different prime only makes sense for curves with small integer
/// coefficients; pass an empty list otherwise.
pub fn segre_count_elliptic_quartic<F: Field, R: Rng + ?Sized>(
    c: &ProjectiveVariety<F>,
    primes: &[u64],
    rng: &mut R,
    budget: &Budget,
) -> Result<SegreCount> {
    let h = c.hilbert(budget)?;
    if c.ambient() != 3 || h.projective_dim != Some(1) || h.degree != 4 {
        return Err(GeomError::Precondition("not a quartic curve in P^3".into()));
    }
    let pencil = QuadricPencil::from_ideal(c.ideal(), budget)?;
    let count = pencil.singular_member_count()?;
    let mut out = SegreCount {
        count,
        non_generic: count < 4,
        prime: None,
        vertices: Vec::new(),
        vertex_checks: Vec::new(),
        primes_tried: 0,
    };
    let own = c.field().characteristic();
    let candidates = (own > 0).then_some(own).into_iter().chain(primes.iter().copied().filter(|&p| p != own));
    for p in candidates {
        out.primes_tried += 1;
        let fp = PrimeField::new(p)?;
        let Ok(reduced) = reduce_mod_p(c, &fp) else { continue };
        let Ok(pencil_p) = QuadricPencil::from_ideal(reduced.ideal(), budget) else { continue };
        if pencil_p.singular_member_count()? != count {
            continue;
        }
        let members = pencil_p.rational_members(rng)?;
        if members.len() != count {
            continue;
        }
        let mut vertices = Vec::new();
        for m in &members {
            let kernel = m.kernel_basis();
            if kernel.len() != 1 {
                return Err(GeomError::Precondition("singular member is not a cone over a smooth conic".into()));
            }
            vertices.push(ProjectivePoint::new(&fp, kernel[0].clone())?);
        }
        let mut checks = Vec::new();
        for v in &vertices {
            checks.push(is_segre_point(&reduced, v, rng, budget)?);
        }
        out.prime = Some(p);
        out.vertices = vertices;
        out.vertex_checks = checks;
        break;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairSegre {
    /// `π_o(T) ⊆ π_o(Y)`.
    pub contained: bool,
    /// `π_o(T) = π_o(Y)`.
    pub equal: bool,
}

/// Compares the images of the curves `Y` and `T` under the projection
/// from `o`, as sets.
pub fn pair_segre_test<F: Field, R: Rng + ?Sized>(
    y: &ProjectiveVariety<F>,
    t: &ProjectiveVariety<F>,
    o: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<PairSegre> {
    let r = y.ambient();
    if t.ambient() != r || o.ambient() != r {
        return Err(GeomError::Precondition("curves live in different spaces".into()));
    }
    if y.contains(o) || t.contains(o) {
        return Err(GeomError::PointOnVariety);
    }
    if y.ideal().equals(t.ideal(), budget)? {
        return Err(GeomError::Precondition("Y = T".into()));
    }
    let union = intersect(y.ideal(), t.ideal(), budget)?;
    let (ell, _) = span_dim(&union, rng, budget)?;
    if ell != r {
        return Err(GeomError::SpanCondition(format!("Y ∪ T spans a {ell}-dimensional space")));
    }
    // the image coordinates are the equations of o, so both images share them
    let center = LinearSubspace::from_points(std::slice::from_ref(o))?;
    let iy = project_image(y, &center, rng, budget)?.image;
    let it = project_image(t, &center, rng, budget)?.image;
    let contained = vanishes_on(iy.ideal(), it.ideal(), rng, budget)?;
    let equal = contained && vanishes_on(it.ideal(), iy.ideal(), rng, budget)?;
    Ok(PairSegre { contained, equal })
}

/// `V(target) ⊆ V(of)`: every generator `g` of `of` has `(target : g^∞)`
/// irrelevant.
fn vanishes_on<F: Field, R: Rng + ?Sized>(of: &Ideal<F>, target: &Ideal<F>, rng: &mut R, budget: &Budget) -> Result<bool> {
    for g in of.generators() {
        let sat = saturate_by_element(target, g, budget)?;
        if !saturate_irrelevant(&sat, rng, budget)?.is_unit(budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_catalog_variety, CatalogKey};
    use crate::variety::ambient_ring;
    use entloc_algebra::parse_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degenerate_pencil_has_two_singular_members() {
        let f = PrimeField::new(1_000_003).unwrap();
        let ring = ambient_ring(&f, 3);
        let gens = ["x0*x1", "x2*x3"].iter().map(|s| parse_polynomial(s, &ring).unwrap()).collect();
        let pencil = QuadricPencil::from_ideal(&Ideal::new(&ring, gens), &Budget::default()).unwrap();
        assert_eq!(pencil.singular_member_count().unwrap(), 2);
    }

    #[test]
    fn twisted_cubic_general_point_is_not_segre() {
        let f = PrimeField::new(1_000_003).unwrap();
        let b = Budget::default();
        let x = build_catalog_variety(CatalogKey::Rnc(3), 0, &f, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let o = ProjectivePoint::random(&f, 3, &mut rng);
        let v = is_segre_point(&x, &o, &mut rng, &b).unwrap();
        assert!(!v.verdict);
        assert_eq!((v.image_degree, v.source_degree), (3, 3));
    }
}
