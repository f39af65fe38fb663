//! Named varieties: rational normal curves, the cubic scroll, cones,
//! Veronese surfaces and random complete intersections.

use std::fmt;
use std::str::FromStr;

use entloc_algebra::{Budget, Field, Ideal, Matrix, MonomialOrder, PolyRing, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GeomError, Result};
use crate::geometry::{cone_over, implicitize, monomials_of_degree, sectional_genus};
use crate::variety::{
    ambient_ring, LinearSubspace, Parametrization, ProjectivePoint, ProjectiveVariety, VarietyMeta,
};

/// Height of the integer coefficients of seeded catalog instances. Integer
/// data keeps an instance meaningful modulo every large prime.
pub const CATALOG_HEIGHT: i64 = 1000;

const MAX_ATTEMPTS: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogKey {
    /// Rational normal curve of degree `d` in `ℙ^d`, `3 ≤ d ≤ 6`.
    Rnc(u32),
    Scroll12,
    ConeTwistedCubic,
    Veronese5,
    VeroneseProj4,
    DelPezzo4,
    Elliptic4,
    K3_23,
    RationalQuartic3,
}

impl CatalogKey {
    pub const ALL: [CatalogKey; 12] = [
        CatalogKey::Rnc(3),
        CatalogKey::Rnc(4),
        CatalogKey::Rnc(5),
        CatalogKey::Rnc(6),
        CatalogKey::Scroll12,
        CatalogKey::ConeTwistedCubic,
        CatalogKey::Veronese5,
        CatalogKey::VeroneseProj4,
        CatalogKey::DelPezzo4,
        CatalogKey::Elliptic4,
        CatalogKey::K3_23,
        CatalogKey::RationalQuartic3,
    ];

    /// Surfaces in `ℙ^4` with generic rank 2.
    pub const SURFACES: [CatalogKey; 5] = [
        CatalogKey::Scroll12,
        CatalogKey::ConeTwistedCubic,
        CatalogKey::VeroneseProj4,
        CatalogKey::DelPezzo4,
        CatalogKey::K3_23,
    ];

    /// `(n, d, g)`: dimension, degree and sectional genus.
    pub fn invariants(self) -> (usize, u64, i64) {
        match self {
            CatalogKey::Rnc(d) => (1, d as u64, 0),
            CatalogKey::Scroll12 | CatalogKey::ConeTwistedCubic => (2, 3, 0),
            CatalogKey::Veronese5 => (2, 4, 0),
            CatalogKey::VeroneseProj4 => (2, 4, 0),
            CatalogKey::DelPezzo4 => (2, 4, 1),
            CatalogKey::Elliptic4 => (1, 4, 1),
            CatalogKey::K3_23 => (2, 6, 4),
            CatalogKey::RationalQuartic3 => (1, 4, 0),
        }
    }

    pub fn ambient(self) -> usize {
        match self {
            CatalogKey::Rnc(d) => d as usize,
            CatalogKey::Veronese5 => 5,
            CatalogKey::Elliptic4 | CatalogKey::RationalQuartic3 => 3,
            _ => 4,
        }
    }

    /// Whether construction draws random numbers.
    pub fn is_seeded(self) -> bool {
        matches!(
            self,
            CatalogKey::VeroneseProj4 | CatalogKey::DelPezzo4 | CatalogKey::Elliptic4 | CatalogKey::K3_23
        )
    }

    pub fn description(self) -> &'static str {
        match self {
            CatalogKey::Rnc(_) => "rational normal curve",
            CatalogKey::Scroll12 => "cubic scroll S(1,2) in P^4",
            CatalogKey::ConeTwistedCubic => "cone in P^4 over a twisted cubic, vertex e4",
            CatalogKey::Veronese5 => "Veronese surface in P^5",
            CatalogKey::VeroneseProj4 => "projection of the Veronese surface from a random point",
            CatalogKey::DelPezzo4 => "complete intersection of two random quadrics in P^4",
            CatalogKey::Elliptic4 => "complete intersection of two random quadrics in P^3",
            CatalogKey::K3_23 => "complete intersection of a random quadric and cubic in P^4",
            CatalogKey::RationalQuartic3 => "smooth rational quartic (t^4, t^3u, tu^3, u^4) in P^3",
        }
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Rnc(d) => write!(f, "rnc({d})"),
            CatalogKey::Scroll12 => write!(f, "scroll12"),
            CatalogKey::ConeTwistedCubic => write!(f, "cone_twisted_cubic"),
            CatalogKey::Veronese5 => write!(f, "veronese5"),
            CatalogKey::VeroneseProj4 => write!(f, "veronese_proj4"),
            CatalogKey::DelPezzo4 => write!(f, "delpezzo4"),
            CatalogKey::Elliptic4 => write!(f, "elliptic4"),
            CatalogKey::K3_23 => write!(f, "k3_23"),
            CatalogKey::RationalQuartic3 => write!(f, "rational_quartic3"),
        }
    }
}

impl FromStr for CatalogKey {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rnc = s
            .strip_prefix("rnc(")
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| s.strip_prefix("rnc"));
        if let Some(d) = rnc {
            return match d.parse::<u32>() {
                Ok(d) if (3..=6).contains(&d) => Ok(CatalogKey::Rnc(d)),
                _ => Err(GeomError::UnknownKey(s.to_string())),
            };
        }
        Ok(match s {
            "scroll12" => CatalogKey::Scroll12,
            "cone_twisted_cubic" => CatalogKey::ConeTwistedCubic,
            "veronese5" => CatalogKey::Veronese5,
            "veronese_proj4" => CatalogKey::VeroneseProj4,
            "delpezzo4" => CatalogKey::DelPezzo4,
            "elliptic4" => CatalogKey::Elliptic4,
            "k3_23" => CatalogKey::K3_23,
            "rational_quartic3" => CatalogKey::RationalQuartic3,
            _ => return Err(GeomError::UnknownKey(s.to_string())),
        })
    }
}

/// Builds a catalog variety over `field`, reseeding up to five times when a
/// random instance fails its sanity check.
pub fn build_catalog_variety<F: Field>(
    key: CatalogKey,
    seed: u64,
    field: &F,
    budget: &Budget,
) -> Result<ProjectiveVariety<F>> {
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let x = construct(key, field, &mut rng, budget)?;
        let (n, d, g) = key.invariants();
        let x = x.with_meta(VarietyMeta {
            name: key.to_string(),
            n: Some(n),
            d: Some(d),
            g: Some(g),
            seed: Some(seed),
        });
        match sanity(&x, &mut rng, budget)? {
            None => return Ok(x),
            Some(reason) if key.is_seeded() => last = reason,
            Some(reason) => {
                return Err(GeomError::Reseed {
                    key: key.to_string(),
                    attempts: attempt as usize + 1,
                    reason,
                })
            }
        }
    }
    Err(GeomError::Reseed {
        key: key.to_string(),
        attempts: MAX_ATTEMPTS as usize,
        reason: last,
    })
}

/// Checks the metadata against the Hilbert polynomial and the
/// parametrization against the ideal; returns the failure reason.
fn sanity<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Option<String>> {
    let h = x.hilbert(budget)?;
    if h.projective_dim != x.meta.n || Some(h.degree) != x.meta.d {
        return Ok(Some(format!(
            "Hilbert data (dim {:?}, degree {}) differs from the expected ({:?}, {:?})",
            h.projective_dim, h.degree, x.meta.n, x.meta.d
        )));
    }
    let g = match h.projective_dim {
        Some(1) => h.arithmetic_genus(),
        _ => Some(sectional_genus(x, rng, budget)?),
    };
    if g != x.meta.g {
        return Ok(Some(format!("genus {g:?} differs from the expected {:?}", x.meta.g)));
    }
    if !x.parametrization_consistent() {
        return Ok(Some("parametrization does not satisfy the ideal".into()));
    }
    Ok(None)
}

fn construct<F: Field, R: Rng + ?Sized>(
    key: CatalogKey,
    field: &F,
    rng: &mut R,
    budget: &Budget,
) -> Result<ProjectiveVariety<F>> {
    match key {
        CatalogKey::Rnc(d) => {
            let exps: Vec<(u16, u16)> = (0..=d as u16).map(|i| (d as u16 - i, i)).collect();
            binary_monomial_variety(field, &exps, 2, budget)
        }
        CatalogKey::RationalQuartic3 => {
            binary_monomial_variety(field, &[(4, 0), (3, 1), (1, 3), (0, 4)], 3, budget)
        }
        CatalogKey::Scroll12 => {
            // conics through (0:0:1): the blow-up of the plane at a point
            let pr = PolyRing::with_prefix(field.clone(), "s", 3, MonomialOrder::Grevlex);
            let s = |i| Polynomial::var(&pr, i);
            let forms = vec![
                s(0).mul(&s(2)),
                s(1).mul(&s(2)),
                s(0).pow(2),
                s(0).mul(&s(1)),
                s(1).pow(2),
            ];
            parametrized(field, Parametrization::new(&pr, forms)?, 2, budget)
        }
        CatalogKey::ConeTwistedCubic => {
            let base = construct(CatalogKey::Rnc(3), field, rng, budget)?;
            cone_over(&base)
        }
        CatalogKey::Veronese5 => parametrized(field, veronese(field)?, 2, budget),
        CatalogKey::VeroneseProj4 => {
            let v = veronese(field)?;
            // a center off the secant cubic: its symmetric matrix is invertible
            let center = loop {
                let c: Vec<F::Elem> = (0..6).map(|_| field.random_small(rng, CATALOG_HEIGHT)).collect();
                let sym = Matrix::from_rows(
                    field,
                    vec![
                        vec![c[0].clone(), c[1].clone(), c[2].clone()],
                        vec![c[1].clone(), c[3].clone(), c[4].clone()],
                        vec![c[2].clone(), c[4].clone(), c[5].clone()],
                    ],
                );
                if !field.is_zero(&sym.determinant()) {
                    break ProjectivePoint::new(field, c)?;
                }
            };
            let l = LinearSubspace::from_points(&[center])?.equation_matrix();
            parametrized(field, v.compose(&l)?, 3, budget)
        }
        CatalogKey::DelPezzo4 => complete_intersection(field, 4, &[2, 2], rng),
        CatalogKey::Elliptic4 => complete_intersection(field, 3, &[2, 2], rng),
        CatalogKey::K3_23 => complete_intersection(field, 4, &[2, 3], rng),
    }
}

fn veronese<F: Field>(field: &F) -> Result<Parametrization<F>> {
    let pr = PolyRing::with_prefix(field.clone(), "s", 3, MonomialOrder::Grevlex);
    let s = |i| Polynomial::var(&pr, i);
    let forms = vec![
        s(0).pow(2),
        s(0).mul(&s(1)),
        s(0).mul(&s(2)),
        s(1).pow(2),
        s(1).mul(&s(2)),
        s(2).pow(2),
    ];
    Parametrization::new(&pr, forms)
}

fn binary_monomial_variety<F: Field>(
    field: &F,
    exps: &[(u16, u16)],
    max_degree: u32,
    budget: &Budget,
) -> Result<ProjectiveVariety<F>> {
    let pr = PolyRing::new(field.clone(), &["s", "t"], MonomialOrder::Grevlex)?;
    let forms = exps
        .iter()
        .map(|&(a, b)| {
            Polynomial::monomial(
                &pr,
                field.one(),
                entloc_algebra::Monomial::from_exponents(&[a, b]),
            )
        })
        .collect();
    parametrized(field, Parametrization::new(&pr, forms)?, max_degree, budget)
}

fn parametrized<F: Field>(
    field: &F,
    param: Parametrization<F>,
    max_degree: u32,
    budget: &Budget,
) -> Result<ProjectiveVariety<F>> {
    let ring = ambient_ring(field, param.forms().len() - 1);
    let ideal = implicitize(&param, &ring, max_degree, budget)?;
    ProjectiveVariety::new(ideal, Some(param), VarietyMeta::default())
}

fn complete_intersection<F: Field, R: Rng + ?Sized>(
    field: &F,
    r: usize,
    degrees: &[u32],
    rng: &mut R,
) -> Result<ProjectiveVariety<F>> {
    let ring = ambient_ring(field, r);
    let gens = degrees
        .iter()
        .map(|&d| {
            let terms = monomials_of_degree(r + 1, d)
                .into_iter()
                .map(|m| (field.random_small(rng, CATALOG_HEIGHT), m))
                .collect();
            Polynomial::from_terms(&ring, terms)
        })
        .collect();
    ProjectiveVariety::new(Ideal::new(&ring, gens), None, VarietyMeta::default())
}
