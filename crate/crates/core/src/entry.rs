//! Entry loci `Γ_q(X)` of varieties with generic rank 2 and their
//! classification.

use std::collections::BTreeMap;
use std::time::Instant;

use entloc_algebra::bivariate::{absolute_factor_count, absolute_factor_degrees, squarefree_part};
use entloc_algebra::{
    eliminate, saturate_by_element, saturate_irrelevant, Budget, Field, Ideal, Matrix, MonomialOrder,
    PolyRing, Polynomial, Ring, UniPoly,
};
use rand::Rng;
use serde::Serialize;

use crate::error::{GeomError, Result, StageExt};
use crate::geometry::{
    general_point_off, plane, project_to_plane, reduced_dim_degree,
    sectional_genus, span_of_saturated, DimDegree,
};
use crate::secant::{incidence_ideal, secant_dims, SecantProfile};
use crate::variety::{LinearSubspace, ProjectivePoint, ProjectiveVariety};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EntryStrategy {
    /// Incidence ideal of `(a, s)` with `b = a + s q`, built from `I(X)`.
    Implicit,
    /// Pull-back to the parameter space, then image under the
    /// parametrization.
    Parametrized,
}

/// The saturated ideal of `Γ_q(X)`, in the ring of `X`.
///
/// Eliminating `s` from the incidence ideal of `(s : a)` projects the
/// incidence variety onto the `a` coordinates; saturating by the irrelevant
/// ideal removes the embedded origin. `r_gen(X) = 2` is the caller's
/// responsibility (see [`classify_entry_locus`]).
pub fn entry_locus_ideal<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    q: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Ideal<F>> {
    if x.contains(q) {
        return Err(GeomError::PointOnVariety);
    }
    let inc = incidence_ideal(x, q, budget)?;
    let elim = eliminate(&inc, 1, budget)?;
    let n = x.ring().nvars();
    let back: Vec<Option<usize>> = (0..n).map(Some).collect();
    let in_x = elim.transfer(x.ring(), &back);
    Ok(saturate_irrelevant(&in_x, rng, budget)?)
}

/// `Γ_q(X)` through the parametrization `φ`.
///
/// The parameters `u` with `φ(u) + s q ∈ X` for some `s ≠ 0` form
/// `K = ((f(φ(u) + s q) / s) : s^∞) ∩ k[u]`; base points of `φ` force
/// `s = 0` and disappear with the saturation. The image `φ(V(K))` comes
/// from the graph ideal `K + (y_i φ_j - y_j φ_i)`, saturated by a general
/// combination of the `φ_i` and eliminated.
pub fn entry_locus_ideal_parametrized<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    q: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Ideal<F>> {
    let p = x.parametrization().ok_or(GeomError::MissingParametrization)?;
    if x.contains(q) {
        return Err(GeomError::PointOnVariety);
    }
    let field = x.field().clone();
    let m = p.nparams();
    let n = x.ring().nvars();
    // ring (s, u_0..u_{m-1})
    let mut names = vec!["s".to_string()];
    names.extend(p.ring().vars().iter().cloned());
    let su: Ring<F> = PolyRing::new(field.clone(), &names, MonomialOrder::Grevlex)?;
    let u_embed: Vec<Option<usize>> = std::iter::once(None).chain((0..m).map(Some)).collect();
    let s = Polynomial::var(&su, 0);
    let phi: Vec<Polynomial<F>> = p.forms().iter().map(|f| f.transfer(&su, &u_embed)).collect();
    let images: Vec<Polynomial<F>> = (0..n)
        .map(|i| phi[i].add(&s.scale(&q.coords()[i])))
        .collect();
    let gens: Vec<Polynomial<F>> = x
        .ideal()
        .generators()
        .iter()
        .map(|f| {
            f.substitute(&images)
                .div_exact(&s)
                .expect("f(φ) = 0, so s divides f(φ + s q)")
        })
        .collect();
    let sat = saturate_by_element(&Ideal::new(&su, gens), &s, budget)?;
    let k = eliminate(&sat, 1, budget)?;
    // graph in (u, y)
    let mut names: Vec<String> = p.ring().vars().to_vec();
    names.extend(x.ring().vars().iter().cloned());
    let uy: Ring<F> = PolyRing::new(field.clone(), &names, MonomialOrder::Grevlex)?;
    let u_map: Vec<Option<usize>> = (0..m + n).map(|i| (i < m).then_some(i)).collect();
    let phi_uy: Vec<Polynomial<F>> = p.forms().iter().map(|f| f.transfer(&uy, &u_map)).collect();
    let mut graph: Vec<Polynomial<F>> = k.generators().iter().map(|g| g.transfer(&uy, &u_map)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let yi = Polynomial::var(&uy, m + i);
            let yj = Polynomial::var(&uy, m + j);
            graph.push(yi.mul(&phi_uy[j]).sub(&yj.mul(&phi_uy[i])));
        }
    }
    let h = phi_uy.iter().fold(Polynomial::zero(&uy), |acc, f| acc.add(&f.scale(&field.random(rng))));
    let graph = saturate_by_element(&Ideal::new(&uy, graph), &h, budget)?;
    let image = eliminate(&graph, m, budget)?;
    let back: Vec<Option<usize>> = (0..n).map(Some).collect();
    Ok(saturate_irrelevant(&image.transfer(x.ring(), &back), rng, budget)?)
}

pub fn entry_locus_with<F: Field, R: Rng + ?Sized>(
    strategy: EntryStrategy,
    x: &ProjectiveVariety<F>,
    q: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Ideal<F>> {
    match strategy {
        EntryStrategy::Implicit => entry_locus_ideal(x, q, rng, budget),
        EntryStrategy::Parametrized => entry_locus_ideal_parametrized(x, q, rng, budget),
    }
}

/// Runs both strategies and fails unless they give the same ideal.
pub fn entry_locus_checked<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    q: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<Ideal<F>> {
    let a = entry_locus_ideal(x, q, rng, budget)?;
    if x.parametrization().is_none() {
        return Ok(a);
    }
    let b = entry_locus_ideal_parametrized(x, q, rng, budget)?;
    if a.equals(&b, budget)? {
        Ok(a)
    } else {
        Err(GeomError::StrategyDisagreement)
    }
}

/// Some `b ≠ a` on `X` with `q ∈ ⟨a, b⟩` exists: the polynomials
/// `(f(a + s q) - f(a)) / s` in `s` have a common root.
pub fn witness_exists<F: Field>(x: &ProjectiveVariety<F>, q: &ProjectivePoint<F>, a: &ProjectivePoint<F>) -> bool {
    let field = x.field();
    let line = |i: usize| UniPoly::new(field, vec![a.coords()[i].clone(), q.coords()[i].clone()]);
    let lines: Vec<UniPoly<F>> = (0..=x.ambient()).map(line).collect();
    let mut g = UniPoly::zero(field);
    for f in x.ideal().generators() {
        let mut acc = UniPoly::zero(field);
        for (c, mono) in f.terms() {
            let mut t = UniPoly::constant(field, c.clone());
            for (v, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&lines[v].pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        // drop the root s = 0 coming from a itself
        let mut coeffs = acc.coeffs().to_vec();
        if !coeffs.is_empty() {
            coeffs.remove(0);
        }
        g = g.gcd(&UniPoly::new(field, coeffs));
    }
    g.degree().is_some_and(|d| d > 0) || g.is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    pub degrees: Vec<usize>,
}

/// Number of irreducible components of a curve, and their degrees.
///
/// Each of `projections` random plane models is reduced to its squarefree
/// part and counted with the Gao–Ruppert test; the maximum wins since a
/// special projection can only merge components.
pub fn component_count<F: Field, R: Rng + ?Sized>(
    curve: &Ideal<F>,
    projections: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<Components> {
    let field = curve.ring().field().clone();
    let n = curve.ring().nvars();
    let mut best: Option<Components> = None;
    let mut collapsed = 0;
    let mut done = 0;
    while done < projections.max(1) {
        let m = Matrix::random(&field, 3, n, rng);
        let image = project_to_plane(curve, &m, rng, budget)?;
        let f = plane::curve_part(&image)?;
        if f.is_zero() || f.is_constant() {
            collapsed += 1;
            if collapsed > 5 {
                return Err(GeomError::Exhausted("plane models keep collapsing".into()));
            }
            continue;
        }
        done += 1;
        let sq = squarefree_part(&f)?;
        let count = absolute_factor_count(&sq)?;
        if best.as_ref().is_none_or(|b| count > b.count) {
            let mut degrees = absolute_factor_degrees(&sq, rng)?;
            degrees.sort_unstable();
            best = Some(Components { count, degrees });
        }
    }
    Ok(best.expect("at least one projection"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeIrreducibility {
    I,
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeAb {
    A,
    B,
    #[serde(rename = "undetermined")]
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbOutcome {
    Equal,
    Different,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbTrial {
    pub o: Vec<String>,
    pub outcome: AbOutcome,
}

/// Compares `Γ_o(X)` with `Γ_q(X)` for random `o ∈ ⟨Γ_q(X)⟩`.
pub fn type_ab_test<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    gamma: &Ideal<F>,
    span: &LinearSubspace<F>,
    trials: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<(TypeAb, Vec<AbTrial>)> {
    if span.dim() == 0 {
        return Err(GeomError::SpanCondition("entry locus spans a point".into()));
    }
    let mut out = Vec::new();
    for _ in 0..trials {
        let o = (0..16)
            .map(|_| span.random_point(rng))
            .find(|o| !x.contains(o))
            .ok_or_else(|| GeomError::Exhausted("span points keep landing on X".into()))?;
        let outcome = match compare_at(x, gamma, &o, rng, budget) {
            Ok(v) => v,
            Err(e) if e.is_budget() => AbOutcome::Undetermined,
            Err(e) => return Err(e),
        };
        out.push(AbTrial {
            o: o.to_strings(),
            outcome,
        });
    }
    let verdict = if out.iter().all(|t| t.outcome == AbOutcome::Equal) {
        TypeAb::A
    } else if out.iter().any(|t| t.outcome == AbOutcome::Different) {
        TypeAb::B
    } else {
        TypeAb::Undetermined
    };
    Ok((verdict, out))
}

/// Scheme equality of `Γ_o` with `gamma`; `Different` needs failure of
/// containment in both directions.
pub fn compare_at<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    gamma: &Ideal<F>,
    o: &ProjectivePoint<F>,
    rng: &mut R,
    budget: &Budget,
) -> Result<AbOutcome> {
    let other = entry_locus_ideal(x, o, rng, budget)?;
    let forward = gamma.contains_ideal(&other, budget)?;
    let backward = other.contains_ideal(gamma, budget)?;
    Ok(match (forward, backward) {
        (true, true) => AbOutcome::Equal,
        (false, false) => AbOutcome::Different,
        _ => AbOutcome::Undetermined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub expected: i64,
    pub computed: i64,
    pub holds: bool,
}

impl FormulaCheck {
    fn new(expected: i64, computed: i64) -> Self {
        FormulaCheck {
            expected,
            computed,
            holds: expected == computed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryLocusReport {
    pub variety: String,
    pub seed: u64,
    pub field: String,
    pub primes: Vec<u64>,
    pub q: Vec<String>,
    /// Points `q` rejected before this one.
    pub q_resamples: usize,
    pub gamma: usize,
    pub ell: usize,
    pub reduced_degree: u64,
    pub hilbert_degree: u64,
    /// The eliminated ideal is not reduced in degree.
    pub degree_mismatch: bool,
    pub components: usize,
    pub component_degrees: Vec<usize>,
    pub type_irreducibility: TypeIrreducibility,
    pub type_ab: TypeAb,
    pub ab_trials: Vec<AbTrial>,
    /// `(d-1)(d-2) - 2g` against the reduced degree (surfaces in `ℙ^4`).
    pub degree_formula: Option<FormulaCheck>,
    /// `dim σ_{r_gen - 1} + n + 1 - r` against `γ`.
    pub dimension_formula: FormulaCheck,
    pub sectional_genus: Option<i64>,
    pub secant: SecantProfile,
    pub entry_locus: Vec<String>,
    pub timings: BTreeMap<String, u64>,
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub ab_trials: usize,
    pub projections: usize,
    pub secant_trials: usize,
    pub max_q_attempts: usize,
    pub seed: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            ab_trials: 3,
            projections: 3,
            secant_trials: 3,
            max_q_attempts: 5,
            seed: 0,
        }
    }
}

/// Everything [`classify_entry_locus`] computed.
#[derive(Clone, Debug)]
pub struct EntryLocusResult<F: Field> {
    pub report: EntryLocusReport,
    pub q: ProjectivePoint<F>,
    pub gamma: Ideal<F>,
    pub span: LinearSubspace<F>,
    pub dim_degree: DimDegree,
}

/// Full classification of the general entry locus of `X`.
pub fn classify_entry_locus<F: Field, R: Rng + ?Sized>(
    x: &ProjectiveVariety<F>,
    cfg: &ClassifyConfig,
    rng: &mut R,
    budget: &Budget,
) -> Result<EntryLocusResult<F>> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, u64>| {
        timings.insert(name.to_string(), clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };
    let r = x.ambient();
    let secant = secant_dims(x, 3, cfg.secant_trials, rng, budget).stage("secant dimensions")?;
    if secant.r_gen != Some(2) {
        return Err(GeomError::GenericRank(secant.r_gen));
    }
    let n = secant.n;
    let predicted = secant.dim(1).unwrap_or(n) as i64 + n as i64 + 1 - r as i64;
    lap("secant", &mut timings);

    let mut attempt = 0;
    let (q, gamma, dd) = loop {
        let q = general_point_off(x, rng).stage("sampling q")?;
        let gamma = entry_locus_ideal(x, &q, rng, budget).stage("entry locus ideal")?;
        let dd = reduced_dim_degree(&gamma, rng, budget).stage("reduced degree")?;
        if dd.dim.map(|d| d as i64) == Some(predicted) || attempt + 1 >= cfg.max_q_attempts {
            break (q, gamma, dd);
        }
        attempt += 1;
    };
    lap("entry_locus", &mut timings);
    let gamma_dim = dd
        .dim
        .ok_or_else(|| GeomError::Precondition("entry locus is empty".into()))?;

    let span = span_of_saturated(&gamma, budget).stage("span")?;
    lap("span", &mut timings);

    let components = if gamma_dim == 1 {
        component_count(&gamma, cfg.projections, rng, budget).stage("component count")?
    } else {
        Components {
            count: dd.reduced_degree as usize,
            degrees: vec![1; dd.reduced_degree as usize],
        }
    };
    lap("components", &mut timings);

    let (degree_formula, g) = if n == 2 && r == 4 {
        let g = sectional_genus(x, rng, budget).stage("sectional genus")?;
        let d = x.hilbert(budget)?.degree as i64;
        (
            Some(FormulaCheck::new((d - 1) * (d - 2) - 2 * g, dd.reduced_degree as i64)),
            Some(g),
        )
    } else {
        (None, None)
    };
    lap("genus", &mut timings);

    let (type_ab, ab_trials) = if span.dim() == 0 {
        (TypeAb::Undetermined, Vec::new())
    } else {
        type_ab_test(x, &gamma, &span, cfg.ab_trials, rng, budget).stage("type A/B")?
    };
    lap("type_ab", &mut timings);

    let field = x.field().descriptor();
    let mut primes: Vec<u64> = Vec::new();
    if x.field().characteristic() > 0 {
        primes.push(x.field().characteristic());
    }
    if let Some(p) = secant.prime {
        primes.push(p);
    }
    let report = EntryLocusReport {
        variety: x.name().to_string(),
        seed: cfg.seed,
        field: field.to_string(),
        primes,
        q: q.to_strings(),
        q_resamples: attempt,
        gamma: gamma_dim,
        ell: span.dim(),
        reduced_degree: dd.reduced_degree,
        hilbert_degree: dd.hilbert_degree,
        degree_mismatch: dd.reduced_degree != dd.hilbert_degree,
        components: components.count,
        component_degrees: components.degrees,
        type_irreducibility: if components.count == 1 {
            TypeIrreducibility::I
        } else {
            TypeIrreducibility::II
        },
        type_ab,
        ab_trials,
        degree_formula,
        dimension_formula: FormulaCheck::new(predicted, gamma_dim as i64),
        sectional_genus: g,
        secant,
        entry_locus: gamma.generators().iter().map(|g| g.to_string()).collect(),
        timings,
    };
    Ok(EntryLocusResult {
        report,
        q,
        gamma,
        span,
        dim_degree: dd,
    })
}
