//! The acceptance suite. Every check recomputes a known invariant from
//! scratch on several master seeds and compares it with the exact value.

use std::time::Instant;

use entloc::catalog::CATALOG_HEIGHT;
use entloc::entry::{classify_entry_locus, ClassifyConfig, EntryLocusResult};
use entloc::geometry::{is_cone_with_vertex, random_linear_form, restrict_to_span, sample_point};
use entloc::secant::{collinear, reduce_mod_p, secant_dims, two_decompositions, DecompositionSet};
use entloc::segre::{is_segre_point_finite, pair_segre_test, segre_count_elliptic_quartic, PairSegre};
use entloc::variety::{ambient_ring, combine};
use entloc::{
    build_catalog_variety, CatalogKey, GeomError, LinearSubspace, ProjectivePoint, ProjectiveVariety, Result,
    VarietyMeta,
};
use entloc_algebra::field::primes_below_2_31;
use entloc_algebra::zerodim::{radical, Quotient};
use entloc_algebra::{
    absolute_factor_count, eliminate, hilbert_invariants, parse_polynomial, saturate_by_element,
    saturate_by_variable, Budget, Field, FieldDescriptor, Ideal, Matrix, MonomialOrder, PolyRing, Polynomial,
    PrimeField, Ring,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::{FieldChoice, RunConfig, Suite};
use crate::report::{CheckRecord, SeedRun, Status, SuiteReport};

pub const SEEDS_PER_CHECK: usize = 5;
pub const REQUIRED_PASSES: usize = 4;
/// Primes searched for one over which all four cone vertices are defined.
/// The determinant quartic splits completely for about 1 prime in 24.
pub const SPLIT_SEARCH_PRIMES: usize = 240;

/// Surfaces in `ℙ^4` of the core tier.
const SURFACES: [CatalogKey; 4] = [
    CatalogKey::Scroll12,
    CatalogKey::ConeTwistedCubic,
    CatalogKey::VeroneseProj4,
    CatalogKey::DelPezzo4,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Core,
    Stretch,
}

/// Inputs of one check run.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub seed: u64,
    pub field: FieldDescriptor,
    pub trials: usize,
    pub budget: Budget,
}

impl Ctx {
    pub fn new(seed: u64, field: FieldDescriptor) -> Self {
        Ctx {
            seed,
            field,
            trials: 3,
            budget: Budget::default(),
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub tier: Tier,
    /// Runs only over prime fields.
    pub prime_only: bool,
    /// Field used regardless of the configuration.
    pub field: Option<FieldChoice>,
    expected: fn() -> Value,
    run: fn(&Ctx) -> Result<Value>,
}

impl Check {
    pub fn expected(&self) -> Value {
        (self.expected)()
    }

    pub fn run(&self, ctx: &Ctx) -> Result<Value> {
        (self.run)(ctx)
    }
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "AC-1",
            anchor: "the general entry locus of the cubic scroll S(1,2) in P^4 is a smooth conic and the scroll is of type A",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({"gamma": 1, "ell": 2, "reduced_degree": 2, "components": 1,
                       "type_irreducibility": "I", "type_ab": "A"})
            },
            run: ac1,
        },
        Check {
            id: "AC-1/Q",
            anchor: "the general entry locus of the cubic scroll S(1,2) in P^4 is a smooth conic, recomputed over Q",
            tier: Tier::Stretch,
            prime_only: false,
            field: Some(FieldChoice::Rational),
            expected: || {
                json!({"gamma": 1, "ell": 2, "reduced_degree": 2, "components": 1,
                       "type_irreducibility": "I", "type_ab": "A"})
            },
            run: ac1,
        },
        Check {
            id: "AC-2",
            anchor: "for a cone over a rational normal curve the general entry locus is (d-1)(d-2)-2g = 2 lines through the vertex",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({"reduced_degree": 2, "components": 2, "type_irreducibility": "II",
                       "vertex_on_every_component": true})
            },
            run: ac2,
        },
        Check {
            id: "AC-3",
            anchor: "the general entry locus of a general projection of the Veronese surface to P^4 is a union of 3 smooth conics",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({"reduced_degree": 6, "components": 3, "type_irreducibility": "II",
                       "component_degrees": [2, 2, 2]})
            },
            run: ac3,
        },
        Check {
            id: "AC-4",
            anchor: "for a quartic del Pezzo surface in P^4 the general entry locus is the hyperplane section X ∩ <Γ_q>, an elliptic quartic curve lying on exactly 4 quadric cones whose vertices are Segre points with infinitely many decompositions",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({"reduced_degree": 4, "components": 1, "ell": 3, "slice_points": 4,
                       "slice_matches_section": true, "segre_count_entry_locus": 4,
                       "segre_count_elliptic4": 4, "vertices": 4, "vertices_segre": 4,
                       "vertices_positive_dimensional": 4})
            },
            run: ac4,
        },
        Check {
            id: "AC-5",
            anchor: "the general entry locus of a surface in P^4 with generic rank 2 has degree (d-1)(d-2)-2g, g the sectional genus",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({
                    "scroll12": {"degree": 2, "genus": 0, "formula": 2},
                    "cone_twisted_cubic": {"degree": 2, "genus": 0, "formula": 2},
                    "veronese_proj4": {"degree": 6, "genus": 0, "formula": 6},
                    "delpezzo4": {"degree": 4, "genus": 1, "formula": 4},
                })
            },
            run: ac5,
        },
        Check {
            id: "AC-5/k3_23",
            anchor: "a general complete intersection of a quadric and a cubic in P^4 has an irreducible general entry locus of degree 12",
            tier: Tier::Stretch,
            prime_only: true,
            field: None,
            expected: || json!({"degree": 12, "genus": 4, "formula": 12, "components": 1}),
            run: ac5_k3,
        },
        Check {
            id: "AC-6",
            anchor: "dim Γ_q(X) = dim σ_{r_gen-1}(X) + dim X + 1 - r",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({
                    "scroll12": {"gamma": 1, "predicted": 1},
                    "cone_twisted_cubic": {"gamma": 1, "predicted": 1},
                    "veronese_proj4": {"gamma": 1, "predicted": 1},
                    "delpezzo4": {"gamma": 1, "predicted": 1},
                    "rnc(3)": {"gamma": 0, "predicted": 0, "finite": true},
                })
            },
            run: ac6,
        },
        Check {
            id: "AC-7",
            anchor: "a general point of P^3 has a unique decomposition on the twisted cubic; the points with that decomposition form the secant line minus the two points",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({"pairs": 1, "decomposition_matches": true, "on_line_same_set": 10,
                       "on_line_segre": 10, "off_line_not_segre": 10})
            },
            run: ac7,
        },
        Check {
            id: "AC-7/Q",
            anchor: "a general point of P^3 has a unique decomposition on the twisted cubic, recomputed over Q",
            tier: Tier::Stretch,
            prime_only: false,
            field: Some(FieldChoice::Rational),
            expected: || {
                json!({"pairs": 1, "decomposition_matches": true, "on_line_same_set": 10,
                       "on_line_segre": 10, "off_line_not_segre": 10})
            },
            run: ac7,
        },
        Check {
            id: "AC-8",
            anchor: "dim σ_s(rnc(d)) = min(2s-1, d); the Veronese surface in P^5 has a defective secant variety of dimension 4; σ_2 of the cubic scroll fills P^4",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                let rnc: Map<String, Value> = (3..=6u64)
                    .map(|d| (format!("rnc({d})"), json!((1..=4u64).map(|s| (2 * s - 1).min(d)).collect::<Vec<_>>())))
                    .collect();
                json!({"veronese5": {"dim_s2": 4, "defective_s2": true}, "rnc": rnc,
                       "scroll12": {"dim_s2": 4, "r_gen": 2}})
            },
            run: ac8,
        },
        Check {
            id: "AC-9",
            anchor: "Gröbner bases are closed under S-pair reduction; elimination ideals lie in the ideal; saturation is idempotent; Hilbert data are invariant under linear coordinate changes; x^2-y^2 and x^2+y^2 have two absolute factors, y^2-x^3+x has one",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({"s_pair_closure": true, "elimination_membership": true,
                       "saturation_idempotent": true, "hilbert_invariant": true,
                       "factor_counts": [2, 2, 1], "factor_counts_substituted": [2, 2, 1]})
            },
            run: ac9,
        },
        Check {
            id: "AC-10",
            anchor: "skew lines have no pair-Segre points; a conic and its projection to another plane from o share their image from o; a curve spanning a codimension-2 space has no pair-Segre point with a curve completing the span",
            tier: Tier::Core,
            prime_only: false,
            field: None,
            expected: || {
                json!({"skew_lines_false": 10,
                       "projected_conic": {"contained": true, "equal": true},
                       "codimension_two_false": 10})
            },
            run: ac10,
        },
    ]
}

pub fn find(id: &str) -> Option<Check> {
    checks().into_iter().find(|c| c.id == id)
}

/// The master seeds of a run with master seed `seed`.
pub fn master_seeds(seed: u64) -> Vec<u64> {
    (0..SEEDS_PER_CHECK as u64).map(|i| seed.wrapping_add(i)).collect()
}

/// Runs check `id` once.
pub fn compute(id: &str, seed: u64, field: FieldChoice) -> Result<Value> {
    let check = find(id).ok_or_else(|| GeomError::Precondition(format!("unknown check `{id}`")))?;
    let field = check.field.unwrap_or(field).resolve(seed);
    check.run(&Ctx::new(seed, field))
}

pub fn run_suite(cfg: &RunConfig) -> SuiteReport {
    let checks = checks();
    let seeds = master_seeds(cfg.seed);
    let skip_reason = |c: &Check| -> Option<String> {
        if c.tier == Tier::Stretch && cfg.suite == Suite::Core {
            return Some("stretch tier; run with --suite stretch".into());
        }
        if c.prime_only && c.field.unwrap_or(cfg.field) == FieldChoice::Rational {
            return Some("needs a prime field".into());
        }
        None
    };
    let jobs: Vec<(usize, u64)> = checks
        .iter()
        .enumerate()
        .filter(|(_, c)| skip_reason(c).is_none())
        .flat_map(|(i, _)| seeds.iter().map(move |&s| (i, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .expect("thread pool");
    let runs: Vec<(usize, SeedRun)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, seed)| (i, run_once(&checks[i], seed, cfg)))
            .collect()
    });
    let records = checks
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut mine: Vec<SeedRun> = runs.iter().filter(|(j, _)| *j == i).map(|(_, r)| r.clone()).collect();
            mine.sort_by_key(|r| r.seed);
            record(c, mine, skip_reason(c), cfg)
        })
        .collect();
    SuiteReport::new(cfg.clone(), records)
}

fn run_once(check: &Check, seed: u64, cfg: &RunConfig) -> SeedRun {
    let field = check.field.unwrap_or(cfg.field).resolve(seed);
    let ctx = Ctx {
        seed,
        field,
        trials: cfg.trials,
        budget: cfg.budget(),
    };
    let start = Instant::now();
    let result = check.run(&ctx);
    let timing_ms = start.elapsed().as_millis() as u64;
    let expected = check.expected();
    match result {
        Ok(computed) => SeedRun {
            seed,
            field: field.to_string(),
            pass: computed == expected,
            computed,
            error: None,
            budget_exhausted: false,
            timing_ms,
        },
        Err(e) => SeedRun {
            seed,
            field: field.to_string(),
            computed: Value::Null,
            pass: false,
            budget_exhausted: e.is_budget(),
            error: Some(e.to_string()),
            timing_ms,
        },
    }
}

fn record(check: &Check, runs: Vec<SeedRun>, skip: Option<String>, cfg: &RunConfig) -> CheckRecord {
    let passes = runs.iter().filter(|r| r.pass).count();
    let status = if skip.is_some() {
        Status::Skipped
    } else if passes >= REQUIRED_PASSES {
        Status::Pass
    } else {
        Status::Fail
    };
    let reason = skip.or_else(|| {
        (status == Status::Fail).then(|| {
            let errors: Vec<&str> = runs.iter().filter_map(|r| r.error.as_deref()).collect();
            if errors.is_empty() {
                format!("{passes} of {} seeds match", runs.len())
            } else {
                format!("{passes} of {} seeds match; errors: {}", runs.len(), errors.join("; "))
            }
        })
    });
    CheckRecord {
        id: check.id.to_string(),
        anchor: check.anchor.to_string(),
        expected: check.expected(),
        computed: runs.first().map(|r| r.computed.clone()).unwrap_or(Value::Null),
        status,
        reason,
        passes,
        required: REQUIRED_PASSES,
        timing_ms: runs.iter().map(|r| r.timing_ms).sum(),
        runs,
        field: check.field.unwrap_or(cfg.field).to_string(),
        seed: cfg.seed,
    }
}

fn classify_key<F: Field>(
    f: &F,
    key: CatalogKey,
    ctx: &Ctx,
    ab_trials: usize,
) -> Result<(ProjectiveVariety<F>, EntryLocusResult<F>)> {
    let x = build_catalog_variety(key, ctx.seed, f, &ctx.budget)?;
    let cfg = ClassifyConfig {
        ab_trials,
        seed: ctx.seed,
        ..ClassifyConfig::default()
    };
    let res = classify_entry_locus(&x, &cfg, &mut ctx.rng(0), &ctx.budget)?;
    Ok((x, res))
}

fn ac1(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => {
        let (_, res) = classify_key(f, CatalogKey::Scroll12, ctx, ctx.trials)?;
        let r = &res.report;
        Ok(json!({"gamma": r.gamma, "ell": r.ell, "reduced_degree": r.reduced_degree,
                  "components": r.components, "type_irreducibility": r.type_irreducibility,
                  "type_ab": r.type_ab}))
    })
}

fn ac2(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => {
        let (_, res) = classify_key(f, CatalogKey::ConeTwistedCubic, ctx, 0)?;
        let vertex = ProjectivePoint::coordinate_point(f, 4, 4);
        let r = &res.report;
        Ok(json!({"reduced_degree": r.reduced_degree, "components": r.components,
                  "type_irreducibility": r.type_irreducibility,
                  "vertex_on_every_component": is_cone_with_vertex(&res.gamma, &vertex, &ctx.budget)?}))
    })
}

fn ac3(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => {
        let (_, res) = classify_key(f, CatalogKey::VeroneseProj4, ctx, 0)?;
        let r = &res.report;
        Ok(json!({"reduced_degree": r.reduced_degree, "components": r.components,
                  "type_irreducibility": r.type_irreducibility,
                  "component_degrees": r.component_degrees}))
    })
}

fn ac4(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => del_pezzo(f, ctx))
}

fn del_pezzo<F: Field>(f: &F, ctx: &Ctx) -> Result<Value> {
    let budget = &ctx.budget;
    let (x, res) = classify_key(f, CatalogKey::DelPezzo4, ctx, ctx.trials)?;
    let mut rng = ctx.rng(1);
    let ring = x.ring();

    // Γ_q and X ∩ <Γ_q> on a common random affine line slice
    let section = x.ideal().sum(&res.span.ideal(ring));
    let h = random_linear_form(ring, &mut rng);
    let chart = random_linear_form(ring, &mut rng).sub(&Polynomial::one(ring));
    let s1 = radical(&res.gamma.with_generators([h.clone(), chart.clone()]), budget)?;
    let s2 = radical(&section.with_generators([h, chart]), budget)?;
    let n1 = Quotient::new(&s1, budget)?.dim();
    let n2 = Quotient::new(&s2, budget)?.dim();
    let slice_match = n1 == n2 && s1.equals(&s2, budget)?;

    let curve = restrict_to_span(&res.gamma, &res.span, budget)?;
    let meta = VarietyMeta {
        name: "entry locus".into(),
        ..VarietyMeta::default()
    };
    let curve = ProjectiveVariety::new(curve, None, meta)?;
    let gamma_count = segre_count_elliptic_quartic(&curve, &[], &mut rng, budget)?.count;

    let e = build_catalog_variety(CatalogKey::Elliptic4, ctx.seed, f, budget)?;
    let primes = primes_below_2_31(SPLIT_SEARCH_PRIMES);
    let sc = segre_count_elliptic_quartic(&e, &primes, &mut rng, budget)?;
    let mut positive = 0;
    if let Some(p) = sc.prime {
        let fp = PrimeField::new(p)?;
        let ep = reduce_mod_p(&e, &fp)?;
        for v in &sc.vertices {
            if two_decompositions(&ep, v, &mut rng, budget)? == DecompositionSet::PositiveDimensional {
                positive += 1;
            }
        }
    }
    let r = &res.report;
    Ok(json!({"reduced_degree": r.reduced_degree, "components": r.components, "ell": r.ell,
              "slice_points": n1, "slice_matches_section": slice_match,
              "segre_count_entry_locus": gamma_count, "segre_count_elliptic4": sc.count,
              "vertices": sc.vertices.len(),
              "vertices_segre": sc.vertex_checks.iter().filter(|v| v.verdict).count(),
              "vertices_positive_dimensional": positive}))
}

fn ac5(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => {
        let mut out = Map::new();
        for key in SURFACES {
            let (_, res) = classify_key(f, key, ctx, 0)?;
            out.insert(key.to_string(), degree_record(&res.report));
        }
        Ok(Value::Object(out))
    })
}

fn degree_record(r: &entloc::entry::EntryLocusReport) -> Value {
    json!({"degree": r.reduced_degree, "genus": r.sectional_genus,
           "formula": r.degree_formula.as_ref().map(|c| c.expected)})
}

fn ac5_k3(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => {
        let (_, res) = classify_key(f, CatalogKey::K3_23, ctx, 0)?;
        let mut v = degree_record(&res.report);
        v["components"] = json!(res.report.components);
        Ok(v)
    })
}

fn ac6(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => {
        let mut out = Map::new();
        for key in SURFACES {
            let (_, res) = classify_key(f, key, ctx, 0)?;
            let r = &res.report;
            out.insert(key.to_string(), json!({"gamma": r.gamma, "predicted": r.dimension_formula.expected}));
        }
        let (x, res) = classify_key(f, CatalogKey::Rnc(3), ctx, 0)?;
        let d = two_decompositions(&x, &res.q, &mut ctx.rng(1), &ctx.budget)?;
        let r = &res.report;
        out.insert("rnc(3)".into(), json!({"gamma": r.gamma, "predicted": r.dimension_formula.expected,
                                          "finite": d.count().is_some()}));
        Ok(Value::Object(out))
    })
}

fn ac7(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => twisted_cubic_identifiability(f, ctx))
}

/// `q` on the secant line of two sampled points `a, b`, so the expected
/// decomposition `{a, b}` is known exactly.
fn twisted_cubic_identifiability<F: Field>(f: &F, ctx: &Ctx) -> Result<Value> {
    let budget = &ctx.budget;
    let x = build_catalog_variety(CatalogKey::Rnc(3), ctx.seed, f, budget)?;
    let mut rng = ctx.rng(0);
    let a = sample_point(&x, &mut rng)?;
    let b = loop {
        let b = sample_point(&x, &mut rng)?;
        if b != a {
            break b;
        }
    };
    let on_line = |rng: &mut ChaCha8Rng| -> Result<ProjectivePoint<F>> {
        for _ in 0..16 {
            let t = f.random(rng);
            if let Some(o) = combine(&a, &b, &t) {
                if o != a && o != b && !x.contains(&o) {
                    return Ok(o);
                }
            }
        }
        Err(GeomError::Exhausted("secant line points keep landing on the curve".into()))
    };
    let matches = |d: &DecompositionSet<F>, o: &ProjectivePoint<F>| {
        let listed = d.pairs();
        d.count() == Some(1)
            && collinear(&a, &b, o)
            && (listed.is_empty() && f.characteristic() == 0
                || listed.len() == 1 && (listed[0] == (a.clone(), b.clone()) || listed[0] == (b.clone(), a.clone())))
    };
    let q = on_line(&mut rng)?;
    let d = two_decompositions(&x, &q, &mut rng, budget)?;
    let mut same = 0;
    let mut segre = 0;
    for _ in 0..10 {
        let o = on_line(&mut rng)?;
        let d_o = two_decompositions(&x, &o, &mut rng, budget)?;
        same += usize::from(matches(&d_o, &o) && d_o.count() == d.count());
        segre += usize::from(is_segre_point_finite(&a, &b, &o));
    }
    let mut off = 0;
    for _ in 0..10 {
        let o = ProjectivePoint::random(f, 3, &mut rng);
        off += usize::from(!is_segre_point_finite(&a, &b, &o));
    }
    Ok(json!({"pairs": d.count(), "decomposition_matches": matches(&d, &q),
              "on_line_same_set": same, "on_line_segre": segre, "off_line_not_segre": off}))
}

fn ac8(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => {
        let budget = &ctx.budget;
        let mut rng = ctx.rng(0);
        let v5 = build_catalog_variety(CatalogKey::Veronese5, ctx.seed, f, budget)?;
        let pv = secant_dims(&v5, 2, 3, &mut rng, budget)?;
        let mut rnc = Map::new();
        for d in 3..=6 {
            let x = build_catalog_variety(CatalogKey::Rnc(d), ctx.seed, f, budget)?;
            let p = secant_dims(&x, 4, 3, &mut rng, budget)?;
            rnc.insert(format!("rnc({d})"), json!((1..=4).map(|s| p.dim(s)).collect::<Vec<_>>()));
        }
        let sc = build_catalog_variety(CatalogKey::Scroll12, ctx.seed, f, budget)?;
        let ps = secant_dims(&sc, 2, 3, &mut rng, budget)?;
        Ok(json!({"veronese5": {"dim_s2": pv.dim(2), "defective_s2": pv.entries[1].defective},
                  "rnc": rnc, "scroll12": {"dim_s2": ps.dim(2), "r_gen": ps.r_gen}}))
    })
}

fn ac9(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => kernel_properties(f, ctx))
}

fn random_form<F: Field>(ring: &Ring<F>, vars: usize, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let f = ring.field();
    let mut acc = Polynomial::zero(ring);
    for i in 0..vars {
        for j in i..vars {
            let c = f.random_small(rng, CATALOG_HEIGHT);
            acc = acc.add(&Polynomial::var(ring, i).mul(&Polynomial::var(ring, j)).scale(&c));
        }
    }
    acc
}

fn kernel_properties<F: Field>(f: &F, ctx: &Ctx) -> Result<Value> {
    let budget = &ctx.budget;
    let mut rng = ctx.rng(0);
    let mut ideals: Vec<Ideal<F>> = Vec::new();
    for key in [CatalogKey::Rnc(3), CatalogKey::Scroll12, CatalogKey::Elliptic4, CatalogKey::Veronese5] {
        ideals.push(build_catalog_variety(key, ctx.seed, f, budget)?.ideal().clone());
    }
    let ring = ambient_ring(f, 3);
    let quadrics = (0..3).map(|_| random_form(&ring, 4, &mut rng)).collect();
    ideals.push(Ideal::new(&ring, quadrics));

    let (mut s_pairs, mut elim, mut sat, mut hilb) = (true, true, true, true);
    for ideal in &ideals {
        let ring = ideal.ring();
        let n = ring.nvars();
        let (m, _) = Matrix::random_invertible(f, n, &mut rng);
        let moved = ideal.linear_substitution(&m);
        for order in [MonomialOrder::Grevlex, MonomialOrder::Block(1)] {
            let gb = moved.groebner(order, budget)?;
            s_pairs &= gb.verify_s_pairs() && gb.is_reduced();
        }
        let gb = moved.groebner(MonomialOrder::Grevlex, budget)?;
        let back: Vec<Option<usize>> = std::iter::once(None).chain((0..n - 1).map(Some)).collect();
        for g in eliminate(&moved, 1, budget)?.generators() {
            elim &= gb.contains(&g.transfer(ring, &back))?;
        }
        // (I · (x0, x1) : x0^∞) = I, since x0 is a nonzerodivisor modulo I
        let prod: Vec<Polynomial<F>> = moved
            .generators()
            .iter()
            .flat_map(|g| [g.mul(&Polynomial::var(ring, 0)), g.mul(&Polynomial::var(ring, 1))])
            .collect();
        let prod = Ideal::new(ring, prod);
        let once = saturate_by_variable(&prod, 0, budget)?;
        let twice = saturate_by_variable(&once, 0, budget)?;
        // V(x0, l^2) lies in V(l), so (I · (x0, l^2) : l^∞) = I as well
        let l = random_linear_form(ring, &mut rng);
        let l2 = l.mul(&l);
        let prod_l = moved
            .generators()
            .iter()
            .flat_map(|g| [g.mul(&Polynomial::var(ring, 0)), g.mul(&l2)])
            .collect();
        let by_form = saturate_by_element(&Ideal::new(ring, prod_l), &l, budget)?;
        sat &= once.equals(&twice, budget)? && once.equals(&moved, budget)? && by_form.equals(&moved, budget)?;
        hilb &= hilbert_invariants(ideal, budget)? == hilbert_invariants(&moved, budget)?;
    }

    let plane = PolyRing::new(f.clone(), &["x", "y"], MonomialOrder::Grevlex)?;
    let curves: Vec<Polynomial<F>> = ["x^2 - y^2", "x^2 + y^2", "y^2 - x^3 + x"]
        .iter()
        .map(|s| parse_polynomial(s, &plane))
        .collect::<std::result::Result<_, _>>()?;
    let counts: Vec<usize> = curves
        .iter()
        .map(absolute_factor_count)
        .collect::<std::result::Result<_, _>>()?;
    let affine: Vec<Polynomial<F>> = {
        let (m, _) = Matrix::random_invertible(f, 2, &mut rng);
        let shift: Vec<F::Elem> = (0..2).map(|_| f.random(&mut rng)).collect();
        (0..2)
            .map(|i| {
                Polynomial::var(&plane, 0)
                    .scale(m.get(i, 0))
                    .add(&Polynomial::var(&plane, 1).scale(m.get(i, 1)))
                    .add(&Polynomial::constant(&plane, shift[i].clone()))
            })
            .collect()
    };
    let moved_counts: Vec<usize> = curves
        .iter()
        .map(|c| absolute_factor_count(&c.substitute(&affine)))
        .collect::<std::result::Result<_, _>>()?;
    Ok(json!({"s_pair_closure": s_pairs, "elimination_membership": elim,
              "saturation_idempotent": sat, "hilbert_invariant": hilb,
              "factor_counts": counts, "factor_counts_substituted": moved_counts}))
}

fn ac10(ctx: &Ctx) -> Result<Value> {
    with_field!(ctx.field, f => pair_segre_properties(f, ctx))
}

fn random_line<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Result<ProjectiveVariety<F>> {
    let ring = ambient_ring(f, 3);
    let pts = [ProjectivePoint::random(f, 3, rng), ProjectivePoint::random(f, 3, rng)];
    let span = LinearSubspace::from_points(&pts)?;
    let meta = VarietyMeta {
        name: "line".into(),
        ..VarietyMeta::default()
    };
    ProjectiveVariety::new(span.ideal(&ring), None, meta)
}

fn point_off<F: Field>(f: &F, curves: &[&ProjectiveVariety<F>], rng: &mut ChaCha8Rng) -> Result<ProjectivePoint<F>> {
    for _ in 0..16 {
        let o = ProjectivePoint::random(f, 3, rng);
        if curves.iter().all(|c| !c.contains(&o)) {
            return Ok(o);
        }
    }
    Err(GeomError::Exhausted("random points keep landing on the curves".into()))
}

/// A conic `Y` in the plane `x3 = 0` and its image `T` in a random plane
/// under the projection from `o`, i.e. the cone over `Y` with vertex `o`
/// cut by that plane.
pub fn projected_conic_pair<F: Field>(
    f: &F,
    rng: &mut ChaCha8Rng,
) -> Result<(ProjectiveVariety<F>, ProjectiveVariety<F>, ProjectivePoint<F>)> {
    let ring = ambient_ring(f, 3);
    let conic = random_form(&ring, 3, rng);
    let o = ProjectivePoint::random(f, 3, rng);
    let oc = o.coords();
    let x3 = Polynomial::var(&ring, 3);
    let mut images: Vec<Polynomial<F>> = (0..3)
        .map(|i| Polynomial::var(&ring, i).scale(&oc[3]).sub(&x3.scale(&oc[i])))
        .collect();
    images.push(Polynomial::zero(&ring));
    let cone = conic.substitute(&images);
    let plane = loop {
        let h = random_linear_form(&ring, rng);
        if !f.is_zero(&h.eval(oc)) {
            break h;
        }
    };
    let meta = |name: &str| VarietyMeta {
        name: name.into(),
        ..VarietyMeta::default()
    };
    let y = ProjectiveVariety::new(Ideal::new(&ring, vec![x3, conic]), None, meta("conic"))?;
    let t = ProjectiveVariety::new(Ideal::new(&ring, vec![plane, cone]), None, meta("projected conic"))?;
    Ok((y, t, o))
}

fn pair_segre_properties<F: Field>(f: &F, ctx: &Ctx) -> Result<Value> {
    let budget = &ctx.budget;
    let mut rng = ctx.rng(0);
    let mut skew = 0;
    for _ in 0..10 {
        let y = random_line(f, &mut rng)?;
        let t = random_line(f, &mut rng)?;
        let o = point_off(f, &[&y, &t], &mut rng)?;
        skew += usize::from(!pair_segre_test(&y, &t, &o, &mut rng, budget)?.contained);
    }
    let (y, t, o) = projected_conic_pair(f, &mut rng)?;
    let PairSegre { contained, equal } = pair_segre_test(&y, &t, &o, &mut rng, budget)?;
    let cubic = build_catalog_variety(CatalogKey::Rnc(3), ctx.seed, f, budget)?;
    let mut codim_two = 0;
    for _ in 0..10 {
        let line = random_line(f, &mut rng)?;
        let o = point_off(f, &[&line, &cubic], &mut rng)?;
        codim_two += usize::from(!pair_segre_test(&line, &cubic, &o, &mut rng, budget)?.contained);
    }
    Ok(json!({"skew_lines_false": skew,
              "projected_conic": {"contained": contained, "equal": equal},
              "codimension_two_false": codim_two}))
}
