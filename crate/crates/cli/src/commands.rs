//! Argument parsing and the individual subcommands.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use entloc::entry::{classify_entry_locus, ClassifyConfig};
use entloc::file::{parse_ideal, parse_variety, read_header};
use entloc::geometry::general_point_off;
use entloc::secant::{secant_dims, two_decompositions, DecompositionSet};
use entloc::segre::{is_segre_point, pair_segre_test, segre_count_elliptic_quartic};
use entloc::{build_catalog_variety, CatalogKey, GeomError, ProjectivePoint, ProjectiveVariety};
use entloc_algebra::field::primes_below_2_31;
use entloc_algebra::{Budget, Field, FieldDescriptor, MonomialOrder};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{FieldChoice, RunConfig, Suite};
use crate::report::Status;
use crate::verify::{run_suite, SPLIT_SEARCH_PRIMES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "el", version, about = "Entry loci, secant varieties and Segre points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Coefficient field: Q, Fp:<p> or Fp:auto (default).
    #[arg(long)]
    field: Option<FieldChoice>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// S-pair reductions allowed per Gröbner basis.
    #[arg(long, default_value_t = Budget::default().max_steps)]
    max_steps: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    wall_secs: Option<u64>,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            field: self.field.unwrap_or(FieldChoice::Auto),
            seed: self.seed,
            max_steps: self.max_steps,
            wall_secs: self.wall_secs,
            out: self.out.clone(),
            ..RunConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in varieties.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced Gröbner basis of the `gen:` lines of a variety file.
    Gb {
        #[arg(long)]
        input: PathBuf,
        /// grevlex, lex or block:k
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the general entry locus of a variety with generic rank 2.
    EntryLocus {
        /// Catalog key or variety file.
        #[arg(long)]
        variety: String,
        /// Points sampled by the type A/B test.
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Secant dimensions by Terracini's lemma.
    SecantDims {
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = 3)]
        max_s: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Pairs of points of X whose span contains q.
    Decomp {
        #[arg(long)]
        variety: String,
        /// q as colon-separated coordinates; random when omitted.
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Quadric cones through an elliptic quartic, or a Segre test at a point.
    Segre {
        #[arg(long)]
        curve: String,
        /// Test this point instead of counting cone vertices.
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the projections of two curves from a point.
    PairSegre {
        #[arg(long)]
        y: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "core")]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// A failed command, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
    Error(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Budget(_) => EXIT_BUDGET,
            Failure::Error(_) => EXIT_FAIL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Budget(m) => write!(f, "budget exhausted: {m}"),
            Failure::Error(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        if e.is_budget() {
            return Failure::Budget(e.to_string());
        }
        match e {
            GeomError::UnknownKey(_) | GeomError::Format { .. } => Failure::Usage(e.to_string()),
            e => Failure::Error(e.to_string()),
        }
    }
}

impl From<entloc_algebra::AlgebraError> for Failure {
    fn from(e: entloc_algebra::AlgebraError) -> Self {
        GeomError::from(e).into()
    }
}

type Outcome = Result<bool, Failure>;

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(f) => {
            eprintln!("el: {f}");
            f.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Catalog { out } => catalog(out.as_deref()),
        Command::Gb { input, order, out } => gb(&input, &order, out.as_deref()),
        Command::EntryLocus { variety, trials, common } => entry_locus(&variety, trials, &common),
        Command::SecantDims { variety, max_s, trials, common } => secant(&variety, max_s, trials, &common),
        Command::Decomp { variety, point, common } => decomp(&variety, point.as_deref(), &common),
        Command::Segre { curve, point, common } => segre(&curve, point.as_deref(), &common),
        Command::PairSegre { y, t, point, common } => pair_segre(&y, &t, point.as_deref(), &common),
        Command::Verify { suite, trials, workers, common } => {
            let cfg = RunConfig {
                suite,
                trials,
                workers,
                ..common.config()
            };
            verify(&cfg)
        }
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Error(e.to_string()))? + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Error(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A variety named on the command line.
enum Source {
    Catalog(CatalogKey),
    File { text: String, field: FieldDescriptor },
}

impl Source {
    fn parse(name: &str) -> Result<Source, Failure> {
        if let Ok(key) = name.parse::<CatalogKey>() {
            return Ok(Source::Catalog(key));
        }
        let path = Path::new(name);
        if !path.exists() {
            return Err(Failure::Usage(format!("`{name}` is neither a catalog key nor a file")));
        }
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
        let field = read_header(&text)?.field;
        Ok(Source::File { text, field })
    }

    /// The field of the run: the file's own, or the configured one.
    fn field(&self, choice: Option<FieldChoice>, seed: u64) -> Result<FieldDescriptor, Failure> {
        match self {
            Source::Catalog(_) => Ok(choice.unwrap_or(FieldChoice::Auto).resolve(seed)),
            Source::File { field, .. } => {
                if let Some(c) = choice {
                    if c == FieldChoice::Auto || c.resolve(seed) != *field {
                        return Err(Failure::Usage(format!("the file is over {field}; --field {c} conflicts")));
                    }
                }
                Ok(*field)
            }
        }
    }

    fn load<F: Field>(&self, f: &F, seed: u64, budget: &Budget) -> Result<ProjectiveVariety<F>, Failure> {
        Ok(match self {
            Source::Catalog(key) => build_catalog_variety(*key, seed, f, budget)?,
            Source::File { text, .. } => parse_variety(text, f, budget)?,
        })
    }

    /// Catalog entries have small integer coefficients, so they can be
    /// reduced modulo other primes.
    fn reducible(&self) -> bool {
        matches!(self, Source::Catalog(_))
    }
}

/// Shared field for several sources; files must agree with each other.
fn common_field(sources: &[&Source], common: &Common) -> Result<FieldDescriptor, Failure> {
    let mut field = None;
    for s in sources {
        if let Source::File { field: f, .. } = s {
            if field.is_some_and(|g| g != *f) {
                return Err(Failure::Usage("the files are over different fields".into()));
            }
            field = Some(*f);
        }
    }
    match field {
        Some(f) => sources
            .iter()
            .find(|s| matches!(s, Source::File { .. }))
            .expect("a file source")
            .field(common.field, common.seed)
            .map(|_| f),
        None => Ok(common.field.unwrap_or(FieldChoice::Auto).resolve(common.seed)),
    }
}

/// Parses `a:b:c` with integer or `n/d` coordinates.
fn parse_point<F: Field>(f: &F, text: &str, r: usize) -> Result<ProjectivePoint<F>, Failure> {
    let coords = text
        .split(':')
        .map(|c| {
            let c = c.trim();
            let (n, d) = c.split_once('/').unwrap_or((c, "1"));
            let bad = || Failure::Usage(format!("bad coordinate `{c}`"));
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            f.div(&f.from_i64(n), &f.from_i64(d)).ok_or_else(bad)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != r + 1 {
        return Err(Failure::Usage(format!("expected {} coordinates, got {}", r + 1, coords.len())));
    }
    ProjectivePoint::new(f, coords).map_err(|_| Failure::Usage("the zero vector is not a point".into()))
}

fn catalog(out: Option<&Path>) -> Outcome {
    let rows: Vec<Value> = CatalogKey::ALL
        .iter()
        .map(|k| {
            let (n, d, g) = k.invariants();
            json!({"key": k.to_string(), "ambient": k.ambient(), "n": n, "d": d, "g": g,
                   "seeded": k.is_seeded(), "description": k.description()})
        })
        .collect();
    if out.is_some() {
        emit(&rows, out)?;
    } else {
        println!("{:<20} {:>3} {:>3} {:>3} {:>3}  description", "key", "r", "n", "d", "g");
        for k in CatalogKey::ALL {
            let (n, d, g) = k.invariants();
            println!(
                "{:<20} {:>3} {:>3} {:>3} {:>3}  {}{}",
                k.to_string(),
                k.ambient(),
                n,
                d,
                g,
                k.description(),
                if k.is_seeded() { " (seeded)" } else { "" }
            );
        }
    }
    Ok(true)
}

fn parse_order(s: &str) -> Result<MonomialOrder, Failure> {
    match s {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => s
            .strip_prefix("block:")
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::Block)
            .ok_or_else(|| Failure::Usage(format!("unknown order `{s}`; use grevlex, lex or block:k"))),
    }
}

fn gb(input: &Path, order: &str, out: Option<&Path>) -> Outcome {
    let order = parse_order(order)?;
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let field = read_header(&text)?.field;
    let budget = Budget::default();
    with_field!(field, f => {
        let ideal = parse_ideal(&text, f)?;
        if let MonomialOrder::Block(k) = order {
            if k > ideal.ring().nvars() {
                return Err(Failure::Usage(format!("block size {k} exceeds the number of variables")));
            }
        }
        let basis = ideal.groebner(order, &budget)?;
        let lines: Vec<String> = basis.basis().iter().map(|g| g.to_string()).collect();
        if out.is_some() {
            emit(&json!({"field": field.to_string(), "order": order.to_string(), "basis": lines}), out)?;
        } else {
            for l in lines {
                println!("{l}");
            }
        }
        Ok(true)
    })
}

fn entry_locus(name: &str, trials: usize, common: &Common) -> Outcome {
    let source = Source::parse(name)?;
    let field = source.field(common.field, common.seed)?;
    let budget = common.config().budget();
    with_field!(field, f => {
        let x = source.load(f, common.seed, &budget)?;
        let cfg = ClassifyConfig { ab_trials: trials, seed: common.seed, ..ClassifyConfig::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
        let res = classify_entry_locus(&x, &cfg, &mut rng, &budget)?;
        emit(&res.report, common.out.as_deref())?;
        let r = &res.report;
        Ok(r.dimension_formula.holds && r.degree_formula.as_ref().is_none_or(|c| c.holds))
    })
}

fn secant(name: &str, max_s: usize, trials: usize, common: &Common) -> Outcome {
    let source = Source::parse(name)?;
    let field = source.field(common.field, common.seed)?;
    let budget = common.config().budget();
    with_field!(field, f => {
        let x = source.load(f, common.seed, &budget)?;
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
        let profile = secant_dims(&x, max_s, trials, &mut rng, &budget)?;
        emit(&json!({"variety": x.name(), "field": field.to_string(), "seed": common.seed,
                     "profile": profile}), common.out.as_deref())?;
        Ok(true)
    })
}

fn decomp(name: &str, point: Option<&str>, common: &Common) -> Outcome {
    let source = Source::parse(name)?;
    let field = source.field(common.field, common.seed)?;
    let budget = common.config().budget();
    with_field!(field, f => {
        let x = source.load(f, common.seed, &budget)?;
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
        let q = match point {
            Some(p) => parse_point(f, p, x.ambient())?,
            None => general_point_off(&x, &mut rng)?,
        };
        let d = two_decompositions(&x, &q, &mut rng, &budget)?;
        let pairs: Vec<[Vec<String>; 2]> = d.pairs().iter().map(|(a, b)| [a.to_strings(), b.to_strings()]).collect();
        let kind = match d {
            DecompositionSet::Finite { .. } => "finite",
            DecompositionSet::PositiveDimensional => "positive-dimensional",
        };
        emit(&json!({"variety": x.name(), "field": field.to_string(), "seed": common.seed,
                     "q": q.to_strings(), "result": kind, "count": d.count(), "pairs": pairs}),
             common.out.as_deref())?;
        Ok(true)
    })
}

fn segre(name: &str, point: Option<&str>, common: &Common) -> Outcome {
    let source = Source::parse(name)?;
    let field = source.field(common.field, common.seed)?;
    let budget = common.config().budget();
    with_field!(field, f => {
        let y = source.load(f, common.seed, &budget)?;
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
        if let Some(p) = point {
            let o = parse_point(f, p, y.ambient())?;
            let v = is_segre_point(&y, &o, &mut rng, &budget)?;
            emit(&v, common.out.as_deref())?;
            return Ok(true);
        }
        let primes = if source.reducible() { primes_below_2_31(SPLIT_SEARCH_PRIMES) } else { Vec::new() };
        let c = segre_count_elliptic_quartic(&y, &primes, &mut rng, &budget)?;
        let vertices: Vec<Vec<String>> = c.vertices.iter().map(|v| v.to_strings()).collect();
        emit(&json!({"curve": y.name(), "field": field.to_string(), "seed": common.seed,
                     "count": c.count, "non_generic": c.non_generic, "prime": c.prime,
                     "vertices": vertices, "vertex_checks": c.vertex_checks}),
             common.out.as_deref())?;
        Ok(true)
    })
}

fn pair_segre(y: &str, t: &str, point: Option<&str>, common: &Common) -> Outcome {
    let (sy, st) = (Source::parse(y)?, Source::parse(t)?);
    let field = common_field(&[&sy, &st], common)?;
    let budget = common.config().budget();
    with_field!(field, f => {
        let y = sy.load(f, common.seed, &budget)?;
        let t = st.load(f, common.seed, &budget)?;
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
        let o = match point {
            Some(p) => parse_point(f, p, y.ambient())?,
            None => loop {
                let o = ProjectivePoint::random(f, y.ambient(), &mut rng);
                if !y.contains(&o) && !t.contains(&o) {
                    break o;
                }
            },
        };
        let r = pair_segre_test(&y, &t, &o, &mut rng, &budget)?;
        emit(&json!({"y": y.name(), "t": t.name(), "field": field.to_string(), "seed": common.seed,
                     "o": o.to_strings(), "contained": r.contained, "equal": r.equal}),
             common.out.as_deref())?;
        Ok(true)
    })
}

fn verify(cfg: &RunConfig) -> Outcome {
    let report = run_suite(cfg);
    if cfg.out.is_some() {
        emit(&report, cfg.out.as_deref())?;
        for c in &report.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let detail = match c.status {
                Status::Skipped => c.reason.clone().unwrap_or_default(),
                _ => format!("{}/{} seeds", c.passes, c.runs.len()),
            };
            println!("{:<12} {status}  {detail}", c.id);
        }
    } else {
        emit(&report, None)?;
    }
    if report.all_passed() {
        return Ok(true);
    }
    let budget_only = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .all(|c| c.runs.iter().all(|r| r.pass || r.budget_exhausted));
    if budget_only {
        Err(Failure::Budget("failing checks ran out of budget".into()))
    } else {
        Ok(false)
    }
}
