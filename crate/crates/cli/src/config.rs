//! Run configuration shared by all commands.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use entloc_algebra::field::{is_prime, random_prime_near_2_31};
use entloc_algebra::{Budget, FieldDescriptor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The `--field` argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
    /// A prime near `2^31` drawn from the seed.
    Auto,
}

impl FieldChoice {
    /// The concrete field for a run with `seed`.
    pub fn resolve(self, seed: u64) -> FieldDescriptor {
        match self {
            FieldChoice::Rational => FieldDescriptor::Rational,
            FieldChoice::Prime(p) => FieldDescriptor::Prime(p),
            FieldChoice::Auto => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ PRIME_STREAM);
                FieldDescriptor::Prime(random_prime_near_2_31(&mut rng))
            }
        }
    }
}

/// Keeps the prime draw independent of the computation streams.
const PRIME_STREAM: u64 = 0x5eed_f1e1d;

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rational);
        }
        let rest = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("Fp:"))
            .ok_or_else(|| format!("unknown field `{t}`; use Q, Fp:<p> or Fp:auto"))?;
        if rest.eq_ignore_ascii_case("auto") {
            return Ok(FieldChoice::Auto);
        }
        let p: u64 = rest.parse().map_err(|_| format!("bad prime `{rest}`"))?;
        if !is_prime(p) || !(5..1 << 31).contains(&p) {
            return Err(format!("{p} is not a prime in [5, 2^31)"));
        }
        Ok(FieldChoice::Prime(p))
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => write!(f, "Q"),
            FieldChoice::Prime(p) => write!(f, "Fp:{p}"),
            FieldChoice::Auto => write!(f, "Fp:auto"),
        }
    }
}

impl Serialize for FieldChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Stretch,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "core" => Ok(Suite::Core),
            "stretch" => Ok(Suite::Stretch),
            _ => Err(format!("unknown suite `{s}`; use core or stretch")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub field: FieldChoice,
    pub seed: u64,
    /// Points sampled by the type A/B test.
    pub trials: usize,
    /// S-pair reductions per basis computation.
    pub max_steps: u64,
    /// Wall-clock limit per computation, in seconds.
    pub wall_secs: Option<u64>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub suite: Suite,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldChoice::Auto,
            seed: 1,
            trials: 3,
            max_steps: Budget::default().max_steps,
            wall_secs: None,
            out: None,
            suite: Suite::Core,
            workers: 0,
        }
    }
}

impl RunConfig {
    /// A fresh budget; the wall clock starts now.
    pub fn budget(&self) -> Budget {
        let b = Budget::default().with_steps(self.max_steps);
        match self.wall_secs {
            Some(s) => b.with_time_limit(Duration::from_secs(s)),
            None => b,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_choices() {
        assert_eq!("Q".parse::<FieldChoice>().unwrap(), FieldChoice::Rational);
        assert_eq!("fp:auto".parse::<FieldChoice>().unwrap(), FieldChoice::Auto);
        assert_eq!("Fp:1000003".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(1_000_003));
        assert!("Fp:1000001".parse::<FieldChoice>().is_err());
        assert!("R".parse::<FieldChoice>().is_err());
    }

    #[test]
    fn auto_prime_is_seeded() {
        let a = FieldChoice::Auto.resolve(7);
        assert_eq!(a, FieldChoice::Auto.resolve(7));
        let FieldDescriptor::Prime(p) = a else { panic!() };
        assert!(is_prime(p) && p < 1 << 31 && p > (1 << 31) - (1 << 24));
    }
}
