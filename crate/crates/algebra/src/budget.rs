use std::time::{Duration, Instant};

use crate::error::{AlgebraError, BudgetKind};

/// Resource limits for Gröbner-type computations.
///
/// Exhausting a budget is reported as [`AlgebraError::Budget`]; a partial
/// basis is never returned.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Maximum number of S-pair reductions per basis computation.
    pub max_steps: u64,
    /// Maximum number of terms of any single intermediate polynomial.
    pub max_terms: usize,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 2_000_000,
            max_terms: 2_000_000,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_steps: u64::MAX,
            max_terms: usize::MAX,
            deadline: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.max_steps = steps;
        self
    }

    pub fn with_terms(mut self, terms: usize) -> Self {
        self.max_terms = terms;
        self
    }

    pub(crate) fn check_steps(&self, steps: u64) -> Result<(), AlgebraError> {
        if steps > self.max_steps {
            return Err(AlgebraError::Budget(BudgetKind::Steps));
        }
        self.check_time()
    }

    pub(crate) fn check_terms(&self, terms: usize) -> Result<(), AlgebraError> {
        if terms > self.max_terms {
            return Err(AlgebraError::Budget(BudgetKind::Terms));
        }
        Ok(())
    }

    pub fn check_time(&self) -> Result<(), AlgebraError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(AlgebraError::Budget(BudgetKind::Time)),
            _ => Ok(()),
        }
    }
}
