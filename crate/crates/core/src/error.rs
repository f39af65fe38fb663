use entloc_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("catalog entry `{key}` failed its sanity check after {attempts} attempts: {reason}")]
    Reseed {
        key: String,
        attempts: usize,
        reason: String,
    },
    #[error("variety has no parametrization")]
    MissingParametrization,
    #[error("point lies on the variety")]
    PointOnVariety,
    #[error("projection center meets the variety")]
    CenterMeetsVariety,
    #[error("generic rank is {0:?}, expected 2")]
    GenericRank(Option<usize>),
    #[error("entry-locus strategies disagree")]
    StrategyDisagreement,
    #[error("span condition fails: {0}")]
    SpanCondition(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("sampling exhausted: {0}")]
    Exhausted(String),
    #[error("variety file, line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        source: Box<GeomError>,
    },
}

impl GeomError {
    /// True when the root cause is an exhausted computation budget.
    pub fn is_budget(&self) -> bool {
        match self {
            GeomError::Algebra(AlgebraError::Budget(_)) => true,
            GeomError::Stage { source, .. } => source.is_budget(),
            _ => false,
        }
    }
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

/// Tags errors with the pipeline stage that produced them.
pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T, E: Into<GeomError>> StageExt<T> for std::result::Result<T, E> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| {
            let e = e.into();
            match e {
                GeomError::Stage { .. } => e,
                other => GeomError::Stage {
                    stage,
                    source: Box::new(other),
                },
            }
        })
    }
}
