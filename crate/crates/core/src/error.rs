use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge {edge:?} has {found} vertices, expected {expected}")]
    WrongEdgeSize {
        edge: Vec<String>,
        expected: usize,
        found: usize,
    },
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertexInEdge(Vec<String>),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<String>),
    #[error("uniformity must be at least 1")]
    ZeroUniformity,
    #[error("hypergraph has no vertices")]
    EmptyVertexSet,
    #[error("vertex order is not a permutation of the vertex set")]
    NotPermutation,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid degeneracy certificate at position {index}: {reason}")]
    InvalidCertificate { index: usize, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("parameters infeasible: {0}")]
    Infeasible(String),
    #[error("search budget of {limit} nodes exhausted during {stage}")]
    BudgetExhausted { stage: String, limit: u64 },
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

/// Node counter shared by the exact searches.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 50_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.limit
    }

    /// Charge one node. Fails once the limit is reached.
    pub fn tick(&mut self, stage: &str) -> Result<()> {
        if self.used >= self.limit {
            return Err(Error::BudgetExhausted {
                stage: stage.to_string(),
                limit: self.limit,
            });
        }
        self.used += 1;
        Ok(())
    }

    /// Like `tick` but reports exhaustion as a bool, for solvers that keep partial bounds.
    pub fn try_tick(&mut self) -> bool {
        if self.used >= self.limit {
            false
        } else {
            self.used += 1;
            true
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_NODES)
    }
}
