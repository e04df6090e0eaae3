use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("snapshot at year {year} would be empty: pioneer published in {pioneer_year}")]
    EmptySnapshot { year: i32, pioneer_year: i32 },

    #[error("node not found: {0}")]
    NodeNotFound(String),

    #[error("previous snapshot is not contained in the current one: {0}")]
    SnapshotOrder(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("degenerate topic: {0}")]
    DegenerateTopic(String),

    #[error("entropy did not change between snapshots (|dS| = {delta:e})")]
    EntropyStagnant { delta: f64 },

    #[error("every node of the topic is cold; temperatures cannot be scaled")]
    AllColdTopic,

    #[error("topic {0} has no previous temperature")]
    NoHistory(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with every `Context` layer peeled off.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures caused by bad input data rather than by numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self.root(),
            Error::Validation(_)
                | Error::Config(_)
                | Error::NodeNotFound(_)
                | Error::SnapshotOrder(_)
                | Error::EmptySnapshot { .. }
                | Error::Json(_)
        )
    }
}
