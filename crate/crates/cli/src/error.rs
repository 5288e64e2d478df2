use thiserror::Error;

/// Process exit codes. `Ok`/`False` are verdicts, the rest are failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    False = 1,
    Parse = 2,
    Domain = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed JSON, with serde_json's line/column.
    #[error("malformed JSON: {0}")]
    Json(String),

    /// Well-formed JSON that does not match a document schema.
    #[error("schema violation at {at}: {message}")]
    Schema { at: String, message: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },

    /// The input is well formed but mathematically invalid, or an
    /// operation is undefined on it.
    #[error("{context}: {source}")]
    Domain {
        context: String,
        #[source]
        source: wwcat_core::Error,
    },
}

impl CliError {
    pub fn schema(at: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Schema {
            at: at.into(),
            message: message.into(),
        }
    }

    pub fn domain(context: impl Into<String>, source: wwcat_core::Error) -> CliError {
        CliError::Domain {
            context: context.into(),
            source,
        }
    }

    pub fn exit(&self) -> Exit {
        match self {
            CliError::Domain { .. } => Exit::Domain,
            _ => Exit::Parse,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Json(_) => "parse",
            CliError::Schema { .. } => "schema",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Domain { .. } => "domain",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
