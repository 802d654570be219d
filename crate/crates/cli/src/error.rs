use serde_json::{json, Value};

/// Exit code for a failed Monte Carlo cross-check.
pub const EXIT_VALIDATION: i32 = 1;
/// Exit code for bad arguments, configs, or parameters the library refuses.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed config text.
    Parse {
        source: String,
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },
    /// Well-formed config with invalid values; every violation is listed.
    Config(Vec<String>),
    /// Bad sweep or command arguments.
    Usage(String),
    /// The library refused to evaluate a point.
    Eval(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Parse { source, message, line, column } => json!({
                "error": "parse",
                "source": source,
                "message": message,
                "line": line,
                "column": column,
            }),
            CliError::Config(v) => json!({ "error": "config", "violations": v }),
            CliError::Usage(m) => json!({ "error": "usage", "message": m }),
            CliError::Eval(m) => json!({ "error": "evaluation", "message": m }),
            CliError::Io(m) => json!({ "error": "io", "message": m }),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl std::error::Error for CliError {}

impl From<rfvlc_core::Error> for CliError {
    fn from(e: rfvlc_core::Error) -> Self {
        match e {
            rfvlc_core::Error::InvalidConfig(v) => CliError::Config(v),
            other => CliError::Eval(other.to_string()),
        }
    }
}
