use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] orbigerbe::Error),
    #[error("{context}: {source}")]
    Context { context: String, source: orbigerbe::Error },
    #[error("malformed workspace: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read workspace {0}")]
    Io(String),
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Invalid(String),
    /// A check ran to completion and failed; the payload is the full report.
    #[error("check failed")]
    Rejected(serde_json::Value),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    fn core(&self) -> Option<&orbigerbe::Error> {
        match self {
            CliError::Core(e) | CliError::Context { source: e, .. } => Some(e),
            _ => None,
        }
    }

    /// 2 for refusals on resource bounds, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self.core() {
            Some(orbigerbe::Error::BoundExceeded { .. }) => 2,
            _ => 1,
        }
    }

    /// Short name of the violated invariant.
    pub fn kind(&self) -> String {
        match self {
            CliError::Json(_) => "malformed_json".into(),
            CliError::Io(_) => "io".into(),
            CliError::Unknown { .. } => "unknown_name".into(),
            CliError::Invalid(_) => "invalid_document".into(),
            CliError::Rejected(_) => "check_failed".into(),
            _ => {
                let debug = format!("{:?}", self.core().expect("core error"));
                let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
                let mut snake = String::new();
                for (i, c) in name.chars().enumerate() {
                    if c.is_uppercase() && i > 0 {
                        snake.push('_');
                    }
                    snake.push(c.to_ascii_lowercase());
                }
                snake
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Rejected(report) => report.clone(),
            _ => json!({ "error": { "kind": self.kind(), "message": self.to_string() } }),
        }
    }
}
