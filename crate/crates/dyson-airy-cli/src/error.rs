use std::path::PathBuf;

use dyson_airy::{ConfigError, CorrelationError, KernelError, SimError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{failed} of {total} criteria failed")]
    SuiteFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::SuiteFailed { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Numeric(_) | CliError::SuiteFailed { .. } => "numeric",
            CliError::Io { .. } => "io",
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// `error kind=<kind> code=<n>: <message>` on a single line.
    pub fn line(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error kind={} code={}: {}", self.kind(), self.exit_code(), msg)
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Airy(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::ZeroTime | KernelError::EqualTimes { .. } | KernelError::Domain(_) | KernelError::ConditionViolation(_) => {
                CliError::Usage(e.to_string())
            }
            KernelError::Config(c) => c.into(),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<CorrelationError> for CliError {
    fn from(e: CorrelationError) -> Self {
        match e {
            CorrelationError::InvalidQuery(_) => CliError::Usage(e.to_string()),
            CorrelationError::Kernel(k) => k.into(),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::InvalidPlan(_) | SimError::MissingSeed | SimError::UnknownTime { .. } | SimError::InvalidBins(_) => {
                CliError::Usage(e.to_string())
            }
            SimError::Config(c) => c.into(),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_by_role() {
        assert_eq!(CliError::from(SimError::MissingSeed).exit_code(), 2);
        assert_eq!(CliError::from(SimError::StepCollapse { t: 0.1, path: 3 }).exit_code(), 3);
        let io = CliError::io("/x", std::io::Error::other("denied"));
        assert_eq!(io.exit_code(), 4);
        assert_eq!(CliError::Usage("a\nb".into()).line(), "error kind=usage code=2: a b");
    }
}
