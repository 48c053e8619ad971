//! Exhaustive ground truth for small graphs.
//!
//! Every oracle refuses inputs above its configured size limit instead of
//! approximating.

mod minor;
mod pathwidth;

use std::str::FromStr;

use thiserror::Error;

use crate::graph::Vertex;

pub use minor::minor_contains;
pub use pathwidth::{exact_layered_pathwidth, exact_pathwidth};
pub(crate) use pathwidth::greedy_path_decomposition;

/// Environment variable overriding the default limits, e.g.
/// `pw=20,lpw=8,minor-host=16,minor-pattern=6`.
pub const LIMITS_ENV: &str = "LAYERED_DECOMP_LIMITS";

/// Hard ceilings that keep the dynamic programs within memory.
const PW_CEILING: usize = 28;
const LPW_CEILING: usize = 16;
const MINOR_CEILING: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_pw_vertices: usize,
    pub max_lpw_vertices: usize,
    pub max_minor_host: usize,
    pub max_minor_pattern: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_pw_vertices: 18,
            max_lpw_vertices: 7,
            max_minor_host: 14,
            max_minor_pattern: 6,
        }
    }
}

impl OracleLimits {
    /// Defaults, overridden by [`LIMITS_ENV`] when it is set.
    pub fn from_env() -> Result<Self, OracleError> {
        match std::env::var(LIMITS_ENV) {
            Ok(spec) => Self::default().with_overrides(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Applies comma-separated `key=value` overrides. Keys are `pw`, `lpw`,
    /// `minor-host` and `minor-pattern`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, OracleError> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| OracleError::BadLimits(format!("expected key=value, got {item:?}")))?;
            let value = usize::from_str(value.trim())
                .map_err(|_| OracleError::BadLimits(format!("{key}: {value:?} is not a number")))?;
            match key.trim() {
                "pw" => self.max_pw_vertices = value,
                "lpw" => self.max_lpw_vertices = value,
                "minor-host" | "minor_host" => self.max_minor_host = value,
                "minor-pattern" | "minor_pattern" => self.max_minor_pattern = value,
                other => return Err(OracleError::BadLimits(format!("unknown limit {other:?}"))),
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let checks = [
            ("pw", self.max_pw_vertices, PW_CEILING),
            ("lpw", self.max_lpw_vertices, LPW_CEILING),
            ("minor-host", self.max_minor_host, MINOR_CEILING),
            ("minor-pattern", self.max_minor_pattern, MINOR_CEILING),
        ];
        for (name, value, ceiling) in checks {
            if value == 0 || value > ceiling {
                return Err(OracleError::BadLimits(format!(
                    "{name} must be between 1 and {ceiling}, got {value}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{oracle}: {size} vertices exceeds the limit of {limit}")]
    TooLarge {
        oracle: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("{oracle}: graph is disconnected (vertex {vertex} is unreachable from 0)")]
    Disconnected { oracle: &'static str, vertex: Vertex },
    #[error("invalid oracle limits: {0}")]
    BadLimits(String),
}

fn within(oracle: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        return Err(OracleError::TooLarge { oracle, size, limit });
    }
    Ok(())
}
