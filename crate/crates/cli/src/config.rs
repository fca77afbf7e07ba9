//! Optional TOML defaults.
//!
//! ```toml
//! [solver]
//! command = "z3 -in"
//! timeout = 30
//!
//! [minimize]
//! budget = 500
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::failure::{Failure, PARSE};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub minimize: MinimizeDefaults,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub command: Option<String>,
    /// Seconds.
    pub timeout: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimizeDefaults {
    pub budget: Option<usize>,
}

pub fn load(path: &Path) -> Result<Config, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    toml::from_str(&text).map_err(|e| Failure {
        code: PARSE,
        message: format!("{}: {e}", path.display()),
    })
}
