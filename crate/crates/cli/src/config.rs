//! Output and computation settings shared by the subcommands.

use schubert_core::schur::DEFAULT_SPAN_BOUND;
use std::path::PathBuf;

/// Smallest accepted span bound.
pub const MIN_SPAN_BOUND: usize = 1000;

/// Environment variable naming the cache directory when `--cache` is absent.
pub const CACHE_ENV: &str = "SCHUBERT_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

/// Settings for one invocation.  Defaults: JSON output, a span bound of
/// 10⁶ lowering sequences, rayon's default thread count, no cache.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub format: Format,
    pub span_bound: usize,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { format: Format::Json, span_bound: DEFAULT_SPAN_BOUND, jobs: None, cache_dir: None }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("span bound {0} is below the minimum of {MIN_SPAN_BOUND}")]
    SpanBoundTooSmall(usize),
    #[error("--jobs must be positive")]
    ZeroJobs,
}

impl Config {
    /// Resolves the cache directory from the flag, the environment and
    /// `--no-cache`, and validates the numeric settings.
    pub fn resolve(
        format: Format,
        span_bound: usize,
        jobs: Option<usize>,
        cache: Option<PathBuf>,
        no_cache: bool,
        env_cache: Option<PathBuf>,
    ) -> Result<Config, ConfigError> {
        if span_bound < MIN_SPAN_BOUND {
            return Err(ConfigError::SpanBoundTooSmall(span_bound));
        }
        if jobs == Some(0) {
            return Err(ConfigError::ZeroJobs);
        }
        let cache_dir = if no_cache { None } else { cache.or(env_cache) };
        Ok(Config { format, span_bound, jobs, cache_dir })
    }
}
