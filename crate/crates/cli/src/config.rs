use std::sync::Arc;

use clap::Args;
use wreath_core::error::Error;
use wreath_core::group::{builtin, GroupContext, GroupDescription};

/// Exit status 2 (invalid input) or 3 (inapplicable theorem) with a message.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InapplicableTheorem { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct GroupArgs {
    /// Built-in group: trivial, z<m>, klein, s3, or products such as z2xz3.
    #[arg(long)]
    pub group: Option<String>,
    /// JSON group description.
    #[arg(long)]
    pub group_file: Option<std::path::PathBuf>,
}

impl GroupArgs {
    pub fn load(&self) -> CliResult<Arc<GroupContext>> {
        let ctx = match (&self.group, &self.group_file) {
            (Some(name), None) => builtin(name)?,
            (None, Some(path)) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
                GroupDescription::from_json(&text)
                    .and_then(|d| d.build())
                    .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?
            }
            _ => return Err(CliError::invalid("give exactly one of --group and --group-file")),
        };
        Ok(Arc::new(ctx))
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct NRange {
    #[arg(long)]
    pub n: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<(usize, usize)>,
}

impl NRange {
    pub fn values(&self) -> Vec<usize> {
        match (self.n, self.n_range) {
            (Some(n), _) => vec![n],
            (None, Some((a, b))) => (a..=b).collect(),
            (None, None) => Vec::new(),
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

pub fn thread_pool(jobs: Option<usize>) -> CliResult<rayon::ThreadPool> {
    if jobs == Some(0) {
        return Err(CliError::invalid("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::invalid(format!("thread pool: {e}")))
}
