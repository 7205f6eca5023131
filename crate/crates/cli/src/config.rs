//! Parsed and validated run configuration.

use std::str::FromStr;

use vilenkin::approx::lip_function;
use vilenkin::group::{GroupSpec, DEFAULT_MAX_GRID};
use vilenkin::means::{make_weights, WeightKind, WeightSeq};
use vilenkin::rng::random_mean_zero;
use vilenkin::spectral::{check_exponent, character};
use vilenkin::verify::TestFunction;

use crate::error::{CliError, Result};

/// Environment variable overriding the grid size cap.
pub const MAX_GRID_ENV: &str = "VILENKIN_MAX_GRID";

pub fn grid_cap() -> Result<usize> {
    match std::env::var(MAX_GRID_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::config(format!("{MAX_GRID_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_GRID),
    }
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    Ok(GroupSpec::parse_with_cap(text, grid_cap()?)?)
}

/// `random:<seed>`, `lip:<alpha>` or `char:<k>`.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSelector {
    Random(u64),
    Lip(f64),
    Char(usize),
}

impl FromStr for FunctionSelector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| CliError::config(format!("bad function selector `{s}`")))?;
        let bad = || CliError::config(format!("bad function selector `{s}`"));
        match head {
            "random" => tail.trim().parse().map(FunctionSelector::Random).map_err(|_| bad()),
            "lip" => {
                let alpha: f64 = tail.trim().parse().map_err(|_| bad())?;
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(bad());
                }
                Ok(FunctionSelector::Lip(alpha))
            }
            "char" => tail.trim().parse().map(FunctionSelector::Char).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for FunctionSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctionSelector::Random(seed) => write!(f, "random:{seed}"),
            FunctionSelector::Lip(alpha) => write!(f, "lip:{alpha}"),
            FunctionSelector::Char(k) => write!(f, "char:{k}"),
        }
    }
}

impl FunctionSelector {
    pub fn build(&self, spec: &GroupSpec) -> Result<TestFunction> {
        let f = match self {
            FunctionSelector::Random(seed) => random_mean_zero(spec, *seed),
            FunctionSelector::Lip(alpha) => lip_function(*alpha, spec)?,
            FunctionSelector::Char(k) => character(spec, *k)?,
        };
        Ok(TestFunction::new(self.to_string(), f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub fn parse_ps(list: &str) -> Result<Vec<f64>> {
    let ps = list
        .split(',')
        .map(|p| {
            let v: f64 = p
                .trim()
                .parse()
                .map_err(|_| CliError::config(format!("bad exponent `{}`", p.trim())))?;
            check_exponent(v)?;
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    if ps.is_empty() {
        return Err(CliError::config("empty exponent list"));
    }
    Ok(ps)
}

pub fn parse_functions(items: &[String]) -> Result<Vec<FunctionSelector>> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(FunctionSelector::from_str)
        .collect()
}

pub fn parse_weights(text: &str, nmax: usize) -> Result<WeightSeq> {
    let kind: WeightKind = text.parse()?;
    Ok(make_weights(&kind, nmax)?)
}
