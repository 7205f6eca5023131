//! JSON documents for grid functions and spectra.

use serde::{Deserialize, Serialize};
use vilenkin::spectral::{GridFunction, Spectrum};
use vilenkin::Complex64;

use crate::config::parse_group;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocKind {
    Grid,
    Spectrum,
}

/// `{ "spec": "m=2;L=3", "kind": "grid", "re": [...], "im": [...] }`.
///
/// Grid values are in rank order; spectrum entries are indexed by `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrayDoc {
    pub spec: String,
    pub kind: DocKind,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

pub enum Decoded {
    Grid(GridFunction),
    Spectrum(Spectrum),
}

impl ArrayDoc {
    pub fn from_grid(f: &GridFunction) -> Self {
        let (re, im) = split(f.values());
        Self { spec: f.spec().to_string(), kind: DocKind::Grid, re, im }
    }

    pub fn from_spectrum(s: &Spectrum) -> Self {
        let (re, im) = split(s.coeffs());
        Self { spec: s.spec().to_string(), kind: DocKind::Spectrum, re, im }
    }

    pub fn decode(&self) -> Result<Decoded> {
        let spec = parse_group(&self.spec)?;
        if self.re.len() != self.im.len() {
            return Err(CliError::config(format!(
                "re has {} entries but im has {}",
                self.re.len(),
                self.im.len()
            )));
        }
        let values: Vec<Complex64> =
            self.re.iter().zip(&self.im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        Ok(match self.kind {
            DocKind::Grid => Decoded::Grid(GridFunction::new(spec, values)?),
            DocKind::Spectrum => Decoded::Spectrum(Spectrum::new(spec, values)?),
        })
    }
}

fn split(values: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    values.iter().map(|z| (z.re, z.im)).unzip()
}
