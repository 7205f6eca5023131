//! Weight sequences and the Fejér, Nörlund and T summability means.
//!
//! With `S_0 f = 0`, every mean below is diagonal in the character basis, so
//! the implementations scale the spectrum of `f` once and synthesize:
//!
//! * `σ_n`: coefficient `k < n` scaled by `(n - k)/n`;
//! * `T_n`: coefficient `k` scaled by `(Q_n - Q_{k+1})/Q_n`;
//! * `t_n`: coefficient `k < n` scaled by `Q_{n-k}/Q_n`.
//!
//! The Abel-transformed form of `T_n` is evaluated through the multipliers of
//! `k σ_k`, which is an independent route to the same operator.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::spectral::{analyze, synthesize, GridFunction, Spectrum};

/// Generator of a weight sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `q_k = 1`.
    Const,
    /// `q_k = (k + 1)^γ`.
    Pow(f64),
    /// `q_k = (log(k + 2))^{-β}`, `β > 0`.
    LogPow(f64),
    /// Explicit values.
    Custom(Vec<f64>),
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::Const => f.write_str("const"),
            WeightKind::Pow(g) => write!(f, "pow:{g}"),
            WeightKind::LogPow(b) => write!(f, "logpow:{b}"),
            WeightKind::Custom(values) => {
                f.write_str("custom:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_f64(text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Parse(alloc::format!("bad number `{}`", text.trim())))?;
    if !v.is_finite() {
        return Err(Error::Parse(alloc::format!("non-finite number `{}`", text.trim())));
    }
    Ok(v)
}

impl FromStr for WeightKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "const" {
            return Ok(WeightKind::Const);
        }
        let (head, tail) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(alloc::format!("unknown weight kind `{s}`")))?;
        match head {
            "pow" => Ok(WeightKind::Pow(parse_f64(tail)?)),
            "logpow" => Ok(WeightKind::LogPow(parse_f64(tail)?)),
            "custom" => {
                let values = tail.split(',').map(parse_f64).collect::<Result<Vec<_>>>()?;
                Ok(WeightKind::Custom(values))
            }
            other => Err(Error::Parse(alloc::format!("unknown weight kind `{other}`"))),
        }
    }
}

/// Monotonicity tag of a weight sequence. Constant sequences are tagged
/// [`WeightClass::NonDecreasing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightClass {
    NonIncreasing,
    NonDecreasing,
    Other,
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightClass::NonIncreasing => "non_increasing",
            WeightClass::NonDecreasing => "non_decreasing",
            WeightClass::Other => "other",
        })
    }
}

/// `q_0, …, q_{nmax-1}` with partial sums `Q_0, …, Q_nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSeq {
    kind: WeightKind,
    values: Vec<f64>,
    partials: Vec<f64>,
    class: WeightClass,
    non_increasing: bool,
    non_decreasing: bool,
}

/// Neumaier-compensated prefix sums, `out[n] = Σ_{k<n} values[k]`.
fn compensated_prefix(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len() + 1);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    out.push(0.0);
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
        out.push(sum + comp);
    }
    out
}

impl WeightSeq {
    pub fn from_values(kind: WeightKind, values: Vec<f64>) -> Result<Self> {
        let Some(&q0) = values.first() else {
            return Err(Error::InvalidWeights("empty sequence".to_string()));
        };
        if q0.is_nan() || q0 <= 0.0 {
            return Err(Error::InvalidWeights(alloc::format!("q_0 = {q0} must be positive")));
        }
        if let Some((k, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidWeights(alloc::format!("q_{k} = {v} is not a finite non-negative number")));
        }
        let non_increasing = values.windows(2).all(|w| w[1] <= w[0]);
        let non_decreasing = values.windows(2).all(|w| w[1] >= w[0]);
        let class = if non_decreasing {
            WeightClass::NonDecreasing
        } else if non_increasing {
            WeightClass::NonIncreasing
        } else {
            WeightClass::Other
        };
        let partials = compensated_prefix(&values);
        Ok(Self { kind, values, partials, class, non_increasing, non_decreasing })
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn class(&self) -> WeightClass {
        self.class
    }

    /// True for every non-increasing sequence, constants included.
    pub fn is_non_increasing(&self) -> bool {
        self.non_increasing
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.non_decreasing
    }

    /// Number of stored weights, `nmax`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `q_k`.
    pub fn q(&self, k: usize) -> f64 {
        self.values[k]
    }

    /// `Q_n = Σ_{k<n} q_k`.
    pub fn partial(&self, n: usize) -> f64 {
        self.partials[n]
    }

    /// Discrete proxy for `Q_n → ∞`: `Q_nmax > Q_{nmax/2}`.
    pub fn regular(&self) -> bool {
        let n = self.len();
        self.partials[n] > self.partials[n / 2]
    }

    /// `max_{2 <= n <= nmax} n q_{n-1} / Q_n`, the observed constant in
    /// `q_{n-1}/Q_n = O(1/n)`. `None` when `nmax < 2`.
    pub fn cond2(&self) -> Option<f64> {
        (2..=self.len()).map(|n| n as f64 * self.values[n - 1] / self.partials[n]).reduce(f64::max)
    }

    /// Checks that `T_n` can be formed and returns `Q_n`.
    pub(crate) fn check_mean_index(&self, n: usize) -> Result<f64> {
        if n > self.len() {
            return Err(Error::InvalidWeights(alloc::format!(
                "{} weights given, index {n} needs {n}",
                self.len()
            )));
        }
        let qn = self.partials[n];
        if qn.is_nan() || qn <= 0.0 {
            return Err(Error::InvalidWeights(alloc::format!("Q_{n} = 0")));
        }
        Ok(qn)
    }

    /// `Σ_{k=0}^{n-2} (q_k - q_{k+1}) k + q_{n-1} (n - 1)`.
    ///
    /// This is the Abel transform of `Σ_{k=0}^{n-1} q_k s_k` with `s_0 = 0` and
    /// `s_k = 1` otherwise, so it equals `Q_n - q_0` (see [`Self::abel_target`]).
    pub fn abel_partial(&self, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::OutOfRange { what: "n", value: n, max: self.len() });
        }
        self.check_mean_index(n)?;
        let mut sum = 0.0;
        for k in 0..n - 1 {
            sum += (self.values[k] - self.values[k + 1]) * k as f64;
        }
        Ok(sum + self.values[n - 1] * (n - 1) as f64)
    }

    /// `Σ_{k=1}^{n-1} q_k = Q_n - q_0`, the direct sum matched by [`Self::abel_partial`].
    pub fn abel_target(&self, n: usize) -> f64 {
        self.partials[n] - self.values[0]
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }
}

/// Generates `nmax` weights of the given kind.
pub fn make_weights(kind: &WeightKind, nmax: usize) -> Result<WeightSeq> {
    if nmax < 1 {
        return Err(Error::InvalidWeights("nmax must be at least 1".to_string()));
    }
    let values: Vec<f64> = match kind {
        WeightKind::Const => alloc::vec![1.0; nmax],
        WeightKind::Pow(g) => (0..nmax).map(|k| libm::pow((k + 1) as f64, *g)).collect(),
        WeightKind::LogPow(b) => {
            if b.is_nan() || *b <= 0.0 {
                return Err(Error::InvalidWeights(alloc::format!("logpow needs beta > 0, got {b}")));
            }
            (0..nmax).map(|k| libm::pow(libm::log((k + 2) as f64), -*b)).collect()
        }
        WeightKind::Custom(list) => {
            if list.is_empty() {
                return Err(Error::InvalidWeights("empty custom list".to_string()));
            }
            if list.len() < nmax {
                return Err(Error::InvalidWeights(alloc::format!(
                    "custom list has {} values, {nmax} needed",
                    list.len()
                )));
            }
            list[..nmax].to_vec()
        }
    };
    WeightSeq::from_values(kind.clone(), values)
}

fn check_n(f: &GridFunction, n: usize) -> Result<()> {
    if n == 0 || n > f.spec().size() {
        return Err(Error::OutOfRange { what: "n", value: n, max: f.spec().size() });
    }
    Ok(())
}

/// Multipliers of `σ_n` in the character basis.
pub fn fejer_multipliers(n: usize, len: usize) -> Vec<f64> {
    (0..len).map(|k| if k < n { (n - k) as f64 / n as f64 } else { 0.0 }).collect()
}

/// Multipliers of `T_n`: `(Q_n - Q_{k+1})/Q_n` for `k < n`.
pub fn t_multipliers(q: &WeightSeq, n: usize, len: usize) -> Result<Vec<f64>> {
    let qn = q.check_mean_index(n)?;
    Ok((0..len).map(|k| if k < n { (qn - q.partial(k + 1)) / qn } else { 0.0 }).collect())
}

/// Multipliers of `t_n`: `Q_{n-k}/Q_n` for `k < n`.
pub fn norlund_multipliers(q: &WeightSeq, n: usize, len: usize) -> Result<Vec<f64>> {
    let qn = q.check_mean_index(n)?;
    Ok((0..len).map(|k| if k < n { q.partial(n - k) / qn } else { 0.0 }).collect())
}

fn apply(spectrum: &Spectrum, mult: &[f64]) -> GridFunction {
    synthesize(&spectrum.weighted(|k| mult[k]))
}

/// `σ_n f = (1/n) Σ_{k=1}^{n} S_k f`.
pub fn fejer_mean(f: &GridFunction, n: usize) -> Result<GridFunction> {
    check_n(f, n)?;
    Ok(fejer_mean_of(&analyze(f), n))
}

pub fn fejer_mean_of(spectrum: &Spectrum, n: usize) -> GridFunction {
    apply(spectrum, &fejer_multipliers(n, spectrum.coeffs().len()))
}

/// `T_n f = (1/Q_n) Σ_{k=0}^{n-1} q_k S_k f`.
pub fn t_mean(f: &GridFunction, q: &WeightSeq, n: usize) -> Result<GridFunction> {
    check_n(f, n)?;
    t_mean_of(&analyze(f), q, n)
}

pub fn t_mean_of(spectrum: &Spectrum, q: &WeightSeq, n: usize) -> Result<GridFunction> {
    Ok(apply(spectrum, &t_multipliers(q, n, spectrum.coeffs().len())?))
}

/// `t_n f = (1/Q_n) Σ_{k=1}^{n} q_{n-k} S_k f`.
pub fn norlund_mean(f: &GridFunction, q: &WeightSeq, n: usize) -> Result<GridFunction> {
    check_n(f, n)?;
    let spectrum = analyze(f);
    Ok(apply(&spectrum, &norlund_multipliers(q, n, spectrum.coeffs().len())?))
}

/// `T_n f` through its Abel transform
/// `(1/Q_n)[Σ_{k=0}^{n-2} (q_k - q_{k+1}) k σ_k f + q_{n-1} (n-1) σ_{n-1} f]`,
/// with `σ_0 f := 0`.
pub fn t_mean_abel(f: &GridFunction, q: &WeightSeq, n: usize) -> Result<GridFunction> {
    check_n(f, n)?;
    if n < 2 {
        return Err(Error::OutOfRange { what: "n", value: n, max: f.spec().size() });
    }
    let qn = q.check_mean_index(n)?;
    let len = f.spec().size();
    // k σ_k has multiplier (k - i)_+ on coefficient i
    let mut mult = alloc::vec![0.0f64; len];
    let mut add_scaled_fejer = |k: usize, w: f64| {
        if k == 0 || w == 0.0 {
            return;
        }
        for (i, m) in mult.iter_mut().enumerate().take(k) {
            *m += w * (k - i) as f64;
        }
    };
    for k in 0..n - 1 {
        add_scaled_fejer(k, q.q(k) - q.q(k + 1));
    }
    add_scaled_fejer(n - 1, q.q(n - 1));
    mult.iter_mut().for_each(|m| *m /= qn);
    Ok(apply(&analyze(f), &mult))
}
