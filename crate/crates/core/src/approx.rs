//! Moduli of continuity, the approximation inequalities for `σ_n` and `T_n`,
//! and log-log rate fits.
//!
//! `ω_p(1/M_s, f)` is realized as the maximum of `‖f(· - t) - f‖_p` over the
//! coset representatives `t` of `I_s`. On grid step functions this is exact.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::means::{WeightKind, WeightSeq};
use crate::spectral::{check_exponent, lp_norm, GridFunction};

/// `ω_p(1/M_s, f)` for `s = 0, …, L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusProfile {
    p: f64,
    omegas: Vec<f64>,
}

impl ModulusProfile {
    /// Computes every scale from one pass over all translations.
    pub fn compute(f: &GridFunction, p: f64) -> Result<Self> {
        check_exponent(p)?;
        let spec = f.spec();
        let distances: Vec<f64> = (0..spec.size())
            .map(|t| lp_norm(&f.translate(t).sub(f).expect("same spec"), p))
            .collect::<Result<_>>()?;
        let omegas = (0..=spec.level())
            .map(|s| distances.iter().step_by(spec.power(s)).copied().fold(0.0, f64::max))
            .collect();
        Ok(Self { p, omegas })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    /// `ω_p(1/M_s, f)`.
    pub fn omega(&self, s: usize) -> f64 {
        self.omegas[s]
    }
}

/// `ω_p(1/M_s, f)` at a single scale.
pub fn modulus(f: &GridFunction, p: f64, s: usize) -> Result<f64> {
    check_exponent(p)?;
    let spec = f.spec();
    let reps = spec.coset_rep_ranks(s)?;
    let mut best = 0.0f64;
    for t in reps {
        best = best.max(lp_norm(&f.translate(t).sub(f)?, p)?);
    }
    Ok(best)
}

/// Lacunary test function `Σ_{k<L} M_k^{-α} ψ_{M_k}`, a member of `Lip(α, 2)`.
pub fn lip_function(alpha: f64, spec: &GroupSpec) -> Result<GridFunction> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Parse(alloc::format!("alpha must be positive, got {alpha}")));
    }
    let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); spec.size()];
    for k in 0..spec.level() {
        coeffs[spec.power(k)] = Complex64::new(libm::pow(spec.power(k) as f64, -alpha), 0.0);
    }
    let spectrum = crate::spectral::Spectrum::new(spec.clone(), coeffs)?;
    Ok(crate::spectral::synthesize(&spectrum))
}

fn check_profile(spec: &GroupSpec, profile: &ModulusProfile) -> Result<()> {
    if profile.omegas.len() != spec.level() + 1 {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

fn pow_int(base: usize, exp: i32) -> f64 {
    libm::pow(base as f64, exp as f64)
}

/// Right side of the `T_n` inequality for non-increasing weights:
/// `(6R⁶/Q_n) Σ_{j<N} M_j q_{M_j} ω_p(1/M_j) + 4R⁶ ω_p(1/M_N)`.
pub fn thm1_rhs(spec: &GroupSpec, profile: &ModulusProfile, q: &WeightSeq, n: usize) -> Result<f64> {
    check_profile(spec, profile)?;
    if !q.is_non_increasing() {
        return Err(Error::WeightClass { required: "non-increasing" });
    }
    let big_n = spec.block_of(n)?;
    if q.len() < n {
        return Err(Error::InvalidWeights(alloc::format!("{} weights, n = {n}", q.len())));
    }
    let r6 = pow_int(spec.bound(), 6);
    let sum: f64 = (0..big_n)
        .map(|j| spec.power(j) as f64 * q.q(spec.power(j)) * profile.omega(j))
        .sum();
    Ok(6.0 * r6 / q.partial(n) * sum + 4.0 * r6 * profile.omega(big_n))
}

/// Right sides for non-decreasing weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm2Rhs {
    /// `(6R⁶ q_{n-1}/Q_n) Σ_{j<N} M_j ω_p(1/M_j) + (4R⁶ q_{n-1} M_N/Q_n) ω_p(1/M_N)`.
    pub rhs22: f64,
    /// `Σ_{j<=N} (M_j/M_N) ω_p(1/M_j)`, the bound without its unspecified constant.
    pub cond0_sum: f64,
}

pub fn thm2_rhs(spec: &GroupSpec, profile: &ModulusProfile, q: &WeightSeq, n: usize) -> Result<Thm2Rhs> {
    check_profile(spec, profile)?;
    if !q.is_non_decreasing() {
        return Err(Error::WeightClass { required: "non-decreasing" });
    }
    let big_n = spec.block_of(n)?;
    if q.len() < n {
        return Err(Error::InvalidWeights(alloc::format!("{} weights, n = {n}", q.len())));
    }
    let r6 = pow_int(spec.bound(), 6);
    let scale = q.q(n - 1) / q.partial(n);
    let mn = spec.power(big_n) as f64;
    let sum: f64 = (0..big_n).map(|j| spec.power(j) as f64 * profile.omega(j)).sum();
    let rhs22 = 6.0 * r6 * scale * sum + 4.0 * r6 * scale * mn * profile.omega(big_n);
    let cond0_sum = (0..=big_n).map(|j| spec.power(j) as f64 / mn * profile.omega(j)).sum();
    Ok(Thm2Rhs { rhs22, cond0_sum })
}

/// Right side of the subsequence inequality for `T_{M_n}`, non-decreasing weights:
/// `R² Σ_{j<n} (M_j/M_n) ω_j + (2R⁴/q_0) Σ_{j<n} (n - j) q_{M_n - M_j} (M_j/M_n) ω_j + (R² + 2) ω_n`.
pub fn thm3_rhs(spec: &GroupSpec, profile: &ModulusProfile, q: &WeightSeq, n: usize) -> Result<f64> {
    check_profile(spec, profile)?;
    if !q.is_non_decreasing() {
        return Err(Error::WeightClass { required: "non-decreasing" });
    }
    if n < 1 || n > spec.level() {
        return Err(Error::OutOfRange { what: "n", value: n, max: spec.level() });
    }
    let mn = spec.power(n);
    if q.len() < mn {
        return Err(Error::InvalidWeights(alloc::format!("{} weights, M_n = {mn} needed", q.len())));
    }
    let r = spec.bound();
    let (r2, r4) = (pow_int(r, 2), pow_int(r, 4));
    let mnf = mn as f64;
    let mut first = 0.0;
    let mut second = 0.0;
    for j in 0..n {
        let mj = spec.power(j);
        let ratio = mj as f64 / mnf;
        first += ratio * profile.omega(j);
        second += (n - j) as f64 * q.q(mn - mj) * ratio * profile.omega(j);
    }
    Ok(r2 * first + 2.0 * r4 / q.q(0) * second + (r2 + 2.0) * profile.omega(n))
}

/// Right side of the Fejér inequality: `2R⁵ Σ_{s<=N} (M_s/M_N) ω_p(1/M_s)`.
pub fn fejer_rhs(spec: &GroupSpec, profile: &ModulusProfile, n: usize) -> Result<f64> {
    check_profile(spec, profile)?;
    let big_n = spec.block_of(n)?;
    let mn = spec.power(big_n) as f64;
    let sum: f64 = (0..=big_n).map(|s| spec.power(s) as f64 / mn * profile.omega(s)).sum();
    Ok(2.0 * pow_int(spec.bound(), 5) * sum)
}

/// Least-squares line through `(log n, log err)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn rate_fit(series: &[(usize, f64)]) -> Result<RateFit> {
    if series.len() < 3 {
        return Err(Error::InsufficientData(alloc::format!("{} points, need 3", series.len())));
    }
    if let Some(&(n, e)) = series.iter().find(|(n, e)| *n == 0 || !e.is_finite() || *e <= 0.0) {
        return Err(Error::InsufficientData(alloc::format!("point ({n}, {e}) is not positive")));
    }
    let xs: Vec<f64> = series.iter().map(|&(n, _)| libm::log(n as f64)).collect();
    let ys: Vec<f64> = series.iter().map(|&(_, e)| libm::log(e)).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all n coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy <= f64::EPSILON * f64::EPSILON * len {
        1.0
    } else {
        let resid: f64 = xs.iter().zip(&ys).map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        }).sum();
        1.0 - resid / syy
    };
    Ok(RateFit { slope, intercept, r2 })
}

/// `(M_s, ‖T_{M_s} f - f‖_p)` for each requested level `s`.
pub fn t_mean_error_series(
    f: &GridFunction,
    q: &WeightSeq,
    p: f64,
    levels: core::ops::RangeInclusive<usize>,
) -> Result<Vec<(usize, f64)>> {
    check_exponent(p)?;
    let spec = f.spec();
    let spectrum = crate::spectral::analyze(f);
    levels
        .map(|s| {
            if s > spec.level() {
                return Err(Error::OutOfRange { what: "level", value: s, max: spec.level() });
            }
            let n = spec.power(s);
            let approx = crate::means::t_mean_of(&spectrum, q, n)?;
            Ok((n, lp_norm(&approx.sub(f)?, p)?))
        })
        .collect()
}

/// Log-log exponent predicted for `‖T_n f - f‖_p` when `f ∈ Lip(α, p)`, if the
/// rate is a pure power of `n`.
///
/// Non-increasing `pow(-β)`: `-α` when `α + β < 1`, `-(1 - β)` when `α + β > 1`
/// and `β < 1`. Constant, non-decreasing power and `logpow` weights: `-α` for
/// `α < 1` and `-1` for `α > 1`. Boundary cases carry logarithms and give `None`.
pub fn predicted_exponent(kind: &WeightKind, alpha: f64) -> Option<f64> {
    let generic = |alpha: f64| {
        if alpha < 1.0 {
            Some(-alpha)
        } else if alpha > 1.0 {
            Some(-1.0)
        } else {
            None
        }
    };
    match kind {
        WeightKind::Const | WeightKind::LogPow(_) => generic(alpha),
        WeightKind::Pow(g) if *g >= 0.0 => generic(alpha),
        WeightKind::Pow(g) => {
            let beta = -*g;
            if beta >= 1.0 {
                None
            } else if alpha + beta < 1.0 {
                Some(-alpha)
            } else if alpha + beta > 1.0 {
                Some(-(1.0 - beta))
            } else {
                None
            }
        }
        WeightKind::Custom(_) => None,
    }
}

/// Which inequality a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Theorem {
    /// `T_n`, non-increasing weights.
    One,
    /// `T_n`, non-decreasing weights.
    Two,
    /// `T_{M_n}`, non-decreasing weights.
    Three,
    /// `σ_n`.
    Fejer,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::One => "1",
            Theorem::Two => "2",
            Theorem::Three => "3",
            Theorem::Fejer => "fejer",
        })
    }
}

impl core::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Theorem::One),
            "2" => Ok(Theorem::Two),
            "3" => Ok(Theorem::Three),
            "fejer" => Ok(Theorem::Fejer),
            other => Err(Error::Parse(alloc::format!("unknown theorem `{other}`"))),
        }
    }
}

/// Relative slack admitted on `lhs / rhs`.
pub const RATIO_SLACK: f64 = 1e-9;

/// One `(f, p, n)` check.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub f: String,
    pub p: f64,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub pass: bool,
}

impl ReportRow {
    pub fn new(f: String, p: f64, n: usize, lhs: f64, rhs: f64) -> Self {
        let ratio = inequality_ratio(lhs, rhs);
        Self { f, p, n, lhs, rhs, ratio, pass: ratio <= 1.0 + RATIO_SLACK }
    }
}

/// `lhs / rhs`, with `0/0 = 0` (up to roundoff in `lhs`) and `x/0 = ∞`.
pub fn inequality_ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs <= 1e-12 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Observed `(Cond0)` ratios `‖T_n f - f‖_p / Σ_{j<=N} (M_j/M_N) ω_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cond0Summary {
    pub f: String,
    pub p: f64,
    /// Supremum over all `n`.
    pub sup_ratio: f64,
    /// Extremes over the top half of the `n` range.
    pub top_half_max: f64,
    pub top_half_min: f64,
}

impl Cond0Summary {
    /// Max over min in the top half.
    pub fn spread(&self) -> f64 {
        if self.top_half_min > 0.0 {
            self.top_half_max / self.top_half_min
        } else {
            f64::INFINITY
        }
    }
}

/// A full inequality suite for one theorem, group and weight sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub spec: String,
    pub weights: String,
    pub rows: Vec<ReportRow>,
    pub cond0: Vec<Cond0Summary>,
}

impl VerificationReport {
    pub fn new(theorem: Theorem, spec: String, weights: String) -> Self {
        Self { theorem, spec, weights, rows: Vec::new(), cond0: Vec::new() }
    }

    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Stable ordering: by function label, then `p`, then `n`.
    pub fn sort_rows(&mut self) {
        self.rows.sort_by(|a, b| {
            a.f.cmp(&b.f).then(a.p.total_cmp(&b.p)).then(a.n.cmp(&b.n))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::{make_weights, t_mean};
    use crate::spectral::{character, rademacher};

    #[test]
    fn modulus_examples() {
        let w = GroupSpec::walsh(3).unwrap();
        let r1 = rademacher(&w, 1).unwrap();
        assert!((modulus(&r1, 1.0, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!(modulus(&r1, 1.0, 2).unwrap() < 1e-12);
        let c = GridFunction::constant(&w, Complex64::new(3.0, -1.0));
        for s in 0..=3 {
            assert_eq!(modulus(&c, 2.0, s).unwrap(), 0.0);
        }
        let ind = w.indicator(1).unwrap();
        assert!((modulus(&ind, 1.0, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(modulus(&ind, 0.9, 0).is_err());
        assert!(modulus(&ind, 1.0, 4).is_err());
    }

    #[test]
    fn profile_matches_single_scale() {
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        let f = crate::rng::random_mean_zero(&g, 17);
        for p in [1.0, 2.0, 3.5] {
            let prof = ModulusProfile::compute(&f, p).unwrap();
            for s in 0..=3 {
                assert!((prof.omega(s) - modulus(&f, p, s).unwrap()).abs() < 1e-14);
            }
            assert_eq!(prof.omega(3), 0.0);
        }
    }

    #[test]
    fn lip_function_profile() {
        let w = GroupSpec::walsh(4).unwrap();
        let f = lip_function(0.5, &w).unwrap();
        let prof = ModulusProfile::compute(&f, 2.0).unwrap();
        let want = 2.0 * libm::sqrt(0.25 + 0.125);
        assert!((prof.omega(2) - want).abs() < 1e-12);
        assert_eq!(prof.omega(4), 0.0);

        let f = lip_function(8.0, &w).unwrap();
        let psi1 = character(&w, 1).unwrap();
        let a = modulus(&f, 2.0, 1).unwrap();
        let b = modulus(&psi1, 2.0, 1).unwrap();
        assert!(b == 0.0 && a < 1e-2);
        let a0 = modulus(&f, 2.0, 0).unwrap();
        let b0 = modulus(&psi1, 2.0, 0).unwrap();
        assert!((a0 - b0).abs() < 1e-2);
        assert!(lip_function(0.0, &w).is_err());
    }

    #[test]
    fn thm1_hand_case() {
        let w = GroupSpec::walsh(3).unwrap();
        let r1 = rademacher(&w, 1).unwrap();
        let q = make_weights(&WeightKind::Const, 8).unwrap();
        let prof = ModulusProfile::compute(&r1, 1.0).unwrap();
        let rhs = thm1_rhs(&w, &prof, &q, 4).unwrap();
        assert!((rhs - 576.0).abs() < 1e-9);
        let lhs = t_mean(&r1, &q, 4).unwrap().sub(&r1).unwrap().lp_norm(1.0).unwrap();
        assert!((lhs - 0.75).abs() < 1e-12);
        let up = make_weights(&WeightKind::Pow(1.0), 8).unwrap();
        assert_eq!(thm1_rhs(&w, &prof, &up, 4), Err(Error::WeightClass { required: "non-increasing" }));
        assert!(thm1_rhs(&w, &prof, &q, 8).is_err());
    }

    #[test]
    fn thm2_hand_case() {
        let w = GroupSpec::walsh(3).unwrap();
        let r1 = rademacher(&w, 1).unwrap();
        let q = make_weights(&WeightKind::Pow(1.0), 8).unwrap();
        let prof = ModulusProfile::compute(&r1, 1.0).unwrap();
        let rhs = thm2_rhs(&w, &prof, &q, 4).unwrap();
        assert!((rhs.rhs22 - 921.6).abs() < 921.6 * 1e-12);
        let lhs = t_mean(&r1, &q, 4).unwrap().sub(&r1).unwrap().lp_norm(1.0).unwrap();
        assert!((lhs - 0.6).abs() < 1e-12);
        let down = make_weights(&WeightKind::Pow(-1.0), 8).unwrap();
        assert!(thm2_rhs(&w, &prof, &down, 4).is_err());
    }

    #[test]
    fn thm3_hand_case() {
        let w = GroupSpec::walsh(3).unwrap();
        let r1 = rademacher(&w, 1).unwrap();
        let q = make_weights(&WeightKind::Pow(1.0), 8).unwrap();
        let prof = ModulusProfile::compute(&r1, 1.0).unwrap();
        // 4·(1/2)·2 + (2·16)·(1·2·1/2)·2 + 6·2
        let rhs = thm3_rhs(&w, &prof, &q, 1).unwrap();
        assert!((rhs - 80.0).abs() < 1e-9);
        let lhs = t_mean(&r1, &q, 2).unwrap().sub(&r1).unwrap().lp_norm(1.0).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        assert!(thm3_rhs(&w, &prof, &q, 0).is_err());
        assert!(thm3_rhs(&w, &prof, &q, 4).is_err());
        let short = make_weights(&WeightKind::Pow(1.0), 4).unwrap();
        assert!(thm3_rhs(&w, &prof, &short, 3).is_err());
    }

    #[test]
    fn zero_function_sides_vanish() {
        let w = GroupSpec::walsh(3).unwrap();
        let zero = GridFunction::zero(&w);
        let prof = ModulusProfile::compute(&zero, 2.0).unwrap();
        let q = make_weights(&WeightKind::Const, 8).unwrap();
        assert_eq!(thm1_rhs(&w, &prof, &q, 5).unwrap(), 0.0);
        assert_eq!(thm2_rhs(&w, &prof, &q, 5).unwrap().rhs22, 0.0);
        assert_eq!(thm3_rhs(&w, &prof, &q, 2).unwrap(), 0.0);
        assert_eq!(fejer_rhs(&w, &prof, 5).unwrap(), 0.0);
        assert_eq!(inequality_ratio(0.0, 0.0), 0.0);
        assert!(ReportRow::new("zero".into(), 2.0, 5, 0.0, 0.0).pass);
        assert!(!ReportRow::new("x".into(), 2.0, 5, 1.0, 0.0).pass);
    }

    #[test]
    fn rate_fit_examples() {
        let series: Vec<(usize, f64)> = (1..8).map(|s| (1usize << s, 3.0 * libm::pow((1u64 << s) as f64, -0.5))).collect();
        let fit = rate_fit(&series).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
        let flat = [(2, 0.5), (4, 0.5), (8, 0.5)];
        assert!(rate_fit(&flat).unwrap().slope.abs() < 1e-15);
        assert!(rate_fit(&[(2, 0.5), (4, 0.5)]).is_err());
        assert!(rate_fit(&[(2, 0.5), (4, 0.0), (8, 1.0)]).is_err());
    }

    #[test]
    fn predicted_exponents() {
        assert_eq!(predicted_exponent(&WeightKind::Const, 0.5), Some(-0.5));
        assert_eq!(predicted_exponent(&WeightKind::Const, 2.0), Some(-1.0));
        assert_eq!(predicted_exponent(&WeightKind::Const, 1.0), None);
        assert_eq!(predicted_exponent(&WeightKind::Pow(-0.25), 0.5), Some(-0.5));
        assert_eq!(predicted_exponent(&WeightKind::Pow(-0.5), 0.75), Some(-0.5));
        assert_eq!(predicted_exponent(&WeightKind::Pow(-1.0), 0.5), None);
        assert_eq!(predicted_exponent(&WeightKind::LogPow(1.0), 0.3), Some(-0.3));
    }
}
