//! Verification suites: kernel identities and the approximation inequalities.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::approx::{
    fejer_rhs, thm1_rhs, thm2_rhs, thm3_rhs, Cond0Summary, ModulusProfile, ReportRow, Theorem,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::kernels::{dirichlet_closed, fejer_mn_closed, FejerSweep};
use crate::means::{fejer_mean_of, t_mean_of, WeightSeq};
use crate::spectral::{analyze, character, lp_norm, GridFunction};

/// Tolerance for exact kernel identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Relative slack on pointwise and norm bounds.
pub const BOUND_TOL: f64 = 1e-9;
/// Complement identities are checked for every `M_n` up to this size.
pub const COMPLEMENT_MAX: usize = 64;

/// One identity or bound check at index `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRow {
    pub identity: &'static str,
    pub n: usize,
    pub max_residual: f64,
    pub bound: f64,
    pub pass: bool,
}

impl IdentityRow {
    fn new(identity: &'static str, n: usize, max_residual: f64, bound: f64) -> Self {
        Self { identity, n, max_residual, bound, pass: max_residual <= bound }
    }
}

/// Kernel identity suite on one group.
///
/// Rows, in order:
/// * `dirichlet_closed` at `n = M_s`: `max |D_{M_s} - M_s 1_{I_s}|`;
/// * `fejer_closed` at `n = M_s`: `max |K_{M_s} - closed form|`;
/// * `dirichlet_complement` at `n = M_s <= 64`: worst residual over `0 <= j < M_s`;
/// * `fejer_integral`: `|∫ K_n - 1|`;
/// * `fejer_l1`: `‖K_n‖_1` against `R⁵`;
/// * `fejer_pointwise` for `n < M_L`: `max_x (n|K_n| - 2R² Σ_{l<=|n|} M_l |K_{M_l}|) / (1 + rhs)`.
pub fn kernel_identities(spec: &GroupSpec) -> Result<Vec<IdentityRow>> {
    let size = spec.size();
    let level = spec.level();
    let r = spec.bound() as f64;
    let r5 = libm::pow(r, 5.0);
    let pointwise_const = 2.0 * r * r;

    let mut dirichlet_rows = Vec::new();
    let mut fejer_rows = Vec::new();
    let mut complement_rows = Vec::new();
    let mut integral_rows = Vec::new();
    let mut l1_rows = Vec::new();
    let mut pointwise_rows = Vec::new();

    let complement_top = (0..=level).map(|s| spec.power(s)).filter(|&m| m <= COMPLEMENT_MAX).max().unwrap_or(1);
    let mut small_dirichlet: Vec<GridFunction> = alloc::vec![GridFunction::zero(spec)];
    // M_l |K_{M_l}| for the levels reached so far
    let mut scaled_fejer_abs: Vec<Vec<f64>> = Vec::new();

    for (n, d, k) in FejerSweep::new(spec) {
        if n <= complement_top {
            small_dirichlet.push(d.clone());
        }
        if let Some(s) = (0..=level).find(|&s| spec.power(s) == n) {
            let closed = dirichlet_closed(spec, s)?;
            dirichlet_rows.push(IdentityRow::new("dirichlet_closed", n, d.max_abs_diff(&closed)?, IDENTITY_TOL));
            let closed = fejer_mn_closed(spec, s)?;
            fejer_rows.push(IdentityRow::new("fejer_closed", n, k.max_abs_diff(&closed)?, IDENTITY_TOL));
            scaled_fejer_abs.push(k.values().iter().map(|v| n as f64 * v.norm()).collect());
        }
        integral_rows.push(IdentityRow::new(
            "fejer_integral",
            n,
            (k.integral() - Complex64::new(1.0, 0.0)).norm(),
            IDENTITY_TOL,
        ));
        let l1 = lp_norm(&k, 1.0)?;
        l1_rows.push(IdentityRow::new("fejer_l1", n, l1, r5 * (1.0 + BOUND_TOL)));
        if n < size {
            let order = spec.digits(n)?.order();
            let excess = k
                .values()
                .iter()
                .enumerate()
                .map(|(x, v)| {
                    let rhs: f64 = scaled_fejer_abs[..=order].iter().map(|row| row[x]).sum::<f64>() * pointwise_const;
                    (n as f64 * v.norm() - rhs) / (1.0 + rhs)
                })
                .fold(f64::NEG_INFINITY, f64::max);
            pointwise_rows.push(IdentityRow::new("fejer_pointwise", n, excess, BOUND_TOL));
        }
    }

    for s in 0..=level {
        let mn = spec.power(s);
        if mn > COMPLEMENT_MAX {
            break;
        }
        let top = character(spec, mn - 1)?;
        let full = &small_dirichlet[mn];
        let mut worst = 0.0f64;
        for j in 0..mn {
            let lhs = &small_dirichlet[mn - j];
            let dj = &small_dirichlet[j];
            for x in 0..size {
                let rhs = full.values()[x] - top.values()[x] * dj.values()[x].conj();
                worst = worst.max((lhs.values()[x] - rhs).norm());
            }
        }
        complement_rows.push(IdentityRow::new("dirichlet_complement", mn, worst, IDENTITY_TOL));
    }

    let mut rows = dirichlet_rows;
    rows.extend(fejer_rows);
    rows.extend(complement_rows);
    rows.extend(integral_rows);
    rows.extend(l1_rows);
    rows.extend(pointwise_rows);
    Ok(rows)
}

/// A labelled test function.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub label: String,
    pub f: GridFunction,
}

impl TestFunction {
    pub fn new(label: impl Into<String>, f: GridFunction) -> Self {
        Self { label: label.into(), f }
    }
}

/// Checks that the weights satisfy the hypothesis of `theorem`.
pub fn check_weight_class(theorem: Theorem, q: &WeightSeq) -> Result<()> {
    match theorem {
        Theorem::One if !q.is_non_increasing() => Err(Error::WeightClass { required: "non-increasing" }),
        Theorem::Two | Theorem::Three if !q.is_non_decreasing() => {
            Err(Error::WeightClass { required: "non-decreasing" })
        }
        _ => Ok(()),
    }
}

/// Runs one inequality over every admissible `n` for each `(f, p)`.
///
/// Theorems 1, 2 and the Fejér inequality use `1 <= n < M_L`; Theorem 3 uses
/// `T_{M_n}` for `1 <= n <= L`. Weights must cover `M_L` indices. For Theorem 2
/// the report also carries the observed `(Cond0)` ratios.
pub fn run_theorem(
    theorem: Theorem,
    spec: &GroupSpec,
    q: Option<&WeightSeq>,
    functions: &[TestFunction],
    ps: &[f64],
) -> Result<VerificationReport> {
    let size = spec.size();
    let weights = match (theorem, q) {
        (Theorem::Fejer, _) => None,
        (_, Some(q)) => {
            check_weight_class(theorem, q)?;
            if q.len() < size {
                return Err(Error::InvalidWeights(alloc::format!("{} weights, {size} needed", q.len())));
            }
            Some(q)
        }
        (_, None) => return Err(Error::InvalidWeights("weights required".into())),
    };
    let label = weights.map(|q| q.label()).unwrap_or_else(|| String::from("none"));
    let mut report = VerificationReport::new(theorem, alloc::format!("{spec}"), label);

    for tf in functions {
        if tf.f.spec() != spec {
            return Err(Error::SpecMismatch);
        }
        let spectrum = analyze(&tf.f);
        for &p in ps {
            let profile = ModulusProfile::compute(&tf.f, p)?;
            let mut cond0 = Vec::new();
            match theorem {
                Theorem::Three => {
                    let q = weights.expect("weights checked");
                    for n in 1..=spec.level() {
                        let mn = spec.power(n);
                        let lhs = lp_norm(&t_mean_of(&spectrum, q, mn)?.sub(&tf.f)?, p)?;
                        let rhs = thm3_rhs(spec, &profile, q, n)?;
                        report.rows.push(ReportRow::new(tf.label.clone(), p, n, lhs, rhs));
                    }
                }
                _ => {
                    for n in 1..size {
                        let approx = match theorem {
                            Theorem::Fejer => fejer_mean_of(&spectrum, n),
                            _ => t_mean_of(&spectrum, weights.expect("weights checked"), n)?,
                        };
                        let lhs = lp_norm(&approx.sub(&tf.f)?, p)?;
                        let rhs = match theorem {
                            Theorem::One => thm1_rhs(spec, &profile, weights.expect("weights"), n)?,
                            Theorem::Two => {
                                let both = thm2_rhs(spec, &profile, weights.expect("weights"), n)?;
                                cond0.push((n, lhs / both.cond0_sum));
                                both.rhs22
                            }
                            _ => fejer_rhs(spec, &profile, n)?,
                        };
                        report.rows.push(ReportRow::new(tf.label.clone(), p, n, lhs, rhs));
                    }
                }
            }
            if theorem == Theorem::Two {
                report.cond0.push(summarize_cond0(&tf.label, p, size, &cond0));
            }
        }
    }
    report.sort_rows();
    Ok(report)
}

fn summarize_cond0(label: &str, p: f64, size: usize, ratios: &[(usize, f64)]) -> Cond0Summary {
    let sup_ratio = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    let top: Vec<f64> = ratios.iter().filter(|(n, _)| *n >= size / 2).map(|r| r.1).collect();
    Cond0Summary {
        f: label.into(),
        p,
        sup_ratio,
        top_half_max: top.iter().copied().fold(0.0, f64::max),
        top_half_min: top.iter().copied().fold(f64::INFINITY, f64::min),
    }
}
