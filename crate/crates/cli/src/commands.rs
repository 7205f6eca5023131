//! Subcommand implementations. Each returns whether its checks passed.

use std::path::Path;

use vilenkin::approx::{lip_function, predicted_exponent, rate_fit, t_mean_error_series, Theorem};
use vilenkin::group::GroupSpec;
use vilenkin::means::WeightKind;
use vilenkin::spectral::{analyze, synthesize};
use vilenkin::verify::{kernel_identities, run_theorem};

use crate::config::{grid_cap, parse_functions, parse_group, parse_ps, parse_weights, Format};
use crate::error::{CliError, Result};
use crate::formats::{ArrayDoc, Decoded};
use crate::report;

pub fn verify_kernels(group: &str, out: Option<&Path>, format: Format) -> Result<bool> {
    let spec = parse_group(group)?;
    let rows = kernel_identities(&spec)?;
    let bytes = match format {
        Format::Csv => report::kernels_csv(&rows)?,
        Format::Json => report::kernels_json(&spec.to_string(), &rows)?,
    };
    report::emit(out, &bytes)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    eprintln!("kernels {spec}: {} checks, {failed} failed", rows.len());
    Ok(failed == 0)
}

pub struct TheoremArgs<'a> {
    pub id: &'a str,
    pub group: &'a str,
    pub weights: Option<&'a str>,
    pub functions: &'a [String],
    pub p: &'a str,
    pub out: Option<&'a Path>,
    pub format: Format,
}

pub fn verify_theorem(args: &TheoremArgs<'_>) -> Result<bool> {
    let theorem: Theorem = args.id.parse()?;
    let spec = parse_group(args.group)?;
    let ps = parse_ps(args.p)?;
    let selectors = parse_functions(args.functions)?;
    if selectors.is_empty() {
        return Err(CliError::config("at least one --f selector is required"));
    }
    let weights = match (theorem, args.weights) {
        (Theorem::Fejer, _) => None,
        (_, Some(w)) => Some(parse_weights(w, spec.size())?),
        (_, None) => return Err(CliError::config(format!("theorem {theorem} needs --weights"))),
    };
    let functions = selectors.iter().map(|s| s.build(&spec)).collect::<Result<Vec<_>>>()?;
    let report = run_theorem(theorem, &spec, weights.as_ref(), &functions, &ps)?;

    let bytes = match args.format {
        Format::Csv => report::theorem_csv(&report)?,
        Format::Json => {
            let labels: Vec<String> = selectors.iter().map(|s| s.to_string()).collect();
            report::theorem_json(&report, &ps, &labels)?
        }
    };
    report::emit(args.out, &bytes)?;
    eprintln!(
        "theorem {theorem} on {spec} with {}: {} rows, max ratio {}, {}",
        report.weights,
        report.rows.len(),
        report::float(report.max_ratio()),
        if report.all_pass() { "pass" } else { "FAIL" }
    );
    for c in &report.cond0 {
        eprintln!(
            "  cond0 f={} p={}: sup {} top-half spread {}",
            c.f,
            c.p,
            report::float(c.sup_ratio),
            report::float(c.spread())
        );
    }
    Ok(report.all_pass())
}

pub struct RatesArgs<'a> {
    pub alpha: f64,
    pub weights: &'a str,
    pub level: usize,
    pub p: &'a str,
    pub tol: f64,
    pub expect: Option<f64>,
    pub out: Option<&'a Path>,
}

/// Fits the decay of `‖T_{M_s} f - f‖_p` over `s = 1..L-1` for the
/// `Lip(α)` test function on the Walsh group.
pub fn rates(args: &RatesArgs<'_>) -> Result<bool> {
    if !(args.tol >= 0.0 && args.tol.is_finite()) {
        return Err(CliError::config("--tol must be a non-negative number"));
    }
    if args.level < 4 {
        return Err(CliError::config("--L must be at least 4 for a rate fit"));
    }
    let spec = GroupSpec::with_cap(&[2], args.level, grid_cap()?)?;
    let kind: WeightKind = args.weights.parse()?;
    let expected = match args.expect.or_else(|| predicted_exponent(&kind, args.alpha)) {
        Some(e) => e,
        None => {
            return Err(CliError::config(format!(
                "no pure power rate is predicted for {kind} at alpha={}; pass --expect",
                args.alpha
            )))
        }
    };
    let q = parse_weights(args.weights, spec.size())?;
    let f = lip_function(args.alpha, &spec)?;
    let ps = parse_ps(args.p)?;

    let mut series = Vec::new();
    let mut ok = true;
    for &p in &ps {
        let points = t_mean_error_series(&f, &q, p, 1..=args.level - 1)?;
        let fit = rate_fit(&points)?;
        let pass = (fit.slope - expected).abs() <= args.tol;
        ok &= pass;
        eprintln!(
            "p={p} slope={:.4} r2={:.4} expected={expected} tol={} {}",
            fit.slope,
            fit.r2,
            args.tol,
            if pass { "pass" } else { "FAIL" }
        );
        series.push((p, points));
    }
    report::emit(args.out, &report::rates_csv(&series)?)?;
    Ok(ok)
}

/// Grid in, spectrum out, and the reverse.
pub fn transform(input: &Path, out: Option<&Path>) -> Result<bool> {
    let text = std::fs::read_to_string(input)?;
    let doc: ArrayDoc = serde_json::from_str(&text)?;
    let result = match doc.decode()? {
        Decoded::Grid(f) => ArrayDoc::from_spectrum(&analyze(&f)),
        Decoded::Spectrum(s) => ArrayDoc::from_grid(&synthesize(&s)),
    };
    report::emit(out, &report::to_json(&serde_json::to_value(&result)?)?)?;
    Ok(true)
}
