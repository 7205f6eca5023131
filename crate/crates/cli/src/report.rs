//! CSV and JSON renderings, and atomic file output.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};
use vilenkin::approx::VerificationReport;
use vilenkin::verify::IdentityRow;

use crate::error::Result;

/// Floats are written with 17 significant digits so they round-trip.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Non-finite values have no JSON number form.
fn json_float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

fn writer(buf: &mut Vec<u8>) -> csv::Writer<&mut Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(buf)
}

pub fn kernels_csv(rows: &[IdentityRow]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    {
        let mut w = writer(&mut buf);
        w.write_record(["identity", "n", "max_residual", "bound", "pass"])?;
        for r in rows {
            w.write_record([
                r.identity.to_string(),
                r.n.to_string(),
                float(r.max_residual),
                float(r.bound),
                r.pass.to_string(),
            ])?;
        }
        w.flush()?;
    }
    Ok(buf)
}

pub fn kernels_json(spec: &str, rows: &[IdentityRow]) -> Result<Vec<u8>> {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "identity": r.identity,
                "n": r.n,
                "max_residual": json_float(r.max_residual),
                "bound": json_float(r.bound),
                "pass": r.pass,
            })
        })
        .collect();
    let all_pass = rows.iter().all(|r| r["pass"] == json!(true));
    to_json(&json!({ "spec": spec, "all_pass": all_pass, "rows": rows }))
}

pub fn theorem_csv(report: &VerificationReport) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    {
        let mut w = writer(&mut buf);
        w.write_record(["theorem", "spec", "weights", "p", "f", "n", "lhs", "rhs", "ratio", "pass"])?;
        let theorem = report.theorem.to_string();
        for r in &report.rows {
            w.write_record([
                theorem.clone(),
                report.spec.clone(),
                report.weights.clone(),
                r.p.to_string(),
                r.f.clone(),
                r.n.to_string(),
                float(r.lhs),
                float(r.rhs),
                float(r.ratio),
                r.pass.to_string(),
            ])?;
        }
        w.flush()?;
    }
    Ok(buf)
}

pub fn theorem_json(report: &VerificationReport, ps: &[f64], functions: &[String]) -> Result<Vec<u8>> {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "f": r.f,
                "p": r.p,
                "n": r.n,
                "lhs": json_float(r.lhs),
                "rhs": json_float(r.rhs),
                "ratio": json_float(r.ratio),
                "pass": r.pass,
            })
        })
        .collect();
    let cond0: Vec<Value> = report
        .cond0
        .iter()
        .map(|c| {
            json!({
                "f": c.f,
                "p": c.p,
                "sup_ratio": json_float(c.sup_ratio),
                "top_half_max": json_float(c.top_half_max),
                "top_half_min": json_float(c.top_half_min),
                "spread": json_float(c.spread()),
            })
        })
        .collect();
    to_json(&json!({
        "max_ratio": json_float(report.max_ratio()),
        "all_pass": report.all_pass(),
        "config": {
            "theorem": report.theorem.to_string(),
            "spec": report.spec,
            "weights": report.weights,
            "p": ps,
            "f": functions,
        },
        "rows": rows,
        "cond0": cond0,
    }))
}

pub fn rates_csv(series: &[(f64, Vec<(usize, f64)>)]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    {
        let mut w = writer(&mut buf);
        w.write_record(["p", "n", "err"])?;
        for (p, points) in series {
            for &(n, err) in points {
                w.write_record([p.to_string(), n.to_string(), float(err)])?;
            }
        }
        w.flush()?;
    }
    Ok(buf)
}

pub fn to_json(value: &Value) -> Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(value)?;
    buf.push(b'\n');
    Ok(buf)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// To `path` when given, otherwise to stdout.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_roundtrips() {
        for x in [0.1, 1.0 / 3.0, 921.6, 1e-300, 0.0] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float(0.75), "7.5000000000000000e-1");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"a\n").unwrap();
        write_atomic(&path, b"b\n").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
