//! Records and their CSV / JSON Lines encodings.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::response::{sample, Model};
use crate::scales::DimensionlessQuery;

pub const CSV_HEADER: [&str; 7] = [
    "var",
    "model",
    "re_sigma",
    "im_sigma",
    "abs_sigma",
    "re_eps",
    "im_eps",
];

/// One model evaluated at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    /// Value of the swept variable (`x` for single-point evaluation).
    pub var: f64,
    pub model: Model,
    pub q: f64,
    pub x: f64,
    pub y: f64,
    pub xp: Option<f64>,
    /// `None` when the evaluation failed.
    pub sigma: Option<Complex64>,
    pub epsilon: Option<Complex64>,
}

impl Record {
    pub fn failed(&self) -> bool {
        self.sigma.is_none()
    }

    fn sigma_parts(&self) -> [f64; 3] {
        match self.sigma {
            Some(s) => [s.re, s.im, s.norm()],
            None => [f64::NAN; 3],
        }
    }

    /// `None` when the point carries no plasma frequency.
    fn eps_parts(&self) -> Option<[f64; 2]> {
        self.xp?;
        Some(match self.epsilon {
            Some(e) => [e.re, e.im],
            None => [f64::NAN; 2],
        })
    }
}

/// Evaluates `models` at one point. Failures become `nan` records plus a warning.
pub fn evaluate_point(
    var: f64,
    q: f64,
    x: f64,
    y: f64,
    xp: Option<f64>,
    models: &[Model],
) -> (Vec<Record>, Vec<String>) {
    let mut records = Vec::with_capacity(models.len());
    let mut warnings = Vec::new();
    let query = DimensionlessQuery::new(q, x, y).and_then(|query| match xp {
        Some(xp) => query.with_plasma_frequency(xp),
        None => Ok(query),
    });
    for &model in models {
        let result = query.clone().and_then(|query| sample(model, &query));
        let (sigma, epsilon) = match result {
            Ok(s) => (Some(s.sigma_ratio), s.epsilon),
            Err(e) => {
                warnings.push(format!("warning: {model} failed at q={q} x={x} y={y}: {e}"));
                (None, None)
            }
        };
        records.push(Record {
            var,
            model,
            q,
            x,
            y,
            xp,
            sigma,
            epsilon,
        });
    }
    (records, warnings)
}

/// 12 significant digits; `nan` for undefined values.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.11e}")
    }
}

pub fn write_csv<W: Write>(out: W, comments: &[String], records: &[Record]) -> io::Result<()> {
    let mut out = out;
    for line in comments {
        writeln!(out, "# {line}")?;
    }
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for r in records {
        let [re_s, im_s, abs_s] = r.sigma_parts();
        let (re_e, im_e) = match r.eps_parts() {
            Some([re, im]) => (format_number(re), format_number(im)),
            None => (String::new(), String::new()),
        };
        writer.write_record([
            format_number(r.var),
            r.model.name().to_string(),
            format_number(re_s),
            format_number(im_s),
            format_number(abs_s),
            re_e,
            im_e,
        ])?;
    }
    writer.flush()
}

#[derive(Serialize)]
struct JsonRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    var: Option<f64>,
    model: Model,
    re_sigma: f64,
    im_sigma: f64,
    abs_sigma: f64,
    re_eps: Option<f64>,
    im_eps: Option<f64>,
    q: f64,
    x: f64,
    y: f64,
    xp: Option<f64>,
}

/// One JSON object per line. `with_var` controls the presence of the `var` key.
pub fn write_json_lines<W: Write>(
    mut out: W,
    records: &[Record],
    with_var: bool,
) -> io::Result<()> {
    for r in records {
        let [re_sigma, im_sigma, abs_sigma] = r.sigma_parts();
        let eps = r.eps_parts();
        let json = JsonRecord {
            var: with_var.then_some(r.var),
            model: r.model,
            re_sigma,
            im_sigma,
            abs_sigma,
            re_eps: eps.map(|e| e[0]),
            im_eps: eps.map(|e| e[1]),
            q: r.q,
            x: r.x,
            y: r.y,
            xp: r.xp,
        };
        serde_json::to_writer(&mut out, &json)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Whitespace-aligned table for single-point evaluation.
pub fn write_table<W: Write>(mut out: W, records: &[Record]) -> io::Result<()> {
    writeln!(
        out,
        "{:<10} {:>18} {:>18} {:>18} {:>18} {:>18}",
        "model", "re_sigma", "im_sigma", "abs_sigma", "re_eps", "im_eps"
    )?;
    for r in records {
        let [re_s, im_s, abs_s] = r.sigma_parts();
        let (re_e, im_e) = match r.eps_parts() {
            Some([re, im]) => (format_number(re), format_number(im)),
            None => ("-".to_string(), "-".to_string()),
        };
        writeln!(
            out,
            "{:<10} {:>18} {:>18} {:>18} {:>18} {:>18}",
            r.model.name(),
            format_number(re_s),
            format_number(im_s),
            format_number(abs_s),
            re_e,
            im_e
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(0.2), "2.00000000000e-1");
        assert_eq!(format_number(-1234.5), "-1.23450000000e3");
        assert_eq!(format_number(f64::NAN), "nan");
        let v = std::f64::consts::PI;
        let back: f64 = format_number(v).parse().unwrap();
        assert!(((back - v) / v).abs() < 5e-12);
    }

    #[test]
    fn eps_columns_empty_without_plasma_frequency() {
        let (records, warnings) = evaluate_point(1.0, 1.0, 1.0, 0.1, None, &[Model::Mermin]);
        assert!(warnings.is_empty());
        let mut buf = Vec::new();
        write_csv(&mut buf, &["c".into()], &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# c");
        assert_eq!(lines[1], CSV_HEADER.join(","));
        assert!(lines[2].ends_with(",,"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn failed_point_is_nan_with_warning() {
        let (records, warnings) = evaluate_point(
            0.0,
            1.0,
            0.0,
            0.1,
            Some(1.0),
            &[Model::Mermin, Model::Classical],
        );
        assert_eq!(warnings.len(), 2);
        assert!(records.iter().all(Record::failed));
        let mut buf = Vec::new();
        write_csv(&mut buf, &[], &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .ends_with("nan,nan,nan,nan,nan"));
    }

    #[test]
    fn json_nan_becomes_null() {
        let (records, _) = evaluate_point(0.0, 1.0, 0.0, 0.1, None, &[Model::Lindhard]);
        let mut buf = Vec::new();
        write_json_lines(&mut buf, &records, false).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v["re_sigma"].is_null());
        assert!(v.get("var").is_none());
        assert_eq!(v["model"], "lindhard");
    }
}
