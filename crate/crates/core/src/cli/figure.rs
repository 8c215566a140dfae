//! Preset sweeps for the five published figures.
//!
//! The figures print no axis ranges; `x ∈ [0.02, 2]` and `q ∈ [0.05, 2]` are
//! used. Figures 1 and 2 hold several `q` curves in one CSV as consecutive
//! row blocks; the block layout is stated in the comment header.

use std::fmt::Write as _;

use crate::response::Model;

use super::sweep::{SweepSpec, SweepVar};

pub const X_RANGE: (f64, f64) = (0.02, 2.0);
pub const Q_RANGE: (f64, f64) = (0.05, 2.0);
pub const DEFAULT_POINTS: usize = 100;
/// Collision frequency for figures 1–3 (not stated for figures 1 and 2).
pub const DEFAULT_Y_XSWEEP: f64 = 0.1;
pub const DEFAULT_Y_QSWEEP: f64 = 0.01;
pub const CURVE_Q: [f64; 3] = [0.1, 0.25, 0.5];

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub number: u8,
    pub title: &'static str,
    /// Column plotted by the companion script.
    pub column: &'static str,
    /// One sweep per row block.
    pub blocks: Vec<(String, SweepSpec)>,
}

pub fn preset(number: u8, y: Option<f64>, points: usize) -> Option<FigurePreset> {
    let models_all = Model::ALL.to_vec();
    let x_sweep = |q: f64, y: f64, models: Vec<Model>| SweepSpec {
        var: SweepVar::X,
        from: X_RANGE.0,
        to: X_RANGE.1,
        points,
        log_scale: false,
        q: Some(q),
        x: None,
        y,
        xp: None,
        models,
    };
    let preset = match number {
        1 | 2 => {
            let y = y.unwrap_or(DEFAULT_Y_XSWEEP);
            let (title, column) = if number == 1 {
                ("Re sigma/sigma0 vs x", "re_sigma")
            } else {
                ("Im sigma/sigma0 vs x", "im_sigma")
            };
            FigurePreset {
                number,
                title,
                column,
                blocks: CURVE_Q
                    .iter()
                    .map(|&q| (format!("q={q}"), x_sweep(q, y, vec![Model::Mermin])))
                    .collect(),
            }
        }
        3 => FigurePreset {
            number,
            title: "|sigma/sigma0| vs x",
            column: "abs_sigma",
            blocks: vec![(
                "q=1".to_string(),
                x_sweep(1.0, y.unwrap_or(DEFAULT_Y_XSWEEP), models_all),
            )],
        },
        4 | 5 => {
            let (title, column) = if number == 4 {
                ("Re sigma/sigma0 vs q", "re_sigma")
            } else {
                ("Im sigma/sigma0 vs q", "im_sigma")
            };
            FigurePreset {
                number,
                title,
                column,
                blocks: vec![(
                    "x=0.1".to_string(),
                    SweepSpec {
                        var: SweepVar::Q,
                        from: Q_RANGE.0,
                        to: Q_RANGE.1,
                        points,
                        log_scale: false,
                        q: None,
                        x: Some(0.1),
                        y: y.unwrap_or(DEFAULT_Y_QSWEEP),
                        xp: None,
                        models: models_all,
                    },
                )],
            }
        }
        _ => return None,
    };
    Some(preset)
}

impl FigurePreset {
    /// Comment header lines, including the row range of every block.
    pub fn comments(&self) -> Vec<String> {
        let mut lines = vec![format!("figure {}: {}", self.number, self.title)];
        let mut first = 1;
        for (i, (label, spec)) in self.blocks.iter().enumerate() {
            let rows = spec.points * spec.models.len();
            lines.push(format!(
                "block {} rows {}-{}: {label} {}",
                i + 1,
                first,
                first + rows - 1,
                spec.describe()
            ));
            first += rows;
        }
        lines
    }

    /// gnuplot script plotting `csv_path`.
    pub fn gnuplot_script(&self, csv_path: &str) -> String {
        let var = self.blocks[0].1.var.name();
        let mut s = String::new();
        let _ = writeln!(s, "# figure {}: {}", self.number, self.title);
        let _ = writeln!(s, "set datafile separator ','");
        let _ = writeln!(s, "set datafile columnheaders");
        let _ = writeln!(s, "set xlabel '{var}'");
        let _ = writeln!(s, "set ylabel '{}'", self.column);
        let mut curves = Vec::new();
        let mut first = 0;
        for (label, spec) in &self.blocks {
            let rows = spec.points * spec.models.len();
            for model in &spec.models {
                curves.push(format!(
                    "'{csv_path}' every ::{}::{} using 1:(strcol(2) eq '{model}' ? column('{}') : NaN) with lines title '{model} {label}'",
                    first,
                    first + rows - 1,
                    self.column
                ));
            }
            first += rows;
        }
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
        s
    }
}
