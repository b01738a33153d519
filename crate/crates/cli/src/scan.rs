//! One-parameter sweeps over the built-in models.

use std::io::Write;
use std::str::FromStr;

use cpt_core::{build_c, build_model, classify_model, Complex64, ModelSpec, Warning};
use rayon::prelude::*;

use crate::args::ModelArgs;
use crate::error::{error_code, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    R,
    S,
    Theta,
    A,
}

/// A parsed `name[index]=lo:hi:n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: Param,
    /// 1-based block index; `None` sets every block.
    pub block: Option<usize>,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    label: String,
}

impl Sweep {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n)
            .map(|k| if k == self.n - 1 { self.hi } else { self.lo + step * k as f64 })
            .collect()
    }

    /// `args` with the swept parameter set to `value`.
    pub fn apply(&self, args: &ModelArgs, value: f64) -> Result<ModelArgs, CliError> {
        let mut out = args.clone();
        let blocks = out.block_count();
        let target = match self.param {
            Param::A => {
                out.a = Some(value);
                return Ok(out);
            }
            Param::R => &mut out.r,
            Param::S => &mut out.s,
            Param::Theta => &mut out.theta,
        };
        match self.block {
            None => *target = vec![value; blocks],
            Some(k) => {
                if target.is_empty() {
                    *target = vec![0.0; blocks];
                }
                let slot = target.get_mut(k - 1).ok_or_else(|| {
                    CliError::Usage(format!("sweep block {k} exceeds the model's {blocks} block(s)"))
                })?;
                *slot = value;
            }
        }
        Ok(out)
    }
}

impl FromStr for Sweep {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Usage(format!("invalid --sweep `{text}`: {why}"));
        let (name, range) = text.split_once('=').ok_or_else(|| bad("expected name=lo:hi:n"))?;
        let name = name.trim();
        let split = name.find(|ch: char| ch.is_ascii_digit()).unwrap_or(name.len());
        let (base, index) = name.split_at(split);
        let param = match base {
            "r" => Param::R,
            "s" => Param::S,
            "theta" => Param::Theta,
            "a" => Param::A,
            _ => return Err(bad("parameter must be r, s, theta or a")),
        };
        let block = if index.is_empty() {
            None
        } else {
            let k: usize = index.parse().map_err(|_| bad("bad block index"))?;
            if k == 0 || param == Param::A {
                return Err(bad("block indices start at 1 and do not apply to a"));
            }
            Some(k)
        };
        let parts: Vec<_> = range.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(bad("expected lo:hi:n"));
        };
        let lo: f64 = lo.trim().parse().map_err(|_| bad("lo is not a number"))?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad("hi is not a number"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("n is not a count"))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err(bad("bounds must be finite"));
        }
        if n < 2 {
            return Err(bad("n must be at least 2"));
        }
        Ok(Self {
            param,
            block,
            lo,
            hi,
            n,
            label: name.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub value: f64,
    /// Empty when the point could not be evaluated.
    pub eigenvalues: Vec<Complex64>,
    pub unbroken: Option<bool>,
    pub warning: bool,
    pub status: String,
}

fn evaluate(spec: &ModelSpec<f64>, tol: f64) -> Result<(Vec<Complex64>, bool, bool, String), cpt_core::Error> {
    let report = classify_model(spec, tol)?;
    let mut warning = report
        .warnings
        .iter()
        .any(|w| matches!(w, Warning::ExceptionalPointProximity { .. }));
    let mut status = "ok".to_string();
    let unbroken = report.is_unbroken();
    if unbroken {
        let (h, frame) = build_model(spec)?;
        if let Err(e) = build_c(&h, &frame, tol) {
            warning = true;
            status = error_code(&e).to_string();
        }
    }
    Ok((report.eigenvalues, unbroken, warning, status))
}

pub fn scan_rows(model: &ModelArgs, sweep: &Sweep, tol: f64) -> Result<Vec<ScanRow>, CliError> {
    if model.model.is_none() {
        return Err(CliError::Usage("scan needs --model".into()));
    }
    let grid = sweep.grid();
    let points: Vec<_> = grid
        .iter()
        .map(|&v| sweep.apply(model, v).map(|args| (v, args)))
        .collect::<Result<_, _>>()?;
    Ok(points
        .par_iter()
        .map(|(value, args)| {
            let outcome = args
                .to_spec()
                .and_then(|spec| evaluate(&spec, tol).map_err(CliError::from));
            match outcome {
                Ok((eigenvalues, unbroken, warning, status)) => ScanRow {
                    value: *value,
                    eigenvalues,
                    unbroken: Some(unbroken),
                    warning,
                    status,
                },
                Err(e) => ScanRow {
                    value: *value,
                    eigenvalues: Vec::new(),
                    unbroken: None,
                    warning: true,
                    status: match &e {
                        CliError::Core { source, .. } => error_code(source).to_string(),
                        _ => "invalid".to_string(),
                    },
                },
            }
        })
        .collect())
}

fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(out: W, label: &str, dim: usize, rows: &[ScanRow]) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let mut header = vec![label.to_string()];
    for k in 1..=dim {
        header.push(format!("e{k}_re"));
        header.push(format!("e{k}_im"));
    }
    header.extend(["unbroken", "warning", "status"].map(String::from));
    writer.write_record(&header)?;
    for row in rows {
        let mut record = vec![number(row.value)];
        for k in 0..dim {
            match row.eigenvalues.get(k) {
                Some(z) => {
                    record.push(number(z.re));
                    record.push(number(z.im));
                }
                None => record.extend([String::new(), String::new()]),
            }
        }
        record.push(row.unbroken.map_or(String::new(), |u| u32::from(u).to_string()));
        record.push(u32::from(row.warning).to_string());
        record.push(row.status.clone());
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}
