//! Turns command-line inputs into a Hamiltonian with its frame.

use std::fmt::Write as _;

use cpt_core::{build_model, ComplexMatrix64, ModelSpec, Operator64, PtFrame64, TwoLevel};

use crate::args::{FrameArgs, ModelArgs, ModelKind};
use crate::document::{read_json, read_matrix, read_operator, FrameDocument};
use crate::error::CliError;

/// A Hamiltonian, its PT-frame and an optional user-supplied `C`.
#[derive(Debug, Clone)]
pub struct Problem {
    pub h: ComplexMatrix64,
    pub frame: PtFrame64,
    pub c: Option<Operator64>,
    /// Human-readable origin, used to prefix errors.
    pub context: String,
}

impl ModelArgs {
    pub fn block_count(&self) -> usize {
        match self.model {
            Some(ModelKind::FourByFour | ModelKind::Tensor) => 2,
            Some(ModelKind::Chain) => self.r.len().max(self.s.len()).max(self.theta.len()).max(1),
            _ => 1,
        }
    }

    pub fn to_spec(&self) -> Result<ModelSpec<f64>, CliError> {
        let kind = self
            .model
            .ok_or_else(|| CliError::Usage("no --model or --hamiltonian given".into()))?;
        let n = self.block_count();
        for (name, values) in [("r", &self.r), ("s", &self.s), ("theta", &self.theta)] {
            if values.len() != n {
                return Err(CliError::Usage(format!(
                    "model {} needs {n} value(s) of --{name}, got {}",
                    kind_name(kind),
                    values.len()
                )));
            }
        }
        let blocks: Vec<_> = (0..n).map(|k| TwoLevel::new(self.r[k], self.s[k], self.theta[k])).collect();
        if kind != ModelKind::ThreeByThree && self.a.is_some() {
            return Err(CliError::Usage("--a only applies to the 3x3 model".into()));
        }
        Ok(match kind {
            ModelKind::TwoByTwo => ModelSpec::TwoByTwo(blocks[0]),
            ModelKind::ThreeByThree => ModelSpec::ThreeByThree {
                block: blocks[0],
                a: self.a.ok_or_else(|| CliError::Usage("model 3x3 needs --a".into()))?,
            },
            ModelKind::FourByFour => ModelSpec::FourByFour {
                upper: blocks[0],
                lower: blocks[1],
            },
            ModelKind::Chain => ModelSpec::DirectSumChain(blocks),
            ModelKind::Tensor => ModelSpec::TensorPair(blocks[0], blocks[1]),
        })
    }

    pub fn describe(&self) -> String {
        let mut out = format!("model {}", self.model.map_or("?", kind_name));
        let n = self.block_count();
        for k in 0..n {
            let get = |v: &Vec<f64>| v.get(k).map_or("?".to_string(), |x| x.to_string());
            let _ = write!(out, " (r={}, s={}, theta={})", get(&self.r), get(&self.s), get(&self.theta));
        }
        if let Some(a) = self.a {
            let _ = write!(out, " a={a}");
        }
        out
    }
}

pub fn kind_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::TwoByTwo => "2x2",
        ModelKind::ThreeByThree => "3x3",
        ModelKind::FourByFour => "4x4",
        ModelKind::Chain => "chain",
        ModelKind::Tensor => "tensor",
    }
}

/// Loads `{P, T}` (and `C` if present) from frame flags. `None` when no
/// frame flag was given.
pub fn load_frame_operators(args: &FrameArgs) -> Result<Option<(Operator64, Operator64, Option<Operator64>)>, CliError> {
    let mut c = match &args.c {
        Some(path) => Some(read_operator(path)?),
        None => None,
    };
    if let Some(path) = &args.frame {
        let doc: FrameDocument = read_json(path)?;
        let parse = |d: &crate::document::MatrixDocument| {
            d.to_operator().map_err(|message| CliError::Parse {
                path: path.clone(),
                message,
            })
        };
        let p = parse(&doc.p)?;
        let t = parse(&doc.t)?;
        if c.is_none() {
            c = doc.c.as_ref().map(parse).transpose()?;
        }
        return Ok(Some((p, t, c)));
    }
    if let (Some(p), Some(t)) = (&args.p, &args.t) {
        return Ok(Some((read_operator(p)?, read_operator(t)?, c)));
    }
    if c.is_some() {
        return Err(CliError::Usage("--c needs a frame (--frame, --p/--t or --model)".into()));
    }
    Ok(None)
}

/// Resolves the Hamiltonian and frame from either `--model` or
/// `--hamiltonian` plus frame flags. A Hamiltonian of even dimension without
/// frame flags gets the pair-swap frame.
pub fn load_problem(model: &ModelArgs, frame: &FrameArgs, tol: f64) -> Result<Problem, CliError> {
    if model.model.is_some() {
        let context = model.describe();
        let spec = model.to_spec()?;
        let (h, built) = build_model(&spec).map_err(|e| CliError::core(&context, e))?;
        let (frame, c) = match load_frame_operators(frame)? {
            Some((p, t, c)) => (PtFrame64::new(p, t, tol).map_err(|e| CliError::core(&context, e))?, c),
            None => (built, None),
        };
        return Ok(Problem { h, frame, c, context });
    }
    let path = frame
        .hamiltonian
        .as_ref()
        .ok_or_else(|| CliError::Usage("no --model or --hamiltonian given".into()))?;
    let context = format!("hamiltonian {}", path.display());
    let h = read_matrix(path)?;
    let (pt, c) = match load_frame_operators(frame)? {
        Some((p, t, c)) => (PtFrame64::new(p, t, tol).map_err(|e| CliError::core(&context, e))?, c),
        None => (
            PtFrame64::pair_swap(h.nrows()).map_err(|e| CliError::core(format!("{context} (default frame)"), e))?,
            None,
        ),
    };
    Ok(Problem { h, frame: pt, c, context })
}
