use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use cpt_core::models::EP_WINDOW;
use cpt_core::{
    build_c, classify_symmetry, direct_sum, doubling, hermitize, metric_roots, tensor_hamiltonians, validate_cpt_frame,
    validate_pt_frame, BlockFrame, BlockSpec, Classification, Complex64, Composite, CptFrame64, FrameReport,
    PtFrame64, Warning,
};
use serde::Serialize;

use crate::args::{BuildArgs, Command, ComposeArgs, ComposeOp, Emit, ProblemArgs, ScanArgs};
use crate::document::{read_json, read_matrix, to_json, write_json, FrameDocument, MatrixDocument};
use crate::error::CliError;
use crate::inputs::{load_frame_operators, load_problem};
use crate::scan::{scan_rows, write_csv, Sweep};

/// Runs one subcommand. Primary output goes to `out`, diagnostics to `log`.
pub fn run(command: &Command, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Validate(args) => validate(args, out),
        Command::Analyze(args) => analyze(args, out),
        Command::BuildC(args) => build(args, &[Emit::C], out, log),
        Command::Hermitize(args) => build(args, &[Emit::H], out, log),
        Command::Scan(args) => scan(args, out, log),
        Command::Compose(args) => compose(args, out, log),
    }
}

fn print_report(out: &mut dyn Write, title: &str, report: &FrameReport) -> std::io::Result<()> {
    if report.passed() {
        return writeln!(out, "{title}: all axioms hold");
    }
    writeln!(out, "{title}: {} violation(s)", report.violations.len())?;
    for v in &report.violations {
        writeln!(out, "  - {v}")?;
    }
    Ok(())
}

fn validate(args: &ProblemArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (p, t, c) = match load_frame_operators(&args.frame)? {
        Some(ops) => ops,
        None if args.model.model.is_some() => {
            let problem = load_problem(&args.model, &args.frame, args.tol)?;
            (problem.frame.p().clone(), problem.frame.t().clone(), None)
        }
        None => return Err(CliError::Usage("validate needs --frame, --p/--t or --model".into())),
    };
    let pt_report = validate_pt_frame(&p, &t, args.tol)?;
    print_report(out, &format!("PT-frame (dim {})", p.dim()), &pt_report)?;
    if !pt_report.passed() {
        if c.is_some() {
            writeln!(out, "CPT-frame: not checked (PT-frame invalid)")?;
        }
        return Err(CliError::Axioms(pt_report));
    }
    let Some(c) = c else { return Ok(()) };
    let frame = PtFrame64::new(p, t, args.tol)?;
    let cpt_report = validate_cpt_frame(&c, &frame, args.tol)?;
    print_report(out, "CPT-frame", &cpt_report)?;
    if !cpt_report.passed() {
        return Err(CliError::Axioms(cpt_report));
    }
    Ok(())
}

fn complex(z: Complex64) -> String {
    format!("{:.12} {:+.12}i", z.re, z.im)
}

fn analyze(args: &ProblemArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let problem = load_problem(&args.model, &args.frame, args.tol)?;
    let ctx = |e| CliError::core(&problem.context, e);
    let mut report = classify_symmetry(&problem.h, &problem.frame, args.tol).map_err(ctx)?;
    if args.model.model.is_some() {
        let distance = args.model.to_spec()?.threshold_distance();
        if distance <= EP_WINDOW {
            report.warnings.push(Warning::ExceptionalPointProximity { distance });
        }
    }

    writeln!(out, "input: {}", problem.context)?;
    writeln!(out, "dimension: {}", problem.h.nrows())?;
    if report.pt_symmetric {
        writeln!(out, "pt-symmetric: yes (residual {:.3e})", report.pt_residual)?;
    } else {
        writeln!(out, "pt-symmetric: no, H is not PT-symmetric in this frame (residual {:.3e})", report.pt_residual)?;
    }
    let class = match report.classification {
        Classification::Unbroken => "unbroken",
        Classification::Broken => "broken",
        Classification::NotApplicable => "not applicable",
    };
    writeln!(out, "classification: {class}")?;
    writeln!(out, "eigenvalues:")?;
    for z in &report.eigenvalues {
        writeln!(out, "  {}", complex(*z))?;
    }
    if let Some(k) = report.eigenvector_condition {
        writeln!(out, "eigenvector condition: {k:.3e}")?;
    }
    if !report.aligned_states.is_empty() {
        writeln!(out, "aligned states:")?;
        for s in &report.aligned_states {
            writeln!(out, "  E = {:.12}  theta = {:.12}", s.energy, s.theta)?;
        }
    }
    if !report.broken_pairs.is_empty() {
        writeln!(out, "conjugate pairs:")?;
        for pair in &report.broken_pairs {
            writeln!(out, "  {}  <->  {}", complex(pair.value), complex(pair.partner))?;
        }
    }
    if report.is_unbroken() {
        match build_c(&problem.h, &problem.frame, args.tol) {
            Ok(result) => {
                let signs: Vec<_> = result
                    .states
                    .iter()
                    .map(|s| format!("{:.12}:{:+}", s.energy, s.sign.value::<f64>()))
                    .collect();
                writeln!(out, "signs: {}", signs.join(" "))?;
            }
            Err(e) => writeln!(out, "signs: unavailable ({e})")?,
        }
    }
    if report.warnings.is_empty() {
        writeln!(out, "warnings: none")?;
    } else {
        writeln!(out, "warnings:")?;
        for w in &report.warnings {
            let text = match w {
                Warning::ExceptionalPointProximity { distance } => {
                    format!("within {distance:.3e} of a symmetry-breaking threshold")
                }
                Warning::UnpairedEigenvalue { re, im } => format!("eigenvalue {re} {im:+}i has no conjugate partner"),
                Warning::MisalignedState { energy, residual } => {
                    format!("eigenvector for E = {energy} is not a PT eigenstate (residual {residual:.3e})")
                }
            };
            writeln!(out, "  - {text}")?;
        }
    }
    Ok(())
}

fn emit_documents<S: Serialize>(
    docs: &BTreeMap<String, S>,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            for (name, doc) in docs {
                let path = dir.join(format!("{name}.json"));
                write_json(&path, doc)?;
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        None => out.write_all(to_json(docs).as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(untagged)]
enum Emitted {
    Matrix(MatrixDocument),
    Frame(FrameDocument),
}

fn build(args: &BuildArgs, default: &[Emit], out: &mut dyn Write, log: &mut dyn Write) -> Result<(), CliError> {
    let tol = args.problem.tol;
    let problem = load_problem(&args.problem.model, &args.problem.frame, tol)?;
    let ctx = |e| CliError::core(&problem.context, e);
    // Summary lines go to stdout only when the documents go to files.
    let mut summary: Vec<String> = Vec::new();

    let cpt: CptFrame64 = match &problem.c {
        Some(c) => {
            let cpt = CptFrame64::new(c.clone(), problem.frame.clone(), tol).map_err(ctx)?;
            summary.push("C: supplied".into());
            cpt
        }
        None => {
            let result = build_c(&problem.h, &problem.frame, tol).map_err(ctx)?;
            summary.push(format!("C: built from {} aligned states", result.states.len()));
            summary.push(format!("gram residual: {:.3e}", result.gram_residual));
            summary.push(format!("metric condition: {:.3e}", result.metric_condition));
            result.cpt
        }
    };
    summary.push(format!(
        "commutator residual ||[C, H]||: {:.3e}",
        cpt.commutator_residual(&problem.h).map_err(ctx)?
    ));

    let emit = if args.emit.is_empty() { default } else { &args.emit };
    let mut docs = BTreeMap::new();
    for e in emit {
        match e {
            Emit::C => {
                docs.insert("c".to_string(), MatrixDocument::from_operator(cpt.c()));
            }
            Emit::Pc => {
                docs.insert("pc".to_string(), MatrixDocument::from_matrix(&cpt.pc(), false));
            }
            Emit::Sqrt => {
                let (root, inv_root) = metric_roots(&cpt, tol).map_err(ctx)?;
                docs.insert("pc_sqrt".to_string(), MatrixDocument::from_matrix(&root, false));
                docs.insert("pc_inv_sqrt".to_string(), MatrixDocument::from_matrix(&inv_root, false));
            }
            Emit::H => {
                let h = hermitize(&problem.h, &cpt, tol).map_err(ctx)?;
                summary.push(format!("hermiticity residual ||h - h^+||: {:.3e}", (&h - h.adjoint()).norm()));
                docs.insert("h".to_string(), MatrixDocument::from_matrix(&h, false));
            }
        }
    }

    let sink: &mut dyn Write = if args.out.is_some() { &mut *out } else { &mut *log };
    for line in &summary {
        writeln!(sink, "{line}")?;
    }
    emit_documents(&docs, args.out.as_deref(), out)
}

fn scan(args: &ScanArgs, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), CliError> {
    let sweep: Sweep = args.sweep.parse()?;
    let dim = args.model.to_spec().map(|s| s.dim()).or_else(|e| {
        // The template may be incomplete when the swept parameter is the
        // only value given for it.
        sweep
            .apply(&args.model, sweep.lo)
            .and_then(|m| m.to_spec())
            .map(|s| s.dim())
            .map_err(|_| e)
    })?;
    let rows = scan_rows(&args.model, &sweep, args.tol)?;
    let marked = rows.iter().filter(|r| r.status != "ok").count();
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            write_csv(file, sweep.label(), dim, &rows)?;
            writeln!(out, "wrote {} rows to {} ({marked} marked)", rows.len(), path.display())?;
        }
        None => {
            write_csv(&mut *out, sweep.label(), dim, &rows)?;
            writeln!(log, "{} rows ({marked} marked)", rows.len())?;
        }
    }
    Ok(())
}

struct Component {
    h: cpt_core::ComplexMatrix64,
    frame: PtFrame64,
    c: Option<cpt_core::Operator64>,
    name: String,
}

fn load_components(args: &ComposeArgs) -> Result<Vec<Component>, CliError> {
    if !args.frames.is_empty() && args.frames.len() != args.hamiltonians.len() {
        return Err(CliError::Usage(format!(
            "{} --frame given for {} --hamiltonian",
            args.frames.len(),
            args.hamiltonians.len()
        )));
    }
    let mut out = Vec::new();
    for (k, path) in args.hamiltonians.iter().enumerate() {
        let name = path.display().to_string();
        let h = read_matrix(path)?;
        let (frame, c) = match args.frames.get(k) {
            Some(fp) => {
                let doc: FrameDocument = read_json(fp)?;
                let parse = |d: &MatrixDocument| {
                    d.to_operator().map_err(|message| CliError::Parse {
                        path: fp.clone(),
                        message,
                    })
                };
                let frame = PtFrame64::new(parse(&doc.p)?, parse(&doc.t)?, args.tol).map_err(|e| CliError::core(&name, e))?;
                (frame, doc.c.as_ref().map(parse).transpose()?)
            }
            None => (PtFrame64::pair_swap(h.nrows()).map_err(|e| CliError::core(&name, e))?, None),
        };
        out.push(Component { h, frame, c, name });
    }
    Ok(out)
}

fn cpt_of(component: &Component, tol: f64) -> Result<CptFrame64, CliError> {
    let ctx = |e| CliError::core(&component.name, e);
    match &component.c {
        Some(c) => CptFrame64::new(c.clone(), component.frame.clone(), tol).map_err(ctx),
        None => Ok(build_c(&component.h, &component.frame, tol).map_err(ctx)?.cpt),
    }
}

fn frame_document(frame: &PtFrame64, c: Option<&cpt_core::Operator64>) -> FrameDocument {
    FrameDocument {
        p: MatrixDocument::from_operator(frame.p()),
        t: MatrixDocument::from_operator(frame.t()),
        c: c.map(MatrixDocument::from_operator),
    }
}

fn compose(args: &ComposeArgs, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), CliError> {
    let tol = args.tol;
    let mut summary = Vec::new();
    let (h, frame) = match args.op {
        ComposeOp::Tensor => {
            let components = load_components(args)?;
            let [a, b] = &components[..] else {
                return Err(CliError::Usage("tensor needs exactly two --hamiltonian".into()));
            };
            let (h, cpt) = tensor_hamiltonians(&a.h, &b.h, &cpt_of(a, tol)?, &cpt_of(b, tol)?, tol)
                .map_err(|e| CliError::core("tensor product", e))?;
            summary.push(format!("commutator residual ||[C, H]||: {:.3e}", cpt.commutator_residual(&h)?));
            (h, frame_document(cpt.frame(), Some(cpt.c())))
        }
        ComposeOp::Sum => {
            let mut spec = BlockSpec::new();
            for comp in &load_components(args)? {
                let frame = match comp.c {
                    Some(_) => BlockFrame::Cpt(cpt_of(comp, tol)?),
                    None => BlockFrame::Pt(comp.frame.clone()),
                };
                spec.push(comp.h.clone(), frame);
            }
            let (h, composite) = direct_sum(&spec, tol).map_err(|e| CliError::core("direct sum", e))?;
            let doc = match &composite {
                Composite::Pt(f) => frame_document(f, None),
                Composite::Cpt(f) => frame_document(f.frame(), Some(f.c())),
            };
            (h, doc)
        }
        ComposeOp::Double => {
            let [path] = &args.hamiltonians[..] else {
                return Err(CliError::Usage("double needs exactly one --hamiltonian".into()));
            };
            let (h, frame, symmetric) = doubling(&read_matrix(path)?, tol)?;
            summary.push(format!("pt-symmetric: {}", if symmetric { "yes" } else { "no" }));
            (h, frame_document(&frame, None))
        }
    };
    summary.insert(0, format!("dimension: {}", h.nrows()));

    let sink: &mut dyn Write = if args.out.is_some() { &mut *out } else { &mut *log };
    for line in &summary {
        writeln!(sink, "{line}")?;
    }
    let mut docs = BTreeMap::new();
    docs.insert("h".to_string(), Emitted::Matrix(MatrixDocument::from_matrix(&h, false)));
    docs.insert("frame".to_string(), Emitted::Frame(frame));
    emit_documents(&docs, args.out.as_deref(), out)
}
