//! Tensor products, finite direct sums, and the `H ⊕ H⁺` doubling.
//!
//! Kronecker products put the left factor outermost: `(A⊗B)` acts on the
//! basis `eᵢ⊗eⱼ` ordered lexicographically in `(i, j)`. An antilinear
//! `T₁⊗T₂` is stored as `M₁⊗M₂` with a single conjugation, since each factor
//! conjugates its slot exactly once.

use crate::error::{Error, Result};
use crate::frames::{conjoin, validate_cpt_frame, validate_pt_frame, CptFrame, PtFrame};
use crate::linops::{block_diag, check_dim, check_square, Operator, OperatorKind};
use crate::scalar::{c_real, ComplexMatrix, Real};
use crate::symmetry::is_pt_symmetric;

/// `{P₁⊗P₂, T₁⊗T₂}`, validated.
pub fn tensor_pt_frames<T: Real>(a: &PtFrame<T>, b: &PtFrame<T>, tol: T) -> Result<PtFrame<T>> {
    let p = Operator::from_parts(OperatorKind::Linear, a.p().matrix().kronecker(b.p().matrix()));
    let t = Operator::from_parts(OperatorKind::Antilinear, a.t().matrix().kronecker(b.t().matrix()));
    let report = validate_pt_frame(&p, &t, tol)?;
    if !report.passed() {
        return Err(Error::FrameInvalid(report));
    }
    Ok(PtFrame::from_parts(p, t))
}

/// `{C₁⊗C₂, P₁⊗P₂, T₁⊗T₂}`, validated.
pub fn tensor_frames<T: Real>(a: &CptFrame<T>, b: &CptFrame<T>, tol: T) -> Result<CptFrame<T>> {
    let frame = tensor_pt_frames(a.frame(), b.frame(), tol)?;
    let c = Operator::from_parts(OperatorKind::Linear, a.c().matrix().kronecker(b.c().matrix()));
    let report = validate_cpt_frame(&c, &frame, tol)?;
    if !report.passed() {
        return Err(Error::FrameInvalid(report));
    }
    Ok(CptFrame::from_parts(c, frame))
}

/// `H₁⊗H₂` with the tensor frame. Each `Hᵢ` must be PT-symmetric in its
/// own frame; the product is re-checked against the composite frame.
pub fn tensor_hamiltonians<T: Real>(
    h1: &ComplexMatrix<T>,
    h2: &ComplexMatrix<T>,
    a: &CptFrame<T>,
    b: &CptFrame<T>,
    tol: T,
) -> Result<(ComplexMatrix<T>, CptFrame<T>)> {
    for (h, frame) in [(h1, a), (h2, b)] {
        let (ok, residual) = is_pt_symmetric(h, frame.frame(), tol)?;
        if !ok {
            return Err(Error::NotPtSymmetric {
                residual: residual.as_f64(),
            });
        }
    }
    let cpt = tensor_frames(a, b, tol)?;
    let h = h1.kronecker(h2);
    let (ok, residual) = is_pt_symmetric(&h, cpt.frame(), tol)?;
    if !ok {
        return Err(Error::NotPtSymmetric {
            residual: residual.as_f64(),
        });
    }
    Ok((h, cpt))
}

#[derive(Debug, Clone)]
pub enum BlockFrame<T: Real> {
    Pt(PtFrame<T>),
    Cpt(CptFrame<T>),
}

impl<T: Real> BlockFrame<T> {
    pub fn pt_frame(&self) -> &PtFrame<T> {
        match self {
            BlockFrame::Pt(f) => f,
            BlockFrame::Cpt(f) => f.frame(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pt_frame().dim()
    }
}

#[derive(Debug, Clone)]
pub struct Block<T: Real> {
    pub h: ComplexMatrix<T>,
    pub frame: BlockFrame<T>,
}

/// Ordered blocks for [`direct_sum`]. Every block must carry the same kind
/// of frame.
#[derive(Debug, Clone, Default)]
pub struct BlockSpec<T: Real> {
    pub blocks: Vec<Block<T>>,
}

impl<T: Real> BlockSpec<T> {
    pub fn new() -> Self {
        Self { blocks: Vec::new() }
    }

    pub fn push(&mut self, h: ComplexMatrix<T>, frame: BlockFrame<T>) {
        self.blocks.push(Block { h, frame });
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.h.nrows()).sum()
    }
}

#[derive(Debug, Clone)]
pub enum Composite<T: Real> {
    Pt(PtFrame<T>),
    Cpt(CptFrame<T>),
}

impl<T: Real> Composite<T> {
    pub fn pt_frame(&self) -> &PtFrame<T> {
        match self {
            Composite::Pt(f) => f,
            Composite::Cpt(f) => f.frame(),
        }
    }
}

/// Block-diagonal `H`, `P`, `T` (and `C`) over a finite list of blocks.
/// The composite frame is validated, and for CPT blocks its report is
/// conjoined with the blockwise reports.
pub fn direct_sum<T: Real>(spec: &BlockSpec<T>, tol: T) -> Result<(ComplexMatrix<T>, Composite<T>)> {
    let first = spec.blocks.first().ok_or(Error::EmptySpec)?;
    let want_cpt = matches!(first.frame, BlockFrame::Cpt(_));
    for block in &spec.blocks {
        check_square(&block.h)?;
        check_dim(block.frame.dim(), block.h.nrows())?;
        if matches!(block.frame, BlockFrame::Cpt(_)) != want_cpt {
            return Err(Error::MixedFrameKinds);
        }
    }

    let h = block_diag(&spec.blocks.iter().map(|b| &b.h).collect::<Vec<_>>());
    let p = block_diag(&spec.blocks.iter().map(|b| b.frame.pt_frame().p().matrix()).collect::<Vec<_>>());
    let t = block_diag(&spec.blocks.iter().map(|b| b.frame.pt_frame().t().matrix()).collect::<Vec<_>>());
    let p = Operator::from_parts(OperatorKind::Linear, p);
    let t = Operator::from_parts(OperatorKind::Antilinear, t);
    let report = validate_pt_frame(&p, &t, tol)?;
    if !report.passed() {
        return Err(Error::FrameInvalid(report));
    }
    let frame = PtFrame::from_parts(p, t);
    if !want_cpt {
        return Ok((h, Composite::Pt(frame)));
    }

    let mut blockwise = crate::frames::FrameReport::default();
    let mut cs = Vec::with_capacity(spec.blocks.len());
    for block in &spec.blocks {
        if let BlockFrame::Cpt(f) = &block.frame {
            blockwise = conjoin(blockwise, validate_cpt_frame(f.c(), f.frame(), tol)?);
            cs.push(f.c().matrix());
        }
    }
    let c = Operator::from_parts(OperatorKind::Linear, block_diag(&cs));
    let report = conjoin(blockwise, validate_cpt_frame(&c, &frame, tol)?);
    if !report.passed() {
        return Err(Error::FrameInvalid(report));
    }
    Ok((h, Composite::Cpt(CptFrame::from_parts(c, frame))))
}

/// `H̃ = diag(H, H⁺)` with the block swap `P = [[0, I], [I, 0]]` and
/// conjugation `T`. `H̃` is PT-symmetric exactly when `Hᵗ = H`; the verdict
/// is returned alongside.
pub fn doubling<T: Real>(h: &ComplexMatrix<T>, tol: T) -> Result<(ComplexMatrix<T>, PtFrame<T>, bool)> {
    check_square(h)?;
    let n = h.nrows();
    let doubled = block_diag(&[h, &h.adjoint()]);
    let mut p = ComplexMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        p[(k, n + k)] = c_real(T::one());
        p[(n + k, k)] = c_real(T::one());
    }
    let frame = PtFrame::from_parts(
        Operator::from_parts(OperatorKind::Linear, p),
        Operator::conjugation(2 * n),
    );
    let (symmetric, _) = is_pt_symmetric(&doubled, &frame, tol)?;
    Ok((doubled, frame, symmetric))
}
