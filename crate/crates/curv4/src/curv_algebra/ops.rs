use std::array::from_fn;

use super::basis::{Bivector, Lambda2Basis};
use super::types::{
    det4, AlgCurvTensor, BilinearRole, Block3, BlockKind, CurvDecomp, Duality, Lambda2Operator,
    Spectrum3, SymBilinear4,
};
use super::CurvError;
use crate::scalar::Scalar;

/// Coefficient `1/(n-2)` of the Ricci term in the Weyl decomposition,
/// evaluated at n = 4. Kept as a named constant because the formula is
/// dimension-dependent and this crate implements only the n = 4 case.
pub const WEYL_RICCI_COEFF_N4: (i64, i64) = (1, 2);
/// Coefficient `1/((n-1)(n-2))` of the scalar term at n = 4.
pub const WEYL_SCALAR_COEFF_N4: (i64, i64) = (1, 6);
/// Coefficient `1/(2(n-1))` in the Schouten tensor at n = 4.
pub const SCHOUTEN_TRACE_COEFF_N4: (i64, i64) = (1, 6);

/// Kulkarni-Nomizu product of two symmetric bilinear forms:
///
/// ```text
/// (a . b)_ijkl = a_ik b_jl + a_jl b_ik - a_il b_jk - a_jk b_il
/// ```
///
/// The output satisfies all algebraic curvature symmetries identically.
pub fn kulkarni_nomizu<S: Scalar>(a: &SymBilinear4<S>, b: &SymBilinear4<S>) -> AlgCurvTensor<S> {
    AlgCurvTensor::from_fn_unchecked(|i, j, k, l| {
        a.get(i, k).clone() * b.get(j, l).clone() + a.get(j, l).clone() * b.get(i, k).clone()
            - a.get(i, l).clone() * b.get(j, k).clone()
            - a.get(j, k).clone() * b.get(i, l).clone()
    })
}

/// Schouten tensor `A = Ric - R/(2(n-1)) g` at n = 4.
pub fn schouten<S: Scalar>(
    ricci: &SymBilinear4<S>,
    scalar: &S,
    metric: &SymBilinear4<S>,
) -> SymBilinear4<S> {
    let c = S::ratio(SCHOUTEN_TRACE_COEFF_N4.0, SCHOUTEN_TRACE_COEFF_N4.1);
    ricci
        .sub(&metric.scale(&(scalar.clone() * c)))
        .with_role(BilinearRole::Schouten)
}

/// Curvature operator acting on a two-form, `(Rm w)_ij = (1/2) R_ijkl w_kl`.
pub fn apply_to_bivector<S: Scalar>(rm: &AlgCurvTensor<S>, omega: &Bivector<S>) -> Bivector<S> {
    from_fn(|i| {
        from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..4 {
                for l in 0..4 {
                    acc = acc + rm.get(i, j, k, l).clone() * omega[k][l].clone();
                }
            }
            acc * S::ratio(1, 2)
        })
    })
}

/// Matrix of a curvature-type tensor as an operator on two-forms in the
/// given basis: `M_ab = <Rm(w_a), w_b> / <w_b, w_b>`.
pub fn as_lambda2_operator<S: Scalar>(
    rm: &AlgCurvTensor<S>,
    basis: &Lambda2Basis<S>,
) -> Result<Lambda2Operator<S>, CurvError> {
    basis.validate()?;
    let eighth = S::ratio(1, 8);
    let mut m: [[S; 6]; 6] = from_fn(|_| from_fn(|_| S::zero()));
    for a in 0..6 {
        for b in a..6 {
            let wa = basis.bivector(a);
            let wb = basis.bivector(b);
            let mut acc = S::zero();
            for i in 0..4 {
                for j in 0..4 {
                    if wb[i][j].is_zero() {
                        continue;
                    }
                    for k in 0..4 {
                        for l in 0..4 {
                            if wa[k][l].is_zero() {
                                continue;
                            }
                            acc = acc
                                + rm.get(i, j, k, l).clone() * wa[k][l].clone() * wb[i][j].clone();
                        }
                    }
                }
            }
            let v = acc * eighth.clone();
            m[a][b] = v.clone();
            m[b][a] = v;
        }
    }
    Ok(Lambda2Operator { m })
}

/// Full Weyl decomposition of an algebraic curvature tensor given the frame
/// metric: scalar curvature, Ricci, traceless Ricci, the self-dual and
/// anti-self-dual Weyl blocks, the off-diagonal traceless-Ricci block, and
/// the trace-free Weyl 4-tensor.
pub fn weyl_decompose<S: Scalar>(
    rm: &AlgCurvTensor<S>,
    metric: &SymBilinear4<S>,
) -> Result<CurvDecomp<S>, CurvError> {
    if !metric.is_positive_definite() {
        return Err(CurvError::DegenerateMetric);
    }
    rm.validate()?;

    let ginv = invert4(metric)?;
    let ricci = rm.ricci(&ginv);
    let mut scalar = S::zero();
    for j in 0..4 {
        for l in 0..4 {
            scalar = scalar + ginv[j][l].clone() * ricci.get(j, l).clone();
        }
    }

    let quarter_r = scalar.clone() * S::ratio(1, 4);
    let traceless_ricci = ricci
        .sub(&metric.scale(&quarter_r))
        .with_role(BilinearRole::TracelessRicci);

    // W = Rm - 1/2 (Ric . g) + R/12 (g . g)   [n = 4]
    let ric_g = kulkarni_nomizu(&ricci, metric);
    let g_g = kulkarni_nomizu(metric, metric);
    let half = S::ratio(WEYL_RICCI_COEFF_N4.0, WEYL_RICCI_COEFF_N4.1);
    let r12 = scalar.clone() * S::ratio(1, 12);
    let full_weyl = rm
        .sub(&ric_g.scale(&half))
        .add(&g_g.scale(&r12))
        .with_orientation(rm.orientation());

    let basis = Lambda2Basis::standard(rm.orientation());
    let operator = as_lambda2_operator(rm, &basis)?;

    let r12_id = scalar.clone() * S::ratio(1, 12);
    let weyl_plus = shift_diag(
        operator.diag_block(Duality::SelfDual, BlockKind::Weyl),
        &r12_id,
    );
    let weyl_minus = shift_diag(
        operator.diag_block(Duality::AntiSelfDual, BlockKind::Weyl),
        &r12_id,
    );
    let ric_block = operator.offdiag_block();

    Ok(CurvDecomp {
        scalar,
        ricci,
        traceless_ricci,
        weyl_plus,
        weyl_minus,
        ric_block,
        full_weyl,
        operator,
    })
}

fn shift_diag<S: Scalar>(mut block: Block3<S>, amount: &S) -> Block3<S> {
    for i in 0..3 {
        block.m[i][i] = block.m[i][i].clone() - amount.clone();
    }
    block
}

/// Inverse of a symmetric 4x4 matrix via the adjugate; exact in rational
/// arithmetic.
fn invert4<S: Scalar>(g: &SymBilinear4<S>) -> Result<[[S; 4]; 4], CurvError> {
    let m: [[S; 4]; 4] = from_fn(|i| from_fn(|j| g.get(i, j).clone()));
    let det = det4(&m);
    if det.is_zero() {
        return Err(CurvError::DegenerateMetric);
    }
    let mut inv: [[S; 4]; 4] = from_fn(|_| from_fn(|_| S::zero()));
    for i in 0..4 {
        for j in 0..4 {
            let minor: [[S; 3]; 3] = from_fn(|r| {
                let rr = if r < j { r } else { r + 1 };
                let mut cols = (0..4).filter(|&c| c != i);
                from_fn(|_| {
                    let c = cols.next().unwrap();
                    m[rr][c].clone()
                })
            });
            let cof = super::types::det3(&minor);
            let sign = if (i + j) % 2 == 0 {
                S::one()
            } else {
                -S::one()
            };
            inv[i][j] = sign * cof / det.clone();
        }
    }
    Ok(inv)
}

/// Reassembles the curvature tensor from a decomposition through the
/// componentwise formula `Rm = W + 1/2 (Ric . g) - R/12 (g . g)` in the
/// orthonormal frame.
pub fn recompose<S: Scalar>(d: &CurvDecomp<S>) -> AlgCurvTensor<S> {
    let g = SymBilinear4::identity(BilinearRole::Metric);
    let ric_g = kulkarni_nomizu(&d.ricci, &g);
    let g_g = kulkarni_nomizu(&g, &g);
    let half = S::ratio(1, 2);
    let r12 = d.scalar.clone() * S::ratio(1, 12);
    d.full_weyl
        .add(&ric_g.scale(&half))
        .sub(&g_g.scale(&r12))
        .with_orientation(d.full_weyl.orientation())
}

/// Reassembles the curvature tensor through the operator route: rebuilds
/// the 6x6 block matrix from the decomposition and expands it in the
/// bivector basis. Independent of [`recompose`] above; the two routes
/// agreeing is a structural self-check.
pub fn recompose_from_operator<S: Scalar>(d: &CurvDecomp<S>) -> AlgCurvTensor<S> {
    let r12 = d.scalar.clone() * S::ratio(1, 12);
    let mut m: [[S; 6]; 6] = from_fn(|_| from_fn(|_| S::zero()));
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = d.weyl_plus.m[i][j].clone();
            m[3 + i][3 + j] = d.weyl_minus.m[i][j].clone();
            m[i][3 + j] = d.ric_block[i][j].clone();
            m[3 + j][i] = d.ric_block[i][j].clone();
        }
    }
    for i in 0..6 {
        m[i][i] = m[i][i].clone() + r12.clone();
    }
    let basis = Lambda2Basis::standard(d.full_weyl.orientation());
    curvature_from_operator(&Lambda2Operator { m }, &basis)
}

/// Rebuilds a curvature-type tensor from its operator matrix,
/// `R_ijkl = (1/2) sum_ab M_ab (w_a)_ij (w_b)_kl`.
pub fn curvature_from_operator<S: Scalar>(
    op: &Lambda2Operator<S>,
    basis: &Lambda2Basis<S>,
) -> AlgCurvTensor<S> {
    let half = S::ratio(1, 2);
    AlgCurvTensor::from_fn_unchecked(|i, j, k, l| {
        let mut acc = S::zero();
        for a in 0..6 {
            let wa = &basis.bivector(a)[i][j];
            if wa.is_zero() {
                continue;
            }
            for b in 0..6 {
                let wb = &basis.bivector(b)[k][l];
                if wb.is_zero() {
                    continue;
                }
                acc = acc + op.m[a][b].clone() * wa.clone() * wb.clone();
            }
        }
        acc * half.clone()
    })
    .with_orientation(basis.orientation())
}

/// Ascending eigenvalues of a symmetric 3x3 block.
pub fn spectrum3<S: Scalar>(block: &Block3<S>) -> Spectrum3<S> {
    Spectrum3::new(S::sym3_eigenvalues(&block.m))
}

/// Trace-of-product inner product `<a,b> = tr(a b)` between two blocks of
/// the same duality.
pub fn block_inner<S: Scalar>(a: &Block3<S>, b: &Block3<S>) -> Result<S, CurvError> {
    if a.duality != b.duality {
        return Err(CurvError::DualityMismatch);
    }
    let mut acc = S::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc = acc + a.m[i][j].clone() * b.m[i][j].clone();
        }
    }
    Ok(acc)
}

/// Scalar invariants of a decomposition in the eigenvalue/trace convention.
#[derive(Debug, Clone)]
pub struct BlockNorms<S> {
    pub scalar: S,
    /// `|Ric0|^2 = sum_ij (Ric0_ij)^2`.
    pub traceless_ricci_norm2: S,
    /// `|W+|^2 = sum (w_i+)^2`.
    pub weyl_plus_norm2: S,
    pub weyl_minus_norm2: S,
    pub det_weyl_plus: S,
    pub det_weyl_minus: S,
}

impl<S: Scalar> BlockNorms<S> {
    pub fn traceless_ricci_norm(&self) -> S {
        self.traceless_ricci_norm2.sqrt()
    }
    pub fn weyl_plus_norm(&self) -> S {
        self.weyl_plus_norm2.sqrt()
    }
    pub fn weyl_minus_norm(&self) -> S {
        self.weyl_minus_norm2.sqrt()
    }
    /// `|W|^2 = |W+|^2 + |W-|^2` (eigenvalue convention).
    pub fn weyl_norm2(&self) -> S {
        self.weyl_plus_norm2.clone() + self.weyl_minus_norm2.clone()
    }
}

/// Norms and determinants of the blocks of a decomposition.
pub fn block_norms<S: Scalar>(d: &CurvDecomp<S>) -> BlockNorms<S> {
    BlockNorms {
        scalar: d.scalar.clone(),
        traceless_ricci_norm2: d.traceless_ricci.norm2(),
        weyl_plus_norm2: d.weyl_plus.norm2(),
        weyl_minus_norm2: d.weyl_minus.norm2(),
        det_weyl_plus: d.weyl_plus.det(),
        det_weyl_minus: d.weyl_minus.det(),
    }
}

/// Componentwise contraction `sum_ijkl (R_ijkl)^2`. Related to the operator
/// Frobenius norm by an exact factor of 4:
/// `component_norm2 = 4 * ||as_lambda2_operator||_F^2`.
pub fn component_norm2<S: Scalar>(rm: &AlgCurvTensor<S>) -> S {
    let mut acc = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    acc = acc + rm.get(i, j, k, l).clone() * rm.get(i, j, k, l).clone();
                }
            }
        }
    }
    acc
}
