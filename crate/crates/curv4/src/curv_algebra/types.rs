use std::array::from_fn;

use super::CurvError;
use crate::scalar::Scalar;

/// Role tag for a symmetric bilinear form; drives the per-role invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilinearRole {
    Metric,
    Ricci,
    TracelessRicci,
    Schouten,
    Hessian,
    Generic,
}

/// Symmetric 4x4 bilinear form in orthonormal-frame components.
///
/// Storage enforces symmetry: all constructors mirror the upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBilinear4<S> {
    m: [[S; 4]; 4],
    role: BilinearRole,
}

impl<S: Scalar> SymBilinear4<S> {
    /// Builds from the upper triangle of `f`; the lower triangle is mirrored.
    pub fn from_fn(role: BilinearRole, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m: [[S; 4]; 4] = from_fn(|_| from_fn(|_| S::zero()));
        for i in 0..4 {
            for j in i..4 {
                let v = f(i, j);
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        SymBilinear4 { m, role }
    }

    pub fn zero(role: BilinearRole) -> Self {
        Self::from_fn(role, |_, _| S::zero())
    }

    pub fn diag(role: BilinearRole, d: [S; 4]) -> Self {
        Self::from_fn(role, |i, j| if i == j { d[i].clone() } else { S::zero() })
    }

    pub fn identity(role: BilinearRole) -> Self {
        Self::diag(role, from_fn(|_| S::one()))
    }

    /// Validates the role-specific invariant: positive definiteness for
    /// metrics (Sylvester criterion, exact-arithmetic friendly) and
    /// trace-freeness for traceless Ricci tensors.
    pub fn validate(&self) -> Result<(), CurvError> {
        match self.role {
            BilinearRole::Metric => {
                if !self.is_positive_definite() {
                    return Err(CurvError::DegenerateMetric);
                }
            }
            BilinearRole::TracelessRicci => {
                let tr = self.trace();
                if tr.abs() > S::tol_abs() {
                    return Err(CurvError::NotTraceFree { trace: tr.to_f64() });
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn role(&self) -> BilinearRole {
        self.role
    }

    pub fn with_role(mut self, role: BilinearRole) -> Self {
        self.role = role;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.m[i][j]
    }

    pub fn trace(&self) -> S {
        self.m[0][0].clone() + self.m[1][1].clone() + self.m[2][2].clone() + self.m[3][3].clone()
    }

    /// Frobenius norm squared, `sum_ij m_ij^2`.
    pub fn norm2(&self) -> S {
        let mut acc = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                acc = acc + self.m[i][j].clone() * self.m[i][j].clone();
            }
        }
        acc
    }

    /// Matrix square `(m^2)_ik = m_ip m_kp`.
    pub fn matrix_square(&self) -> SymBilinear4<S> {
        SymBilinear4::from_fn(BilinearRole::Generic, |i, k| {
            let mut acc = S::zero();
            for p in 0..4 {
                acc = acc + self.m[i][p].clone() * self.m[k][p].clone();
            }
            acc
        })
    }

    /// Matrix-vector action `(m v)_i = m_ij v_j`.
    pub fn apply(&self, v: &[S; 4]) -> [S; 4] {
        from_fn(|i| {
            let mut acc = S::zero();
            for j in 0..4 {
                acc = acc + self.m[i][j].clone() * v[j].clone();
            }
            acc
        })
    }

    pub fn scale(&self, t: &S) -> Self {
        SymBilinear4::from_fn(self.role, |i, j| self.m[i][j].clone() * t.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        SymBilinear4::from_fn(BilinearRole::Generic, |i, j| {
            self.m[i][j].clone() - other.m[i][j].clone()
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        SymBilinear4::from_fn(BilinearRole::Generic, |i, j| {
            self.m[i][j].clone() + other.m[i][j].clone()
        })
    }

    /// Positive definiteness by the Sylvester criterion (leading principal
    /// minors), which stays exact in rational arithmetic.
    pub fn is_positive_definite(&self) -> bool {
        let m = &self.m;
        let d1 = m[0][0].clone();
        let d2 = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[0][1].clone();
        let d3 = det3(&[
            [m[0][0].clone(), m[0][1].clone(), m[0][2].clone()],
            [m[1][0].clone(), m[1][1].clone(), m[1][2].clone()],
            [m[2][0].clone(), m[2][1].clone(), m[2][2].clone()],
        ]);
        let d4 = det4(m);
        let zero = S::zero();
        d1 > zero.clone() && d2 > zero.clone() && d3 > zero.clone() && d4 > zero
    }

    pub fn max_abs(&self) -> S {
        let mut worst = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max_val(self.m[i][j].abs());
            }
        }
        worst
    }
}

pub(crate) fn det3<S: Scalar>(m: &[[S; 3]; 3]) -> S {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

pub(crate) fn det4<S: Scalar>(m: &[[S; 4]; 4]) -> S {
    let mut acc = S::zero();
    let mut sign = S::one();
    for c in 0..4 {
        let minor: [[S; 3]; 3] = from_fn(|r| {
            let mut cols = (0..4).filter(|&cc| cc != c);
            let c0 = cols.next().unwrap();
            let c1 = cols.next().unwrap();
            let c2 = cols.next().unwrap();
            [
                m[r + 1][c0].clone(),
                m[r + 1][c1].clone(),
                m[r + 1][c2].clone(),
            ]
        });
        acc = acc + sign.clone() * m[0][c].clone() * det3(&minor);
        sign = -sign;
    }
    acc
}

/// Algebraic curvature tensor `R_ijkl` in an orthonormal frame, together
/// with the orientation flag selecting which Hodge eigenspace counts as
/// self-dual.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgCurvTensor<S> {
    c: Box<[[[[S; 4]; 4]; 4]; 4]>,
    orientation: i8,
}

impl<S: Scalar> AlgCurvTensor<S> {
    /// Builds componentwise without validating the curvature symmetries.
    pub fn from_fn_unchecked(mut f: impl FnMut(usize, usize, usize, usize) -> S) -> Self {
        let c = Box::new(from_fn(|i| {
            from_fn(|j| from_fn(|k| from_fn(|l| f(i, j, k, l))))
        }));
        AlgCurvTensor { c, orientation: 1 }
    }

    /// Builds and validates antisymmetry, pair symmetry, and the first
    /// Bianchi identity. Tensors beyond tolerance are rejected, not
    /// projected.
    pub fn try_new(f: impl FnMut(usize, usize, usize, usize) -> S) -> Result<Self, CurvError> {
        let t = Self::from_fn_unchecked(f);
        t.validate()?;
        Ok(t)
    }

    pub fn zero() -> Self {
        Self::from_fn_unchecked(|_, _, _, _| S::zero())
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn with_orientation(mut self, orientation: i8) -> Self {
        assert!(orientation == 1 || orientation == -1);
        self.orientation = orientation;
        self
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.c[i][j][k][l]
    }

    pub fn validate(&self) -> Result<(), CurvError> {
        let tol = S::tol_abs();
        let mut anti = S::zero();
        let mut pair = S::zero();
        let mut bianchi = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let r = self.c[i][j][k][l].clone();
                        anti = anti.max_val((r.clone() + self.c[j][i][k][l].clone()).abs());
                        anti = anti.max_val((r.clone() + self.c[i][j][l][k].clone()).abs());
                        pair = pair.max_val((r.clone() - self.c[k][l][i][j].clone()).abs());
                        let cyc = r + self.c[j][k][i][l].clone() + self.c[k][i][j][l].clone();
                        bianchi = bianchi.max_val(cyc.abs());
                    }
                }
            }
        }
        if anti > tol {
            return Err(CurvError::NonSymmetricInput {
                which: "antisymmetry",
                residual: anti.to_f64(),
            });
        }
        if pair > tol {
            return Err(CurvError::NonSymmetricInput {
                which: "pair symmetry",
                residual: pair.to_f64(),
            });
        }
        if bianchi > tol {
            return Err(CurvError::NonSymmetricInput {
                which: "first Bianchi",
                residual: bianchi.to_f64(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, t: &S) -> Self {
        let mut out = Self::from_fn_unchecked(|i, j, k, l| self.c[i][j][k][l].clone() * t.clone());
        out.orientation = self.orientation;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = Self::from_fn_unchecked(|i, j, k, l| {
            self.c[i][j][k][l].clone() - other.c[i][j][k][l].clone()
        });
        out.orientation = self.orientation;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::from_fn_unchecked(|i, j, k, l| {
            self.c[i][j][k][l].clone() + other.c[i][j][k][l].clone()
        });
        out.orientation = self.orientation;
        out
    }

    pub fn max_abs(&self) -> S {
        let mut worst = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        worst = worst.max_val(self.c[i][j][k][l].abs());
                    }
                }
            }
        }
        worst
    }

    /// Ricci contraction `Ric_jl = g^{ik} R_ijkl`.
    pub fn ricci(&self, metric_inv: &[[S; 4]; 4]) -> SymBilinear4<S> {
        SymBilinear4::from_fn(BilinearRole::Ricci, |j, l| {
            let mut acc = S::zero();
            for i in 0..4 {
                for k in 0..4 {
                    acc = acc + metric_inv[i][k].clone() * self.c[i][j][k][l].clone();
                }
            }
            acc
        })
    }

    /// Trace of the first/third slots against the identity,
    /// `sum_i R[i][j][i][l]`; used for the Weyl trace-freeness invariant.
    pub fn trace_13(&self) -> SymBilinear4<S> {
        SymBilinear4::from_fn(BilinearRole::Generic, |j, l| {
            let mut acc = S::zero();
            for i in 0..4 {
                acc = acc + self.c[i][j][i][l].clone();
            }
            acc
        })
    }
}

/// Which Hodge eigenspace a 3x3 block lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Duality {
    SelfDual,
    AntiSelfDual,
}

impl Duality {
    pub fn label(self) -> &'static str {
        match self {
            Duality::SelfDual => "plus",
            Duality::AntiSelfDual => "minus",
        }
    }
}

/// What a 3x3 block was extracted from; Weyl blocks must be trace-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Weyl,
    KnProduct,
    Generic,
}

/// Symmetric 3x3 block of a curvature-type operator restricted to one
/// Hodge eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Block3<S> {
    pub m: [[S; 3]; 3],
    pub duality: Duality,
    pub kind: BlockKind,
}

impl<S: Scalar> Block3<S> {
    pub fn new(m: [[S; 3]; 3], duality: Duality, kind: BlockKind) -> Self {
        Block3 { m, duality, kind }
    }

    pub fn zero(duality: Duality, kind: BlockKind) -> Self {
        Block3::new(from_fn(|_| from_fn(|_| S::zero())), duality, kind)
    }

    pub fn diag(d: [S; 3], duality: Duality, kind: BlockKind) -> Self {
        Block3::new(
            from_fn(|i| from_fn(|j| if i == j { d[i].clone() } else { S::zero() })),
            duality,
            kind,
        )
    }

    pub fn trace(&self) -> S {
        self.m[0][0].clone() + self.m[1][1].clone() + self.m[2][2].clone()
    }

    /// Frobenius norm squared; equals the eigenvalue sum of squares.
    pub fn norm2(&self) -> S {
        let mut acc = S::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + self.m[i][j].clone() * self.m[i][j].clone();
            }
        }
        acc
    }

    pub fn det(&self) -> S {
        det3(&self.m)
    }

    pub fn scale(&self, t: &S) -> Self {
        Block3::new(
            from_fn(|i| from_fn(|j| self.m[i][j].clone() * t.clone())),
            self.duality,
            self.kind,
        )
    }

    /// Checks the Weyl trace-freeness invariant for weyl-kind blocks.
    pub fn validate(&self) -> Result<(), CurvError> {
        if self.kind == BlockKind::Weyl {
            let tr = self.trace();
            if tr.abs() > S::tol_abs() {
                return Err(CurvError::NotTraceFree { trace: tr.to_f64() });
            }
        }
        Ok(())
    }
}

/// Ordered eigenvalues `w1 <= w2 <= w3` of a block.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum3<S> {
    pub w1: S,
    pub w2: S,
    pub w3: S,
}

impl<S: Scalar> Spectrum3<S> {
    pub fn new(mut w: [S; 3]) -> Self {
        w.sort_by(|a, b| a.partial_cmp(b).expect("unordered eigenvalue"));
        let [w1, w2, w3] = w;
        Spectrum3 { w1, w2, w3 }
    }

    pub fn sum(&self) -> S {
        self.w1.clone() + self.w2.clone() + self.w3.clone()
    }

    /// `sum w_i^2`, the eigenvalue-convention norm squared.
    pub fn norm2(&self) -> S {
        self.w1.clone() * self.w1.clone()
            + self.w2.clone() * self.w2.clone()
            + self.w3.clone() * self.w3.clone()
    }

    pub fn det(&self) -> S {
        self.w1.clone() * self.w2.clone() * self.w3.clone()
    }

    pub fn as_array(&self) -> [S; 3] {
        [self.w1.clone(), self.w2.clone(), self.w3.clone()]
    }
}

/// Symmetric 6x6 matrix of a curvature-type operator in the fixed
/// Lambda2 basis order (three self-dual, then three anti-self-dual).
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda2Operator<S> {
    pub m: [[S; 6]; 6],
}

impl<S: Scalar> Lambda2Operator<S> {
    pub fn zero() -> Self {
        Lambda2Operator {
            m: from_fn(|_| from_fn(|_| S::zero())),
        }
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..6 {
            acc = acc + self.m[i][i].clone();
        }
        acc
    }

    /// Frobenius norm squared of the full 6x6 matrix.
    pub fn norm2(&self) -> S {
        let mut acc = S::zero();
        for i in 0..6 {
            for j in 0..6 {
                acc = acc + self.m[i][j].clone() * self.m[i][j].clone();
            }
        }
        acc
    }

    /// Extracts the diagonal 3x3 block for one duality.
    pub fn diag_block(&self, duality: Duality, kind: BlockKind) -> Block3<S> {
        let o = match duality {
            Duality::SelfDual => 0,
            Duality::AntiSelfDual => 3,
        };
        Block3::new(
            from_fn(|i| from_fn(|j| self.m[o + i][o + j].clone())),
            duality,
            kind,
        )
    }

    /// The off-diagonal block mapping the anti-self-dual space into the
    /// self-dual space (rows plus, columns minus).
    pub fn offdiag_block(&self) -> [[S; 3]; 3] {
        from_fn(|i| from_fn(|j| self.m[i][3 + j].clone()))
    }
}

/// Full pointwise decomposition of an algebraic curvature tensor.
#[derive(Debug, Clone)]
pub struct CurvDecomp<S> {
    pub scalar: S,
    pub ricci: SymBilinear4<S>,
    pub traceless_ricci: SymBilinear4<S>,
    pub weyl_plus: Block3<S>,
    pub weyl_minus: Block3<S>,
    /// Off-diagonal traceless-Ricci block of the curvature operator.
    pub ric_block: [[S; 3]; 3],
    pub full_weyl: AlgCurvTensor<S>,
    /// The full 6x6 curvature operator the blocks were cut from.
    pub operator: Lambda2Operator<S>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_storage_mirrors() {
        let b = SymBilinear4::<f64>::from_fn(BilinearRole::Generic, |i, j| (i + 2 * j) as f64);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b.get(i, j), b.get(j, i));
            }
        }
    }

    #[test]
    fn metric_validation_rejects_degenerate() {
        let g = SymBilinear4::<f64>::diag(BilinearRole::Metric, [1.0, 1.0, 1.0, 0.0]);
        assert_eq!(g.validate(), Err(CurvError::DegenerateMetric));
        let g = SymBilinear4::<f64>::diag(BilinearRole::Metric, [1.0, 2.0, 3.0, 4.0]);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn traceless_validation() {
        let t = SymBilinear4::<f64>::diag(BilinearRole::TracelessRicci, [0.25, 0.25, -0.25, -0.25]);
        assert!(t.validate().is_ok());
        let t = SymBilinear4::<f64>::diag(BilinearRole::TracelessRicci, [1.0, 0.0, 0.0, 0.0]);
        assert!(t.validate().is_err());
    }

    #[test]
    fn asymmetric_tensor_rejected() {
        let r = AlgCurvTensor::<f64>::try_new(|i, j, k, l| {
            if (i, j, k, l) == (0, 1, 0, 1) {
                1.0
            } else {
                0.0
            }
        });
        assert!(matches!(r, Err(CurvError::NonSymmetricInput { .. })));
    }

    #[test]
    fn det4_matches_diagonal_product() {
        let m: [[f64; 4]; 4] = [
            [2.0, 0.0, 0.0, 0.0],
            [0.0, 3.0, 0.0, 0.0],
            [0.0, 0.0, 5.0, 0.0],
            [0.0, 0.0, 0.0, 7.0],
        ];
        assert_eq!(det4(&m), 210.0);
    }
}
