//! Pointwise evaluation of every inequality and pinching condition in the
//! toolkit: the sharp spectral bounds on a trace-free 3x3 spectrum, the
//! Kulkarni-Nomizu norm bound for trace-free symmetric tensors, the
//! self-dual/anti-self-dual pinching hypothesis, the two scalar pinching
//! conditions with the `sqrt(3)` normalization, and the Cauchy-Schwarz
//! coupling bound. Each check reports lhs, rhs, a signed margin
//! (nonnegative means satisfied), and an equality-case diagnosis.
//!
//! [`fuzz_inequalities`] exercises the theorem-backed bounds at scale over
//! deterministic pseudo-random inputs; any violation indicates an
//! implementation bug, never a counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::curv_algebra::{
    as_lambda2_operator, block_inner, block_norms, component_norm2, kulkarni_nomizu, Block3,
    BlockKind, CurvDecomp, Duality, Lambda2Basis, Spectrum3, SymBilinear4,
};
use crate::scalar::Scalar;

/// Margin below which a fuzz trial counts as a violation.
pub const FUZZ_VIOLATION_TOL: f64 = 1e-12;
/// Margin below which a fuzz trial counts as a near-equality hit.
pub const FUZZ_NEAR_EQUALITY: f64 = 1e-6;

/// Identifier of a pinching condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionId {
    /// `(3/2) w3^2 <= |W|^2` on a trace-free spectrum.
    Prop21a,
    /// `det W <= (1/6) w3 |W|^2 <= (sqrt6/18) |W|^3`.
    Prop21b,
    /// `|Ric0 . Ric0|^2 <= 6 |Ric0|^4` (componentwise).
    Prop22a,
    /// `4 ||(Ric0 . Ric0)+||^2 <= 6 |Ric0|^4` (projection bound).
    Prop22b,
    /// `|W+|^2 - sqrt6 |W+|^3 >= (1/2) <(Ric0 . Ric0)+, W+>`.
    Thm1Plus,
    /// Same with the anti-self-dual part.
    Thm1Minus,
    /// `|W| R <= sqrt3 (|Ric0| - R/(2 sqrt3))^2`.
    Catino12,
    /// `|W| <= gamma | |Ric0| - R/(2 sqrt3) |` for a supplied `gamma`.
    Catino13,
    /// `<(Ric0 . Ric0)+, W+> <= sqrt6 |Ric0|^2 |W+|`.
    Remark14,
}

impl ConditionId {
    pub fn label(self) -> &'static str {
        match self {
            ConditionId::Prop21a => "prop21a",
            ConditionId::Prop21b => "prop21b",
            ConditionId::Prop22a => "prop22a",
            ConditionId::Prop22b => "prop22b",
            ConditionId::Thm1Plus => "thm1_plus",
            ConditionId::Thm1Minus => "thm1_minus",
            ConditionId::Catino12 => "catino_12",
            ConditionId::Catino13 => "catino_13",
            ConditionId::Remark14 => "remark_14",
        }
    }
}

/// Outcome of one pointwise pinching check.
#[derive(Debug, Clone)]
pub struct PinchReport<S> {
    pub id: ConditionId,
    pub lhs: S,
    pub rhs: S,
    /// Signed slack, oriented so that nonnegative means satisfied.
    pub margin: S,
    pub satisfied: bool,
    /// True when the margin is within the equality tolerance.
    pub equality_flag: bool,
    /// Code describing the structural equality case, when detected
    /// (for example `"w1==w2"`).
    pub equality_diagnosis: Option<String>,
}

impl<S: Scalar> PinchReport<S> {
    fn new(id: ConditionId, lhs: S, rhs: S, margin: S) -> Self {
        let tol = S::tol_eq();
        let satisfied = margin.clone() >= -tol.clone();
        let equality_flag = margin.abs() <= tol;
        PinchReport {
            id,
            lhs,
            rhs,
            margin,
            satisfied,
            equality_flag,
            equality_diagnosis: None,
        }
    }

    fn diagnose(mut self, code: impl Into<String>, fires: bool) -> Self {
        if fires {
            self.equality_diagnosis = Some(code.into());
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PinchError {
    #[error("spectrum is not trace-free: |w1+w2+w3| = {trace}")]
    TraceNotZero { trace: f64 },
    #[error("input tensor is not trace-free: |trace| = {trace}")]
    NotTraceFree { trace: f64 },
    #[error("fuzzing needs at least one trial")]
    InvalidTrials,
}

/// Sharp spectral bounds on a trace-free ordered spectrum:
///
/// 1. `(3/2) w3^2 <= w1^2 + w2^2 + w3^2`, and
/// 2. `w1 w2 w3 <= (1/6) w3 (sum w_i^2)` chained with
///    `<= (sqrt6/18) (sum w_i^2)^{3/2}`.
///
/// Equality in either holds exactly when `w1 == w2`; the report's margin
/// for (2) is the smaller slack of the two chained bounds.
pub fn check_prop21<S: Scalar>(
    s: &Spectrum3<S>,
) -> Result<(PinchReport<S>, PinchReport<S>), PinchError> {
    let trace = s.sum();
    if trace.abs() > S::tol_abs() {
        return Err(PinchError::TraceNotZero {
            trace: trace.to_f64(),
        });
    }
    let norm2 = s.norm2();
    let w3 = s.w3.clone();
    let gap = s.w1.clone() - s.w2.clone();

    let lhs_a = S::ratio(3, 2) * w3.clone() * w3.clone();
    let margin_a = norm2.clone() - lhs_a.clone();
    let report_a = PinchReport::new(ConditionId::Prop21a, lhs_a, norm2.clone(), margin_a)
        .diagnose("w1==w2", gap.abs() <= S::tol_eq());

    let det = s.det();
    let bound_mid = S::ratio(1, 6) * w3 * norm2.clone();
    let bound_outer = (S::from_int(6) * norm2.clone().powi(3)).sqrt() * S::ratio(1, 18);
    let margin_mid = bound_mid.clone() - det.clone();
    let margin_outer = bound_outer - det.clone();
    let margin_b = margin_mid.min_val(margin_outer);
    let report_b = PinchReport::new(ConditionId::Prop21b, det, bound_mid, margin_b)
        .diagnose("w1==w2", gap.abs() <= S::tol_eq());

    Ok((report_a, report_b))
}

/// Norm bounds on the Kulkarni-Nomizu square of a trace-free symmetric
/// tensor:
///
/// 1. componentwise `|Ric0 . Ric0|^2 <= 6 |Ric0|^4`, with equality exactly
///    when `4 |Ric0^2|^2 = |Ric0|^4`;
/// 2. the self-dual projection bound
///    `4 ||(Ric0 . Ric0)+||_op^2 <= 6 |Ric0|^4` (component convention).
pub fn check_prop22<S: Scalar>(
    ric0: &SymBilinear4<S>,
    orientation: i8,
) -> Result<(PinchReport<S>, PinchReport<S>), PinchError> {
    let trace = ric0.trace();
    if trace.abs() > S::tol_abs() {
        return Err(PinchError::NotTraceFree {
            trace: trace.to_f64(),
        });
    }
    let ric0_norm2 = ric0.norm2();
    let rhs = S::from_int(6) * ric0_norm2.clone() * ric0_norm2.clone();

    let kn = kulkarni_nomizu(ric0, ric0);
    let lhs_a = component_norm2(&kn);
    let margin_a = rhs.clone() - lhs_a.clone();

    // equality case: 4 |Ric0^2|^2 == |Ric0|^4
    let sq = ric0.matrix_square();
    let eq_gap = S::from_int(4) * sq.norm2() - ric0_norm2.clone() * ric0_norm2.clone();
    let report_a = PinchReport::new(ConditionId::Prop22a, lhs_a, rhs.clone(), margin_a)
        .diagnose("4|Ric0^2|^2==|Ric0|^4", eq_gap.abs() <= S::tol_eq());

    let basis = Lambda2Basis::standard(orientation);
    let op = as_lambda2_operator(&kn, &basis).expect("standard basis is orthogonal");
    let kn_plus = op.diag_block(Duality::SelfDual, BlockKind::KnProduct);
    let kn_minus = op.diag_block(Duality::AntiSelfDual, BlockKind::KnProduct);
    let lhs_b = S::from_int(4) * kn_plus.norm2();
    let margin_b = rhs.clone() - lhs_b.clone();
    let report_b = PinchReport::new(ConditionId::Prop22b, lhs_b, rhs, margin_b)
        .diagnose("(Ric0 . Ric0)- == 0", kn_minus.norm2().abs() <= S::tol_eq());

    Ok((report_a, report_b))
}

/// The pinching hypothesis for one duality:
/// `|W|^2 - sqrt6 |W|^3 >= (1/2) <(Ric0 . Ric0)^d, W^d>`.
///
/// The cube term is evaluated as `sqrt(6 (|W|^2)^3)`, which keeps it exact
/// in rational mode whenever the radicand is a perfect square (it is on
/// every catalog model).
pub fn check_theorem1<S: Scalar>(d: &CurvDecomp<S>, duality: Duality) -> PinchReport<S> {
    let (w_block, id) = match duality {
        Duality::SelfDual => (&d.weyl_plus, ConditionId::Thm1Plus),
        Duality::AntiSelfDual => (&d.weyl_minus, ConditionId::Thm1Minus),
    };
    let w2 = w_block.norm2();
    let lhs = w2.clone() - (S::from_int(6) * w2.clone().powi(3)).sqrt();

    let kn = kulkarni_nomizu(&d.traceless_ricci, &d.traceless_ricci);
    let basis = Lambda2Basis::standard(d.full_weyl.orientation());
    let op = as_lambda2_operator(&kn, &basis).expect("standard basis is orthogonal");
    let kn_block = op.diag_block(duality, BlockKind::KnProduct);
    let rhs = S::ratio(1, 2) * block_inner(&kn_block, w_block).expect("same duality");

    let margin = lhs.clone() - rhs.clone();
    let w_is_zero = w2.abs() <= S::tol_eq();
    PinchReport::new(id, lhs, rhs, margin).diagnose("W==0", w_is_zero)
}

/// The two scalar pinching conditions:
///
/// 1. `|W| R <= sqrt3 (|Ric0| - R/(2 sqrt3))^2`, and
/// 2. `|W| <= gamma | |Ric0| - R/(2 sqrt3) |` for the supplied `gamma`
///    (meaningful for `gamma < 1 + sqrt3`; a larger value is flagged in the
///    diagnosis).
///
/// `|W|^2 = |W+|^2 + |W-|^2` in the eigenvalue convention throughout.
pub fn check_catino<S: Scalar>(d: &CurvDecomp<S>, gamma: &S) -> (PinchReport<S>, PinchReport<S>) {
    let norms = block_norms(d);
    let w_norm = norms.weyl_norm2().sqrt();
    let r = d.scalar.clone();
    let ric0_norm = norms.traceless_ricci_norm();
    let sqrt3 = S::from_int(3).sqrt();
    // |Ric0| - R/(2 sqrt3) = |Ric0| - sqrt3 R / 6
    let gap = ric0_norm - sqrt3.clone() * r.clone() * S::ratio(1, 6);

    let lhs_12 = w_norm.clone() * r;
    let rhs_12 = sqrt3 * gap.clone() * gap.clone();
    let margin_12 = rhs_12.clone() - lhs_12.clone();
    let report_12 = PinchReport::new(ConditionId::Catino12, lhs_12, rhs_12, margin_12);

    let rhs_13 = gamma.clone() * gap.abs();
    let margin_13 = rhs_13.clone() - w_norm.clone();
    let gamma_limit = S::one() + S::from_int(3).sqrt();
    let report_13 = PinchReport::new(ConditionId::Catino13, w_norm, rhs_13, margin_13).diagnose(
        "gamma >= 1+sqrt3 (condition vacuous)",
        gamma.clone() >= gamma_limit,
    );

    (report_12, report_13)
}

/// The Cauchy-Schwarz coupling bound
/// `<(Ric0 . Ric0)+, W+> <= sqrt6 |Ric0|^2 |W+|`, checked against an
/// arbitrary self-dual block.
pub fn check_remark14_parts<S: Scalar>(
    ric0: &SymBilinear4<S>,
    w_plus: &Block3<S>,
    orientation: i8,
) -> PinchReport<S> {
    let kn = kulkarni_nomizu(ric0, ric0);
    let basis = Lambda2Basis::standard(orientation);
    let op = as_lambda2_operator(&kn, &basis).expect("standard basis is orthogonal");
    let kn_plus = op.diag_block(Duality::SelfDual, BlockKind::KnProduct);
    let lhs = block_inner(&kn_plus, w_plus).expect("same duality");

    let ric0_norm2 = ric0.norm2();
    let w2 = w_plus.norm2();
    // sqrt6 |Ric0|^2 |W+| as a single radical
    let rhs = (S::from_int(6) * ric0_norm2.clone() * ric0_norm2 * w2.clone()).sqrt();
    let margin = rhs.clone() - lhs.clone();
    PinchReport::new(ConditionId::Remark14, lhs, rhs, margin).diagnose("W+==0", w2.is_zero())
}

/// [`check_remark14_parts`] applied to a decomposition's own traceless
/// Ricci tensor and self-dual Weyl block.
pub fn check_remark14<S: Scalar>(d: &CurvDecomp<S>) -> PinchReport<S> {
    check_remark14_parts(&d.traceless_ricci, &d.weyl_plus, d.full_weyl.orientation())
}

/// The ratio `<(Ric0 . Ric0)+, W+> / (|Ric0|^2 |W+|)`; `None` when the
/// denominator vanishes. Equals `sqrt6 / 3` on the sphere-times-plane
/// cylinder.
pub fn remark14_ratio<S: Scalar>(d: &CurvDecomp<S>) -> Option<S> {
    let report = check_remark14(d);
    let denom2 = d.traceless_ricci.norm2().powi(2) * d.weyl_plus.norm2();
    if denom2.is_zero() {
        return None;
    }
    Some(report.lhs / denom2.sqrt())
}

/// Aggregate outcome of a fuzzing run.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzSummary {
    pub trials: u64,
    /// Reports with margin below `-FUZZ_VIOLATION_TOL`. Always zero for a
    /// correct implementation: the bounds are theorems.
    pub violations: u64,
    /// Reports with margin below [`FUZZ_NEAR_EQUALITY`].
    pub near_equality_hits: u64,
    pub seed: u64,
    /// Smallest margin observed over all reports of all trials.
    pub worst_margin: f64,
}

const FUZZ_CHUNK: u64 = 4096;

fn mix_seed(seed: u64, chunk: u64) -> u64 {
    // splitmix64-style diffusion so chunk sub-seeds are decorrelated
    let mut z = seed ^ chunk.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Default)]
struct FuzzAccum {
    violations: u64,
    near_equality: u64,
    worst: f64,
}

impl FuzzAccum {
    fn new() -> Self {
        FuzzAccum {
            violations: 0,
            near_equality: 0,
            worst: f64::INFINITY,
        }
    }

    fn record(&mut self, margin: f64) {
        if margin < -FUZZ_VIOLATION_TOL {
            self.violations += 1;
        }
        if margin < FUZZ_NEAR_EQUALITY {
            self.near_equality += 1;
        }
        if margin < self.worst {
            self.worst = margin;
        }
    }

    fn merge(mut self, other: FuzzAccum) -> FuzzAccum {
        self.violations += other.violations;
        self.near_equality += other.near_equality;
        self.worst = self.worst.min(other.worst);
        self
    }
}

fn random_tracefree_spectrum(rng: &mut ChaCha8Rng) -> Spectrum3<f64> {
    let a: f64 = rng.gen_range(-1.0..=1.0);
    let b: f64 = rng.gen_range(-1.0..=1.0);
    let c: f64 = rng.gen_range(-1.0..=1.0);
    let mean = (a + b + c) / 3.0;
    Spectrum3::new([a - mean, b - mean, c - mean])
}

fn random_tracefree_sym4(rng: &mut ChaCha8Rng) -> SymBilinear4<f64> {
    let mut entries = [[0.0f64; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let v: f64 = rng.gen_range(-1.0..=1.0);
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    let tr = entries[0][0] + entries[1][1] + entries[2][2] + entries[3][3];
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] -= tr / 4.0;
    }
    SymBilinear4::from_fn(crate::curv_algebra::BilinearRole::TracelessRicci, |i, j| {
        entries[i][j]
    })
}

fn random_tracefree_block3(rng: &mut ChaCha8Rng) -> Block3<f64> {
    let mut m = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v: f64 = rng.gen_range(-1.0..=1.0);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    let tr = m[0][0] + m[1][1] + m[2][2];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= tr / 3.0;
    }
    Block3::new(m, Duality::SelfDual, BlockKind::Generic)
}

fn fuzz_chunk(seed: u64, chunk: u64, trials: u64) -> FuzzAccum {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, chunk));
    let mut acc = FuzzAccum::new();
    for _ in 0..trials {
        let spectrum = random_tracefree_spectrum(&mut rng);
        let (a, b) = check_prop21(&spectrum).expect("constructed trace-free");
        acc.record(a.margin);
        acc.record(b.margin);

        let ric0 = random_tracefree_sym4(&mut rng);
        let (a, b) = check_prop22(&ric0, 1).expect("constructed trace-free");
        acc.record(a.margin);
        acc.record(b.margin);

        let w_plus = random_tracefree_block3(&mut rng);
        let r = check_remark14_parts(&ric0, &w_plus, 1);
        acc.record(r.margin);
    }
    acc
}

/// Runs `trials` independent random trials of the sharp inequalities
/// (both spectral bounds, both Kulkarni-Nomizu bounds, and the coupling
/// bound). Deterministic for a fixed seed regardless of worker count:
/// trials are partitioned into fixed chunks with sub-seeds derived from
/// `(seed, chunk index)` and the aggregation is order-independent.
pub fn fuzz_inequalities(trials: u64, seed: u64) -> Result<FuzzSummary, PinchError> {
    if trials == 0 {
        return Err(PinchError::InvalidTrials);
    }
    let chunks = trials.div_ceil(FUZZ_CHUNK);
    let acc = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * FUZZ_CHUNK;
            let hi = ((chunk + 1) * FUZZ_CHUNK).min(trials);
            fuzz_chunk(seed, chunk, hi - lo)
        })
        .reduce(FuzzAccum::new, FuzzAccum::merge);
    Ok(FuzzSummary {
        trials,
        violations: acc.violations,
        near_equality_hits: acc.near_equality,
        seed,
        worst_margin: if acc.worst.is_finite() {
            acc.worst
        } else {
            0.0
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curv_algebra::{weyl_decompose, AlgCurvTensor, BilinearRole};
    use crate::scalar::Exact;

    fn ex(n: i64, d: i64) -> Exact {
        Exact::ratio(n, d)
    }

    #[test]
    fn prop21_equality_family() {
        // (-1, -1, 2): both bounds tight, diagnosis fires
        let s = Spectrum3::new([ex(-1, 1), ex(-1, 1), ex(2, 1)]);
        let (a, b) = check_prop21(&s).unwrap();
        assert_eq!(a.lhs, ex(6, 1)); // (3/2) * 4
        assert_eq!(a.rhs, ex(6, 1));
        assert!(a.margin.is_zero() && a.equality_flag && a.satisfied);
        assert_eq!(a.equality_diagnosis.as_deref(), Some("w1==w2"));
        assert_eq!(b.lhs, ex(2, 1)); // det
        assert!(b.margin.is_zero() && b.equality_flag);
    }

    #[test]
    fn prop21_zero_spectrum() {
        let s = Spectrum3::new([Exact::zero(), Exact::zero(), Exact::zero()]);
        let (a, b) = check_prop21(&s).unwrap();
        assert!(a.margin.is_zero() && b.margin.is_zero());
        assert!(a.satisfied && b.satisfied);
    }

    #[test]
    fn prop21_strict_case() {
        // (-2, 1, 1): strict in both
        let s = Spectrum3::new([-2.0, 1.0, 1.0]);
        let (a, b) = check_prop21(&s).unwrap();
        assert_eq!(a.lhs, 1.5);
        assert_eq!(a.rhs, 6.0);
        assert!(a.satisfied && !a.equality_flag);
        assert!(a.equality_diagnosis.is_none());
        assert_eq!(b.lhs, -2.0);
        assert_eq!(b.rhs, 1.0);
        assert!(b.satisfied && !b.equality_flag);
    }

    #[test]
    fn prop21_rejects_nonzero_trace() {
        let s = Spectrum3::new([1.0, 1.0, 1.0]);
        assert!(matches!(
            check_prop21(&s),
            Err(PinchError::TraceNotZero { .. })
        ));
    }

    #[test]
    fn prop22_equality_on_balanced_diagonal() {
        let ric0 = SymBilinear4::diag(
            BilinearRole::TracelessRicci,
            [ex(1, 4), ex(1, 4), ex(-1, 4), ex(-1, 4)],
        );
        let (a, _b) = check_prop22(&ric0, 1).unwrap();
        assert_eq!(a.lhs, ex(3, 8));
        assert_eq!(a.rhs, ex(3, 8)); // 6 * (1/4)^2
        assert!(a.margin.is_zero() && a.equality_flag);
        assert_eq!(
            a.equality_diagnosis.as_deref(),
            Some("4|Ric0^2|^2==|Ric0|^4")
        );
    }

    #[test]
    fn prop22_zero_input() {
        let z = SymBilinear4::<f64>::zero(BilinearRole::TracelessRicci);
        let (a, b) = check_prop22(&z, 1).unwrap();
        assert_eq!(a.margin, 0.0);
        assert_eq!(b.margin, 0.0);
        assert!(a.satisfied && b.satisfied);
    }

    #[test]
    fn prop22_strict_family() {
        // diag(3,-1,-1,-1) * t is strictly inside the bound for t != 0
        for &t in &[0.5, -0.25, 2.0] {
            let ric0 = SymBilinear4::diag(BilinearRole::TracelessRicci, [3.0 * t, -t, -t, -t]);
            let (a, _) = check_prop22(&ric0, 1).unwrap();
            // oracle: 8 sum_{i!=j} vs 6 (sum)^2 by direct evaluation
            let lam = [3.0 * t, -t, -t, -t];
            let mut comp = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        comp += 8.0 * lam[i] * lam[i] * lam[j] * lam[j];
                    }
                }
            }
            let norm2: f64 = lam.iter().map(|x| x * x).sum();
            assert!((a.lhs - comp).abs() < 1e-12 * comp.max(1.0));
            assert!((a.rhs - 6.0 * norm2 * norm2).abs() < 1e-12);
            assert!(a.margin > 1e-3 && !a.equality_flag);
        }
    }

    #[test]
    fn prop22_rejects_traceful_input() {
        let m = SymBilinear4::<f64>::identity(BilinearRole::Generic);
        assert!(matches!(
            check_prop22(&m, 1),
            Err(PinchError::NotTraceFree { .. })
        ));
    }

    fn s2xr2_decomp_exact() -> CurvDecomp<Exact> {
        let half = ex(1, 2);
        let rm = AlgCurvTensor::try_new(|i, j, k, l| match (i, j, k, l) {
            (0, 1, 0, 1) | (1, 0, 1, 0) => half.clone(),
            (0, 1, 1, 0) | (1, 0, 0, 1) => -half.clone(),
            _ => Exact::zero(),
        })
        .unwrap();
        let g = SymBilinear4::identity(BilinearRole::Metric);
        weyl_decompose(&rm, &g).unwrap()
    }

    #[test]
    fn theorem1_equality_on_cylinder() {
        let d = s2xr2_decomp_exact();
        let r = check_theorem1(&d, Duality::SelfDual);
        assert_eq!(r.lhs, ex(1, 48));
        assert_eq!(r.rhs, ex(1, 48));
        assert!(r.margin.is_zero() && r.equality_flag && r.satisfied);
    }

    #[test]
    fn theorem1_flat_is_trivial_equality() {
        let d = weyl_decompose(
            &AlgCurvTensor::<f64>::zero(),
            &SymBilinear4::identity(BilinearRole::Metric),
        )
        .unwrap();
        for duality in [Duality::SelfDual, Duality::AntiSelfDual] {
            let r = check_theorem1(&d, duality);
            assert_eq!(r.lhs, 0.0);
            assert_eq!(r.rhs, 0.0);
            assert!(r.equality_flag);
            assert_eq!(r.equality_diagnosis.as_deref(), Some("W==0"));
        }
    }

    #[test]
    fn theorem1_scaling_covariance() {
        // scaling Rm by t = 2 scales lhs as t^2 |W|^2 - t^3 sqrt6 |W|^3 and
        // rhs as t^3, exactly in f64 for a power-of-two factor
        let half = 0.5f64;
        let rm = AlgCurvTensor::try_new(|i, j, k, l| match (i, j, k, l) {
            (0, 1, 0, 1) | (1, 0, 1, 0) => half,
            (0, 1, 1, 0) | (1, 0, 0, 1) => -half,
            _ => 0.0,
        })
        .unwrap();
        let g = SymBilinear4::identity(BilinearRole::Metric);
        let d1 = weyl_decompose(&rm, &g).unwrap();
        let d2 = weyl_decompose(&rm.scale(&2.0), &g).unwrap();
        let r1 = check_theorem1(&d1, Duality::SelfDual);
        let r2 = check_theorem1(&d2, Duality::SelfDual);
        let w2 = d1.weyl_plus.norm2();
        let cube = (6.0 * w2.powi(3)).sqrt();
        assert_eq!(r2.lhs, 4.0 * w2 - 8.0 * cube);
        assert_eq!(r2.rhs, 8.0 * r1.rhs);

        // and exactly in rational arithmetic for t = 3
        let d1 = s2xr2_decomp_exact();
        let scaled = recompose_scaled(&d1, ex(3, 1));
        let d3 = weyl_decompose(&scaled, &SymBilinear4::identity(BilinearRole::Metric)).unwrap();
        let r3 = check_theorem1(&d3, Duality::SelfDual);
        let w2 = d1.weyl_plus.norm2();
        let cube = (ex(6, 1) * w2.clone().powi(3)).sqrt();
        assert_eq!(r3.lhs, ex(9, 1) * w2 - ex(27, 1) * cube);
        let r1 = check_theorem1(&d1, Duality::SelfDual);
        assert_eq!(r3.rhs, ex(27, 1) * r1.rhs);
    }

    fn recompose_scaled(d: &CurvDecomp<Exact>, t: Exact) -> AlgCurvTensor<Exact> {
        crate::curv_algebra::recompose(d).scale(&t)
    }

    #[test]
    fn catino_cylinder_values() {
        // S2 x R2: (1.2) fails with the known lhs/rhs values
        let d = s2xr2_decomp_exact();
        let gamma = ex(1, 1);
        let (r12, _r13) = check_catino(&d, &gamma);
        let lhs = r12.lhs.to_f64();
        let rhs = r12.rhs.to_f64();
        assert!((lhs - 0.28867513459481287).abs() < 1e-12);
        assert!((rhs - 0.07735026918962573).abs() < 1e-10);
        assert!(!r12.satisfied);
    }

    #[test]
    fn catino_flat_holds_trivially() {
        let d = weyl_decompose(
            &AlgCurvTensor::<f64>::zero(),
            &SymBilinear4::identity(BilinearRole::Metric),
        )
        .unwrap();
        let (r12, r13) = check_catino(&d, &1.0);
        assert!(r12.satisfied && r12.equality_flag);
        assert!(r13.satisfied && r13.equality_flag);
    }

    #[test]
    fn catino_gamma_warning() {
        let d = s2xr2_decomp_exact();
        let (_, r13) = check_catino(&d, &ex(4, 1));
        assert!(r13
            .equality_diagnosis
            .as_deref()
            .unwrap_or("")
            .contains("vacuous"));
    }

    #[test]
    fn remark14_cylinder_ratio() {
        let d = s2xr2_decomp_exact();
        let r = check_remark14(&d);
        assert_eq!(r.lhs, ex(1, 24));
        assert!(r.satisfied && !r.equality_flag);
        let ratio = remark14_ratio(&d).unwrap().to_f64();
        assert!((ratio - 6.0f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn remark14_zero_weyl() {
        let z = SymBilinear4::<f64>::zero(BilinearRole::TracelessRicci);
        let w = Block3::zero(Duality::SelfDual, BlockKind::Generic);
        let r = check_remark14_parts(&z, &w, 1);
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.rhs, 0.0);
        assert!(r.satisfied);
    }

    #[test]
    fn equality_detector_tolerances() {
        // exactly equal eigenvalues fire; a 1e-3 perturbation does not
        let s = Spectrum3::new([-1.0, -1.0, 2.0]);
        let (a, _) = check_prop21(&s).unwrap();
        assert!(a.equality_flag);
        let eps = 1e-3;
        let s = Spectrum3::new([-1.0 - eps, -1.0 + eps, 2.0]);
        let (a, _) = check_prop21(&s).unwrap();
        assert!(!a.equality_flag);
        assert!(a.equality_diagnosis.is_none());
        assert!(a.margin > 0.0);
    }

    #[test]
    fn fuzz_zero_trials_rejected() {
        assert_eq!(fuzz_inequalities(0, 7), Err(PinchError::InvalidTrials));
    }

    #[test]
    fn fuzz_small_run_clean_and_deterministic() {
        let a = fuzz_inequalities(20_000, 42).unwrap();
        assert_eq!(a.violations, 0, "worst margin {}", a.worst_margin);
        let b = fuzz_inequalities(20_000, 42).unwrap();
        assert_eq!(a, b);
        let c = fuzz_inequalities(20_000, 43).unwrap();
        assert!(a.worst_margin != c.worst_margin);
    }
}
