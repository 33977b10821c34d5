//! Scalar arithmetic abstraction: every tensor operation in this crate is
//! generic over [`Scalar`], instantiated either with `f64` (floating mode)
//! or with [`Exact`] (arbitrary-precision rational mode).
//!
//! Floating mode carries the tolerances `TOL_ABS`/`TOL_EQ`; exact mode uses
//! zero tolerance. Square roots in exact mode are computed by a scaled
//! integer square root that is exact whenever the radicand is a perfect
//! square of a rational (which covers every catalog golden value) and is
//! otherwise a deterministic ~60-digit truncation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Absolute tolerance for floating-point structural checks (symmetry,
/// trace-freeness, reconstruction residuals).
pub const TOL_ABS: f64 = 1e-10;
/// Relative tolerance for floating-point reconstruction checks.
pub const TOL_REL: f64 = 1e-10;
/// Equality-detection tolerance for pinching margins in floating mode.
pub const TOL_EQ: f64 = 1e-9;

/// Number of decimal digits carried by the exact-mode square root when the
/// radicand is not a perfect square.
const EXACT_SQRT_DIGITS: u32 = 60;

/// The scalar field the curvature algebra is built over.
///
/// Implementors: `f64` and [`Exact`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact (rational mode).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// The rational `num/den`. Panics if `den == 0`.
    fn ratio(num: i64, den: i64) -> Self;
    /// Exact conversion of a finite float (every finite float is rational).
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    /// Square root of a nonnegative scalar. Exact mode: exact on perfect
    /// squares, deterministic truncation otherwise. Panics on negative input.
    fn sqrt(&self) -> Self;

    /// Rendering for reports: exact form when compact, a marked decimal
    /// approximation otherwise (rational-mode square roots of non-perfect
    /// squares carry ~60-digit denominators).
    fn display_compact(&self) -> String {
        format!("{self}")
    }

    /// Absolute tolerance for structural residual checks: `TOL_ABS` in
    /// floating mode, zero in exact mode.
    fn tol_abs() -> Self;
    /// Equality-detection tolerance for pinching margins: `TOL_EQ` in
    /// floating mode, zero in exact mode.
    fn tol_eq() -> Self;

    /// Eigenvalues of a symmetric 3x3 matrix, ascending.
    ///
    /// `f64` uses the closed-form trigonometric solution; [`Exact`] returns
    /// exact eigenvalues whenever the spectrum is rational (verified against
    /// the elementary symmetric polynomials of the matrix).
    fn sym3_eigenvalues(m: &[[Self; 3]; 3]) -> [Self; 3];

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    fn max_val(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    fn min_val(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

/// Closed-form eigenvalues of a symmetric 3x3 `f64` matrix, ascending.
///
/// Trigonometric solution of the characteristic cubic with a guard that
/// switches to the exact two-distinct-root formulas when the normalized
/// determinant sits within `1e-14` of the repeated-root boundary. The
/// repeated-root locus is exactly the equality case of the sharp spectral
/// inequalities, so it must be hit exactly rather than through `acos`
/// rounding.
pub fn sym3_eigenvalues_f64(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if p1 == 0.0 {
        let mut w = [m[0][0], m[1][1], m[2][2]];
        w.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalue NaN"));
        return w;
    }
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let d0 = m[0][0] - q;
    let d1 = m[1][1] - q;
    let d2 = m[2][2] - q;
    let p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
    if p2 == 0.0 {
        return [q, q, q];
    }
    let p = (p2 / 6.0).sqrt();
    // det((M - qI)/p) / 2
    let b = [
        [d0 / p, m[0][1] / p, m[0][2] / p],
        [m[0][1] / p, d1 / p, m[1][2] / p],
        [m[0][2] / p, m[1][2] / p, d2 / p],
    ];
    let det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = det_b / 2.0;

    const GUARD: f64 = 1e-14;
    let (lo, hi) = if r >= 1.0 - GUARD {
        // w = (q - p, q - p, q + 2p)
        (q - p, q + 2.0 * p)
    } else if r <= -1.0 + GUARD {
        // w = (q - 2p, q + p, q + p)
        (q - 2.0 * p, q + p)
    } else {
        let phi = r.acos() / 3.0;
        let hi = q + 2.0 * p * phi.cos();
        let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3 * 2.0).cos();
        (lo, hi)
    };
    let mid = 3.0 * q - lo - hi;
    let mut w = [lo, mid, hi];
    w.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalue NaN"));
    w
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        assert!(*self >= 0.0, "sqrt of negative scalar: {self}");
        f64::sqrt(*self)
    }
    fn tol_abs() -> Self {
        TOL_ABS
    }
    fn tol_eq() -> Self {
        TOL_EQ
    }
    fn sym3_eigenvalues(m: &[[Self; 3]; 3]) -> [Self; 3] {
        sym3_eigenvalues_f64(m)
    }
}

/// Arbitrary-precision rational scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub BigRational);

impl Exact {
    pub fn new(r: BigRational) -> Self {
        Exact(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Exact conversion of a finite `f64` (every finite float is rational).
    pub fn from_f64_exact(x: f64) -> Self {
        Exact(BigRational::from_f64(x).expect("non-finite float"))
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! exact_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Exact {
            type Output = Exact;
            fn $method(self, rhs: Exact) -> Exact {
                Exact($trait::$method(self.0, rhs.0))
            }
        }
    };
}

exact_binop!(Add, add);
exact_binop!(Sub, sub);
exact_binop!(Mul, mul);
exact_binop!(Div, div);

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact(-self.0)
    }
}

/// Floor of the integer square root of a nonnegative `BigInt`.
fn isqrt(n: &BigInt) -> BigInt {
    num_integer::Roots::sqrt(n)
}

/// Square root of a nonnegative rational: exact on perfect squares,
/// otherwise truncated to [`EXACT_SQRT_DIGITS`] decimal digits (rounded to
/// nearest).
fn rational_sqrt(x: &BigRational) -> BigRational {
    assert!(!x.is_negative(), "sqrt of negative rational: {x}");
    if x.is_zero() {
        return BigRational::zero();
    }
    let scale = BigInt::from(10u32).pow(EXACT_SQRT_DIGITS);
    // sqrt(p/q) = sqrt(p*q)/q; scale the radicand so the integer sqrt
    // carries EXACT_SQRT_DIGITS digits past the exact value.
    let p = x.numer().clone();
    let q = x.denom().clone();
    let radicand = &p * &q * &scale * &scale;
    let mut root = isqrt(&radicand);
    // Round to nearest: floor sqrt s satisfies s^2 <= N < (s+1)^2.
    let up = &root + 1u32;
    if &up * &up - &radicand < &radicand - &root * &root {
        root = up;
    }
    BigRational::new(root, q * scale)
}

/// Best rational approximation of `x` by continued fractions with the
/// denominator capped at `max_den`.
pub fn rationalize(x: f64, max_den: u64) -> BigRational {
    if x == 0.0 {
        return BigRational::zero();
    }
    let negative = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0) = (BigInt::from(0u32), BigInt::from(1u32));
    let (mut p1, mut q1) = (BigInt::from(1u32), BigInt::from(0u32));
    let cap = BigInt::from(max_den);
    for _ in 0..64 {
        let a = v.floor();
        if !a.is_finite() {
            break;
        }
        let ai = BigInt::from_f64(a).expect("finite floor");
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > cap {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    let mut r = BigRational::new(p1, q1.max(BigInt::from(1u32)));
    if negative {
        r = -r;
    }
    r
}

/// Exact eigenvalues of a symmetric rational 3x3 matrix when the spectrum is
/// rational; deterministic high-precision approximation otherwise.
fn sym3_eigenvalues_exact(m: &[[Exact; 3]; 3]) -> [Exact; 3] {
    let offdiag_zero = m[0][1].0.is_zero() && m[0][2].0.is_zero() && m[1][2].0.is_zero();
    if offdiag_zero {
        let mut w = [m[0][0].clone(), m[1][1].clone(), m[2][2].clone()];
        w.sort_by(|a, b| a.0.cmp(&b.0));
        return w;
    }

    // Elementary symmetric polynomials of the true spectrum.
    let e1 = &m[0][0].0 + &m[1][1].0 + &m[2][2].0;
    let e2 = &m[0][0].0 * &m[1][1].0 + &m[0][0].0 * &m[2][2].0 + &m[1][1].0 * &m[2][2].0
        - &m[0][1].0 * &m[0][1].0
        - &m[0][2].0 * &m[0][2].0
        - &m[1][2].0 * &m[1][2].0;
    let e3 = &m[0][0].0 * (&m[1][1].0 * &m[2][2].0 - &m[1][2].0 * &m[1][2].0)
        - &m[0][1].0 * (&m[0][1].0 * &m[2][2].0 - &m[1][2].0 * &m[0][2].0)
        + &m[0][2].0 * (&m[0][1].0 * &m[1][2].0 - &m[1][1].0 * &m[0][2].0);

    let approx = sym3_eigenvalues_f64(&[
        [m[0][0].to_f64(), m[0][1].to_f64(), m[0][2].to_f64()],
        [m[0][1].to_f64(), m[1][1].to_f64(), m[1][2].to_f64()],
        [m[0][2].to_f64(), m[1][2].to_f64(), m[2][2].to_f64()],
    ]);

    // Rationalize the float approximations and accept them only when they
    // reproduce all three symmetric polynomials exactly.
    let cand: Vec<BigRational> = approx
        .iter()
        .map(|&w| rationalize(w, 1_000_000_000_000))
        .collect();
    let c1 = &cand[0] + &cand[1] + &cand[2];
    let c2 = &cand[0] * &cand[1] + &cand[0] * &cand[2] + &cand[1] * &cand[2];
    let c3 = &cand[0] * &cand[1] * &cand[2];
    if c1 == e1 && c2 == e2 && c3 == e3 {
        let mut w = [
            Exact(cand[0].clone()),
            Exact(cand[1].clone()),
            Exact(cand[2].clone()),
        ];
        w.sort_by(|a, b| a.0.cmp(&b.0));
        return w;
    }

    // Irrational spectrum: fall back to the float solution, converted
    // exactly so the result is still deterministic.
    let mut w = [
        Exact::from_f64_exact(approx[0]),
        Exact::from_f64_exact(approx[1]),
        Exact::from_f64_exact(approx[2]),
    ];
    w.sort_by(|a, b| a.0.cmp(&b.0));
    w
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact(BigRational::zero())
    }
    fn one() -> Self {
        Exact(BigRational::from_integer(BigInt::from(1u32)))
    }
    fn from_int(n: i64) -> Self {
        Exact(BigRational::from_integer(BigInt::from(n)))
    }
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
    fn from_f64(x: f64) -> Self {
        Exact::from_f64_exact(x)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn abs(&self) -> Self {
        Exact(self.0.abs())
    }
    fn sqrt(&self) -> Self {
        Exact(rational_sqrt(&self.0))
    }
    fn tol_abs() -> Self {
        Self::zero()
    }
    fn tol_eq() -> Self {
        Self::zero()
    }
    fn sym3_eigenvalues(m: &[[Self; 3]; 3]) -> [Self; 3] {
        sym3_eigenvalues_exact(m)
    }
    fn display_compact(&self) -> String {
        // truncated square roots produce enormous reduced denominators;
        // those are approximations already, so print them as such
        if self.0.denom().to_string().len() <= 12 {
            format!("{}", self.0)
        } else {
            format!("~{:.15e}", self.to_f64())
        }
    }
}
