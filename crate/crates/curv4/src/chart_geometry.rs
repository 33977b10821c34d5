//! Independent finite-difference oracle: recovers Christoffel symbols, the
//! full curvature tensor, Ricci, scalar curvature, the Cotton tensor, and
//! drifted Laplacians from raw coordinate-metric grids, and fits
//! scalar-curvature growth hypotheses.
//!
//! All stencils are second-order central differences; nodes within the
//! stencil half-width of the boundary are excluded from every report
//! rather than switched to one-sided stencils, so the error order is
//! uniform across reported nodes. Fields are stored full-size with NaN
//! outside the valid margin, and NaN poisoning propagates through any
//! stencil that touches an invalid node.
//!
//! Raw finite-difference curvature satisfies the first Bianchi identity
//! identically but violates the pair symmetry at truncation order. Each
//! node's tensor is therefore converted to the orthonormal frame (via the
//! symmetric square root of the metric), projected through its two-form
//! operator matrix, and re-expanded; the operator asymmetry consumed by
//! that projection is recorded per node as `symmetry_residual` and shrinks
//! at the same O(h^2) rate as the curvature error itself.

use std::array::from_fn;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::curv_algebra::{
    curvature_from_operator, spectrum3, weyl_decompose, AlgCurvTensor, BilinearRole, CurvDecomp,
    Lambda2Basis, Lambda2Operator, SymBilinear4,
};

/// Rank-four component array in coordinate indices.
pub type Tensor4 = [[[[f64; 4]; 4]; 4]; 4];

/// Stencil half-width needed for curvature (one derivative for the
/// Christoffel field, one more for its derivatives).
pub const CURVATURE_MARGIN: usize = 2;
/// Cotton and covariant-Ricci-derivative reports need one further
/// derivative of the Ricci field.
pub const COTTON_MARGIN: usize = 3;
/// Gradient magnitude below which a node does not support the
/// `|grad Ric| / |grad f|` quotient.
pub const GRAD_SUPPORT_TOL: f64 = 1e-8;
/// Default cap on the additive constant in the growth fit; see
/// [`fit_growth`].
pub const DEFAULT_A_CAP: f64 = 2.0;
/// Reported lower clamp for the fitted additive constant (the hypothesis
/// requires it strictly positive, but a scalar-flat chart needs none).
pub const A_HAT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChartError {
    #[error("malformed chart file (line {line}): {msg}")]
    Malformed { line: usize, msg: String },
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("metric is not positive definite at node {node}")]
    MetricNotPositiveDefinite { node: usize },
    #[error("chart carries no potential samples")]
    MissingPotential,
}

/// One coordinate axis of a chart grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count }
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.count as f64 - 1.0)
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.min + self.spacing() * i as f64
    }
}

/// Upper-triangle storage order for symmetric 4x4 node data.
pub const UPPER_TRIANGLE: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

fn tri_index(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    // offset of row a in the packed upper triangle
    let row_start = [0usize, 4, 7, 9][a];
    row_start + (b - a)
}

/// Gridded coordinate metric, with optional potential samples.
///
/// Nodes are stored in row-major axis order (axis 0 slowest); metric
/// components are coordinate components, not frame components.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricChart {
    pub axes: [Axis; 4],
    g: Vec<[f64; 10]>,
    f: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Grid {
    pub n: [usize; 4],
    pub h: [f64; 4],
    pub strides: [usize; 4],
}

impl Grid {
    fn of(axes: &[Axis; 4]) -> Grid {
        let n = from_fn(|a| axes[a].count);
        let h = from_fn(|a| axes[a].spacing());
        let strides = [n[1] * n[2] * n[3], n[2] * n[3], n[3], 1];
        Grid { n, h, strides }
    }

    pub fn len(&self) -> usize {
        self.n.iter().product()
    }

    pub fn flat(&self, c: [usize; 4]) -> usize {
        c[0] * self.strides[0] + c[1] * self.strides[1] + c[2] * self.strides[2] + c[3]
    }

    pub fn coords(&self, mut idx: usize) -> [usize; 4] {
        let mut c = [0usize; 4];
        for a in 0..4 {
            c[a] = idx / self.strides[a];
            idx %= self.strides[a];
        }
        c
    }

    /// Flattened indices of all nodes at least `margin` from every face.
    pub fn interior(&self, margin: usize) -> Vec<usize> {
        for a in 0..4 {
            if self.n[a] < 2 * margin + 1 {
                return Vec::new();
            }
        }
        let mut out = Vec::new();
        for i0 in margin..self.n[0] - margin {
            for i1 in margin..self.n[1] - margin {
                for i2 in margin..self.n[2] - margin {
                    for i3 in margin..self.n[3] - margin {
                        out.push(self.flat([i0, i1, i2, i3]));
                    }
                }
            }
        }
        out
    }

    pub fn is_interior(&self, idx: usize, margin: usize) -> bool {
        let c = self.coords(idx);
        (0..4).all(|a| c[a] >= margin && c[a] + margin < self.n[a])
    }
}

impl MetricChart {
    pub fn new(
        axes: [Axis; 4],
        g: Vec<[f64; 10]>,
        f: Option<Vec<f64>>,
    ) -> Result<Self, ChartError> {
        let grid = Grid::of(&axes);
        for (a, ax) in axes.iter().enumerate() {
            if ax.count < 5 {
                return Err(ChartError::GridTooCoarse(format!(
                    "axis {a} has {} nodes; central stencils need at least 5",
                    ax.count
                )));
            }
            if ax.max.partial_cmp(&ax.min) != Some(std::cmp::Ordering::Greater) {
                return Err(ChartError::GridTooCoarse(format!(
                    "axis {a} has empty range [{}, {}]",
                    ax.min, ax.max
                )));
            }
        }
        if g.len() != grid.len() {
            return Err(ChartError::Malformed {
                line: 0,
                msg: format!("expected {} metric rows, got {}", grid.len(), g.len()),
            });
        }
        if let Some(f) = &f {
            if f.len() != grid.len() {
                return Err(ChartError::Malformed {
                    line: 0,
                    msg: format!("expected {} potential rows, got {}", grid.len(), f.len()),
                });
            }
        }
        let chart = MetricChart { axes, g, f };
        for idx in 0..grid.len() {
            if !is_positive_definite4(&chart.metric_at(idx)) {
                return Err(ChartError::MetricNotPositiveDefinite { node: idx });
            }
        }
        Ok(chart)
    }

    pub(crate) fn grid(&self) -> Grid {
        Grid::of(&self.axes)
    }

    pub fn node_count(&self) -> usize {
        self.grid().len()
    }

    pub fn has_potential(&self) -> bool {
        self.f.is_some()
    }

    pub fn potential(&self) -> Option<&[f64]> {
        self.f.as_deref()
    }

    pub fn metric_at(&self, idx: usize) -> [[f64; 4]; 4] {
        let packed = &self.g[idx];
        from_fn(|i| from_fn(|j| packed[tri_index(i, j)]))
    }

    pub fn coords_of(&self, idx: usize) -> [f64; 4] {
        let c = self.grid().coords(idx);
        from_fn(|a| self.axes[a].coord(c[a]))
    }

    /// Parses the `CURV4-CHART v1` text format.
    pub fn parse(text: &str) -> Result<Self, ChartError> {
        let mut lines = text.lines().enumerate();
        let (n, header) = lines.next().ok_or(ChartError::Malformed {
            line: 1,
            msg: "empty file".into(),
        })?;
        if header.trim() != "CURV4-CHART v1" {
            return Err(ChartError::Malformed {
                line: n + 1,
                msg: format!("expected 'CURV4-CHART v1' header, got '{}'", header.trim()),
            });
        }

        let (n, axes_line) = lines.next().ok_or(ChartError::Malformed {
            line: 2,
            msg: "missing axes line".into(),
        })?;
        let tokens: Vec<&str> = axes_line.split_whitespace().collect();
        if tokens.len() != 13 || tokens[0] != "axes" {
            return Err(ChartError::Malformed {
                line: n + 1,
                msg: "axes line must be 'axes' followed by four 'min max count' triples".into(),
            });
        }
        let mut axes = [Axis::new(0.0, 1.0, 5); 4];
        for a in 0..4 {
            let min: f64 = parse_num(tokens[1 + 3 * a], n + 1)?;
            let max: f64 = parse_num(tokens[2 + 3 * a], n + 1)?;
            let count: usize = tokens[3 + 3 * a]
                .parse()
                .map_err(|_| ChartError::Malformed {
                    line: n + 1,
                    msg: format!("bad node count '{}'", tokens[3 + 3 * a]),
                })?;
            axes[a] = Axis::new(min, max, count);
        }

        let (n, fields_line) = lines.next().ok_or(ChartError::Malformed {
            line: 3,
            msg: "missing fields line".into(),
        })?;
        let tokens: Vec<&str> = fields_line.split_whitespace().collect();
        let has_f = match tokens.as_slice() {
            ["fields", "g[10]", "f[0]"] => false,
            ["fields", "g[10]", "f[1]"] => true,
            _ => {
                return Err(ChartError::Malformed {
                    line: n + 1,
                    msg: "fields line must be 'fields g[10] f[0|1]'".into(),
                })
            }
        };

        let expected: usize = axes.iter().map(|a| a.count).product();
        let per_line = if has_f { 11 } else { 10 };
        let mut g = Vec::with_capacity(expected);
        let mut f = if has_f {
            Some(Vec::with_capacity(expected))
        } else {
            None
        };
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let vals: Result<Vec<f64>, _> = line
                .split_whitespace()
                .map(|t| parse_num(t, n + 1))
                .collect();
            let vals = vals?;
            if vals.len() != per_line {
                return Err(ChartError::Malformed {
                    line: n + 1,
                    msg: format!("expected {per_line} values per node, got {}", vals.len()),
                });
            }
            let mut packed = [0.0; 10];
            packed.copy_from_slice(&vals[..10]);
            g.push(packed);
            if let Some(f) = f.as_mut() {
                f.push(vals[10]);
            }
        }
        if g.len() != expected {
            return Err(ChartError::Malformed {
                line: 0,
                msg: format!("expected {expected} node lines, got {}", g.len()),
            });
        }
        MetricChart::new(axes, g, f)
    }

    /// Writes the `CURV4-CHART v1` text format.
    pub fn write(&self) -> String {
        let mut out = String::new();
        out.push_str("CURV4-CHART v1\n");
        out.push_str("axes");
        for a in &self.axes {
            let _ = write!(out, " {} {} {}", a.min, a.max, a.count);
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "fields g[10] f[{}]",
            if self.f.is_some() { 1 } else { 0 }
        );
        for idx in 0..self.node_count() {
            let packed = &self.g[idx];
            for (k, v) in packed.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{v}");
            }
            if let Some(f) = &self.f {
                let _ = write!(out, " {}", f[idx]);
            }
            out.push('\n');
        }
        out
    }
}

fn parse_num(token: &str, line: usize) -> Result<f64, ChartError> {
    token.parse().map_err(|_| ChartError::Malformed {
        line,
        msg: format!("bad number '{token}'"),
    })
}

// ---------------------------------------------------------------------
// small dense linear algebra on f64
// ---------------------------------------------------------------------

fn is_positive_definite4(m: &[[f64; 4]; 4]) -> bool {
    // Cholesky without pivoting; fails exactly when not PD
    let mut l = [[0.0f64; 4]; 4];
    for i in 0..4 {
        for j in 0..=i {
            let mut sum = m[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return false;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    true
}

fn invert4(m: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    // Gauss-Jordan with partial pivoting
    let mut a = *m;
    let mut inv: [[f64; 4]; 4] = from_fn(|i| from_fn(|j| if i == j { 1.0 } else { 0.0 }));
    for col in 0..4 {
        let mut pivot = col;
        for r in col + 1..4 {
            if a[r][col].abs() > a[pivot][col].abs() {
                pivot = r;
            }
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col];
        for j in 0..4 {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..4 {
            if r != col {
                let factor = a[r][col];
                for j in 0..4 {
                    a[r][j] -= factor * a[col][j];
                    inv[r][j] -= factor * inv[col][j];
                }
            }
        }
    }
    inv
}

/// Eigen-decomposition of a symmetric 4x4 matrix by cyclic Jacobi
/// rotations; returns ascending eigenvalues and matching eigenvector
/// columns.
pub(crate) fn jacobi4(m: &[[f64; 4]; 4]) -> ([f64; 4], [[f64; 4]; 4]) {
    let mut a = *m;
    let mut v: [[f64; 4]; 4] = from_fn(|i| from_fn(|j| if i == j { 1.0 } else { 0.0 }));
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for i in 0..4 {
            for j in i + 1..4 {
                off = off.max(a[i][j].abs());
            }
        }
        if off < 1e-14 {
            break;
        }
        for p in 0..4 {
            for q in p + 1..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..4 {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&x, &y| a[x][x].partial_cmp(&a[y][y]).expect("NaN eigenvalue"));
    let eigs = from_fn(|k| a[order[k]][order[k]]);
    let vecs = from_fn(|i| from_fn(|k| v[i][order[k]]));
    (eigs, vecs)
}

/// Inverse symmetric square root of a positive-definite metric; the
/// deterministic per-node orthonormal frame.
fn inv_sqrt_metric(g: &[[f64; 4]; 4], node: usize) -> Result<[[f64; 4]; 4], ChartError> {
    let (eigs, vecs) = jacobi4(g);
    if eigs[0] <= 0.0 {
        return Err(ChartError::MetricNotPositiveDefinite { node });
    }
    let inv_roots: [f64; 4] = from_fn(|k| 1.0 / eigs[k].sqrt());
    Ok(from_fn(|i| {
        from_fn(|j| {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += vecs[i][k] * inv_roots[k] * vecs[j][k];
            }
            acc
        })
    }))
}

// ---------------------------------------------------------------------
// curvature pipeline
// ---------------------------------------------------------------------

/// Per-node outputs of the finite-difference curvature pipeline, stored as
/// full-size fields with NaN outside the valid margin.
#[derive(Debug, Clone)]
pub struct ChartCurvature {
    pub margin: usize,
    /// Nodes at which curvature was evaluated.
    pub interior: Vec<usize>,
    /// Scalar curvature.
    pub scalar: Vec<f64>,
    /// Lowered coordinate Ricci components (upper triangle), for covariant
    /// derivative stencils.
    pub ricci_coord: Vec<[f64; 10]>,
    /// Ascending eigenvalues of the frame Ricci endomorphism.
    pub ricci_eigs: Vec<[f64; 4]>,
    /// Ascending self-dual Weyl spectrum.
    pub weyl_plus_spec: Vec<[f64; 3]>,
    /// Ascending anti-self-dual Weyl spectrum.
    pub weyl_minus_spec: Vec<[f64; 3]>,
    /// Frobenius norm squared of the full curvature operator matrix.
    pub rm_op_norm2: Vec<f64>,
    /// Eigenvalue-convention norm squared of the frame traceless Ricci.
    pub ric0_norm2: Vec<f64>,
    /// Operator asymmetry consumed by the symmetry projection; an O(h^2)
    /// convergence diagnostic.
    pub symmetry_residual: Vec<f64>,
    /// Christoffel symbols `Gamma^i_{jk}` flattened as `i*16 + j*4 + k`,
    /// valid at margin 1.
    pub christoffels: Vec<[f64; 64]>,
}

fn christoffel_field(chart: &MetricChart, grid: &Grid) -> Vec<[f64; 64]> {
    let nan = [f64::NAN; 64];
    let mut out = vec![nan; grid.len()];
    let interior = grid.interior(1);
    let computed: Vec<(usize, [f64; 64])> = interior
        .par_iter()
        .map(|&idx| {
            let g = chart.metric_at(idx);
            let ginv = invert4(&g);
            // dg[a][i][j] = d g_ij / d x^a
            let mut dg = [[[0.0f64; 4]; 4]; 4];
            for a in 0..4 {
                let plus = chart.metric_at(idx + grid.strides[a]);
                let minus = chart.metric_at(idx - grid.strides[a]);
                let inv2h = 1.0 / (2.0 * grid.h[a]);
                for i in 0..4 {
                    for j in 0..4 {
                        dg[a][i][j] = (plus[i][j] - minus[i][j]) * inv2h;
                    }
                }
            }
            let mut gamma = [0.0f64; 64];
            for m in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let mut acc = 0.0;
                        for i in 0..4 {
                            acc += ginv[m][i] * (dg[j][i][k] + dg[k][i][j] - dg[i][j][k]);
                        }
                        gamma[m * 16 + j * 4 + k] = 0.5 * acc;
                    }
                }
            }
            (idx, gamma)
        })
        .collect();
    for (idx, gamma) in computed {
        out[idx] = gamma;
    }
    out
}

/// Raw lowered coordinate curvature at a margin-2 node from the
/// Christoffel field:
/// `R^i_jkl = d_k G^i_lj - d_l G^i_kj + G^i_km G^m_lj - G^i_lm G^m_kj`,
/// then `R_ijkl = g_im R^m_jkl`.
fn riemann_coord_at(
    chart: &MetricChart,
    grid: &Grid,
    chris: &[[f64; 64]],
    idx: usize,
) -> (Tensor4, [[f64; 4]; 4]) {
    let gamma = &chris[idx];
    let mut dgamma = [[0.0f64; 64]; 4];
    for a in 0..4 {
        let plus = &chris[idx + grid.strides[a]];
        let minus = &chris[idx - grid.strides[a]];
        let inv2h = 1.0 / (2.0 * grid.h[a]);
        for e in 0..64 {
            dgamma[a][e] = (plus[e] - minus[e]) * inv2h;
        }
    }
    let gm = |i: usize, j: usize, k: usize| gamma[i * 16 + j * 4 + k];
    let dgm = |a: usize, i: usize, j: usize, k: usize| dgamma[a][i * 16 + j * 4 + k];

    let mut upper = [[[[0.0f64; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = dgm(k, i, l, j) - dgm(l, i, k, j);
                    for m in 0..4 {
                        acc += gm(i, k, m) * gm(m, l, j) - gm(i, l, m) * gm(m, k, j);
                    }
                    upper[i][j][k][l] = acc;
                }
            }
        }
    }

    let g = chart.metric_at(idx);
    let mut lower = [[[[0.0f64; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = 0.0;
                    for m in 0..4 {
                        acc += g[i][m] * upper[m][j][k][l];
                    }
                    lower[i][j][k][l] = acc;
                }
            }
        }
    }

    // coordinate Ricci from the unlowered tensor: Ric_jl = R^i_jil
    let ricci: [[f64; 4]; 4] = from_fn(|j| {
        from_fn(|l| {
            let mut acc = 0.0;
            for i in 0..4 {
                acc += upper[i][j][i][l];
            }
            acc
        })
    });
    (lower, ricci)
}

/// Converts a lowered coordinate tensor to the orthonormal frame defined
/// by the inverse symmetric square root of the metric.
fn to_frame(lower: &Tensor4, sinv: &[[f64; 4]; 4]) -> Tensor4 {
    // contract one index at a time
    let mut t1 = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = 0.0;
                    for i in 0..4 {
                        acc += sinv[i][a] * lower[i][j][k][l];
                    }
                    t1[a][j][k][l] = acc;
                }
            }
        }
    }
    let mut t2 = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = 0.0;
                    for j in 0..4 {
                        acc += sinv[j][b] * t1[a][j][k][l];
                    }
                    t2[a][b][k][l] = acc;
                }
            }
        }
    }
    let mut t3 = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for l in 0..4 {
                    let mut acc = 0.0;
                    for k in 0..4 {
                        acc += sinv[k][c] * t2[a][b][k][l];
                    }
                    t3[a][b][c][l] = acc;
                }
            }
        }
    }
    let mut t4 = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut acc = 0.0;
                    for l in 0..4 {
                        acc += sinv[l][d] * t3[a][b][c][l];
                    }
                    t4[a][b][c][d] = acc;
                }
            }
        }
    }
    t4
}

/// Projects raw frame components onto an exactly-symmetric curvature
/// tensor through the two-form operator matrix; returns the cleaned
/// tensor and the asymmetry consumed.
fn project_curvature(raw: &Tensor4) -> (AlgCurvTensor<f64>, f64) {
    let basis = Lambda2Basis::<f64>::standard(1);
    let mut m = [[0.0f64; 6]; 6];
    for (a, row) in m.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let wa = basis.bivector(a);
            let wb = basis.bivector(b);
            let mut acc = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    if wb[i][j] == 0.0 {
                        continue;
                    }
                    for k in 0..4 {
                        for l in 0..4 {
                            if wa[k][l] == 0.0 {
                                continue;
                            }
                            acc += raw[i][j][k][l] * wa[k][l] * wb[i][j];
                        }
                    }
                }
            }
            *entry = acc / 8.0;
        }
    }
    let mut asym = 0.0f64;
    let mut sym = [[0.0f64; 6]; 6];
    for a in 0..6 {
        for b in 0..6 {
            asym = asym.max((m[a][b] - m[b][a]).abs());
            sym[a][b] = 0.5 * (m[a][b] + m[b][a]);
        }
    }
    let rm = curvature_from_operator(&Lambda2Operator { m: sym }, &basis);
    (rm, asym)
}

/// Runs the full finite-difference curvature pipeline over the chart.
pub fn curvature_from_chart(chart: &MetricChart) -> Result<ChartCurvature, ChartError> {
    let grid = chart.grid();
    let interior = grid.interior(CURVATURE_MARGIN);
    if interior.is_empty() {
        return Err(ChartError::GridTooCoarse(
            "no interior nodes at curvature margin".into(),
        ));
    }
    let chris = christoffel_field(chart, &grid);

    struct NodeOut {
        idx: usize,
        scalar: f64,
        ricci_coord: [f64; 10],
        ricci_eigs: [f64; 4],
        wp: [f64; 3],
        wm: [f64; 3],
        op2: f64,
        ric02: f64,
        sym_res: f64,
    }

    let results: Vec<Result<NodeOut, ChartError>> = interior
        .par_iter()
        .map(|&idx| {
            let (lower, ricci_c) = riemann_coord_at(chart, &grid, &chris, idx);
            let sinv = inv_sqrt_metric(&chart.metric_at(idx), idx)?;
            let frame_raw = to_frame(&lower, &sinv);
            let (rm, sym_res) = project_curvature(&frame_raw);
            let id = SymBilinear4::identity(BilinearRole::Metric);
            let d = weyl_decompose(&rm, &id).map_err(|e| ChartError::Malformed {
                line: 0,
                msg: format!("internal: projected tensor rejected at node {idx}: {e}"),
            })?;
            let ric_frame: [[f64; 4]; 4] = from_fn(|i| from_fn(|j| *d.ricci.get(i, j)));
            let (ricci_eigs, _) = jacobi4(&ric_frame);
            let wp = spectrum3(&d.weyl_plus).as_array();
            let wm = spectrum3(&d.weyl_minus).as_array();
            let mut packed = [0.0f64; 10];
            for (k, &(i, j)) in UPPER_TRIANGLE.iter().enumerate() {
                packed[k] = 0.5 * (ricci_c[i][j] + ricci_c[j][i]);
            }
            Ok(NodeOut {
                idx,
                scalar: d.scalar,
                ricci_coord: packed,
                ricci_eigs,
                wp,
                wm,
                op2: d.operator.norm2(),
                ric02: d.traceless_ricci.norm2(),
                sym_res,
            })
        })
        .collect();

    let len = grid.len();
    let mut out = ChartCurvature {
        margin: CURVATURE_MARGIN,
        interior: interior.clone(),
        scalar: vec![f64::NAN; len],
        ricci_coord: vec![[f64::NAN; 10]; len],
        ricci_eigs: vec![[f64::NAN; 4]; len],
        weyl_plus_spec: vec![[f64::NAN; 3]; len],
        weyl_minus_spec: vec![[f64::NAN; 3]; len],
        rm_op_norm2: vec![f64::NAN; len],
        ric0_norm2: vec![f64::NAN; len],
        symmetry_residual: vec![f64::NAN; len],
        christoffels: chris,
    };
    for r in results {
        let r = r?;
        out.scalar[r.idx] = r.scalar;
        out.ricci_coord[r.idx] = r.ricci_coord;
        out.ricci_eigs[r.idx] = r.ricci_eigs;
        out.weyl_plus_spec[r.idx] = r.wp;
        out.weyl_minus_spec[r.idx] = r.wm;
        out.rm_op_norm2[r.idx] = r.op2;
        out.ric0_norm2[r.idx] = r.ric02;
        out.symmetry_residual[r.idx] = r.sym_res;
    }
    Ok(out)
}

impl ChartCurvature {
    /// Recomputes the cleaned orthonormal-frame curvature tensor at one
    /// node; `None` outside the curvature margin.
    pub fn rm_frame_at(&self, chart: &MetricChart, idx: usize) -> Option<AlgCurvTensor<f64>> {
        let grid = chart.grid();
        if !grid.is_interior(idx, CURVATURE_MARGIN) {
            return None;
        }
        let (lower, _) = riemann_coord_at(chart, &grid, &self.christoffels, idx);
        let sinv = inv_sqrt_metric(&chart.metric_at(idx), idx).ok()?;
        let frame_raw = to_frame(&lower, &sinv);
        Some(project_curvature(&frame_raw).0)
    }

    /// Full Weyl decomposition at one node.
    pub fn decompose_at(&self, chart: &MetricChart, idx: usize) -> Option<CurvDecomp<f64>> {
        let rm = self.rm_frame_at(chart, idx)?;
        let id = SymBilinear4::identity(BilinearRole::Metric);
        weyl_decompose(&rm, &id).ok()
    }

    /// Frame Frobenius norm of Ricci at a node (invariant).
    pub fn ricci_norm(&self, idx: usize) -> f64 {
        self.ricci_eigs[idx]
            .iter()
            .map(|e| e * e)
            .sum::<f64>()
            .sqrt()
    }

    /// Operator Frobenius norm of the full curvature operator at a node.
    pub fn rm_op_norm(&self, idx: usize) -> f64 {
        self.rm_op_norm2[idx].sqrt()
    }
}

// ---------------------------------------------------------------------
// covariant derivatives, Cotton tensor, drifted Laplacian
// ---------------------------------------------------------------------

fn scalar_gradient(grid: &Grid, field: &[f64], idx: usize) -> [f64; 4] {
    from_fn(|a| (field[idx + grid.strides[a]] - field[idx - grid.strides[a]]) / (2.0 * grid.h[a]))
}

/// Covariant derivative of the (symmetric, packed) Ricci field:
/// `T_abc = d_a Ric_bc - G^m_ab Ric_mc - G^m_ac Ric_bm`.
fn ricci_covariant_derivative(
    grid: &Grid,
    ricci: &[[f64; 10]],
    chris: &[[f64; 64]],
    idx: usize,
) -> [[[f64; 4]; 4]; 4] {
    let gamma = &chris[idx];
    let gm = |i: usize, j: usize, k: usize| gamma[i * 16 + j * 4 + k];
    let ric = |node: usize, i: usize, j: usize| ricci[node][tri_index(i, j)];
    from_fn(|a| {
        from_fn(|b| {
            from_fn(|c| {
                let d = (ric(idx + grid.strides[a], b, c) - ric(idx - grid.strides[a], b, c))
                    / (2.0 * grid.h[a]);
                let mut acc = d;
                for m in 0..4 {
                    acc -= gm(m, a, b) * ric(idx, m, c) + gm(m, a, c) * ric(idx, b, m);
                }
                acc
            })
        })
    })
}

fn invariant_norm2_rank3(t: &[[[f64; 4]; 4]; 4], ginv: &[[f64; 4]; 4]) -> f64 {
    // contract one slot at a time
    let mut t1 = [[[0.0f64; 4]; 4]; 4];
    for x in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let mut acc = 0.0;
                for a in 0..4 {
                    acc += ginv[a][x] * t[a][b][c];
                }
                t1[x][b][c] = acc;
            }
        }
    }
    let mut t2 = [[[0.0f64; 4]; 4]; 4];
    for x in 0..4 {
        for y in 0..4 {
            for c in 0..4 {
                let mut acc = 0.0;
                for b in 0..4 {
                    acc += ginv[b][y] * t1[x][b][c];
                }
                t2[x][y][c] = acc;
            }
        }
    }
    let mut acc = 0.0;
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                for c in 0..4 {
                    acc += ginv[c][z] * t2[x][y][c] * t[x][y][z];
                }
            }
        }
    }
    acc
}

/// Per-node Cotton tensor values at the Cotton margin.
#[derive(Debug, Clone)]
pub struct CottonField {
    pub margin: usize,
    pub interior: Vec<usize>,
    /// `C_ijk` per interior node, aligned with `interior`.
    pub values: Vec<[[[f64; 4]; 4]; 4]>,
    /// Invariant norm `|C|` per interior node.
    pub norms: Vec<f64>,
}

impl CottonField {
    pub fn max_norm(&self) -> f64 {
        self.norms.iter().cloned().fold(0.0, f64::max)
    }
}

/// Cotton tensor
/// `C_ijk = grad_i Ric_jk - grad_j Ric_ik - (1/6)(grad_i R g_jk - grad_j R g_ik)`
/// from the chart's Ricci and scalar fields.
pub fn cotton_tensor_with(
    chart: &MetricChart,
    curv: &ChartCurvature,
) -> Result<CottonField, ChartError> {
    let grid = chart.grid();
    let interior = grid.interior(COTTON_MARGIN);
    if interior.is_empty() {
        return Err(ChartError::GridTooCoarse(
            "no interior nodes at cotton margin".into(),
        ));
    }
    let results: Vec<([[[f64; 4]; 4]; 4], f64)> = interior
        .par_iter()
        .map(|&idx| {
            let g = chart.metric_at(idx);
            let ginv = invert4(&g);
            let grad_ric =
                ricci_covariant_derivative(&grid, &curv.ricci_coord, &curv.christoffels, idx);
            let grad_r = scalar_gradient(&grid, &curv.scalar, idx);
            let mut c = [[[0.0f64; 4]; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        c[i][j][k] = grad_ric[i][j][k]
                            - grad_ric[j][i][k]
                            - (grad_r[i] * g[j][k] - grad_r[j] * g[i][k]) / 6.0;
                    }
                }
            }
            let norm = invariant_norm2_rank3(&c, &ginv).max(0.0).sqrt();
            (c, norm)
        })
        .collect();
    let (values, norms) = results.into_iter().unzip();
    Ok(CottonField {
        margin: COTTON_MARGIN,
        interior,
        values,
        norms,
    })
}

/// [`cotton_tensor_with`] including the curvature pass.
pub fn cotton_tensor(chart: &MetricChart) -> Result<CottonField, ChartError> {
    let curv = curvature_from_chart(chart)?;
    cotton_tensor_with(chart, &curv)
}

/// Drifted Laplacian `L_f phi = Lap phi - <grad f, grad phi>` of a node
/// field, using the chart's potential. Returns a full-size field; entries
/// whose stencil touches an invalid (NaN) input node are NaN.
pub fn drift_laplacian_with(
    chart: &MetricChart,
    curv: &ChartCurvature,
    field: &[f64],
) -> Result<Vec<f64>, ChartError> {
    let f = chart.potential().ok_or(ChartError::MissingPotential)?;
    let grid = chart.grid();
    assert_eq!(field.len(), grid.len(), "field must be full-size");
    let interior = grid.interior(1);
    let mut out = vec![f64::NAN; grid.len()];
    let computed: Vec<(usize, f64)> = interior
        .par_iter()
        .map(|&idx| {
            let g = chart.metric_at(idx);
            let ginv = invert4(&g);
            let gamma = &curv.christoffels[idx];
            let gm = |i: usize, j: usize, k: usize| gamma[i * 16 + j * 4 + k];
            let dphi = scalar_gradient(&grid, field, idx);
            let df = scalar_gradient(&grid, f, idx);
            // second partials of phi
            let mut d2 = [[0.0f64; 4]; 4];
            for a in 0..4 {
                d2[a][a] = (field[idx + grid.strides[a]] - 2.0 * field[idx]
                    + field[idx - grid.strides[a]])
                    / (grid.h[a] * grid.h[a]);
                for b in a + 1..4 {
                    let pp = field[idx + grid.strides[a] + grid.strides[b]];
                    let pm = field[idx + grid.strides[a] - grid.strides[b]];
                    let mp = field[idx - grid.strides[a] + grid.strides[b]];
                    let mm = field[idx - grid.strides[a] - grid.strides[b]];
                    let v = (pp - pm - mp + mm) / (4.0 * grid.h[a] * grid.h[b]);
                    d2[a][b] = v;
                    d2[b][a] = v;
                }
            }
            let mut lap = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    let mut hess = d2[a][b];
                    for m in 0..4 {
                        hess -= gm(m, a, b) * dphi[m];
                    }
                    lap += ginv[a][b] * hess;
                }
            }
            let mut drift = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    drift += ginv[a][b] * df[a] * dphi[b];
                }
            }
            (idx, lap - drift)
        })
        .collect();
    for (idx, v) in computed {
        out[idx] = v;
    }
    Ok(out)
}

/// [`drift_laplacian_with`] including the curvature pass (for the
/// Christoffel field).
pub fn drift_laplacian(chart: &MetricChart, field: &[f64]) -> Result<Vec<f64>, ChartError> {
    let curv = curvature_from_chart(chart)?;
    drift_laplacian_with(chart, &curv, field)
}

// ---------------------------------------------------------------------
// curvature-vs-gradient quotient and growth fit
// ---------------------------------------------------------------------

/// Empirical supremum of `|Rm| / (|Ric| + |grad Ric| / |grad f|)` over
/// supported nodes: a lower bound on any admissible universal constant in
/// the quotient estimate. No value of the constant is ever asserted.
#[derive(Debug, Clone)]
pub struct QuotientReport {
    /// Largest ratio observed.
    pub sup_ratio: f64,
    /// Node (flat index) attaining the supremum, if any.
    pub argmax: Option<usize>,
    pub nodes_included: usize,
    /// Nodes skipped because `|grad f|` is below [`GRAD_SUPPORT_TOL`].
    pub nodes_excluded: usize,
}

/// Pointwise quotient check at every supported interior node.
pub fn check_prop41_with(
    chart: &MetricChart,
    curv: &ChartCurvature,
) -> Result<QuotientReport, ChartError> {
    let f = chart.potential().ok_or(ChartError::MissingPotential)?;
    let grid = chart.grid();
    let interior = grid.interior(COTTON_MARGIN);
    let mut sup = 0.0f64;
    let mut argmax = None;
    let mut included = 0usize;
    let mut excluded = 0usize;
    for &idx in &interior {
        let g = chart.metric_at(idx);
        let ginv = invert4(&g);
        let df = scalar_gradient(&grid, f, idx);
        let mut grad_f2 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                grad_f2 += ginv[a][b] * df[a] * df[b];
            }
        }
        let grad_f = grad_f2.max(0.0).sqrt();
        if grad_f <= GRAD_SUPPORT_TOL {
            excluded += 1;
            continue;
        }
        included += 1;
        let grad_ric =
            ricci_covariant_derivative(&grid, &curv.ricci_coord, &curv.christoffels, idx);
        let grad_ric_norm = invariant_norm2_rank3(&grad_ric, &ginv).max(0.0).sqrt();
        let lhs = curv.rm_op_norm(idx);
        let denom = curv.ricci_norm(idx) + grad_ric_norm / grad_f;
        let ratio = if lhs <= 1e-14 { 0.0 } else { lhs / denom };
        if ratio > sup {
            sup = ratio;
            argmax = Some(idx);
        }
    }
    Ok(QuotientReport {
        sup_ratio: sup,
        argmax,
        nodes_included: included,
        nodes_excluded: excluded,
    })
}

/// [`check_prop41_with`] including the curvature pass.
pub fn check_prop41(chart: &MetricChart) -> Result<QuotientReport, ChartError> {
    let curv = curvature_from_chart(chart)?;
    check_prop41_with(chart, &curv)
}

/// Envelope fit of the growth hypothesis `R <= A + eps f` and the implied
/// curvature envelopes `|Ric| <= c0 + c1 eps f`, `|Rm| <= c0 + c2 eps f^2`.
#[derive(Debug, Clone)]
pub struct GrowthFit {
    pub epsilon_hat: f64,
    pub a_hat: f64,
    pub c0_hat: f64,
    pub c1_hat: f64,
    pub c2_hat: f64,
    pub feasible: bool,
    /// Fraction of interior nodes where `|grad f|` exceeds
    /// [`GRAD_SUPPORT_TOL`].
    pub support_fraction: f64,
    /// Cap on the additive constant used by the fit.
    pub a_cap: f64,
    pub nodes: usize,
}

/// Minimal-growth-rate fit over interior nodes, solved by bisection on
/// `eps` with `A(eps) = max(R - eps f)` per candidate.
///
/// The additive constant is capped at `a_cap` (default [`DEFAULT_A_CAP`]);
/// without a cap the constant would absorb any bounded sample and the
/// fitted rate would always be zero. Infeasibility (no rate below one
/// satisfies the cap) is reported through `feasible`, not an error.
pub fn fit_growth_with(
    chart: &MetricChart,
    curv: &ChartCurvature,
    a_cap: f64,
) -> Result<GrowthFit, ChartError> {
    let f = chart.potential().ok_or(ChartError::MissingPotential)?;
    let grid = chart.grid();
    let interior = grid.interior(CURVATURE_MARGIN);

    let nodes: Vec<usize> = interior
        .iter()
        .copied()
        .filter(|&i| curv.scalar[i].is_finite())
        .collect();
    if nodes.is_empty() {
        return Err(ChartError::GridTooCoarse(
            "no interior nodes for the growth fit".into(),
        ));
    }

    let a_of = |eps: f64| -> f64 {
        nodes
            .iter()
            .map(|&i| curv.scalar[i] - eps * f[i])
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let (epsilon_hat, feasible) = if a_of(0.0) <= a_cap {
        (0.0, true)
    } else if a_of(1.0 - 1e-12) > a_cap {
        (1.0, false)
    } else {
        let mut lo = 0.0f64;
        let mut hi = 1.0 - 1e-12;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if a_of(mid) <= a_cap {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi, true)
    };
    let a_hat = a_of(epsilon_hat).max(A_HAT_FLOOR);

    // support fraction
    let mut supported = 0usize;
    for &idx in &nodes {
        let g = chart.metric_at(idx);
        let ginv = invert4(&g);
        let df = scalar_gradient(&grid, f, idx);
        let mut grad_f2 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                grad_f2 += ginv[a][b] * df[a] * df[b];
            }
        }
        if grad_f2.max(0.0).sqrt() > GRAD_SUPPORT_TOL {
            supported += 1;
        }
    }

    // envelope fits for |Ric| and |Rm| against c0 + c eps f^k: intercept
    // from the lowest-f decile, slope as the max residual quotient
    let mut by_f: Vec<usize> = nodes.clone();
    by_f.sort_by(|&a, &b| f[a].partial_cmp(&f[b]).expect("NaN potential"));
    let decile = (by_f.len() / 10).max(1);
    let mut c0 = 0.0f64;
    for &idx in by_f.iter().take(decile) {
        c0 = c0.max(curv.ricci_norm(idx)).max(curv.rm_op_norm(idx));
    }
    let mut c1 = 0.0f64;
    let mut c2 = 0.0f64;
    if epsilon_hat > 0.0 && feasible {
        for &idx in &nodes {
            let fv = f[idx];
            if fv <= 0.0 {
                continue;
            }
            c1 = c1.max((curv.ricci_norm(idx) - c0) / (epsilon_hat * fv));
            c2 = c2.max((curv.rm_op_norm(idx) - c0) / (epsilon_hat * fv * fv));
        }
        c1 = c1.max(0.0);
        c2 = c2.max(0.0);
    } else {
        // rate zero: the intercept alone must carry the bound
        for &idx in &nodes {
            c0 = c0.max(curv.ricci_norm(idx)).max(curv.rm_op_norm(idx));
        }
    }

    Ok(GrowthFit {
        epsilon_hat,
        a_hat,
        c0_hat: c0,
        c1_hat: c1,
        c2_hat: c2,
        feasible,
        support_fraction: supported as f64 / nodes.len() as f64,
        a_cap,
        nodes: nodes.len(),
    })
}

/// [`fit_growth_with`] including the curvature pass, at the default cap.
pub fn fit_growth(chart: &MetricChart) -> Result<GrowthFit, ChartError> {
    let curv = curvature_from_chart(chart)?;
    fit_growth_with(chart, &curv, DEFAULT_A_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_chart(count: usize, with_f: bool) -> MetricChart {
        let axes = [Axis::new(-1.0, 1.0, count); 4];
        let grid = Grid::of(&axes);
        let mut g = Vec::with_capacity(grid.len());
        let mut f = Vec::with_capacity(grid.len());
        let id = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        for idx in 0..grid.len() {
            g.push(id);
            let c = grid.coords(idx);
            let x: [f64; 4] = std::array::from_fn(|a| axes[a].coord(c[a]));
            f.push(x.iter().map(|v| v * v).sum::<f64>() / 4.0);
        }
        MetricChart::new(axes, g, if with_f { Some(f) } else { None }).unwrap()
    }

    #[test]
    fn flat_chart_has_zero_curvature() {
        let chart = flat_chart(5, false);
        let curv = curvature_from_chart(&chart).unwrap();
        for &idx in &curv.interior {
            assert!(curv.scalar[idx].abs() < 1e-12);
            assert!(curv.rm_op_norm2[idx].abs() < 1e-24);
            assert!(curv.symmetry_residual[idx] < 1e-12);
        }
    }

    #[test]
    fn flat_chart_cotton_vanishes() {
        let chart = flat_chart(7, false);
        let cotton = cotton_tensor(&chart).unwrap();
        assert!(!cotton.interior.is_empty());
        assert!(cotton.max_norm() < 1e-12);
    }

    #[test]
    fn drift_laplacian_gaussian_potential() {
        // constant field: zero; field = f: Lap f = 2, <grad f, grad f> = f
        let chart = flat_chart(7, true);
        let grid = chart.grid();
        let constant = vec![3.5; grid.len()];
        let out = drift_laplacian(&chart, &constant).unwrap();
        for idx in grid.interior(1) {
            assert!(out[idx].abs() < 1e-10);
        }
        let f = chart.potential().unwrap().to_vec();
        let out = drift_laplacian(&chart, &f).unwrap();
        for idx in grid.interior(1) {
            let want = 2.0 - f[idx];
            assert!((out[idx] - want).abs() < 1e-8, "node {idx}");
        }
    }

    #[test]
    fn missing_potential_is_an_error() {
        let chart = flat_chart(5, false);
        let field = vec![0.0; chart.node_count()];
        assert_eq!(
            drift_laplacian(&chart, &field).unwrap_err(),
            ChartError::MissingPotential
        );
        assert!(matches!(
            fit_growth(&chart),
            Err(ChartError::MissingPotential)
        ));
    }

    #[test]
    fn growth_fit_flat_chart() {
        let chart = flat_chart(7, true);
        let fit = fit_growth(&chart).unwrap();
        assert!(fit.feasible);
        assert_eq!(fit.epsilon_hat, 0.0);
        assert!(fit.a_hat <= 1e-9);
        assert!(fit.c0_hat < 1e-9 && fit.c1_hat == 0.0 && fit.c2_hat == 0.0);
        assert!(fit.support_fraction > 0.9);
    }

    #[test]
    fn prop41_flat_ratio_zero() {
        let chart = flat_chart(9, true);
        let report = check_prop41(&chart).unwrap();
        assert_eq!(report.sup_ratio, 0.0);
        assert!(report.nodes_included > 0);
        // the grid center has |grad f| = 0 and must be excluded
        assert!(report.nodes_excluded >= 1);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            MetricChart::parse("nonsense"),
            Err(ChartError::Malformed { .. })
        ));
        let truncated =
            "CURV4-CHART v1\naxes 0 1 5 0 1 5 0 1 5 0 1 5\nfields g[10] f[0]\n1 0 0 0 1 0 0 1 0 1\n";
        assert!(matches!(
            MetricChart::parse(truncated),
            Err(ChartError::Malformed { .. })
        ));
    }

    #[test]
    fn write_parse_roundtrip() {
        let chart = flat_chart(5, true);
        let text = chart.write();
        let back = MetricChart::parse(&text).unwrap();
        assert_eq!(chart, back);
    }

    #[test]
    fn coarse_grid_rejected() {
        let axes = [
            Axis::new(0.0, 1.0, 4),
            Axis::new(0.0, 1.0, 5),
            Axis::new(0.0, 1.0, 5),
            Axis::new(0.0, 1.0, 5),
        ];
        let n = 4 * 5 * 5 * 5;
        let id = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        assert!(matches!(
            MetricChart::new(axes, vec![id; n], None),
            Err(ChartError::GridTooCoarse(_))
        ));
    }

    #[test]
    fn non_positive_definite_node_rejected() {
        let axes = [Axis::new(0.0, 1.0, 5); 4];
        let n = 5usize.pow(4);
        let mut g = vec![[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0]; n];
        g[17][0] = -2.0;
        assert_eq!(
            MetricChart::new(axes, g, None).unwrap_err(),
            ChartError::MetricNotPositiveDefinite { node: 17 }
        );
    }

    #[test]
    fn jacobi_eigenvalues_sorted() {
        let m = [
            [4.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 0.5, 0.0],
            [0.0, 0.5, 2.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ];
        let (eigs, vecs) = jacobi4(&m);
        for k in 0..3 {
            assert!(eigs[k] <= eigs[k + 1]);
        }
        // residual check: M v = lambda v
        for k in 0..4 {
            for i in 0..4 {
                let mut mv = 0.0;
                for j in 0..4 {
                    mv += m[i][j] * vecs[j][k];
                }
                assert!((mv - eigs[k] * vecs[i][k]).abs() < 1e-10);
            }
        }
    }
}
