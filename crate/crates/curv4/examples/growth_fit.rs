//! Scalar-curvature growth fits (`R <= A + eps f`) and the
//! curvature-vs-gradient quotient on catalog charts and on a synthetic
//! chart built so its scalar curvature equals half its potential.
//!
//! ```bash
//! cargo run --release --example growth_fit
//! ```

use curv4::chart_geometry::{
    check_prop41_with, curvature_from_chart, fit_growth_with, Axis, MetricChart, UPPER_TRIANGLE,
};
use curv4::soliton_catalog::{default_chart_axes, export_chart, ModelName};

fn report(label: &str, chart: &MetricChart) {
    let curv = curvature_from_chart(chart).expect("valid chart");
    let fit = fit_growth_with(chart, &curv, 2.0).expect("potential present");
    println!("== {label} ==");
    println!(
        "  feasible = {}, eps_hat = {:.6}, A_hat = {:.3e} (cap {})",
        fit.feasible, fit.epsilon_hat, fit.a_hat, fit.a_cap
    );
    println!(
        "  envelopes: c0 = {:.3e}, c1 = {:.3e}, c2 = {:.3e}",
        fit.c0_hat, fit.c1_hat, fit.c2_hat
    );
    println!(
        "  gradient support on {:.0}% of {} nodes",
        100.0 * fit.support_fraction,
        fit.nodes
    );
    let q = check_prop41_with(chart, &curv).expect("potential present");
    println!(
        "  quotient sup |Rm|/(|Ric| + |grad Ric|/|grad f|) = {:.4} over {} nodes ({} unsupported)",
        q.sup_ratio, q.nodes_included, q.nodes_excluded
    );
}

/// Conformally flat chart with strongly growing scalar curvature; the
/// potential is twice the oracle's own scalar curvature so `R = f/2`
/// holds exactly at every fitted node.
fn synthetic_half_growth() -> MetricChart {
    let axes = [Axis::new(-0.5, 0.5, 13); 4];
    let counts = [13usize; 4];
    let total: usize = counts.iter().product();
    let mut g = Vec::with_capacity(total);
    let mut f = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut c = [0usize; 4];
        for a in 0..4 {
            let stride: usize = counts[a + 1..].iter().product();
            c[a] = rem / stride;
            rem %= stride;
        }
        let x: [f64; 4] = std::array::from_fn(|a| axes[a].coord(c[a]));
        let s: f64 = x.iter().map(|v| v * v).sum();
        let mut packed = [0.0f64; 10];
        for (k, &(i, j)) in UPPER_TRIANGLE.iter().enumerate() {
            packed[k] = if i == j { (-4.0 * s).exp() } else { 0.0 };
        }
        g.push(packed);
        f.push(2.0 * (4.0 * s).exp() * (96.0 - 96.0 * s));
    }
    let chart = MetricChart::new(axes, g.clone(), Some(f)).unwrap();
    let curv = curvature_from_chart(&chart).unwrap();
    let f2: Vec<f64> = (0..chart.node_count())
        .map(|idx| {
            if curv.scalar[idx].is_finite() {
                2.0 * curv.scalar[idx]
            } else {
                chart.potential().unwrap()[idx]
            }
        })
        .collect();
    MetricChart::new(axes, g, Some(f2)).unwrap()
}

fn main() {
    for name in [
        ModelName::GaussianR4,
        ModelName::CylinderS2xR2,
        ModelName::CylinderS3xR,
    ] {
        let chart = export_chart(name, default_chart_axes(name)).expect("export");
        report(name.id(), &chart);
    }
    report("synthetic R = f/2", &synthetic_half_growth());
}
