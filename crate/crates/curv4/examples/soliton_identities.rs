//! Exact verification of the soliton equation, the drifted-Laplacian
//! identity suite, the reduced Weitzenboeck identity, and the quadratic
//! potential envelopes on every catalog model.
//!
//! ```bash
//! cargo run --example soliton_identities
//! ```

use curv4::curv_algebra::Duality;
use curv4::scalar::Exact;
use curv4::soliton_catalog::{
    potential_asymptotics, sample_points, verify_hamilton_identities, weitzenbock_residual,
    AsymptoticsOptions, ALL_MODELS,
};
use curv4::Scalar;

fn main() {
    for name in ALL_MODELS {
        println!("== {} ==", name.id());
        println!("   {}", name.summary());
        let points = sample_points::<Exact>(name, 100, 7);
        let reports = verify_hamilton_identities(name, &points).expect("in-domain points");
        for r in &reports {
            println!(
                "  {:<16} residual {} over {} points",
                r.id.label(),
                r.max_residual,
                r.points_checked
            );
            assert!(r.max_residual.is_zero());
        }
        for duality in [Duality::SelfDual, Duality::AntiSelfDual] {
            let r = weitzenbock_residual::<Exact>(name, duality);
            println!("  {:<16} residual {}", r.id.label(), r.max_residual);
        }
        if !name.is_compact() {
            let report = potential_asymptotics(name, &AsymptoticsOptions::default())
                .expect("noncompact model");
            println!(
                "  potential envelope (1/4)(r -+ c)^2 holds with c = {:?} over {} samples",
                report.c_found, report.samples
            );
        }
        println!();
    }
}
