//! All pointwise pinching conditions evaluated on every catalog model:
//! the self-dual/anti-self-dual hypothesis (with its equality cases on
//! the rigidity list), the scalar pinching pair, and the coupling bound.
//!
//! ```bash
//! cargo run --example pinching_checks
//! ```

use curv4::curv_algebra::Duality;
use curv4::pinching::{check_catino, check_remark14, check_theorem1, remark14_ratio};
use curv4::scalar::Exact;
use curv4::soliton_catalog::{model_decomposition, ALL_MODELS};
use curv4::Scalar;

fn main() {
    let gamma = Exact::ratio(2, 1); // any value below 1 + sqrt(3)
    for name in ALL_MODELS {
        let d = model_decomposition::<Exact>(name);
        println!("== {} ==", name.id());
        for duality in [Duality::SelfDual, Duality::AntiSelfDual] {
            let r = check_theorem1(&d, duality);
            println!(
                "  {:<11} {}  lhs={} rhs={}{}",
                r.id.label(),
                if r.satisfied { "holds" } else { "FAILS" },
                r.lhs.display_compact(),
                r.rhs.display_compact(),
                if r.equality_flag { "  [equality]" } else { "" },
            );
        }
        let (c12, c13) = check_catino(&d, &gamma);
        for r in [c12, c13] {
            println!(
                "  {:<11} {}  margin={}",
                r.id.label(),
                if r.satisfied { "holds" } else { "FAILS" },
                r.margin.display_compact(),
            );
        }
        let r = check_remark14(&d);
        println!(
            "  {:<11} {}  lhs={} rhs={}",
            r.id.label(),
            if r.satisfied { "holds" } else { "FAILS" },
            r.lhs.display_compact(),
            r.rhs.display_compact(),
        );
        if let Some(ratio) = remark14_ratio(&d) {
            println!(
                "  coupling ratio lhs/(|Ric0|^2 |W+|) = {}",
                ratio.display_compact()
            );
        }
        println!();
    }
}
