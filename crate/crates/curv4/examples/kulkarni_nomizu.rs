//! Kulkarni-Nomizu squares of traceless Ricci tensors: componentwise and
//! operator norms, the sharp norm bound with its equality case, and the
//! coupling with the self-dual Weyl block.
//!
//! ```bash
//! cargo run --example kulkarni_nomizu
//! ```

use curv4::curv_algebra::{
    apply_to_bivector, as_lambda2_operator, block_inner, component_norm2, kulkarni_nomizu,
    BilinearRole, BlockKind, Duality, Lambda2Basis, SymBilinear4,
};
use curv4::pinching::check_prop22;
use curv4::scalar::Exact;
use curv4::soliton_catalog::{model_decomposition, ModelName};
use curv4::Scalar;

fn main() {
    let d = model_decomposition::<Exact>(ModelName::CylinderS2xR2);
    let ric0 = &d.traceless_ricci;
    let kn = kulkarni_nomizu(ric0, ric0);

    println!("traceless Ricci diag(1/4, 1/4, -1/4, -1/4):");
    println!("  componentwise |Ric0 . Ric0|^2 = {}", component_norm2(&kn));

    let basis = Lambda2Basis::<Exact>::standard(1);
    let op = as_lambda2_operator(&kn, &basis).expect("orthogonal basis");
    println!(
        "  operator Frobenius^2          = {} (bridge factor 4)",
        op.norm2()
    );

    // eigen-action on the first two self-dual basis bivectors
    for a in 0..2 {
        let image = apply_to_bivector(&kn, basis.bivector(a));
        let factor = image[0][if a == 0 { 1 } else { 2 }].clone();
        println!("  (Ric0 . Ric0)(w{}+) = {} * w{}+", a + 1, factor, a + 1);
    }

    let kn_plus = op.diag_block(Duality::SelfDual, BlockKind::KnProduct);
    let inner = block_inner(&kn_plus, &d.weyl_plus).expect("same duality");
    println!("  <(Ric0 . Ric0)+, W+> = {inner}");

    // the sharp norm bound, with its equality case on this family
    let (bound, projection) = check_prop22(ric0, 1).expect("trace-free");
    println!("\nsharp norm bound |Ric0 . Ric0|^2 <= 6 |Ric0|^4:");
    println!(
        "  lhs = {}, rhs = {}, margin = {}",
        bound.lhs, bound.rhs, bound.margin
    );
    println!(
        "  equality case: {}",
        bound
            .equality_diagnosis
            .as_deref()
            .unwrap_or("not attained")
    );
    println!(
        "projection bound 4||(Ric0 . Ric0)+||^2 <= 6 |Ric0|^4: margin = {}",
        projection.margin
    );

    // a strict example for contrast
    let strict = SymBilinear4::diag(
        BilinearRole::TracelessRicci,
        [
            Exact::from_int(3),
            -Exact::one(),
            -Exact::one(),
            -Exact::one(),
        ],
    );
    let (bound, _) = check_prop22(&strict, 1).expect("trace-free");
    println!(
        "\ndiag(3,-1,-1,-1): lhs = {}, rhs = {}, strict margin = {}",
        bound.lhs, bound.rhs, bound.margin
    );
}
