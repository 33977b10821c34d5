//! Decompose a curvature tensor into scalar, traceless Ricci, and
//! self-dual / anti-self-dual Weyl blocks, in exact rational arithmetic.
//!
//! ```bash
//! cargo run --example weyl_decomposition
//! ```

use curv4::curv_algebra::{
    recompose, spectrum3, weyl_decompose, AlgCurvTensor, BilinearRole, SymBilinear4,
};
use curv4::scalar::Exact;
use curv4::Scalar;

fn main() {
    // product of the round 2-sphere of radius sqrt(2) with a flat plane:
    // the only independent curvature component is R_0101 = 1/2
    let half = Exact::ratio(1, 2);
    let rm = AlgCurvTensor::try_new(|i, j, k, l| match (i, j, k, l) {
        (0, 1, 0, 1) | (1, 0, 1, 0) => half.clone(),
        (0, 1, 1, 0) | (1, 0, 0, 1) => -half.clone(),
        _ => Exact::zero(),
    })
    .expect("curvature symmetries hold");

    let metric = SymBilinear4::identity(BilinearRole::Metric);
    let d = weyl_decompose(&rm, &metric).expect("valid input");

    println!("scalar curvature R = {}", d.scalar);
    print!("Ricci diagonal     =");
    for i in 0..4 {
        print!(" {}", d.ricci.get(i, i));
    }
    println!();
    print!("traceless Ricci    =");
    for i in 0..4 {
        print!(" {}", d.traceless_ricci.get(i, i));
    }
    println!();

    println!("\ncurvature operator on two-forms (basis w1+ w2+ w3+ w1- w2- w3-):");
    for row in &d.operator.m {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>5}")).collect();
        println!("  [{}]", cells.join(" "));
    }

    let sp = spectrum3(&d.weyl_plus);
    let sm = spectrum3(&d.weyl_minus);
    println!("\nW+ spectrum = ({}, {}, {})", sp.w1, sp.w2, sp.w3);
    println!("W- spectrum = ({}, {}, {})", sm.w1, sm.w2, sm.w3);
    println!(
        "|W+|^2 = {}, det W+ = {}",
        d.weyl_plus.norm2(),
        d.weyl_plus.det()
    );

    // the decomposition reassembles the input exactly
    let back = recompose(&d);
    assert!(back.sub(&rm).max_abs().is_zero());
    println!("\nrecomposition reproduces the input exactly");
}
