//! Deterministic fuzzing of the sharp inequalities: random trace-free
//! spectra and random trace-free symmetric tensors, a quarter million
//! trials. Any violation would indicate an implementation bug, never a
//! counterexample; near-equality hits show how often random inputs come
//! close to the sharp locus.
//!
//! ```bash
//! cargo run --release --example fuzz_inequalities [trials] [seed]
//! ```

use curv4::pinching::fuzz_inequalities;

fn main() {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args
        .next()
        .map(|s| s.parse().expect("trials must be a count"))
        .unwrap_or(250_000);
    let seed: u64 = args
        .next()
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(42);

    let summary = fuzz_inequalities(trials, seed).expect("at least one trial");
    println!("trials             = {}", summary.trials);
    println!("seed               = {}", summary.seed);
    println!("violations         = {}", summary.violations);
    println!("near-equality hits = {}", summary.near_equality_hits);
    println!("worst margin       = {:.3e}", summary.worst_margin);
    assert_eq!(summary.violations, 0, "sharp bounds must never be violated");

    let again = fuzz_inequalities(trials, seed).expect("at least one trial");
    assert_eq!(summary, again, "fixed seed reproduces the summary exactly");
    println!("\nrun is reproducible for the fixed seed");
}
