//! Randomized verification of the inequality chain behind the face bounds:
//! each suite samples random inscribed configurations and checks one link —
//! comparator dominance for triangles and p-gons, maximal-arc ordering,
//! concavity of the bounding surfaces, and the five-area cap sum. The
//! worst observed slack (largest lhs − rhs) stays strictly negative.
//!
//! Run with: cargo run --release --example comparator_dominance

use spherevol::optimize::{
    verify_cap_sum, verify_concavity, verify_dominance, verify_polygon_comparator,
    verify_tau_le_c, verify_triangle_comparator, VerifyReport,
};

fn main() {
    let samples = 2_000;
    let seed = 42;
    println!("running six verification suites, {samples} samples each, seed {seed}");
    println!();
    println!("  suite                 samples  violations  skipped  worst slack");

    let reports: Vec<VerifyReport> = vec![
        verify_triangle_comparator(samples, seed).unwrap(),
        verify_dominance(samples, seed).unwrap(),
        verify_polygon_comparator(samples, seed, 5).unwrap(),
        verify_tau_le_c(samples, seed).unwrap(),
        verify_concavity(samples, seed).unwrap(),
        verify_cap_sum(samples, seed).unwrap(),
    ];
    let mut all_clean = true;
    for r in &reports {
        println!(
            "  {:<22} {:>6}  {:>10}  {:>7}  {:>11.3e}",
            r.suite, r.samples, r.violations, r.skipped, r.worst_slack
        );
        all_clean &= r.violations == 0;
    }
    println!();
    if all_clean {
        println!("no violations: every sampled configuration respects its inequality.");
    } else {
        println!("VIOLATIONS FOUND — see the counts above.");
    }
    println!();
    println!("reading the slack column: each suite reports the largest lhs - rhs it");
    println!("saw. Values near zero (e.g. the comparator suites) mean the inequality");
    println!("is tight somewhere in the sampled family — the comparator is attained");
    println!("by isosceles configurations — while strongly negative values mean the");
    println!("sampled family never approaches equality.");
}
