//! Map of the concavity domain of v(τ, c): where the Hessian is negative
//! semidefinite (concave region), where the bound instead falls
//! monotonically in c (monotone region), the curve c = f(τ) separating
//! them, and the quartic whose roots pin the curve's endpoints.
//!
//! Run with: cargo run --example domain_map

use std::f64::consts::FRAC_PI_2;

use spherevol::bounds::cap_arc;
use spherevol::domain::{boundary_curve, classify, omega, quartic_roots, region_grid, Region};

fn main() {
    let cap = cap_arc();
    let om = omega();
    println!("admissible arc cap: c ≤ 2 asin √(2/3) = {cap:.15}");
    println!("curve threshold:    ω = {om:.15}");
    println!("(for τ ≥ ω the whole strip up to the cap is concave)");
    println!();

    println!("Hessian-zero curve c = f(τ):");
    let curve = boundary_curve(8).unwrap();
    for s in &curve.samples {
        println!("  f({:.6}) = {:.15}", s.0, s.1);
    }
    println!();

    println!("classification of sample points (τ, c):");
    for (tau, c) in [
        (0.2, 0.9),
        (0.2, 1.8),
        (0.6283185307179586, 1.1),
        (0.6283185307179586, 1.9),
        (0.8, 1.85),
        (1.4, 0.5),
        (1.7, 1.8),
    ] {
        println!("  ({tau:.4}, {c:.4}) → {}", classify(tau, c));
    }
    println!();

    let grid = region_grid(64).unwrap();
    let mut counts = [0u32; 3];
    for cell in &grid {
        match classify(cell.tau, cell.c) {
            Region::Concave => counts[0] += 1,
            Region::Monotone => counts[1] += 1,
            Region::Outside => counts[2] += 1,
        }
    }
    println!(
        "64×64 grid over (0, π/2) × (0, cap): {} concave, {} monotone, {} outside",
        counts[0], counts[1], counts[2]
    );
    println!();

    println!("a coarse picture (τ → right on (0, π/2), c → up on (0, cap)):");
    let rows = 16;
    for j in (0..rows).rev() {
        let c = cap * (j as f64 + 0.5) / rows as f64;
        let mut line = String::from("  ");
        for i in 0..48 {
            let tau = FRAC_PI_2 * (i as f64 + 0.5) / 48.0;
            line.push(match classify(tau, c) {
                Region::Concave => '#',
                Region::Monotone => '-',
                Region::Outside => '.',
            });
        }
        println!("{line}");
    }
    println!();

    println!("quartic roots behind the curve's closed form (palindromic pairs):");
    let r = quartic_roots();
    for root in r {
        println!("  {root:.15}");
    }
    println!("  pair products: {:.15}, {:.15}", r[0] * r[3], r[1] * r[2]);
}
