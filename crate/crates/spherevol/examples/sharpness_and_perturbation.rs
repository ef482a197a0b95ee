//! Sharpness under perturbation: the aggregated face bound is attained by
//! the cube's vertex configuration (as 12 triangles) and stays a true upper
//! bound when the vertices are jiggled on the sphere — the slack is zero at
//! the cube and grows with the perturbation.
//!
//! Run with: cargo run --example sharpness_and_perturbation

use spherevol::mesh::{convex_hull, generate, Shape};
use spherevol::rng::SplitMix64;

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn main() {
    let cube = generate(&Shape::Cube).unwrap();
    let base = cube.bound_report().unwrap();
    println!(
        "cube: volume {:.15}, bound {:.15}, slack {:.3e}",
        base.volume,
        base.bound.unwrap(),
        base.slack.unwrap()
    );
    println!();

    let mut rng = SplitMix64::new(2024);
    println!("tangential perturbations of the cube vertices (renormalized):");
    println!("  delta     mean slack    min slack    max slack   (100 draws each)");
    for delta in [0.002, 0.01, 0.03, 0.08] {
        let mut slacks = Vec::new();
        while slacks.len() < 100 {
            let pts: Vec<[f64; 3]> = cube
                .vertices
                .iter()
                .map(|&p| {
                    let t = rng.unit_vector();
                    let dot = p[0] * t[0] + p[1] * t[1] + p[2] * t[2];
                    normalize([
                        p[0] + delta * (t[0] - dot * p[0]),
                        p[1] + delta * (t[1] - dot * p[1]),
                        p[2] + delta * (t[2] - dot * p[2]),
                    ])
                })
                .collect();
            let mesh = match convex_hull(&pts) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let report = match mesh.bound_report() {
                Ok(r) => r,
                Err(_) => continue,
            };
            if let Some(s) = report.slack {
                slacks.push(s);
            }
        }
        let mean: f64 = slacks.iter().sum::<f64>() / slacks.len() as f64;
        let min = slacks.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = slacks.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("  {delta:<8} {mean:>12.3e} {min:>12.3e} {max:>12.3e}");
    }
    println!();
    println!("perturbed slack never goes negative: the bound holds on the whole");
    println!("family, and the cube itself sits on it to machine precision.");
}
