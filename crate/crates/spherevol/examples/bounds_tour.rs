//! A tour of the closed-form volume bounds, evaluated on the inputs where
//! they are sharp: the regular tetrahedron, octahedron, cube and
//! icosahedron inscribed in the unit sphere.
//!
//! Run with: cargo run --example bounds_tour

use std::f64::consts::{FRAC_PI_2, PI};

use spherevol::bounds::{
    cap_arc, equilateral_c_from_tau, icosahedron_bound, polyhedron_bound, u_triangle,
    uniform_bound, v_tau_c,
};

fn main() {
    println!("n-vertex bound (equality exactly at n = 4, 6, 12):");
    for n in [4u32, 5, 6, 7, 8, 12, 20] {
        let e = icosahedron_bound(n, 1.0).unwrap();
        println!("  E({n:2}) = {e:.15}");
    }
    println!();

    println!("face/vertex/edge bound vs the regular solids:");
    for (name, f, v, e, volume) in [
        ("tetrahedron", 4u32, 4u32, 6u32, 8.0 / (9.0 * 3f64.sqrt())),
        ("octahedron ", 8, 6, 12, 4.0 / 3.0),
        ("icosahedron", 20, 12, 30, 2.5361507101204097),
    ] {
        let b = polyhedron_bound(f, v, e, 1.0).unwrap();
        println!("  {name}: bound {b:.15}, volume {volume:.15}, slack {:.1e}", b - volume);
    }
    println!();

    println!("per-face bound v(τ, c) at the sharp face data:");
    let icosa_face = v_tau_c(PI / 5.0, (2f64).atan()).unwrap();
    println!("  icosahedron face (τ = π/5, c = atan 2):      20 · {icosa_face:.15} = {:.15}", 20.0 * icosa_face);
    let cube_face = v_tau_c(PI / 3.0, cap_arc()).unwrap();
    println!("  cube half-face  (τ = π/3, c = 2 asin √(2/3)): 12 · {cube_face:.15} = {:.15}", 12.0 * cube_face);
    println!();

    println!("uniform aggregation over f equal faces:");
    for (label, f, c, reference) in [
        ("cube as 12 triangles", 12u32, cap_arc(), 8.0 / (3.0 * 3f64.sqrt())),
        ("star polyhedron P   ", 24, FRAC_PI_2, 4.0 / 3f64.sqrt()),
        ("convex hull Q       ", 24, 2.0 * (1f64 / 3.0).sqrt().asin(), 8.0 / 3.0),
    ] {
        let b = uniform_bound(f, c).unwrap();
        println!("  {label}: bound {b:.15} (attained volume {reference:.15})");
    }
    println!();

    println!("equilateral reduction: pinning c at the equilateral arc turns v(τ, c)");
    println!("into the triangular-face bound U(τ):");
    for tau in [0.3, 0.6, PI / 5.0, 1.2, 1.5] {
        let c = equilateral_c_from_tau(tau).unwrap();
        let lhs = v_tau_c(tau, c).unwrap();
        let rhs = u_triangle(tau).unwrap();
        println!("  τ = {tau:.4}: v = {lhs:.15}, U = {rhs:.15}, diff {:.1e}", (lhs - rhs).abs());
    }
}
