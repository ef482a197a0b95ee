//! The example polyhedra: regular solids, bipyramids, the non-convex
//! rhombic star P whose 24 congruent faces make its volume bound sharp,
//! and its convex hull Q. For each mesh: volume, per-face data, aggregated
//! bound and slack.
//!
//! Run with: cargo run --example example_polyhedra

use spherevol::hull::hull_volume;
use spherevol::mesh::{generate, Shape};

fn main() {
    let shapes = [
        ("tetrahedron", Shape::Tetrahedron),
        ("octahedron", Shape::Octahedron),
        ("cube", Shape::Cube),
        ("icosahedron", Shape::Icosahedron),
        ("bipyramid n=5", Shape::Bipyramid(5)),
        ("rhombic star P", Shape::RhombicStarP),
        ("convex hull Q", Shape::HullQ),
    ];
    for (name, shape) in shapes {
        let mesh = generate(&shape).unwrap();
        let report = mesh.bound_report().unwrap();
        println!("{name}: {} vertices, {} faces", mesh.vertices.len(), mesh.faces.len());
        println!("  volume {:.15}", report.volume);
        match (report.bound, report.slack) {
            (Some(b), Some(s)) => println!("  bound  {b:.15}  (slack {s:.3e})"),
            _ => println!("  bound  not applicable: {}", report.note.unwrap_or_default()),
        }
        // summarize the distinct (τ, c, class) face types
        let mut types: Vec<(f64, f64, String, u32)> = Vec::new();
        for fs in report.faces {
            match types
                .iter_mut()
                .find(|t| (t.0 - fs.tau).abs() < 1e-9 && (t.1 - fs.c).abs() < 1e-9)
            {
                Some(t) => t.3 += 1,
                None => types.push((fs.tau, fs.c, fs.class.to_string(), 1)),
            }
        }
        for (tau, c, class, count) in types {
            println!("  {count:2} faces with τ = {tau:.9}, c = {c:.9} ({class})");
        }
        println!();
    }

    // P is star-shaped but not convex: its hull is strictly larger
    let p = generate(&Shape::RhombicStarP).unwrap();
    let star = p.star_volume().unwrap();
    let hull = hull_volume(&p.vertices);
    println!("P is non-convex: star volume {star:.15} < hull volume {hull:.15}");
    println!("(the hull of P's vertices is Q, volume 8/3)");
}
