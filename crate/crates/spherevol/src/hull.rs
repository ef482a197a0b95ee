//! Deterministic incremental convex hull for small 3-D point sets.
//!
//! Points are inserted in input order; ties and tolerances are fixed, so
//! the same input slice always produces the same hull. The optimizers call
//! [`hull_volume`] inside their objective, which maps degenerate inputs to
//! volume 0 instead of failing, keeping the ascent well-defined when a
//! configuration momentarily collapses.

use std::collections::{HashMap, HashSet};

use crate::error::{domain_err, Error, Result};
use crate::vec3;

/// Strict visibility threshold: a point must rise at least this far above
/// a face plane (after normal normalization) to count as outside it.
const VISIBILITY_EPS: f64 = 1e-10;

/// A closed triangulated convex surface.
#[derive(Clone, Debug)]
pub struct Hull {
    /// The input points that ended up as hull vertices, in input order.
    pub vertices: Vec<[f64; 3]>,
    /// Outward-oriented triangles indexing `vertices`, each rotated to
    /// start at its smallest index and sorted lexicographically.
    pub faces: Vec<[usize; 3]>,
}

impl Hull {
    /// Enclosed volume as the divergence-theorem sum Σ det(a,b,c)/6 over
    /// outward faces; exact for any position of the origin.
    pub fn volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|&[i, j, k]| vec3::det3(self.vertices[i], self.vertices[j], self.vertices[k]))
            .sum::<f64>()
            / 6.0
    }
}

/// Signed height of `p` above the plane of face `f` (positive = outside).
fn height_above(points: &[[f64; 3]], f: [usize; 3], p: [f64; 3]) -> f64 {
    let a = points[f[0]];
    let n = vec3::cross(
        vec3::sub(points[f[1]], a),
        vec3::sub(points[f[2]], a),
    );
    let len = vec3::norm(n);
    if len == 0.0 {
        return 0.0;
    }
    vec3::dot(n, vec3::sub(p, a)) / len
}

/// Pick indices of four affinely independent seed points, scanning in
/// input order with a 1e-10 degeneracy threshold.
fn seed_tetrahedron(points: &[[f64; 3]]) -> Result<[usize; 4]> {
    let n = points.len();
    let i0 = 0;
    let i1 = (1..n)
        .find(|&i| vec3::norm(vec3::sub(points[i], points[i0])) > 1e-10)
        .ok_or_else(|| Error::Mesh("all points coincide".into()))?;
    let e1 = vec3::sub(points[i1], points[i0]);
    let i2 = (i1 + 1..n)
        .find(|&i| {
            let c = vec3::cross(e1, vec3::sub(points[i], points[i0]));
            vec3::norm(c) > 1e-10
        })
        .ok_or_else(|| Error::Mesh("all points collinear".into()))?;
    let e2 = vec3::sub(points[i2], points[i0]);
    let i3 = (i2 + 1..n)
        .find(|&i| vec3::det3(e1, e2, vec3::sub(points[i], points[i0])).abs() > 1e-10)
        .ok_or_else(|| Error::Mesh("all points coplanar".into()))?;
    Ok([i0, i1, i2, i3])
}

/// Convex hull of the input points. Duplicates and interior points are
/// skipped; fewer than four affinely independent points is an error.
pub fn convex_hull(points: &[[f64; 3]]) -> Result<Hull> {
    if points.len() < 4 {
        domain_err!("need at least 4 points, got {}", points.len());
    }
    let seed = seed_tetrahedron(points)?;
    // Thresholded visibility can mis-classify faces when a point lies
    // within the tolerance of several planes at once, leaving a surface
    // with unmatched edges. Whether that happens depends on the insertion
    // order, so retry with rotated orders before giving up.
    let mut faces = None;
    for rotation in 0..points.len() {
        let cand = insert_points(points, seed, rotation);
        if is_closed_surface(&cand) {
            faces = Some(cand);
            break;
        }
    }
    let Some(faces) = faces else {
        return Err(Error::Mesh(
            "hull surface is degenerate for every insertion order".into(),
        ));
    };

    let faces = retriangulate_coplanar(points, faces);

    // re-index to the surviving vertices, keeping input order
    let mut used: Vec<usize> = faces.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let mut remap = vec![usize::MAX; points.len()];
    for (new, &old) in used.iter().enumerate() {
        remap[old] = new;
    }
    let vertices: Vec<[f64; 3]> = used.iter().map(|&i| points[i]).collect();
    let mut canon: Vec<[usize; 3]> = faces
        .iter()
        .map(|&[a, b, c]| {
            let f = [remap[a], remap[b], remap[c]];
            let lo = (0..3).min_by_key(|&i| f[i]).unwrap();
            [f[lo], f[(lo + 1) % 3], f[(lo + 2) % 3]]
        })
        .collect();
    canon.sort_unstable();
    Ok(Hull {
        vertices,
        faces: canon,
    })
}

/// Incremental insertion pass: points are inserted in input order rotated
/// by `rotation`, starting from the seed tetrahedron's four faces. The
/// result is not guaranteed closed; the caller validates it.
fn insert_points(points: &[[f64; 3]], seed: [usize; 4], rotation: usize) -> Vec<[usize; 3]> {
    let centroid = {
        let mut c = [0.0; 3];
        for &i in &seed {
            c = vec3::add(c, points[i]);
        }
        vec3::scale(c, 0.25)
    };
    // four faces of the seed tetrahedron, oriented away from its centroid
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for skip in 0..4 {
        let mut f = [0usize; 3];
        let mut k = 0;
        for (j, &idx) in seed.iter().enumerate() {
            if j != skip {
                f[k] = idx;
                k += 1;
            }
        }
        if height_above(points, f, centroid) > 0.0 {
            f.swap(1, 2);
        }
        faces.push(f);
    }

    for step in 0..points.len() {
        let p_idx = (step + rotation) % points.len();
        let p = points[p_idx];
        if seed.contains(&p_idx) {
            continue;
        }
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&fi| height_above(points, faces[fi], p) > VISIBILITY_EPS)
            .collect();
        if visible.is_empty() {
            continue; // inside or on the current hull
        }
        // horizon = directed edges of visible faces whose reverse edge
        // belongs to a kept face
        let visible_edges: HashSet<(usize, usize)> = visible
            .iter()
            .flat_map(|&fi| {
                let [a, b, c] = faces[fi];
                [(a, b), (b, c), (c, a)]
            })
            .collect();
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &fi in &visible {
            let [a, b, c] = faces[fi];
            for (u, v) in [(a, b), (b, c), (c, a)] {
                if !visible_edges.contains(&(v, u)) {
                    horizon.push((u, v));
                }
            }
        }
        let keep: HashSet<usize> = visible.into_iter().collect();
        let mut next: Vec<[usize; 3]> = (0..faces.len())
            .filter(|fi| !keep.contains(fi))
            .map(|fi| faces[fi])
            .collect();
        for (u, v) in horizon {
            next.push([u, v, p_idx]);
        }
        faces = next;
    }
    faces
}

/// A face set is usable only if it is a closed orientable 2-manifold of
/// sphere topology: no degenerate faces, every directed edge used exactly
/// once with its reverse present, and Euler characteristic 2.
fn is_closed_surface(faces: &[[usize; 3]]) -> bool {
    if faces.len() < 4 {
        return false;
    }
    let mut count: HashMap<(usize, usize), u32> = HashMap::new();
    for &[a, b, c] in faces {
        if a == b || b == c || c == a {
            return false;
        }
        for e in [(a, b), (b, c), (c, a)] {
            *count.entry(e).or_insert(0) += 1;
        }
    }
    if count.values().any(|&m| m != 1) {
        return false;
    }
    if count.keys().any(|&(u, v)| !count.contains_key(&(v, u))) {
        return false;
    }
    let verts: HashSet<usize> = faces.iter().flatten().copied().collect();
    verts.len() + faces.len() == count.len() / 2 + 2
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Insertion order can split a flat (e.g. square) facet along either
/// diagonal; re-triangulate every maximal coplanar patch as a fan from its
/// lowest-index boundary vertex so the output is canonical.
fn retriangulate_coplanar(points: &[[f64; 3]], faces: Vec<[usize; 3]>) -> Vec<[usize; 3]> {
    let nf = faces.len();
    let plane: Vec<([f64; 3], f64)> = faces
        .iter()
        .map(|&[a, b, c]| {
            let n = vec3::cross(
                vec3::sub(points[b], points[a]),
                vec3::sub(points[c], points[a]),
            );
            let n = vec3::scale(n, 1.0 / vec3::norm(n));
            (n, vec3::dot(n, points[a]))
        })
        .collect();
    let owner: HashMap<(usize, usize), usize> = faces
        .iter()
        .enumerate()
        .flat_map(|(fi, &[a, b, c])| [((a, b), fi), ((b, c), fi), ((c, a), fi)])
        .collect();
    let mut parent: Vec<usize> = (0..nf).collect();
    for (fi, &[a, b, c]) in faces.iter().enumerate() {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let nb = owner[&(v, u)];
            let (n1, d1) = plane[fi];
            let (n2, d2) = plane[nb];
            if vec3::dot(n1, n2) > 1.0 - 1e-10 && (d1 - d2).abs() < 1e-10 {
                let (r1, r2) = (find_root(&mut parent, fi), find_root(&mut parent, nb));
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for fi in 0..nf {
        let r = find_root(&mut parent, fi);
        groups.entry(r).or_default().push(fi);
    }
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();
    let mut out = Vec::with_capacity(nf);
    for r in roots {
        let group = &groups[&r];
        if group.len() == 1 {
            out.push(faces[group[0]]);
            continue;
        }
        // boundary = directed edges whose twin face lies outside the patch
        let members: HashSet<usize> = group.iter().copied().collect();
        let mut next_on_cycle: HashMap<usize, usize> = HashMap::new();
        let mut simple = true;
        for &fi in group {
            let [a, b, c] = faces[fi];
            for (u, v) in [(a, b), (b, c), (c, a)] {
                if !members.contains(&owner[&(v, u)]) && next_on_cycle.insert(u, v).is_some() {
                    simple = false; // boundary pinches at a vertex
                }
            }
        }
        let start = *next_on_cycle.keys().min().unwrap();
        let mut cycle = vec![start];
        let mut cur = next_on_cycle[&start];
        while cur != start && cycle.len() < next_on_cycle.len() {
            cycle.push(cur);
            cur = next_on_cycle[&cur];
        }
        if !simple || cur != start || cycle.len() != next_on_cycle.len() {
            // not a single simple cycle; keep the patch as it came
            out.extend(group.iter().map(|&fi| faces[fi]));
            continue;
        }
        for i in 1..cycle.len() - 1 {
            out.push([cycle[0], cycle[i], cycle[i + 1]]);
        }
    }
    out
}

/// Hull volume with degenerate inputs mapped to 0; the optimizers use this
/// as their raw objective.
pub fn hull_volume(points: &[[f64; 3]]) -> f64 {
    match convex_hull(points) {
        Ok(h) => h.volume(),
        Err(_) => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    const CUBE_V: f64 = 1.5396007178390020;

    fn cube_points() -> Vec<[f64; 3]> {
        let s = 1.0 / 3f64.sqrt();
        let mut pts = Vec::new();
        for &x in &[-s, s] {
            for &y in &[-s, s] {
                for &z in &[-s, s] {
                    pts.push([x, y, z]);
                }
            }
        }
        pts
    }

    fn euler_ok(h: &Hull) {
        let mut edges = HashSet::new();
        for &[a, b, c] in &h.faces {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                assert!(edges.insert((u, v)), "duplicate directed edge");
            }
        }
        for &(u, v) in &edges {
            assert!(edges.contains(&(v, u)), "unmatched edge ({u}, {v})");
        }
        let e = edges.len() / 2;
        assert_eq!(
            h.vertices.len() + h.faces.len(),
            2 + e,
            "Euler characteristic violated"
        );
    }

    #[test]
    fn cube_hull_volume_and_facets() {
        let h = convex_hull(&cube_points()).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.faces.len(), 12); // 6 squares split in 2
        assert!((h.volume() - CUBE_V).abs() < 1e-14);
        euler_ok(&h);
        // flat square facets split as a fan from their lowest-index corner
        for axis in 0..3 {
            for side in [-1.0, 1.0] {
                let square: Vec<[usize; 3]> = h
                    .faces
                    .iter()
                    .copied()
                    .filter(|f| f.iter().all(|&i| h.vertices[i][axis] * side > 0.0))
                    .collect();
                assert_eq!(square.len(), 2);
                let lo = square.iter().flatten().copied().min().unwrap();
                assert!(square.iter().all(|f| f.contains(&lo)));
            }
        }
    }

    #[test]
    fn octahedron_hull() {
        let pts = vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.faces.len(), 8);
        assert!((h.volume() - 4.0 / 3.0).abs() < 1e-14);
        euler_ok(&h);
    }

    #[test]
    fn fourteen_point_hull_with_axis_vertices() {
        // cube corners plus the six coordinate-axis points
        let mut pts = cube_points();
        for i in 0..3 {
            for &s in &[1.0, -1.0] {
                let mut v = [0.0; 3];
                v[i] = s;
                pts.push(v);
            }
        }
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 14);
        assert_eq!(h.faces.len(), 24);
        assert!((h.volume() - 8.0 / 3.0).abs() < 1e-13);
        euler_ok(&h);
    }

    #[test]
    fn duplicates_and_interior_points_are_skipped() {
        let s = 1.0 / 3f64.sqrt();
        let tetra = [
            [s, s, s],
            [s, -s, -s],
            [-s, s, -s],
            [-s, -s, s],
        ];
        // two copies of the same tetrahedron plus an interior point
        let mut pts: Vec<[f64; 3]> = tetra.to_vec();
        pts.extend_from_slice(&tetra);
        pts.push([0.01, 0.0, 0.0]);
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.faces.len(), 4);
        assert!((h.volume() - 0.5132002392796674).abs() < 1e-14);
        euler_ok(&h);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(convex_hull(&[[0.0; 3]; 4]).is_err()); // coincident
        let line: Vec<[f64; 3]> = (0..5).map(|i| [i as f64, 0.0, 0.0]).collect();
        assert!(convex_hull(&line).is_err());
        let plane: Vec<[f64; 3]> = (0..6)
            .map(|i| [(i % 3) as f64, (i / 3) as f64, 0.0])
            .collect();
        assert!(convex_hull(&plane).is_err());
        assert_eq!(hull_volume(&plane), 0.0);
        assert_eq!(hull_volume(&line), 0.0);
    }

    #[test]
    fn random_point_sets_give_consistent_closed_hulls() {
        let mut rng = SplitMix64::new(41);
        for n in [4usize, 6, 9, 16, 30] {
            for _ in 0..20 {
                let pts: Vec<[f64; 3]> = (0..n).map(|_| rng.unit_vector()).collect();
                let h = match convex_hull(&pts) {
                    Ok(h) => h,
                    Err(_) => continue, // degenerate draw
                };
                euler_ok(&h);
                let v = h.volume();
                assert!(v > 0.0 && v < 4.19, "volume {v} out of range");
                // every input point lies inside or on the hull
                for &p in &pts {
                    for &f in &h.faces {
                        assert!(
                            height_above(&h.vertices, f, p) < 1e-9,
                            "input point outside hull"
                        );
                    }
                }
                // determinism: identical input, identical output
                let h2 = convex_hull(&pts).unwrap();
                assert_eq!(h.faces, h2.faces);
                assert_eq!(h.vertices.len(), h2.vertices.len());
            }
        }
    }

    #[test]
    fn near_coplanar_quads_never_corrupt_the_surface() {
        // Jittered square antiprisms put four points within a hair of a
        // common plane, the regime where thresholded visibility can leave
        // unmatched edges; the hull must come back closed regardless.
        let (r, h) = (0.4f64.mul_add(-0.4, 1.0).sqrt(), 0.4);
        let base: Vec<[f64; 3]> = (0..8)
            .map(|k| {
                let a = std::f64::consts::FRAC_PI_4 * k as f64;
                let z = if k % 2 == 0 { h } else { -h };
                [r * a.cos(), r * a.sin(), z]
            })
            .collect();
        let v0 = convex_hull(&base).unwrap().volume();
        let mut rng = SplitMix64::new(9);
        for trial in 0..300 {
            let eps = if trial % 2 == 0 { 1e-8 } else { 1e-7 };
            let pts: Vec<[f64; 3]> = base
                .iter()
                .map(|&p| {
                    let q = [
                        p[0] + rng.range(-eps, eps),
                        p[1] + rng.range(-eps, eps),
                        p[2] + rng.range(-eps, eps),
                    ];
                    vec3::scale(q, 1.0 / vec3::norm(q))
                })
                .collect();
            let hull = convex_hull(&pts).expect("jittered antiprism has a hull");
            euler_ok(&hull);
            assert!((hull.volume() - v0).abs() < 1e-4);
        }
    }

    #[test]
    fn rotated_tetrahedron_pair_makes_a_cube() {
        // rotating the reference tetrahedron by π/2 about the z-axis gives
        // its antipodal copy; together they are the cube
        let s = 1.0 / 3f64.sqrt();
        let tetra = [
            [s, s, s],
            [s, -s, -s],
            [-s, s, -s],
            [-s, -s, s],
        ];
        let mut pts: Vec<[f64; 3]> = tetra.to_vec();
        for &v in &tetra {
            pts.push(crate::vec3::rotate(v, [0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2));
        }
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert!((h.volume() - CUBE_V).abs() < 1e-14);
    }
}
