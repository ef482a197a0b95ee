//! Spherical and chordal triangle primitives on the unit sphere (radius 1,
//! all angles in radians).
//!
//! Two complementary views of an inscribed triangular face are provided:
//!
//! * [`SphericalTriangle`] — the face as three great-circle arc lengths,
//!   with its spherical area (excess) `τ`.
//! * [`ChordalTriangle`] — the face as three unit-vector vertices, with the
//!   planar (rectilineal) triangle data: chords, circumradius `r`, the
//!   distance `m` from the sphere center to the face plane, and the planar
//!   interior angles.
//!
//! The bridge between the two views is the common-form area relation
//! [`tau_from_m_alpha`]: an isosceles face is determined by `(m, α)` where
//! `α ∈ (0, π)` is π minus the largest planar interior angle, and its
//! spherical area follows from a closed form that needs no case split on
//! whether the circumcenter's foot lies inside the planar triangle.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain_err, Error, Result};
use crate::vec3;

/// Tolerance for accepting slightly off-unit input vertices; inputs within
/// this distance of unit norm are renormalized, farther ones are rejected.
pub const UNIT_NORM_TOL: f64 = 1e-6;

/// Convert a great-circle arc in (0, π) to its chord.
pub fn arc_to_chord(arc: f64) -> Result<f64> {
    if !(arc > 0.0 && arc < PI) {
        domain_err!("arc {arc} outside (0, pi)");
    }
    Ok(2.0 * (arc / 2.0).sin())
}

/// Convert a chord in (0, 2) back to its great-circle arc.
pub fn chord_to_arc(chord: f64) -> Result<f64> {
    if !(chord > 0.0 && chord < 2.0) {
        domain_err!("chord {chord} outside (0, 2)");
    }
    Ok(2.0 * (chord / 2.0).asin())
}

/// Check a vector is within [`UNIT_NORM_TOL`] of unit norm and renormalize.
pub(crate) fn normalize_unit(v: [f64; 3]) -> Result<[f64; 3]> {
    let n = vec3::norm(v);
    if (n - 1.0).abs() > UNIT_NORM_TOL {
        domain_err!("vertex norm {n} deviates from 1 by more than {UNIT_NORM_TOL}");
    }
    Ok(vec3::scale(v, 1.0 / n))
}

/// A valid spherical triangle stored with sides sorted ascending, so `c` is
/// always the maximal side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalTriangle {
    a: f64,
    b: f64,
    c: f64,
}

impl SphericalTriangle {
    /// Build from three arc lengths in any order. Requires every side in
    /// (0, π), perimeter < 2π, and strict triangle inequality.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let mut s = [x, y, z];
        for v in s {
            if !(v > 0.0 && v < PI) {
                domain_err!("side {v} outside (0, pi)");
            }
        }
        s.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let [a, b, c] = s;
        if a + b + c >= 2.0 * PI {
            domain_err!("perimeter {} not below 2 pi", a + b + c);
        }
        if c >= a + b {
            domain_err!("degenerate: max side {c} >= {a} + {b}");
        }
        Ok(SphericalTriangle { a, b, c })
    }

    pub fn sides(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    /// Maximal side (spherical arc).
    pub fn max_side(&self) -> f64 {
        self.c
    }

    /// Spherical area (excess), always in (0, 2π). Uses the half-perimeter
    /// product form; validity of the triangle guarantees every tangent
    /// factor is positive.
    pub fn excess(&self) -> f64 {
        let s = 0.5 * (self.a + self.b + self.c);
        let t = (s / 2.0).tan()
            * ((s - self.a) / 2.0).tan()
            * ((s - self.b) / 2.0).tan()
            * ((s - self.c) / 2.0).tan();
        4.0 * t.max(0.0).sqrt().atan()
    }

    /// Embed as vertices on the unit sphere: A at the north pole, B in the
    /// x–z plane at arc `c`, C placed so that |BC| = a and |CA| = b.
    pub fn embed(&self) -> [[f64; 3]; 3] {
        let (a, b, c) = (self.a, self.b, self.c);
        let va = [0.0, 0.0, 1.0];
        let vb = [c.sin(), 0.0, c.cos()];
        let cos_phi = ((a.cos() - b.cos() * c.cos()) / (b.sin() * c.sin())).clamp(-1.0, 1.0);
        let sin_phi = (1.0 - cos_phi * cos_phi).max(0.0).sqrt();
        let vc = [b.sin() * cos_phi, b.sin() * sin_phi, b.cos()];
        [va, vb, vc]
    }
}

/// Spherical excess (area) of the triangle with arc sides `a`, `b`, `c`.
pub fn lhuilier_excess(a: f64, b: f64, c: f64) -> Result<f64> {
    Ok(SphericalTriangle::new(a, b, c)?.excess())
}

/// Spherical excess of the isosceles triangle with two sides `a` and base
/// `c`, via the reduced one-radical form.
pub fn isosceles_excess(a: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && a < PI && c > 0.0 && c < PI) {
        domain_err!("isosceles sides a={a}, c={c} outside (0, pi)");
    }
    if 2.0 * a + c >= 2.0 * PI {
        domain_err!("isosceles perimeter {} not below 2 pi", 2.0 * a + c);
    }
    let sa2 = (a / 2.0).sin().powi(2);
    let sc4 = (c / 4.0).sin().powi(2);
    let num = sa2 - sc4;
    if num < 0.0 {
        domain_err!("radicand negative: base c={c} exceeds twice the side a={a}");
    }
    let den = 1.0 - sa2 - sc4;
    if den <= 0.0 {
        domain_err!("radicand denominator non-positive for a={a}, c={c}");
    }
    let t = (c / 4.0).tan() * (num / den).sqrt();
    Ok(4.0 * t.atan())
}

/// Interior spherical angles of a spherical polygon given by ordered unit
/// vertices, and the resulting excess (area): angle sum − (p−2)π.
///
/// Suitable for convex spherical polygons; for triangles this is the Girard
/// area and serves as an independent check on `lhuilier_excess`.
pub fn girard_excess(verts: &[[f64; 3]]) -> Result<f64> {
    let p = verts.len();
    if p < 3 {
        domain_err!("polygon needs at least 3 vertices, got {p}");
    }
    let mut sum = 0.0;
    for i in 0..p {
        let v = normalize_unit(verts[i])?;
        let prev = verts[(i + p - 1) % p];
        let next = verts[(i + 1) % p];
        // tangent directions at v toward both neighbours
        let tp = vec3::sub(prev, vec3::scale(v, vec3::dot(prev, v)));
        let tn = vec3::sub(next, vec3::scale(v, vec3::dot(next, v)));
        let (np, nn) = (vec3::norm(tp), vec3::norm(tn));
        if np < 1e-12 || nn < 1e-12 {
            domain_err!("degenerate polygon: vertex {i} coincides with a neighbour");
        }
        sum += (vec3::dot(tp, tn) / (np * nn)).clamp(-1.0, 1.0).acos();
    }
    Ok(sum - (p as f64 - 2.0) * PI)
}

/// Planar data of an inscribed triangle: chords, circumradius, face-plane
/// altitude and interior angles.
#[derive(Clone, Copy, Debug)]
pub struct ChordalTriangle {
    pub vertices: [[f64; 3]; 3],
    /// chords[k] is the side opposite vertex k: (|BC|, |CA|, |AB|).
    pub chords: [f64; 3],
    /// Circumradius of the planar triangle; r² + m² = 1.
    pub r: f64,
    /// Distance from the sphere center to the face plane.
    pub m: f64,
    /// Planar interior angles at A, B, C; they sum to π.
    pub alpha: [f64; 3],
    /// Sign of det(A, B, C): +1 if the vertex order is positively oriented
    /// as seen from outside, −1 otherwise.
    pub orientation: i8,
}

impl ChordalTriangle {
    /// Largest planar interior angle.
    pub fn max_alpha(&self) -> f64 {
        self.alpha.iter().cloned().fold(f64::MIN, f64::max)
    }

    /// Common-form area parameter: π minus the largest interior angle.
    /// Exceeds π/2 exactly when the circumcenter's foot lies inside the
    /// planar triangle.
    pub fn common_alpha(&self) -> f64 {
        PI - self.max_alpha()
    }

    /// Longest chord. The longest chord, the longest spherical arc and the
    /// largest interior angle always belong to the same side.
    pub fn max_chord(&self) -> f64 {
        self.chords.iter().cloned().fold(f64::MIN, f64::max)
    }

    /// Volume of the tetrahedron spanned by the face and the sphere center.
    pub fn facial_volume(&self) -> f64 {
        let [a, b, c] = self.vertices;
        vec3::det3(a, b, c).abs() / 6.0
    }
}

/// Analyze three unit vectors as an inscribed planar triangle.
pub fn chordal_analyze(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Result<ChordalTriangle> {
    let a = normalize_unit(a)?;
    let b = normalize_unit(b)?;
    let c = normalize_unit(c)?;
    let chords = [
        vec3::norm(vec3::sub(c, b)),
        vec3::norm(vec3::sub(a, c)),
        vec3::norm(vec3::sub(b, a)),
    ];
    let cross = vec3::cross(vec3::sub(b, a), vec3::sub(c, a));
    let twice_area = vec3::norm(cross);
    if twice_area / 2.0 <= 1e-12 {
        domain_err!("degenerate triangle: collinear vertices (area {:.3e})", twice_area / 2.0);
    }
    let n = vec3::scale(cross, 1.0 / twice_area);
    let m = vec3::dot(n, a).abs();
    let r = (1.0 - m * m).max(0.0).sqrt();
    // circumradius computed independently must agree with √(1−m²)
    let r_circ = chords[0] * chords[1] * chords[2] / (2.0 * twice_area);
    if (r_circ - r).abs() > 1e-9 {
        return Err(Error::Numerical(format!(
            "circumradius inconsistency: {r_circ} vs sqrt(1-m^2) = {r}"
        )));
    }
    let angle_at = |v: [f64; 3], p: [f64; 3], q: [f64; 3]| -> f64 {
        let u = vec3::sub(p, v);
        let w = vec3::sub(q, v);
        (vec3::dot(u, w) / (vec3::norm(u) * vec3::norm(w)))
            .clamp(-1.0, 1.0)
            .acos()
    };
    let alpha = [angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)];
    let orientation = if vec3::det3(a, b, c) >= 0.0 { 1 } else { -1 };
    Ok(ChordalTriangle {
        vertices: [a, b, c],
        chords,
        r,
        m,
        alpha,
        orientation,
    })
}

/// Unsigned volume of the facial tetrahedron with base ABC and apex at the
/// sphere center: |det(A,B,C)|/6.
pub fn facial_volume(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Result<f64> {
    Ok(facial_volume_signed(a, b, c)?.abs())
}

/// Signed variant: det(A,B,C)/6, positive when ABC is positively oriented
/// seen from outside the sphere.
pub fn facial_volume_signed(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Result<f64> {
    let a = normalize_unit(a)?;
    let b = normalize_unit(b)?;
    let c = normalize_unit(c)?;
    Ok(vec3::det3(a, b, c) / 6.0)
}

/// A circular sector–like configuration: central half-angle `α` and
/// spherical base angle `β`, restricted to the closed region where the
/// area function below is concave.
#[derive(Clone, Copy, Debug)]
pub struct CentralSector {
    pub alpha: f64,
    pub beta: f64,
}

impl CentralSector {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2 + 1e-12).contains(&alpha) || !(0.0..=FRAC_PI_2 + 1e-12).contains(&beta)
        {
            domain_err!("sector angles ({alpha}, {beta}) outside [0, pi/2]");
        }
        if alpha + beta < FRAC_PI_2 - 1e-12 {
            domain_err!("sector angles ({alpha}, {beta}) below the alpha+beta >= pi/2 region");
        }
        Ok(CentralSector { alpha, beta })
    }
}

/// Planar area term Δ(α, β) = ½ sin 2α (1 − cot²α cot²β).
pub fn sector_area(s: &CentralSector) -> Result<f64> {
    if s.alpha < 1e-12 || s.beta < 1e-12 {
        domain_err!("cotangent singular at alpha={} beta={}", s.alpha, s.beta);
    }
    let cot = |x: f64| x.cos() / x.sin();
    let ca = cot(s.alpha);
    let cb = cot(s.beta);
    Ok(0.5 * (2.0 * s.alpha).sin() * (1.0 - ca * ca * cb * cb))
}

/// Closed-form second partials (Δ_αα, Δ_αβ, Δ_ββ) of [`sector_area`],
/// via the split Δ = ½ sin 2α − g(α) cot²β with g = cos³α / sin α.
/// Used by the concavity verifier; finite differences of Δ lose too much
/// accuracy near the β → 0 corner where the cot² factor blows up.
pub(crate) fn sector_hessian(alpha: f64, beta: f64) -> Result<(f64, f64, f64)> {
    if alpha < 1e-12 || beta < 1e-12 {
        domain_err!("cotangent singular at alpha={alpha} beta={beta}");
    }
    let (sa, ca) = alpha.sin_cos();
    let g = ca.powi(3) / sa;
    let g1 = -2.0 * ca * ca - (ca / sa).powi(2);
    let g2 = 2.0 * (2.0 * alpha).sin() + 2.0 * (ca / sa) / (sa * sa);
    let (sb, cb) = beta.sin_cos();
    let cot_b = cb / sb;
    let csc2 = 1.0 / (sb * sb);
    let d_cot2 = -2.0 * cot_b * csc2;
    let d2_cot2 = 2.0 * csc2 * csc2 + 4.0 * cot_b * cot_b * csc2;
    let h_aa = -2.0 * (2.0 * alpha).sin() - g2 * cot_b * cot_b;
    let h_ab = -g1 * d_cot2;
    let h_bb = -g * d2_cot2;
    Ok((h_aa, h_ab, h_bb))
}

/// Core of the common-form area relation for the isosceles p-gon family:
/// ψ = atan(m tan α) − (p−1) atan(m tan(α/(p−1))), τ = 2ψ (+2π when the
/// common-form angle is obtuse). No validation; see the public wrappers.
pub(crate) fn tau_pgon_raw(m: f64, alpha: f64, p: u32) -> f64 {
    let q = (p - 1) as f64;
    let psi = (m * alpha.tan()).atan() - q * (m * (alpha / q).tan()).atan();
    2.0 * psi + if alpha > FRAC_PI_2 { 2.0 * PI } else { 0.0 }
}

/// Spherical area of the isosceles triangle with face-plane altitude `m`
/// and common-form angle `alpha` (π minus the largest planar interior
/// angle). Evaluated by a pole-free closed form valid on all of (0, π) —
/// no case split at α = π/2 — and cross-validated against the direct
/// excess of the reconstructed triangle.
pub fn tau_from_m_alpha(m: f64, alpha: f64) -> Result<f64> {
    validate_m_alpha(m, alpha)?;
    let m2 = m * m;
    let num = m * (1.0 - m2) * alpha.sin() * (1.0 - alpha.cos());
    let den = (1.0 - m2) * alpha.cos() * (1.0 + alpha.cos()) + 2.0 * m2;
    let tau = 2.0 * num.atan2(den);
    // independent reconstruction: legs subtend α/2, base subtends π−α,
    // chords scale with the circumradius √(1−m²)
    let r = (1.0 - m2).sqrt();
    let leg = 2.0 * (r * (alpha / 2.0).sin()).asin();
    let base = 2.0 * (r * alpha.sin()).asin();
    let check = lhuilier_excess(leg, leg, base)?;
    if (tau - check).abs() > 1e-8 {
        return Err(Error::Numerical(format!(
            "area relation mismatch: closed form {tau} vs reconstructed excess {check}"
        )));
    }
    Ok(tau)
}

/// Generalization of [`tau_from_m_alpha`] to the equal-sided p-gon with one
/// distinguished side: the p−1 equal sides each subtend α/(p−1), the
/// distinguished side subtends π−α.
pub fn tau_from_m_alpha_pgon(m: f64, alpha: f64, p: u32) -> Result<f64> {
    if p < 3 {
        domain_err!("polygon needs p >= 3, got {p}");
    }
    validate_m_alpha(m, alpha)?;
    let tau = tau_pgon_raw(m, alpha, p);
    if p == 3 {
        let t3 = tau_from_m_alpha(m, alpha)?;
        if (tau - t3).abs() > 1e-8 {
            return Err(Error::Numerical(format!(
                "p-gon area relation mismatch at p=3: {tau} vs {t3}"
            )));
        }
    }
    Ok(tau)
}

fn validate_m_alpha(m: f64, alpha: f64) -> Result<()> {
    if !(m > 0.0 && m < 1.0) {
        domain_err!("altitude m={m} outside (0, 1)");
    }
    if !(alpha > 0.0 && alpha < PI) {
        domain_err!("common-form angle alpha={alpha} outside (0, pi)");
    }
    Ok(())
}

/// Volume of the pyramid over an inscribed polygon whose circumcenter foot
/// is separated from the polygon by its longest side: `alphas` are the
/// central half-angles of the non-maximal sides (they sum to below π/2).
pub fn obtuse_volume(m: f64, alphas: &[f64]) -> Result<f64> {
    if alphas.is_empty() {
        domain_err!("empty central-angle list");
    }
    if !(0.0..1.0).contains(&m) {
        domain_err!("altitude m={m} outside [0, 1)");
    }
    let mut sum = 0.0;
    let mut sin_sum = 0.0;
    for &a in alphas {
        if a <= 0.0 {
            domain_err!("central angle {a} not positive");
        }
        sum += a;
        sin_sum += (2.0 * a).sin();
    }
    if sum >= FRAC_PI_2 + 1e-12 {
        domain_err!("central angles sum to {sum}, not below pi/2");
    }
    Ok(m * (1.0 - m * m) / 6.0 * (sin_sum - (2.0 * sum).sin()))
}
