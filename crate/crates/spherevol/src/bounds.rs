//! Closed-form volume bounds for polyhedra inscribed in the unit sphere.
//!
//! The bound family has three layers:
//!
//! * combinatorial bounds `u_general` / `u_triangle` / `polyhedron_bound` /
//!   `icosahedron_bound` that depend only on face counts (and the face
//!   areas through `τ`),
//! * per-face bounds `v_*` parameterized by geometric face data (altitude,
//!   chord, maximal arc, area), culminating in `v_tau_c(τ, c)` — the
//!   maximal facial-pyramid volume among faces with spherical area `τ` and
//!   maximal arc `c`,
//! * aggregated mesh bounds `mixed_face_bound` / `uniform_bound` that sum
//!   `v_tau_c` over a face classification by concavity region, and the
//!   five-area assembly bound used for the two-tetrahedra configuration.
//!
//! All bounds return the enclosed-volume cap for the unit sphere; the two
//! combinatorial bounds accept an explicit radius and scale by `R³`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::domain::{self, Region};
use crate::error::{domain_err, Error, Result};
use crate::spherical::tau_pgon_raw;

/// Maximal spherical edge arc admitted by the aggregated bounds:
/// 2 asin √(2/3), the arc subtended by a cube's face diagonal.
pub fn cap_arc() -> f64 {
    2.0 * (2f64 / 3.0).sqrt().asin()
}

/// Volume bound for a single face pyramid of an f-face polyhedron whose
/// faces are p-gons, as a function of the face's spherical area `τ`:
/// U = (p/3) cos²(π/p) y (1 − cot²(π/p) y²) with y = tan((2π−τ)/(2p)).
///
/// `p` may be any real ≥ 3 (non-integer values are used by the concavity
/// grid tests); the CLI restricts it to integers.
pub fn u_general(tau: f64, p: f64) -> Result<f64> {
    if !(tau > 0.0 && tau <= PI) {
        domain_err!("tau {tau} outside (0, pi]");
    }
    if !(p >= 3.0) {
        domain_err!("p {p} below 3");
    }
    let y = ((2.0 * PI - tau) / (2.0 * p)).tan();
    let cot_pp = 1.0 / (PI / p).tan();
    Ok(p / 3.0 * (PI / p).cos().powi(2) * y * (1.0 - cot_pp * cot_pp * y * y))
}

/// Triangular-face specialization of [`u_general`]:
/// U = ¼ tan((2π−τ)/6) (1 − ⅓ tan²((2π−τ)/6)).
pub fn u_triangle(tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau <= PI) {
        domain_err!("tau {tau} outside (0, pi]");
    }
    let y = ((2.0 * PI - tau) / 6.0).tan();
    Ok(0.25 * y * (1.0 - y * y / 3.0))
}

/// Combinatorial volume bound from face/vertex/edge counts:
/// V ≤ (2e/3) cos²(πf/2e) cot(πv/2e) (1 − cot²(πf/2e) cot²(πv/2e)) R³.
pub fn polyhedron_bound(f: u32, v: u32, e: u32, radius: f64) -> Result<f64> {
    if f == 0 || v == 0 || e == 0 {
        domain_err!("counts must be positive: f={f} v={v} e={e}");
    }
    if f + v != e + 2 {
        domain_err!("Euler check failed: f + v = {} but e + 2 = {}", f + v, e + 2);
    }
    if !(radius > 0.0) {
        domain_err!("radius {radius} not positive");
    }
    let (f, v, e) = (f as f64, v as f64, e as f64);
    let cf = (PI * f / (2.0 * e)).cos() / (PI * f / (2.0 * e)).sin();
    let cv = (PI * v / (2.0 * e)).cos() / (PI * v / (2.0 * e)).sin();
    let cos2 = (PI * f / (2.0 * e)).cos().powi(2);
    Ok(2.0 * e / 3.0 * cos2 * cv * (1.0 - cf * cf * cv * cv) * radius.powi(3))
}

/// Volume bound for an inscribed polyhedron with `n` vertices:
/// with ω_n = (n/(n−2))·(π/6), V ≤ (1/6)(n−2) cot ω_n (3 − cot²ω_n) R³.
/// Sharp exactly for the regular tetrahedron, octahedron and icosahedron.
pub fn icosahedron_bound(n: u32, radius: f64) -> Result<f64> {
    if n < 4 {
        domain_err!("vertex count {n} below 4");
    }
    if !(radius > 0.0) {
        domain_err!("radius {radius} not positive");
    }
    let nf = n as f64;
    let w = nf / (nf - 2.0) * PI / 6.0;
    let cot = w.cos() / w.sin();
    Ok((nf - 2.0) / 6.0 * cot * (3.0 - cot * cot) * radius.powi(3))
}

/// Facial-pyramid volume of the isosceles face with altitude `m` and
/// common-form angle `α`: v = m(1−m²)/3 · sin α (1 − cos α).
pub fn v_m_alpha(m: f64, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        domain_err!("altitude m={m} outside [0, 1]");
    }
    if !(alpha > 0.0 && alpha < PI) {
        domain_err!("angle alpha={alpha} outside (0, pi)");
    }
    Ok(m * (1.0 - m * m) / 3.0 * alpha.sin() * (1.0 - alpha.cos()))
}

/// Facial-pyramid volume in terms of the fixed chord |AB| and the angle α
/// opposite it: v = (|AB|²/12) √(sin²α − |AB|²/4) / (1 + cos α).
pub fn v_chord_alpha(chord: f64, alpha: f64) -> Result<f64> {
    if !(chord > 0.0 && chord < 2.0) {
        domain_err!("chord {chord} outside (0, 2)");
    }
    if !(alpha > 0.0 && alpha < PI) {
        domain_err!("angle alpha={alpha} outside (0, pi)");
    }
    let rad = alpha.sin().powi(2) - chord * chord / 4.0;
    if rad < -1e-15 {
        domain_err!("radicand negative: sin^2(alpha) < chord^2/4 for chord={chord}, alpha={alpha}");
    }
    Ok(chord * chord / 12.0 * rad.max(0.0).sqrt() / (1.0 + alpha.cos()))
}

/// Arc-parameter variant of [`v_chord_alpha`].
pub fn v_arc_alpha(arc: f64, alpha: f64) -> Result<f64> {
    v_chord_alpha(crate::spherical::arc_to_chord(arc)?, alpha)
}

/// The angle maximizing [`v_chord_alpha`] at fixed chord, with the maximal
/// value: α* = acos(|AB|²/4 − 1), max = (|AB|/6)√(1 − |AB|²/4) = sin(arc)/6.
pub fn v_alpha_maximizer(chord: f64) -> Result<(f64, f64)> {
    if !(chord > 0.0 && chord < 2.0) {
        domain_err!("chord {chord} outside (0, 2)");
    }
    let alpha_star = (chord * chord / 4.0 - 1.0).acos();
    let vmax = chord / 6.0 * (1.0 - chord * chord / 4.0).sqrt();
    Ok((alpha_star, vmax))
}

/// Mixed-parameter bound in terms of area `τ`, chord |AB| and angle α:
/// V ≤ (1/3) tan(τ/2) (2 − (|AB|²/4)(1 + 1/(1 + cos α))).
pub fn v_tau_chord(tau: f64, chord: f64, alpha: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < PI) {
        domain_err!("tau {tau} outside (0, pi)");
    }
    if !(chord >= 0.0 && chord < 2.0) {
        domain_err!("chord {chord} outside [0, 2)");
    }
    if !(alpha > 0.0 && alpha < PI) {
        domain_err!("angle alpha={alpha} outside (0, pi)");
    }
    Ok((tau / 2.0).tan() / 3.0 * (2.0 - chord * chord / 4.0 * (1.0 + 1.0 / (1.0 + alpha.cos()))))
}

/// Maximal facial-pyramid volume among inscribed triangles with spherical
/// area `τ` and maximal spherical arc `c`:
/// v = (1/6) sin c (cos((τ−c)/2) − cos(τ/2) cos(c/2)) / (1 − cos(c/2) cos(τ/2)).
/// Attained exactly by the isosceles triangle whose two equal sides are the
/// non-maximal ones.
pub fn v_tau_c(tau: f64, c: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 2.0 * PI) {
        domain_err!("tau {tau} outside (0, 2 pi)");
    }
    if !(c > 0.0 && c < PI) {
        domain_err!("max arc c={c} outside (0, pi)");
    }
    // cos((τ−c)/2) − cos(τ/2)cos(c/2) = sin(τ/2)sin(c/2), and the
    // denominator expands as 1 − ab = (1−a) + a(1−b) with 1−cos x =
    // 2 sin²(x/2); both rewrites avoid cancellation for small angles
    let den = 2.0 * (tau / 4.0).sin().powi(2)
        + (tau / 2.0).cos() * 2.0 * (c / 4.0).sin().powi(2);
    if den <= 0.0 {
        domain_err!("degenerate parameters: 1 - cos(c/2)cos(tau/2) = {den}");
    }
    Ok(c.sin() / 6.0 * (tau / 2.0).sin() * (c / 2.0).sin() / den)
}

/// Maximal arc of the equilateral triangle with spherical area τ, by the
/// cubic-reduction inverse of the equilateral area relation:
/// cos(c/2) = −1/(2 cos((τ+4π)/6)).
pub fn equilateral_c_from_tau(tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 2.0 * PI / 3.0) {
        domain_err!("tau {tau} outside (0, 2 pi/3)");
    }
    let g = ((tau + 4.0 * PI) / 6.0).cos();
    if g >= 0.0 {
        domain_err!("inversion leaves the monotone regime at tau={tau}");
    }
    let ch = -1.0 / (2.0 * g);
    if !(0.0..=1.0).contains(&ch) {
        domain_err!("no equilateral triangle with area tau={tau}");
    }
    Ok(2.0 * ch.acos())
}

/// Per-face parameters entering the aggregated bounds: spherical area,
/// maximal spherical edge arc, and the concavity-region classification.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FaceStats {
    pub tau: f64,
    pub c: f64,
    pub class: Region,
}

impl FaceStats {
    pub fn new(tau: f64, c: f64) -> Result<Self> {
        if !(tau > 0.0 && c > 0.0) {
            domain_err!("face stats need positive tau and c, got ({tau}, {c})");
        }
        Ok(FaceStats {
            tau,
            c,
            class: domain::classify(tau, c),
        })
    }
}

/// Partition of a mesh's faces by concavity region, with the aggregate
/// means entering the mixed bound.
#[derive(Clone, Debug)]
pub struct FaceClassification {
    pub d_faces: Vec<FaceStats>,
    pub dprime_faces: Vec<FaceStats>,
}

impl FaceClassification {
    /// Partition face stats; every face must lie in one of the two
    /// admissible regions and have area below π/2.
    pub fn new(faces: &[FaceStats]) -> Result<Self> {
        let mut d_faces = Vec::new();
        let mut dprime_faces = Vec::new();
        for (i, &fs) in faces.iter().enumerate() {
            if !(fs.tau > 0.0 && fs.tau < FRAC_PI_2) {
                domain_err!("face {i} has area tau={} outside (0, pi/2)", fs.tau);
            }
            let class = domain::classify(fs.tau, fs.c);
            if class != fs.class {
                domain_err!(
                    "face {i} carries class {} but (tau, c) = ({}, {}) classifies as {}",
                    fs.class,
                    fs.tau,
                    fs.c,
                    class
                );
            }
            match class {
                Region::Concave => d_faces.push(fs),
                Region::Monotone => dprime_faces.push(fs),
                Region::Outside => {
                    domain_err!(
                        "face {i} with (tau, c) = ({}, {}) is outside the bound's parameter domain",
                        fs.tau,
                        fs.c
                    )
                }
            }
        }
        if d_faces.len() + dprime_faces.len() < 4 {
            domain_err!("a closed triangular mesh needs at least 4 faces");
        }
        Ok(FaceClassification { d_faces, dprime_faces })
    }

    pub fn f(&self) -> usize {
        self.d_faces.len() + self.dprime_faces.len()
    }

    pub fn f_prime(&self) -> usize {
        self.d_faces.len()
    }

    /// Mean maximal arc over the concave-region faces.
    pub fn c_prime(&self) -> Option<f64> {
        mean(self.d_faces.iter().map(|f| f.c))
    }

    /// Mean of the boundary-curve values f(τ_j) over the monotone-region
    /// faces — the arc each such face is shrunk to.
    pub fn c_star(&self) -> Result<Option<f64>> {
        if self.dprime_faces.is_empty() {
            return Ok(None);
        }
        let mut sum = 0.0;
        for fs in &self.dprime_faces {
            sum += domain::f_boundary(fs.tau)?;
        }
        Ok(Some(sum / self.dprime_faces.len() as f64))
    }

    /// Total spherical area of the monotone-region faces.
    pub fn tau_prime(&self) -> f64 {
        self.dprime_faces.iter().map(|f| f.tau).sum()
    }

    /// The single arc parameter entering the mixed bound:
    /// C̄ = (f′·c′ + (f−f′)·c★)/f.
    pub fn mean_arc(&self) -> Result<f64> {
        let f = self.f() as f64;
        let fp = self.f_prime() as f64;
        let c_prime = self.c_prime().unwrap_or(0.0);
        let c_star = self.c_star()?.unwrap_or(0.0);
        Ok((fp * c_prime + (f - fp) * c_star) / f)
    }
}

fn mean(it: impl Iterator<Item = f64>) -> Option<f64> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for x in it {
        sum += x;
        n += 1;
    }
    (n > 0).then(|| sum / n as f64)
}

/// Aggregated volume bound for a star-shaped triangular mesh from its face
/// classification: v(P) ≤ f · v_tau_c(4π/f, C̄). Faces in the monotone
/// region enter through the boundary-curve arc f(τ); concave-region faces
/// through their own maximal arc.
pub fn mixed_face_bound(fc: &FaceClassification) -> Result<f64> {
    let f = fc.f() as f64;
    let c_bar = fc.mean_arc()?;
    Ok(f * v_tau_c(4.0 * PI / f, c_bar)?)
}

/// Uniform-face form of [`mixed_face_bound`] when every face is in the
/// concave region with mean maximal arc `c`: v ≤ f · v_tau_c(4π/f, c).
pub fn uniform_bound(f: u32, c: f64) -> Result<f64> {
    if f < 4 {
        domain_err!("face count {f} below 4");
    }
    Ok(f as f64 * v_tau_c(4.0 * PI / f as f64, c)?)
}

/// One summand of the five-area assembly bound: the maximal facial volume
/// at area τ when the maximal arc is pinned at the admissible cap,
/// (2/9) sin(τ/2)/(√3 − cos(τ/2)) = v_tau_c(τ, cap_arc()).
pub fn cap_term(tau: f64) -> Result<f64> {
    if !(0.0..=2.0 * PI).contains(&tau) {
        domain_err!("tau {tau} outside [0, 2 pi]");
    }
    if tau == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 / 9.0 * (tau / 2.0).sin() / (3f64.sqrt() - (tau / 2.0).cos()))
}

/// Assembled upper bound for the union of two inscribed regular tetrahedra
/// sharing no vertex pattern: one face of area π, six of area π/3, and five
/// remaining areas `taus` summing to π, all with maximal arc at the cap.
pub fn two_tetra_assembly_bound(taus: &[f64]) -> Result<f64> {
    if taus.len() != 5 {
        domain_err!("assembly needs exactly 5 areas, got {}", taus.len());
    }
    let mut sum = 0.0;
    for &t in taus {
        if t < 0.0 {
            domain_err!("negative area {t}");
        }
        sum += t;
    }
    if (sum - PI).abs() > 1e-9 {
        domain_err!("areas sum to {sum}, expected pi");
    }
    let cap = cap_arc();
    let mut total = v_tau_c(PI, cap)? + 6.0 * v_tau_c(PI / 3.0, cap)?;
    for &t in taus {
        total += cap_term(t)?;
    }
    Ok(total)
}

fn validate_pgon(p: u32) -> Result<()> {
    if p < 3 {
        domain_err!("polygon needs p >= 3, got {p}");
    }
    Ok(())
}

/// Facial-pyramid volume of the equal-sided p-gon with one distinguished
/// side, altitude `m` and common-form angle `α`:
/// v = m(1−m²)/6 ((p−1) sin(2α/(p−1)) − sin 2α).
pub fn v_pgon_m_alpha(m: f64, alpha: f64, p: u32) -> Result<f64> {
    validate_pgon(p)?;
    if !(0.0..=1.0).contains(&m) {
        domain_err!("altitude m={m} outside [0, 1]");
    }
    if !(alpha > 0.0 && alpha < PI) {
        domain_err!("angle alpha={alpha} outside (0, pi)");
    }
    let q = (p - 1) as f64;
    Ok(m * (1.0 - m * m) / 6.0 * (q * (2.0 * alpha / q).sin() - (2.0 * alpha).sin()))
}

/// Chord-parameter variant of [`v_pgon_m_alpha`]: the altitude is recovered
/// from sin α = chord/(2√(1−m²)).
pub fn v_pgon_chord_alpha(chord: f64, alpha: f64, p: u32) -> Result<f64> {
    validate_pgon(p)?;
    if !(chord > 0.0 && chord < 2.0) {
        domain_err!("chord {chord} outside (0, 2)");
    }
    if !(alpha > 0.0 && alpha < PI) {
        domain_err!("angle alpha={alpha} outside (0, pi)");
    }
    let rad = 1.0 - chord * chord / (4.0 * alpha.sin().powi(2));
    if rad < -1e-15 {
        domain_err!("radicand negative: sin^2(alpha) < chord^2/4 for chord={chord}, alpha={alpha}");
    }
    v_pgon_m_alpha(rad.max(0.0).sqrt(), alpha, p)
}

/// Arc-parameter variant of [`v_pgon_chord_alpha`].
pub fn v_pgon_arc_alpha(arc: f64, alpha: f64, p: u32) -> Result<f64> {
    v_pgon_chord_alpha(crate::spherical::arc_to_chord(arc)?, alpha, p)
}

/// Volume of the equal-sided p-gon face with spherical area `τ` and
/// common-form angle `α`: numerically inverts the p-gon area relation for
/// the altitude m ∈ (0, 1) and evaluates [`v_pgon_m_alpha`] there. When the
/// area relation admits two altitudes the larger volume is returned.
pub fn pgon_tau_bound(tau: f64, alpha: f64, p: u32) -> Result<f64> {
    validate_pgon(p)?;
    if !(tau > 0.0 && tau < 2.0 * PI) {
        domain_err!("tau {tau} outside (0, 2 pi)");
    }
    if !(alpha > 0.0 && alpha < PI) {
        domain_err!("angle alpha={alpha} outside (0, pi)");
    }
    let roots = altitude_roots(tau, alpha, p);
    if roots.is_empty() {
        return Err(Error::Numerical(format!(
            "no altitude in (0,1) realizes area tau={tau} at alpha={alpha}, p={p}"
        )));
    }
    let mut best = f64::MIN;
    for m in roots {
        best = best.max(v_pgon_m_alpha(m, alpha, p)?);
    }
    Ok(best)
}

/// All roots m ∈ (0,1) of the p-gon area relation τ(m) = τ, by a 256-cell
/// sign scan plus bisection. τ(m) is monotone for obtuse α and unimodal
/// otherwise, so at most two roots exist.
fn altitude_roots(tau: f64, alpha: f64, p: u32) -> Vec<f64> {
    const CELLS: usize = 256;
    let lo = 1e-9;
    let hi = 1.0 - 1e-9;
    let g = |m: f64| tau_pgon_raw(m, alpha, p) - tau;
    let mut roots = Vec::new();
    let mut prev_m = lo;
    let mut prev_g = g(lo);
    for i in 1..=CELLS {
        let m = lo + (hi - lo) * i as f64 / CELLS as f64;
        let gm = g(m);
        if prev_g == 0.0 {
            roots.push(prev_m);
        } else if prev_g * gm < 0.0 {
            let (mut a, mut b) = (prev_m, m);
            let mut ga = prev_g;
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                let gmid = g(mid);
                if ga * gmid <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    ga = gmid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_m = m;
        prev_g = gm;
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots
}
