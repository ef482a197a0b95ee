//! Concavity analysis of the per-face bound v(τ, c) from
//! [`crate::bounds::v_tau_c`]: closed-form second partials, the
//! Hessian-zero boundary curve c = f(τ), the constant ω where that curve
//! reaches the admissible arc cap, point classification into the concave /
//! monotone-decrease / outside regions, sign grids for plotting, and the
//! palindromic quartic cross-check.
//!
//! Writing u = τ/2, w = c/2, S = sin u, C = cos u, s = sin w, k = cos w and
//! D = 1 − Ck, the bound takes the product form v = S s² k/(3D), from which
//! all partials below are derived by hand and validated against finite
//! differences.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds::cap_arc;
use crate::error::{domain_err, Error, Result};

/// Classification of a parameter point (τ, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// v(τ, ·) jointly concave: τ < π/2 and τ ≤ c ≤ min(f(τ), cap).
    Concave,
    /// v(τ, ·) strictly decreasing in c: τ ≤ ω and f(τ) ≤ c ≤ cap.
    Monotone,
    /// Everything else; the aggregated bounds do not apply.
    Outside,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Concave => "concave",
            Region::Monotone => "monotone",
            Region::Outside => "outside",
        })
    }
}

/// Value and all first/second partials of v at one point.
#[derive(Clone, Copy, Debug)]
struct Parts {
    v: f64,
    v_tau: f64,
    v_c: f64,
    v_tautau: f64,
    v_tauc: f64,
    v_cc: f64,
}

/// Closed-form partials; requires only that the denominator D = 1 −
/// cos(τ/2)cos(c/2) stays away from zero.
fn parts(tau: f64, c: f64) -> Result<Parts> {
    let (su, cu) = (tau / 2.0).sin_cos();
    let (sw, kw) = (c / 2.0).sin_cos();
    let (s2, k2) = (sw * sw, kw * kw);
    // cancellation-free spelling of 1 − cos(τ/2)cos(c/2)
    let d = 2.0 * (tau / 4.0).sin().powi(2) + cu * 2.0 * (c / 4.0).sin().powi(2);
    if d < 1e-15 {
        domain_err!("denominator 1 - cos(tau/2)cos(c/2) = {d} too small at ({tau}, {c})");
    }
    let (d2, d3) = (d * d, d * d * d);
    let v = su * s2 * kw / (3.0 * d);
    let v_tau = s2 * kw * (cu - kw) / (6.0 * d2);
    let v_c = su * sw * ((2.0 * k2 - s2) * d - cu * s2 * kw) / (6.0 * d2);
    let v_tautau = -su * s2 * kw * (1.0 + cu * kw - 2.0 * k2) / (12.0 * d3);
    let v_tauc = sw / 12.0
        * (((2.0 * k2 - s2) * (cu - kw) + s2 * kw) * d - 2.0 * cu * s2 * kw * (cu - kw))
        / d3;
    let n_c = sw * (2.0 * k2 - s2) * d - cu * sw * s2 * kw;
    let v_cc = su / 12.0
        * ((kw * (2.0 * k2 - 7.0 * s2) * d - cu * s2 * k2) * d - 2.0 * cu * sw * n_c)
        / d3;
    Ok(Parts {
        v,
        v_tau,
        v_c,
        v_tautau,
        v_tauc,
        v_cc,
    })
}

/// Second partials of v at one parameter point, with the Hessian
/// determinant.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HessianSample {
    pub tau: f64,
    pub c: f64,
    pub v_tautau: f64,
    pub v_tauc: f64,
    pub v_cc: f64,
    pub det: f64,
}

impl HessianSample {
    /// Largest eigenvalue of the symmetric 2×2 Hessian.
    pub fn max_eigenvalue(&self) -> f64 {
        let tr = self.v_tautau + self.v_cc;
        let disc = (tr * tr - 4.0 * self.det).max(0.0).sqrt();
        0.5 * (tr + disc)
    }
}

/// Closed-form Hessian of v at an interior parameter point
/// (0 < τ < π/2, τ < c < π).
pub fn hessian_v(tau: f64, c: f64) -> Result<HessianSample> {
    if !(tau > 0.0 && tau < FRAC_PI_2) {
        domain_err!("tau {tau} outside (0, pi/2)");
    }
    if !(c > tau && c < PI) {
        domain_err!("c {c} outside (tau, pi) for tau = {tau}");
    }
    let p = parts(tau, c)?;
    Ok(HessianSample {
        tau,
        c,
        v_tautau: p.v_tautau,
        v_tauc: p.v_tauc,
        v_cc: p.v_cc,
        det: p.v_tautau * p.v_cc - p.v_tauc * p.v_tauc,
    })
}

/// First partial ∂v/∂c, available on the whole parameter rectangle.
pub fn dv_dc(tau: f64, c: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 2.0 * PI && c > 0.0 && c < PI) {
        domain_err!("parameters ({tau}, {c}) out of range");
    }
    Ok(parts(tau, c)?.v_c)
}

/// First partial ∂v/∂τ.
pub fn dv_dtau(tau: f64, c: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 2.0 * PI && c > 0.0 && c < PI) {
        domain_err!("parameters ({tau}, {c}) out of range");
    }
    Ok(parts(tau, c)?.v_tau)
}

fn det_at(tau: f64, c: f64) -> Result<f64> {
    let p = parts(tau, c)?;
    Ok(p.v_tautau * p.v_cc - p.v_tauc * p.v_tauc)
}

/// The Hessian-zero boundary curve: the root c = f(τ) of det(τ, c) = 0 in
/// (τ, cap], found by bisection to 1e-10. Exists exactly for τ ≤ ω; for
/// larger τ the determinant keeps its sign up to the cap and a no-root
/// error is returned.
pub fn f_boundary(tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < FRAC_PI_2) {
        domain_err!("tau {tau} outside (0, pi/2)");
    }
    let cap = cap_arc();
    let lo0 = tau + 1e-9;
    let g_lo = det_at(tau, lo0)?;
    let g_hi = det_at(tau, cap)?;
    if g_lo <= 0.0 {
        return Err(Error::Numerical(format!(
            "determinant not positive at the lower bracket for tau={tau}"
        )));
    }
    if g_hi > 0.0 {
        return Err(Error::Numerical(format!(
            "no Hessian zero below the arc cap for tau={tau}: the concave region extends to the cap"
        )));
    }
    let (mut lo, mut hi) = (lo0, cap);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if det_at(tau, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The τ at which the boundary curve reaches the arc cap: f(ω) = cap.
/// Computed once by bisection on det(τ, cap) to 1e-8 and cached.
pub fn omega() -> f64 {
    static OMEGA: OnceLock<f64> = OnceLock::new();
    *OMEGA.get_or_init(|| {
        let cap = cap_arc();
        // det(·, cap) < 0 below ω (the cap lies beyond the curve) and > 0
        // above
        let (mut lo, mut hi) = (0.01, FRAC_PI_2 - 0.01);
        debug_assert!(det_at(lo, cap).unwrap() < 0.0);
        debug_assert!(det_at(hi, cap).unwrap() > 0.0);
        while hi - lo > 1e-8 {
            let mid = 0.5 * (lo + hi);
            if det_at(mid, cap).unwrap() < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// Classify a parameter point. Boundary ties resolve to the concave
/// region (the aggregated bounds use the closed region), with a 1e-7
/// tolerance on the curve comparison — wide enough to absorb the 1e-8
/// bisection accuracy of [`omega`] at the cap corner.
pub fn classify(tau: f64, c: f64) -> Region {
    let cap = cap_arc();
    if !(tau > 0.0) || !(c > 0.0) {
        return Region::Outside;
    }
    if tau >= FRAC_PI_2 || c < tau || c > cap + 1e-12 {
        return Region::Outside;
    }
    if tau > omega() {
        // the boundary curve exceeds the cap here, so c ≤ cap is concave
        return Region::Concave;
    }
    match f_boundary(tau) {
        Ok(f) => {
            if c <= f + 1e-7 {
                Region::Concave
            } else {
                Region::Monotone
            }
        }
        // no curve crossing: concave all the way to the cap
        Err(_) => Region::Concave,
    }
}

/// One cell of the sign grid emitted for external plotting.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridCell {
    pub tau: f64,
    pub c: f64,
    pub v: f64,
    pub det_sign: i8,
    pub dvdc_sign: i8,
}

/// Sign grid of the Hessian determinant and ∂v/∂c over cell centers of
/// (0, π/2) × (0, cap).
pub fn region_grid(resolution: u32) -> Result<Vec<GridCell>> {
    if resolution < 16 {
        domain_err!("grid resolution {resolution} below 16");
    }
    let cap = cap_arc();
    let n = resolution as usize;
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        let tau = (i as f64 + 0.5) * FRAC_PI_2 / n as f64;
        for j in 0..n {
            let c = (j as f64 + 0.5) * cap / n as f64;
            let p = parts(tau, c)?;
            let det = p.v_tautau * p.v_cc - p.v_tauc * p.v_tauc;
            cells.push(GridCell {
                tau,
                c,
                v: p.v,
                det_sign: sign_of(det),
                dvdc_sign: sign_of(p.v_c),
            });
        }
    }
    Ok(cells)
}

fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Sampled boundary curve c = f(τ) over (0, ω].
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryCurve {
    /// (τ, f(τ)) pairs at uniformly spaced τ, ending exactly at ω.
    pub samples: Vec<(f64, f64)>,
    pub bracket_tolerance: f64,
    /// Right end of the validity range (= ω).
    pub tau_max: f64,
}

/// Sample the boundary curve at `n` uniformly spaced points ω/n, 2ω/n, …, ω.
pub fn boundary_curve(n: usize) -> Result<BoundaryCurve> {
    if n < 2 {
        domain_err!("need at least 2 samples, got {n}");
    }
    let w = omega();
    let mut samples = Vec::with_capacity(n);
    for i in 1..=n {
        let tau = w * i as f64 / n as f64;
        samples.push((tau, f_boundary(tau)?));
    }
    Ok(BoundaryCurve {
        samples,
        bracket_tolerance: 1e-10,
        tau_max: w,
    })
}

/// The four real roots of z⁴ − 24z³ + 78z² − 24z + 1, ascending, via the
/// palindromic substitution w = z + 1/z (w² − 24w + 76 = 0). The smaller
/// root of each pair is computed as 2/(w + √(w²−4)) to avoid cancellation.
pub fn quartic_roots() -> [f64; 4] {
    let s17 = 17f64.sqrt();
    let pair = |w: f64| {
        let d = (w * w - 4.0).sqrt();
        (2.0 / (w + d), (w + d) / 2.0)
    };
    let (a_lo, a_hi) = pair(12.0 - 2.0 * s17);
    let (b_lo, b_hi) = pair(12.0 + 2.0 * s17);
    let mut roots = [b_lo, a_lo, a_hi, b_hi];
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots
}
