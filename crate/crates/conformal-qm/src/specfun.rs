//! Special functions for the radial and angular eigenfunction factors:
//! generalized Laguerre polynomials (integer and half-integer upper
//! index) with derivatives, associated Legendre functions, and complex
//! spherical harmonics with angular derivatives.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Degree guard for the Laguerre recurrence at desk scale.
pub const LAGUERRE_MAX_DEGREE: u32 = 60;
/// Degree guard for spherical harmonics at desk scale.
pub const SPHERICAL_MAX_DEGREE: u32 = 8;
/// Angular-derivative recurrences divide by sin(theta); evaluation this
/// close to a pole is rejected for l >= 1.
pub const POLE_MARGIN: f64 = 1e-6;

/// n! computed by direct product. Exact for n <= 18 (below 2^53) and
/// correctly rounded per step beyond; callers here stay well under 60.
pub fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Value and first derivative of a generalized Laguerre polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreEval {
    pub value: f64,
    pub derivative: f64,
}

fn laguerre_value(n: u32, alpha: f64, x: f64) -> f64 {
    // Upward three-term recurrence in n:
    // (k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}
    if n == 0 {
        return 1.0;
    }
    let mut lm1 = 1.0;
    let mut l = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * l - (kf + alpha) * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

fn check_laguerre_domain(n: u32, alpha: f64, x: f64) -> Result<()> {
    if n > LAGUERRE_MAX_DEGREE {
        return Err(Error::Domain(format!(
            "Laguerre degree {n} exceeds the recurrence guard {LAGUERRE_MAX_DEGREE}"
        )));
    }
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("Laguerre index alpha = {alpha} must exceed -1")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("Laguerre argument x = {x} must be nonnegative")));
    }
    Ok(())
}

/// L_n^(α)(x) in the modern (NIST) convention, with
/// d/dx L_n^(α) = -L_{n-1}^(α+1).
pub fn laguerre(n: u32, alpha: f64, x: f64) -> Result<LaguerreEval> {
    check_laguerre_domain(n, alpha, x)?;
    let value = laguerre_value(n, alpha, x);
    let derivative = if n == 0 { 0.0 } else { -laguerre_value(n - 1, alpha + 1.0, x) };
    Ok(LaguerreEval { value, derivative })
}

/// Value, first, and second derivative of L_n^(α) at x.
pub fn laguerre_jet2(n: u32, alpha: f64, x: f64) -> Result<(f64, f64, f64)> {
    check_laguerre_domain(n, alpha, x)?;
    let value = laguerre_value(n, alpha, x);
    let d1 = if n == 0 { 0.0 } else { -laguerre_value(n - 1, alpha + 1.0, x) };
    let d2 = if n < 2 { 0.0 } else { laguerre_value(n - 2, alpha + 2.0, x) };
    Ok((value, d1, d2))
}

/// Associated Legendre P_l^m(cos θ) for 0 <= m <= l, with the
/// Condon-Shortley phase, evaluated from (cos θ, sin θ).
fn assoc_legendre(l: u32, m: u32, cos_t: f64, sin_t: f64) -> f64 {
    debug_assert!(m <= l);
    // P_m^m = (-1)^m (2m-1)!! sin^m θ
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * sin_t;
    }
    if l == m {
        return pmm;
    }
    // P_{m+1}^m = (2m+1) cos θ P_m^m
    let mut p_prev = pmm;
    let mut p = (2 * m + 1) as f64 * cos_t * pmm;
    for ll in (m + 2)..=l {
        let llf = ll as f64;
        let mf = m as f64;
        let next = ((2.0 * llf - 1.0) * cos_t * p - (llf + mf - 1.0) * p_prev) / (llf - mf);
        p_prev = p;
        p = next;
    }
    p
}

/// Complex spherical harmonic value with its θ and φ partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalHarmonicEval {
    pub value: Complex64,
    pub dtheta: Complex64,
    pub dphi: Complex64,
}

/// Orthonormal complex spherical harmonic Y_{l,k}(θ, φ).
///
/// dθ comes from the associated-Legendre derivative recurrence
/// dP_l^m/dθ = [l cosθ P_l^m - (l+m) P_{l-1}^m] / sinθ, dφ = i k Y.
/// For l >= 1 the point must stay `POLE_MARGIN` away from the poles.
pub fn spherical_harmonic(l: u32, k: i32, theta: f64, phi: f64) -> Result<SphericalHarmonicEval> {
    if l > SPHERICAL_MAX_DEGREE {
        return Err(Error::Domain(format!(
            "spherical harmonic degree {l} exceeds the guard {SPHERICAL_MAX_DEGREE}"
        )));
    }
    if k.unsigned_abs() > l {
        return Err(Error::Domain(format!("|k| = {} exceeds l = {l}", k.unsigned_abs())));
    }
    if l >= 1 && !(POLE_MARGIN..=std::f64::consts::PI - POLE_MARGIN).contains(&theta) {
        return Err(Error::PoleProximity { theta, margin: POLE_MARGIN });
    }

    let m = k.unsigned_abs();
    let cos_t = theta.cos();
    let sin_t = theta.sin();

    // Norm for the nonnegative order m.
    let norm = ((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI) * factorial(l - m)
        / factorial(l + m))
    .sqrt();

    let plm = assoc_legendre(l, m, cos_t, sin_t);
    let dplm_dtheta = if l == 0 {
        0.0
    } else {
        let plm_lower = if m < l {
            assoc_legendre(l - 1, m, cos_t, sin_t)
        } else {
            0.0 // P_{l-1}^m vanishes for m > l-1
        };
        (l as f64 * cos_t * plm - (l + m) as f64 * plm_lower) / sin_t
    };

    // Y_{l,m} for m >= 0, then conjugation symmetry for k < 0:
    // Y_{l,-m} = (-1)^m conj(Y_{l,m}).
    let phase = Complex64::from_polar(1.0, m as f64 * phi);
    let value_pos = norm * plm * phase;
    let dtheta_pos = norm * dplm_dtheta * phase;

    let (value, dtheta) = if k >= 0 {
        (value_pos, dtheta_pos)
    } else {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        (sign * value_pos.conj(), sign * dtheta_pos.conj())
    };
    let dphi = Complex64::new(0.0, k as f64) * value;

    Ok(SphericalHarmonicEval { value, dtheta, dphi })
}
