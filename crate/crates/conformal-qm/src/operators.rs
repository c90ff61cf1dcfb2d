//! Differential operators in the complex coordinates: the z-space first
//! derivatives (with and without the energy substitution), the mixed
//! second derivative, oscillator ladder operators, and an independent
//! finite-difference engine used as the cross-check oracle.

use num_complex::Complex64;

use crate::conformal::MapParams;
use crate::eigenstates::{AmplitudeJet, Eigenstate};
use crate::error::{Error, Result};

/// An evaluable field over (x, t) with an analytic derivative jet.
pub trait Field {
    fn jet(&self, x: [f64; 3], t: f64) -> Result<AmplitudeJet>;
    /// Energy of the owning eigenstate (0 for synthetic test fields).
    fn energy(&self) -> f64;
    /// Characteristic length used to size finite-difference steps.
    fn length_scale(&self) -> f64;
}

impl Field for Eigenstate {
    fn jet(&self, x: [f64; 3], t: f64) -> Result<AmplitudeJet> {
        self.evaluate(x, t)
    }

    fn energy(&self) -> f64 {
        self.energy
    }

    fn length_scale(&self) -> f64 {
        Eigenstate::length_scale(self)
    }
}

/// f ≡ const, with a vanishing jet. Useful for probing the operator
/// algebra itself.
#[derive(Debug, Clone, Copy)]
pub struct ConstantField(pub Complex64);

impl ConstantField {
    pub fn one() -> Self {
        ConstantField(Complex64::new(1.0, 0.0))
    }
}

impl Field for ConstantField {
    fn jet(&self, _x: [f64; 3], _t: f64) -> Result<AmplitudeJet> {
        Ok(AmplitudeJet {
            psi: self.0,
            grad: [Complex64::new(0.0, 0.0); 3],
            laplacian: Complex64::new(0.0, 0.0),
            dt: Complex64::new(0.0, 0.0),
        })
    }

    fn energy(&self) -> f64 {
        0.0
    }

    fn length_scale(&self) -> f64 {
        1.0
    }
}

/// A field backed by a closure producing the full jet.
pub struct FnField<F: Fn([f64; 3], f64) -> Result<AmplitudeJet>> {
    pub f: F,
    pub energy: f64,
    pub scale: f64,
}

impl<F: Fn([f64; 3], f64) -> Result<AmplitudeJet>> Field for FnField<F> {
    fn jet(&self, x: [f64; 3], t: f64) -> Result<AmplitudeJet> {
        (self.f)(x, t)
    }

    fn energy(&self) -> f64 {
        self.energy
    }

    fn length_scale(&self) -> f64 {
        self.scale
    }
}

/// How the time derivative inside ∂/∂z_i is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMode {
    /// iħ ∂/∂t replaced by E: ∂/∂z_i = ∂/∂x_i ± b^{-λ} ∂(r^λ)/∂x_i.
    /// Exact for energy eigenfunctions; this is the z-derivative proper.
    #[default]
    EnergySubstituted,
    /// Full chain-rule form ∂/∂x_i ± i(ħ/E) b^{-λ} ∂(r^λ)/∂x_i · ∂/∂t,
    /// using ∂/∂t from the jet. Valid for arbitrary fields.
    TimeDerivative,
}

/// Largest max |dt - (-iE/ħ)ψ| / |ψ| over the sample: eigenstate-backed
/// fields must return zero to rounding.
pub fn jet_consistency(field: &dyn Field, sample: &[([f64; 3], f64)], hbar: f64) -> Result<f64> {
    let energy = field.energy();
    let mut worst: f64 = 0.0;
    for &(x, t) in sample {
        let jet = field.jet(x, t)?;
        let expected = Complex64::new(0.0, -energy / hbar) * jet.psi;
        let scale = jet.psi.norm().max(1e-300);
        worst = worst.max((jet.dt - expected).norm() / scale);
    }
    Ok(worst)
}

/// ∂f/∂z_i (or ∂f/∂z_i* with `conjugate`) at (x, t).
pub fn dz_apply(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    axis: usize,
    conjugate: bool,
    p: &MapParams,
    mode: DerivativeMode,
) -> Result<Complex64> {
    let jet = field.jet(x, t)?;
    dz_from_jet(&jet, x, axis, conjugate, p, mode)
}

/// Same as `dz_apply` for a jet already in hand.
pub fn dz_from_jet(
    jet: &AmplitudeJet,
    x: [f64; 3],
    axis: usize,
    conjugate: bool,
    p: &MapParams,
    mode: DerivativeMode,
) -> Result<Complex64> {
    if axis > 2 {
        return Err(Error::Domain(format!("axis index {axis} out of range 0..3")));
    }
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if r <= 0.0 {
        return Err(Error::Singularity { r, r_min: 0.0 });
    }
    let coeff = p.b_pow_neg_lambda() * p.dr_lambda_dx(x, r, axis);
    let sign = if conjugate { -1.0 } else { 1.0 };
    let correction = match mode {
        DerivativeMode::EnergySubstituted => sign * coeff * jet.psi,
        DerivativeMode::TimeDerivative => {
            Complex64::new(0.0, sign * coeff * p.hbar / p.energy) * jet.dt
        }
    };
    Ok(jet.grad[axis] + correction)
}

/// Both evaluations of the mixed second derivative
/// Σ_i ∂²f/(∂z_i* ∂z_i).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedDerivative {
    /// Analytic expansion
    /// ∇²f + b^{-λ} λ(λ+1) r^{λ-2} f - b^{-2λ} λ² r^{2λ-2} f.
    pub analytic: Complex64,
    /// Nested application: a finite difference of ∂f/∂z_i across the
    /// stencil, then the conjugate derivative.
    pub nested_fd: Complex64,
}

/// Mixed second derivative evaluated two independent ways.
///
/// The nested path keeps the inner ∂/∂z_i analytic and applies the outer
/// ∂/∂z_i* with an `order`-4 central difference of step `h` (defaults:
/// h = 1e-3 × field scale).
pub fn dzdz_apply(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    p: &MapParams,
) -> Result<MixedDerivative> {
    let h = 1e-3 * field.length_scale();
    dzdz_apply_with_step(field, x, t, p, h)
}

pub fn dzdz_apply_with_step(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    p: &MapParams,
    h: f64,
) -> Result<MixedDerivative> {
    let analytic = dzdz_analytic(field, x, t, p)?;

    let mut nested = Complex64::new(0.0, 0.0);
    let r = |q: [f64; 3]| (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
    for axis in 0..3 {
        let g = |q: [f64; 3]| -> Result<Complex64> {
            dz_apply(field, q, t, axis, false, p, DerivativeMode::EnergySubstituted)
        };
        // 4th-order central difference of g along this axis.
        let shifted = |d: f64| -> Result<Complex64> {
            let mut q = x;
            q[axis] += d;
            g(q)
        };
        let f2p = shifted(2.0 * h)?;
        let f1p = shifted(h)?;
        let f1m = shifted(-h)?;
        let f2m = shifted(-2.0 * h)?;
        let dg_dx = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
        let coeff = p.b_pow_neg_lambda() * p.dr_lambda_dx(x, r(x), axis);
        nested += dg_dx - coeff * g(x)?;
    }

    Ok(MixedDerivative { analytic, nested_fd: nested })
}

/// Analytic expansion of Σ_i ∂²/(∂z_i* ∂z_i) applied to the field.
pub fn dzdz_analytic(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    p: &MapParams,
) -> Result<Complex64> {
    let jet = field.jet(x, t)?;
    dzdz_analytic_from_jet(&jet, x, p)
}

pub fn dzdz_analytic_from_jet(
    jet: &AmplitudeJet,
    x: [f64; 3],
    p: &MapParams,
) -> Result<Complex64> {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if r <= 0.0 {
        return Err(Error::Singularity { r, r_min: 0.0 });
    }
    let lam = p.lambda;
    let bl = p.b_pow_neg_lambda();
    // Σ_i ∂_i(λ r^{λ-2} x_i) = λ(λ+1) r^{λ-2};
    // Σ_i (λ r^{λ-2} x_i)² = λ² r^{2λ-2}.
    let divergence = lam * (lam + 1.0) * r.powf(lam - 2.0);
    let gradient_sq = lam * lam * r.powf(2.0 * lam - 2.0);
    Ok(jet.laplacian + bl * divergence * jet.psi - bl * bl * gradient_sq * jet.psi)
}

/// Ladder operator selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Lower,
    Raise,
}

/// â_i = (b/2) ∂/∂z_i, â_i† = -(b/2) ∂/∂z_i*. Defined for the λ = 2 map
/// only.
pub fn ladder_apply(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    axis: usize,
    kind: Ladder,
    p: &MapParams,
) -> Result<Complex64> {
    if p.lambda != 2.0 {
        return Err(Error::UnsupportedSystem(format!(
            "ladder operators require the λ=2 map, got λ = {}",
            p.lambda
        )));
    }
    let half_b = 0.5 * p.b;
    match kind {
        Ladder::Lower => {
            Ok(half_b * dz_apply(field, x, t, axis, false, p, DerivativeMode::EnergySubstituted)?)
        }
        Ladder::Raise => {
            Ok(-half_b * dz_apply(field, x, t, axis, true, p, DerivativeMode::EnergySubstituted)?)
        }
    }
}

/// Check the FD step against the underflow floor 1e3·ε·scale.
fn check_step(h: f64, scale: f64) -> Result<()> {
    let floor = 1e3 * f64::EPSILON * scale;
    if h < floor {
        return Err(Error::StepUnderflow { h, floor });
    }
    Ok(())
}

fn fd_axis_samples(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    axis: usize,
    h: f64,
) -> Result<[Complex64; 4]> {
    let sample = |d: f64| -> Result<Complex64> {
        let mut q = x;
        q[axis] += d;
        Ok(field.jet(q, t)?.psi)
    };
    Ok([sample(2.0 * h)?, sample(h)?, sample(-h)?, sample(-2.0 * h)?])
}

/// Central-difference gradient of the field value; order 2 or 4.
pub fn fd_gradient(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    h: f64,
    order: u32,
) -> Result<[Complex64; 3]> {
    check_step(h, field.length_scale())?;
    let mut grad = [Complex64::new(0.0, 0.0); 3];
    for axis in 0..3 {
        let [f2p, f1p, f1m, f2m] = fd_axis_samples(field, x, t, axis, h)?;
        grad[axis] = match order {
            2 => (f1p - f1m) / (2.0 * h),
            4 => (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h),
            other => return Err(Error::Domain(format!("FD order must be 2 or 4, got {other}"))),
        };
    }
    Ok(grad)
}

/// Central-difference Laplacian of the field value; order 2 or 4.
pub fn fd_laplacian(
    field: &dyn Field,
    x: [f64; 3],
    t: f64,
    h: f64,
    order: u32,
) -> Result<Complex64> {
    check_step(h, field.length_scale())?;
    let center = field.jet(x, t)?.psi;
    let mut lap = Complex64::new(0.0, 0.0);
    for axis in 0..3 {
        let [f2p, f1p, f1m, f2m] = fd_axis_samples(field, x, t, axis, h)?;
        lap += match order {
            2 => (f1p - 2.0 * center + f1m) / (h * h),
            4 => (-f2p + 16.0 * f1p - 30.0 * center + 16.0 * f1m - f2m) / (12.0 * h * h),
            other => return Err(Error::Domain(format!("FD order must be 2 or 4, got {other}"))),
        };
    }
    Ok(lap)
}

/// Named operator selection: a single dispatch point over every operator
/// this module provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Dz,
    DzStar,
    DzStarDz,
    LadderLower,
    LadderRaise,
    Laplacian,
    Gradient,
}

/// An operator bound to a map, applicable to any field.
#[derive(Debug, Clone, Copy)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    /// Axis for the directional operators (Dz, DzStar, ladders, Gradient).
    pub axis: Option<usize>,
    pub map: MapParams,
}

impl OperatorSpec {
    pub fn apply(&self, field: &dyn Field, x: [f64; 3], t: f64) -> Result<Complex64> {
        let axis = || {
            self.axis.ok_or_else(|| {
                Error::Domain(format!("{:?} needs an axis index", self.kind))
            })
        };
        match self.kind {
            OperatorKind::Dz => dz_apply(
                field,
                x,
                t,
                axis()?,
                false,
                &self.map,
                DerivativeMode::EnergySubstituted,
            ),
            OperatorKind::DzStar => dz_apply(
                field,
                x,
                t,
                axis()?,
                true,
                &self.map,
                DerivativeMode::EnergySubstituted,
            ),
            OperatorKind::DzStarDz => Ok(dzdz_analytic(field, x, t, &self.map)?),
            OperatorKind::LadderLower => ladder_apply(field, x, t, axis()?, Ladder::Lower, &self.map),
            OperatorKind::LadderRaise => ladder_apply(field, x, t, axis()?, Ladder::Raise, &self.map),
            OperatorKind::Laplacian => Ok(field.jet(x, t)?.laplacian),
            OperatorKind::Gradient => Ok(field.jet(x, t)?.grad[axis()?]),
        }
    }
}
