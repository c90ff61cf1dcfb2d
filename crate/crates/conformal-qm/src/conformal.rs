//! The isometric complex-time map between real (x, t) and complex (z, s)
//! coordinates, its inverse and conjugate branch, the transformed
//! wavefunction, and holomorphy diagnostics for the separable time
//! factor.
//!
//! The map is z = x, s = t - i (ħ/E) (r/b)^λ, bound to a single energy
//! eigenvalue E. Spatial distances are preserved exactly; only time
//! acquires a position-dependent imaginary shift.

use num_complex::Complex64;

use crate::eigenstates::Eigenstate;
use crate::error::{Error, Result};
use crate::units::System;

/// Parameters of the complex-time map: the energy eigenvalue it is bound
/// to, the length scale b, the exponent λ, and ħ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub energy: f64,
    pub b: f64,
    pub lambda: f64,
    pub hbar: f64,
}

impl MapParams {
    pub fn new(energy: f64, b: f64, lambda: f64, hbar: f64) -> Result<Self> {
        let p = MapParams { energy, b, lambda, hbar };
        p.validate()?;
        Ok(p)
    }

    /// Map bound to one eigenstate: E from the state, b and λ from its
    /// system scales.
    pub fn for_state(state: &Eigenstate) -> Self {
        MapParams {
            energy: state.energy,
            b: state.scales.b,
            lambda: state.scales.lambda,
            hbar: state.scales.hbar,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.energy == 0.0 || !self.energy.is_finite() {
            return Err(Error::InvalidInput {
                field: "energy",
                requirement: "nonzero and finite (the map divides by E)",
                value: self.energy,
            });
        }
        if !(self.b > 0.0) {
            return Err(Error::InvalidInput {
                field: "b",
                requirement: "strictly positive",
                value: self.b,
            });
        }
        if !(self.lambda > 0.0) {
            return Err(Error::InvalidInput {
                field: "lambda",
                requirement: "strictly positive",
                value: self.lambda,
            });
        }
        if !(self.hbar > 0.0) {
            return Err(Error::InvalidInput {
                field: "hbar",
                requirement: "strictly positive",
                value: self.hbar,
            });
        }
        Ok(())
    }

    /// The imaginary time shift magnitude (ħ/E)(r/b)^λ at radius r
    /// (signed by E).
    pub fn time_shift(&self, r: f64) -> f64 {
        self.hbar / self.energy * (r / self.b).powf(self.lambda)
    }

    /// ∂(r^λ)/∂x_i = λ r^{λ-2} x_i, shared by the map partials and the
    /// z-space operators so that their cancellation is exact.
    pub fn dr_lambda_dx(&self, x: [f64; 3], r: f64, i: usize) -> f64 {
        self.lambda * r.powf(self.lambda - 2.0) * x[i]
    }

    /// b^{-λ}.
    pub fn b_pow_neg_lambda(&self) -> f64 {
        self.b.powf(-self.lambda)
    }
}

/// A point in (z, s)-space. `conjugate` selects the (z*, s*) branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEvent {
    pub z: [f64; 3],
    pub s: Complex64,
    pub conjugate: bool,
}

impl ComplexEvent {
    /// |z|, equal to |x| of the preimage by isometry.
    pub fn r_z(&self) -> f64 {
        (self.z[0] * self.z[0] + self.z[1] * self.z[1] + self.z[2] * self.z[2]).sqrt()
    }

    /// The conjugate-branch event at the same physical point:
    /// s* = conj(s), z* = z.
    pub fn conjugated(&self) -> ComplexEvent {
        ComplexEvent { z: self.z, s: self.s.conj(), conjugate: !self.conjugate }
    }
}

/// Forward map (unconjugated branch): z = x, s = t - i (ħ/E)(r/b)^λ.
pub fn map_forward(x: [f64; 3], t: f64, p: &MapParams) -> Result<ComplexEvent> {
    p.validate()?;
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    Ok(ComplexEvent { z: x, s: Complex64::new(t, -p.time_shift(r)), conjugate: false })
}

/// Inverse map: x = z and t = s + i (ħ/E)(r_z/b)^λ on the unconjugated
/// branch (t = s* - i(...) on the conjugate branch). The event must be
/// consistent with `p`: its Im(s) has to match the map's own shift at
/// r_z, and the reconstructed t must be real.
pub fn map_inverse(ev: &ComplexEvent, p: &MapParams) -> Result<([f64; 3], f64)> {
    p.validate()?;
    let shift = p.time_shift(ev.r_z());
    let expected_im = if ev.conjugate { shift } else { -shift };
    let found_im = ev.s.im;
    if (found_im - expected_im).abs() > 1e-12 * expected_im.abs().max(1.0) {
        return Err(Error::InconsistentEvent { found: found_im, expected: expected_im });
    }
    let t_complex = if ev.conjugate {
        ev.s - Complex64::new(0.0, shift)
    } else {
        ev.s + Complex64::new(0.0, shift)
    };
    debug_assert!(t_complex.im.abs() <= 1e-14 * t_complex.re.abs().max(1.0));
    Ok((ev.z, t_complex.re))
}

/// Separable time factor τ(s) = exp(-iEs/ħ).
pub fn tau(s: Complex64, energy: f64, hbar: f64) -> Complex64 {
    (Complex64::new(0.0, -energy / hbar) * s).exp()
}

/// ψ(z, s) = R̃(r_z) Y(θ_z, φ_z) τ(s) for a hydrogen state, where R̃
/// carries the extra exp(r_z/α₀) factor relative to R:
///
/// R̃(r_z) = norm · exp(r_z/α₀ - r_z/(nα₀)) (2r_z/(nα₀))^l L_{n-l-1}^{(2l+1)}(2r_z/(nα₀))
///
/// Equals ψ(x, t) at the preimage of the event. Oscillator states are
/// rejected here; see `transformed_wavefunction_lambda2` for the λ = 2
/// analogue.
pub fn transformed_wavefunction(state: &Eigenstate, ev: &ComplexEvent) -> Result<Complex64> {
    if state.system != System::Hydrogen {
        return Err(Error::UnsupportedSystem(
            "transformed_wavefunction covers the λ=1 hydrogen construction; \
             use transformed_wavefunction_lambda2 for the oscillator analogue"
                .to_string(),
        ));
    }
    if ev.conjugate {
        return Err(Error::Domain(
            "transformed wavefunction is defined on the unconjugated branch".to_string(),
        ));
    }
    let r_z = ev.r_z();
    let radial = state.radial_value(r_z)? * (r_z / state.scales.alpha0).exp();
    transformed_common(state, ev, radial)
}

/// λ = 2 analogue of the transformed wavefunction for oscillator states:
/// the growing factor is exp((r_z/b)²), which cancels the Gaussian decay
/// of R. This extends the hydrogen construction by substituting the λ = 2
/// inverse map into the separable time factor.
pub fn transformed_wavefunction_lambda2(state: &Eigenstate, ev: &ComplexEvent) -> Result<Complex64> {
    if state.system != System::Oscillator {
        return Err(Error::UnsupportedSystem(
            "transformed_wavefunction_lambda2 expects an oscillator state".to_string(),
        ));
    }
    if ev.conjugate {
        return Err(Error::Domain(
            "transformed wavefunction is defined on the unconjugated branch".to_string(),
        ));
    }
    let r_z = ev.r_z();
    let ratio = r_z / state.scales.b;
    let radial = state.radial_value(r_z)? * (ratio * ratio).exp();
    transformed_common(state, ev, radial)
}

fn transformed_common(state: &Eigenstate, ev: &ComplexEvent, radial: f64) -> Result<Complex64> {
    let rho = (ev.z[0] * ev.z[0] + ev.z[1] * ev.z[1]).sqrt();
    let theta = rho.atan2(ev.z[2]);
    let phi = ev.z[1].atan2(ev.z[0]);
    let sph = crate::specfun::spherical_harmonic(state.qn.l, state.qn.k, theta, phi)?;
    Ok(radial * sph.value * tau(ev.s, state.energy, state.scales.hbar))
}

/// Diagnostics for the holomorphy of τ on the complex time plane
/// s = t + iy with y = -(ħ/(α₀E)) r (the λ = 1 imaginary-time
/// coordinate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrResidual {
    /// |∂²τ/∂t² + (α₀²E²/ħ²) ∂²τ/∂r²| from the analytic derivatives.
    pub second_order_analytic: f64,
    /// Same combination with central finite differences in t and r.
    pub second_order_fd: f64,
    /// Max residual of the first-order Cauchy-Riemann pair
    /// (Re τ)_t = (Im τ)_y and (Re τ)_y = -(Im τ)_t, from the analytic
    /// derivatives.
    pub first_order_pair: f64,
}

/// Probe object bundling τ and its real/imaginary decomposition on the
/// (t, y) plane for a fixed map.
#[derive(Debug, Clone, Copy)]
pub struct HolomorphyProbe {
    pub params: MapParams,
    /// Bohr-radius scale entering y = -(ħ/(α₀E)) r; equals `params.b`
    /// for the hydrogen map.
    pub alpha0: f64,
}

impl HolomorphyProbe {
    pub fn new(params: MapParams) -> Result<Self> {
        if params.lambda != 1.0 {
            return Err(Error::Domain(format!(
                "holomorphy probe is defined for the λ=1 map, got λ = {}",
                params.lambda
            )));
        }
        Ok(HolomorphyProbe { alpha0: params.b, params })
    }

    pub fn tau(&self, s: Complex64) -> Complex64 {
        tau(s, self.params.energy, self.params.hbar)
    }

    /// Imaginary-time coordinate of radius r.
    pub fn y_of_r(&self, r: f64) -> f64 {
        -(self.params.hbar / (self.alpha0 * self.params.energy)) * r
    }

    /// g(t, y) = Re τ(t + iy).
    pub fn g(&self, t: f64, y: f64) -> f64 {
        self.tau(Complex64::new(t, y)).re
    }

    /// h(t, y) = Im τ(t + iy).
    pub fn h(&self, t: f64, y: f64) -> f64 {
        self.tau(Complex64::new(t, y)).im
    }

    fn tau_of_rt(&self, r: f64, t: f64) -> Complex64 {
        self.tau(Complex64::new(t, self.y_of_r(r)))
    }

    /// Evaluate the Cauchy-Riemann residuals of τ at (r, t).
    ///
    /// `fd_step` is dimensionless; the actual stencil steps are
    /// fd_step·ħ/|E| in t and fd_step·α₀ in r, so the probe behaves the
    /// same in any unit system.
    pub fn cr_residual(&self, r: f64, t: f64, fd_step: f64) -> CrResidual {
        let e_over_h = self.params.energy / self.params.hbar;
        let a0 = self.alpha0;
        let value = self.tau_of_rt(r, t);

        // Analytic second derivatives. ∂τ/∂s = (-iE/ħ)τ; the t-direction
        // multiplies by ∂s/∂t = 1 and the r-direction by
        // ∂s/∂r = -i ħ/(α₀E).
        let dtau_ds = Complex64::new(0.0, -e_over_h);
        let ds_dr = Complex64::new(0.0, -self.params.hbar / (a0 * self.params.energy));
        let d2_tt = dtau_ds * dtau_ds * value;
        let d2_rr = ds_dr * ds_dr * dtau_ds * dtau_ds * value;
        let coeff = a0 * a0 * e_over_h * e_over_h;
        let second_order_analytic = (d2_tt + coeff * d2_rr).norm();

        // FD cross-check with second-order central stencils.
        let h_t = fd_step / e_over_h.abs();
        let h_r = fd_step * a0;
        let fd_tt = (self.tau_of_rt(r, t + h_t) - 2.0 * value + self.tau_of_rt(r, t - h_t))
            / (h_t * h_t);
        let fd_rr = (self.tau_of_rt(r + h_r, t) - 2.0 * value + self.tau_of_rt(r - h_r, t))
            / (h_r * h_r);
        let second_order_fd = (fd_tt + coeff * fd_rr).norm();

        // First-order pair via the same chain rule: ∂τ/∂t = dτ/ds,
        // ∂τ/∂y = i dτ/ds.
        let dtau_dt = dtau_ds * value;
        let dtau_dy = Complex64::new(0.0, 1.0) * dtau_dt;
        let pair1 = (dtau_dt.re - dtau_dy.im).abs();
        let pair2 = (dtau_dy.re + dtau_dt.im).abs();
        let first_order_pair = pair1.max(pair2);

        CrResidual { second_order_analytic, second_order_fd, first_order_pair }
    }
}

/// Convenience wrapper: CR residuals for a λ = 1 map at (r, t).
pub fn cr_residual(p: &MapParams, r: f64, t: f64, fd_step: f64) -> Result<CrResidual> {
    Ok(HolomorphyProbe::new(*p)?.cr_residual(r, t, fd_step))
}

/// Magnitudes of the four cross-derivatives ∂z_i/∂s, ∂s/∂z_i,
/// ∂z_i*/∂s*, ∂s*/∂z_i* (each maximized over i), obtained by applying
/// the chain-rule operator definitions to the coordinate functions
/// s(x, t) and z(x, t) themselves. All four vanish identically: the
/// complex coordinates are mutually independent.
///
/// `e_sub` is the energy entering the operators' (ħ/E) ∂/∂t coefficient;
/// passing the map's own energy reproduces the defining cancellation.
pub fn coordinate_independence(x: [f64; 3], p: &MapParams, e_sub: f64) -> Result<[f64; 4]> {
    p.validate()?;
    if e_sub == 0.0 {
        return Err(Error::InvalidInput {
            field: "e_sub",
            requirement: "nonzero",
            value: e_sub,
        });
    }
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if r <= 0.0 {
        return Err(Error::Singularity { r, r_min: 0.0 });
    }
    let b_neg_lambda = p.b_pow_neg_lambda();

    let mut ds_dz_max: f64 = 0.0; // |∂s/∂z_i|
    let mut ds_dz_conj_max: f64 = 0.0; // |∂s*/∂z_i*|
    for i in 0..3 {
        let w = b_neg_lambda * p.dr_lambda_dx(x, r, i);
        // Coordinate-field partials of s = t - i(ħ/E)(r/b)^λ:
        // ∂s/∂x_i = -i(ħ/E) w, ∂s/∂t = 1 (and conjugates for s*).
        let ds_dx = Complex64::new(0.0, -(p.hbar / p.energy) * w);
        let ds_dt = Complex64::new(1.0, 0.0);
        // ∂/∂z_i = ∂/∂x_i + i(ħ/E_sub) w ∂/∂t applied to s:
        let dz_of_s = ds_dx + Complex64::new(0.0, (p.hbar / e_sub) * w) * ds_dt;
        ds_dz_max = ds_dz_max.max(dz_of_s.norm());
        // Conjugate branch on s* = conj(s):
        let ds_conj_dx = ds_dx.conj();
        let dz_conj_of_s_conj =
            ds_conj_dx - Complex64::new(0.0, (p.hbar / e_sub) * w) * ds_dt;
        ds_dz_conj_max = ds_dz_conj_max.max(dz_conj_of_s_conj.norm());
    }

    // ∂z_i/∂s = ∂z_i/∂s* = ∂z_i/∂t = 0: the spatial coordinates carry no
    // time dependence.
    let dz_ds = 0.0;
    let dz_conj_ds_conj = 0.0;

    Ok([dz_ds, ds_dz_max, dz_conj_ds_conj, ds_dz_conj_max])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenstates::{hydrogen_state, oscillator_state, QuantumNumbers};
    use crate::units::{derive_scales, PhysicalConstants, System};
    use approx::assert_relative_eq;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hydrogen_params() -> MapParams {
        MapParams::new(-0.5, 1.0, 1.0, 1.0).unwrap()
    }

    fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + u * (hi - lo)
    }

    #[test]
    fn forward_map_ground_state_example() {
        // E = -1/2, b = 1, λ = 1 at x = (1,0,0), t = 0: s = +2i.
        let ev = map_forward([1.0, 0.0, 0.0], 0.0, &hydrogen_params()).unwrap();
        assert_eq!(ev.z, [1.0, 0.0, 0.0]);
        assert_eq!(ev.s.re, 0.0);
        assert_relative_eq!(ev.s.im, 2.0, max_relative = 1e-15);
        // Conjugate branch flips the shift.
        assert_relative_eq!(ev.conjugated().s.im, -2.0, max_relative = 1e-15);
    }

    #[test]
    fn vanishing_coupling_limit_reduces_to_identity() {
        // b → ∞ emulates e → 0: the shift coefficient vanishes and s = t.
        let p = MapParams::new(-0.5, 1e300, 1.0, 1.0).unwrap();
        let ev = map_forward([3.0, -1.0, 2.0], 1.25, &p).unwrap();
        assert_eq!(ev.s.re, 1.25);
        assert!(ev.s.im.abs() < 1e-290);
    }

    #[test]
    fn forward_map_oscillator_example() {
        // E = 1.5, b = √2, λ = 2 at x = (1,1,0), t = 1: s = 1 - (2/3)i.
        let p = MapParams::new(1.5, 2.0_f64.sqrt(), 2.0, 1.0).unwrap();
        let ev = map_forward([1.0, 1.0, 0.0], 1.0, &p).unwrap();
        assert_eq!(ev.s.re, 1.0);
        assert_relative_eq!(ev.s.im, -2.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn origin_maps_to_real_time() {
        let ev = map_forward([0.0, 0.0, 0.0], 0.75, &hydrogen_params()).unwrap();
        assert_eq!(ev.s, Complex64::new(0.75, 0.0));
    }

    #[test]
    fn zero_energy_is_rejected() {
        assert!(MapParams::new(0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn round_trip_identity() {
        let p = hydrogen_params();
        let ev = map_forward([1.0, 0.0, 0.0], 0.0, &p).unwrap();
        let (x, t) = map_inverse(&ev, &p).unwrap();
        assert_eq!(x, [1.0, 0.0, 0.0]);
        assert_eq!(t, 0.0);
        // Conjugate branch round-trips to the same (x, t).
        let (xc, tc) = map_inverse(&ev.conjugated(), &p).unwrap();
        assert_eq!(xc, x);
        assert_eq!(tc, t);
    }

    #[test]
    fn seeded_round_trips_stay_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(20240915);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let magnitude = uniform(&mut rng, 0.05, 3.0);
            let sign = if rng.next_u64() % 2 == 0 { 1.0 } else { -1.0 };
            let p = MapParams::new(
                sign * magnitude,
                uniform(&mut rng, 0.2, 3.0),
                uniform(&mut rng, 0.5, 2.5),
                1.0,
            )
            .unwrap();
            let x = [
                uniform(&mut rng, -4.0, 4.0),
                uniform(&mut rng, -4.0, 4.0),
                uniform(&mut rng, -4.0, 4.0),
            ];
            let t = uniform(&mut rng, -5.0, 5.0);
            for conj in [false, true] {
                let ev0 = map_forward(x, t, &p).unwrap();
                let ev = if conj { ev0.conjugated() } else { ev0 };
                let (x_back, t_back) = map_inverse(&ev, &p).unwrap();
                assert_eq!(x_back, x, "isometric part must be exact");
                worst = worst.max((t_back - t).abs());
            }
        }
        assert!(worst <= 1e-13, "worst roundtrip error {worst:e}");
    }

    #[test]
    fn branch_conjugacy_is_exact() {
        let p = MapParams::new(1.5, 2.0_f64.sqrt(), 2.0, 1.0).unwrap();
        let ev = map_forward([0.3, -0.7, 1.1], 2.0, &p).unwrap();
        assert_eq!(ev.conjugated().s, ev.s.conj());
    }

    #[test]
    fn inconsistent_event_is_rejected() {
        let p = hydrogen_params();
        let mut ev = map_forward([1.0, 0.0, 0.0], 0.0, &p).unwrap();
        ev.s += Complex64::new(0.0, 0.5);
        assert!(matches!(map_inverse(&ev, &p), Err(Error::InconsistentEvent { .. })));
    }

    #[test]
    fn tau_at_2i_example() {
        // τ(2i) with E = -1/2, ħ = 1: exp(-i(-1/2)(2i)) = exp(-1).
        let value = tau(Complex64::new(0.0, 2.0), -0.5, 1.0);
        assert_relative_eq!(value.re, (-1.0_f64).exp(), max_relative = 1e-15);
        assert_eq!(value.im, 0.0);
    }

    #[test]
    fn transformed_radial_ground_state_is_constant() {
        // R̃₁₀(r_z) = 2 exactly: the exp(r/α₀) factor cancels e^{-r}.
        let scales = derive_scales(&PhysicalConstants::atomic(), System::Hydrogen).unwrap();
        let state = hydrogen_state(&scales, QuantumNumbers::new(1, 0, 0)).unwrap();
        let p = MapParams::for_state(&state);
        for r in [0.2, 1.0, 3.0, 8.0] {
            let ev = map_forward([r, 0.0, 0.0], 0.0, &p).unwrap();
            let psi_zs = transformed_wavefunction(&state, &ev).unwrap();
            // Strip Y₀₀ and τ to recover R̃.
            let y00 = 1.0 / (4.0 * std::f64::consts::PI).sqrt();
            let tau_val = tau(ev.s, state.energy, 1.0);
            let r_tilde = psi_zs / (y00 * tau_val);
            assert_relative_eq!(r_tilde.re, state.radial_norm, max_relative = 1e-11);
            assert!(r_tilde.im.abs() < 1e-16);
        }
    }

    #[test]
    fn transformed_equals_position_space_at_preimage() {
        let scales = derive_scales(&PhysicalConstants::atomic(), System::Hydrogen).unwrap();
        let states = [
            hydrogen_state(&scales, QuantumNumbers::new(1, 0, 0)).unwrap(),
            hydrogen_state(&scales, QuantumNumbers::new(2, 1, 0)).unwrap(),
            hydrogen_state(&scales, QuantumNumbers::new(3, 2, -1)).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for state in &states {
            let p = MapParams::for_state(state);
            let mut checked = 0;
            let mut worst: f64 = 0.0;
            while checked < 50 {
                let x = [
                    uniform(&mut rng, 0.2, 4.0),
                    uniform(&mut rng, 0.2, 4.0),
                    uniform(&mut rng, -3.0, 3.0),
                ];
                let t = uniform(&mut rng, 0.0, 5.0);
                let jet = match state.evaluate(x, t) {
                    Ok(j) => j,
                    Err(_) => continue,
                };
                let ev = map_forward(x, t, &p).unwrap();
                let psi_zs = transformed_wavefunction(state, &ev).unwrap();
                worst = worst.max((psi_zs - jet.psi).norm() / jet.psi.norm());
                checked += 1;
            }
            assert!(worst <= 1e-12, "worst deviation {worst:e} for {:?}", state.qn);
        }
    }

    #[test]
    fn transformed_oscillator_analogue() {
        let scales = derive_scales(&PhysicalConstants::atomic(), System::Oscillator).unwrap();
        let state = oscillator_state(&scales, QuantumNumbers::new(1, 0, 0)).unwrap();
        let p = MapParams::for_state(&state);
        // Hydrogen-only entry point rejects oscillator states...
        let ev = map_forward([1.0, 0.5, -0.3], 0.7, &p).unwrap();
        assert!(transformed_wavefunction(&state, &ev).is_err());
        // ...while the λ=2 analogue reproduces ψ(x, t) at the preimage.
        let jet = state.evaluate([1.0, 0.5, -0.3], 0.7).unwrap();
        let psi_zs = transformed_wavefunction_lambda2(&state, &ev).unwrap();
        assert!((psi_zs - jet.psi).norm() <= 1e-12 * jet.psi.norm());
    }

    #[test]
    fn cr_residual_analytic_is_exactly_zero_in_atomic_units() {
        let p = hydrogen_params();
        for (r, t) in [(1.0, 0.0), (0.5, 2.0), (3.7, -1.3)] {
            let res = cr_residual(&p, r, t, 1e-4).unwrap();
            assert_eq!(res.second_order_analytic, 0.0);
            assert_eq!(res.first_order_pair, 0.0);
        }
    }

    #[test]
    fn cr_residual_fd_is_truncation_limited() {
        let p = hydrogen_params();
        let res = cr_residual(&p, 1.0, 0.0, 1e-4).unwrap();
        let tau_mag = HolomorphyProbe::new(p).unwrap().tau_of_rt(1.0, 0.0).norm();
        assert!(res.second_order_fd <= 1e-6 * tau_mag, "fd residual {:e}", res.second_order_fd);
    }

    #[test]
    fn cr_residual_rejects_lambda_two() {
        let p = MapParams::new(1.5, 2.0_f64.sqrt(), 2.0, 1.0).unwrap();
        assert!(cr_residual(&p, 1.0, 0.0, 1e-4).is_err());
    }

    #[test]
    fn probe_invariant_tau_is_holomorphic_to_machine_precision() {
        // Non-dyadic parameters: residuals need not be exactly zero but
        // stay at rounding level.
        let p = MapParams::new(-0.3337, 1.77, 1.0, 1.3).unwrap();
        let probe = HolomorphyProbe::new(p).unwrap();
        for (r, t) in [(0.9, 0.4), (2.3, -0.8)] {
            let res = probe.cr_residual(r, t, 1e-4);
            let tau_mag = probe.tau_of_rt(r, t).norm();
            assert!(res.second_order_analytic <= 1e-13 * tau_mag.max(1.0));
            assert!(res.first_order_pair <= 1e-13 * tau_mag.max(1.0));
        }
    }

    #[test]
    fn coordinate_independence_hydrogen() {
        let p = hydrogen_params();
        let q = coordinate_independence([1.0, 0.0, 0.0], &p, p.energy).unwrap();
        for (i, v) in q.iter().enumerate() {
            assert!(*v <= 1e-14, "derivative {i} = {v:e}");
        }
    }

    #[test]
    fn coordinate_independence_oscillator() {
        let p = MapParams::new(1.5, 2.0_f64.sqrt(), 2.0, 1.0).unwrap();
        let q = coordinate_independence([0.5, 0.5, 0.5], &p, p.energy).unwrap();
        for v in q {
            assert!(v <= 1e-14);
        }
    }

    #[test]
    fn z_has_no_time_dependence() {
        let p = hydrogen_params();
        let q = coordinate_independence([0.3, -1.0, 0.2], &p, p.energy).unwrap();
        assert_eq!(q[0], 0.0);
        assert_eq!(q[2], 0.0);
    }
}
