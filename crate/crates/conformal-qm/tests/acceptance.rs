//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Tolerances are pinned here, not configurable.

use std::time::Instant;

use conformal_qm::cli::report_to_json;
use conformal_qm::conformal::{
    coordinate_independence, cr_residual, map_forward, transformed_wavefunction, MapParams,
};
use conformal_qm::eigenstates::{
    cnl_closed_form, hydrogen_state, oscillator_state, Eigenstate, QuantumNumbers,
};
use conformal_qm::operators::{self, DerivativeMode, Ladder};
use conformal_qm::specfun::factorial;
use conformal_qm::units::{derive_scales, DerivedScales, PhysicalConstants, System};
use conformal_qm::verify::{
    check_ev_relation, cloud_for_state, decompose_lambda, residual_operator_identity,
    residual_schrodinger, residual_transformed, run_suite, SampleCloud, SuiteConfig,
};

fn criterion<F: FnOnce() -> Result<(), String>>(number: u32, what: &str, body: F) {
    match body() {
        Ok(()) => println!("criterion {number:2} PASS: {what}"),
        Err(msg) => {
            println!("criterion {number:2} FAIL: {what}: {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn hydrogen_scales() -> DerivedScales {
    derive_scales(&PhysicalConstants::atomic(), System::Hydrogen).unwrap()
}

fn oscillator_scales() -> DerivedScales {
    derive_scales(&PhysicalConstants::atomic(), System::Oscillator).unwrap()
}

/// All hydrogen (n, l, k) with n <= n_max.
fn hydrogen_states(n_max: u32) -> Vec<Eigenstate> {
    let scales = hydrogen_scales();
    let mut states = Vec::new();
    for n in 1..=n_max {
        for l in 0..n {
            for k in -(l as i32)..=(l as i32) {
                states.push(hydrogen_state(&scales, QuantumNumbers::new(n, l, k)).unwrap());
            }
        }
    }
    states
}

fn oscillator_test_states() -> Vec<Eigenstate> {
    let scales = oscillator_scales();
    [(0, 0, 0), (1, 0, 0), (0, 2, 1)]
        .into_iter()
        .map(|(n, l, k)| oscillator_state(&scales, QuantumNumbers::new(n, l, k)).unwrap())
        .collect()
}

#[test]
fn criterion_01_hydrogen_eigenpair_validity() {
    criterion(1, "hydrogen Schrödinger residual <= 1e-9, n <= 4, 200 points", || {
        let start = Instant::now();
        let states = hydrogen_states(4);
        if states.len() != 30 {
            return Err(format!("expected 30 states for n <= 4, got {}", states.len()));
        }
        for state in &states {
            let cloud = cloud_for_state(state, 42, 200);
            let stats = residual_schrodinger(state, &cloud, 1e-9)
                .map_err(|e| format!("{:?}: {e}", state.qn))?;
            if !stats.pass || stats.max_rel > 1e-9 {
                return Err(format!("{:?}: max_rel = {:e}", state.qn, stats.max_rel));
            }
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs_f64() >= 10.0 {
            return Err(format!("took {elapsed:?}, limit 10 s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_02_operator_identity() {
    criterion(2, "operator identity agrees to 1e-9 on all hydrogen states", || {
        for state in hydrogen_states(4) {
            let cloud = cloud_for_state(&state, 42, 200);
            let stats = residual_operator_identity(&state, &cloud, 1e-9)
                .map_err(|e| format!("{:?}: {e}", state.qn))?;
            if !stats.pass {
                return Err(format!("{:?}: max_rel = {:e}", state.qn, stats.max_rel));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_transformed_equation() {
    criterion(3, "transformed equation residual <= 1e-9; ground state <= 1e-12", || {
        for state in hydrogen_states(4).into_iter().chain(oscillator_test_states()) {
            let cloud = cloud_for_state(&state, 42, 200);
            let ground = state.energy == state.scales.e_ground;
            let tol = if ground { 1e-12 } else { 1e-9 };
            let stats = residual_transformed(&state, &cloud, tol)
                .map_err(|e| format!("{:?}: {e}", state.qn))?;
            if !stats.pass {
                return Err(format!(
                    "{:?} ({}): max_rel = {:e} vs tol {tol:e}",
                    state.qn, state.system, stats.max_rel
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_04_transformed_wavefunction_consistency() {
    criterion(4, "psi(z, s) equals psi(x, t) to 1e-12; R~_10 = 2 on a grid", || {
        for state in hydrogen_states(4) {
            let p = MapParams::for_state(&state);
            let cloud = cloud_for_state(&state, 42, 400);
            let mut checked = 0;
            for &(x, t) in &cloud.points {
                if checked >= 50 {
                    break;
                }
                let jet = match state.evaluate(x, t) {
                    Ok(j) => j,
                    Err(_) => continue,
                };
                if jet.psi.norm() < 1e-12 {
                    continue; // nodal point: no relative scale
                }
                let ev = map_forward(x, t, &p).map_err(|e| e.to_string())?;
                let psi_zs = transformed_wavefunction(&state, &ev).map_err(|e| e.to_string())?;
                let rel = (psi_zs - jet.psi).norm() / jet.psi.norm();
                if rel > 1e-12 {
                    return Err(format!("{:?} at {x:?}: rel = {rel:e}", state.qn));
                }
                checked += 1;
            }
            if checked < 50 {
                return Err(format!("{:?}: only {checked} usable points", state.qn));
            }
        }
        // Atomic units: R~ for the ground state is the constant 2.
        let state = hydrogen_state(&hydrogen_scales(), QuantumNumbers::new(1, 0, 0)).unwrap();
        for i in 0..200 {
            let r = 0.01 + 12.0 * i as f64 / 199.0;
            let r_tilde = state.radial_value(r).unwrap() * r.exp();
            if (r_tilde - 2.0).abs() > 1e-10 * 2.0 {
                return Err(format!("R~_10({r}) = {r_tilde}, expected 2"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_05_holomorphy() {
    criterion(5, "analytic CR residual exactly zero; FD residual <= 1e-6", || {
        for state in hydrogen_states(4) {
            let p = MapParams::for_state(&state);
            let cloud = cloud_for_state(&state, 42, 100);
            for &(x, t) in &cloud.points {
                let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
                let res = cr_residual(&p, r, t, 1e-4).map_err(|e| e.to_string())?;
                if res.second_order_analytic != 0.0 {
                    return Err(format!(
                        "analytic residual {:e} != 0 at r={r}, t={t}, {:?}",
                        res.second_order_analytic, state.qn
                    ));
                }
                if res.first_order_pair != 0.0 {
                    return Err(format!(
                        "CR pair residual {:e} != 0 at r={r}, t={t}",
                        res.first_order_pair
                    ));
                }
                let tau_mag = (-r / state.scales.alpha0).exp();
                if res.second_order_fd > 1e-6 * tau_mag {
                    return Err(format!(
                        "FD residual {:e} > 1e-6 |tau| at r={r}, t={t}",
                        res.second_order_fd
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_coordinate_independence() {
    criterion(6, "all four cross-derivatives <= 1e-14 for lambda = 1 and 2", || {
        let hydrogen = hydrogen_state(&hydrogen_scales(), QuantumNumbers::new(2, 1, 0)).unwrap();
        let oscillator =
            oscillator_state(&oscillator_scales(), QuantumNumbers::new(1, 0, 0)).unwrap();
        for state in [hydrogen, oscillator] {
            let p = MapParams::for_state(&state);
            let cloud = cloud_for_state(&state, 42, 100);
            if cloud.len() < 100 {
                return Err("cloud smaller than 100 points".to_string());
            }
            for &(x, _t) in &cloud.points {
                let quartet = coordinate_independence(x, &p, p.energy)
                    .map_err(|e| e.to_string())?;
                for (i, v) in quartet.iter().enumerate() {
                    if *v > 1e-14 {
                        return Err(format!(
                            "derivative {i} = {v:e} at {x:?}, lambda = {}",
                            p.lambda
                        ));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_ev_relation_and_decomposition() {
    criterion(7, "EV relation to 1e-12; decomposition exact for lambda 1, 2", || {
        let hy = hydrogen_scales();
        let os = oscillator_scales();
        let cloud = SampleCloud::generate(42, 200, (0.05, 12.0), 0.05, 1.0);
        for (lambda, scales) in [(1.0, &hy), (2.0, &os)] {
            let stats = check_ev_relation(lambda, scales.b, scales, &cloud, 1e-12)
                .map_err(|e| e.to_string())?;
            if !stats.pass {
                return Err(format!("lambda = {lambda}: max_rel = {:e}", stats.max_rel));
            }
        }

        // Exact coefficient arithmetic for the separable exponents.
        let rep = decompose_lambda(1.0, hy.b, &hy).map_err(|e| e.to_string())?;
        let v = rep.v_form.ok_or("lambda = 1 must be separable")?;
        if rep.term_kinetic.rational_num != 1.0
            || rep.term_potential_like.rational_num != -2.0
            || v.r_power != -1.0
            || v.coefficient != -1.0
            || rep.e0_value != Some(-0.5)
        {
            return Err(format!("lambda = 1 decomposition wrong: {rep:?}"));
        }
        let rep = decompose_lambda(2.0, os.b, &os).map_err(|e| e.to_string())?;
        let v = rep.v_form.ok_or("lambda = 2 must be separable")?;
        if rep.term_kinetic.rational_num != 4.0
            || rep.term_potential_like.rational_num != -6.0
            || v.r_power != 2.0
        {
            return Err(format!("lambda = 2 decomposition wrong: {rep:?}"));
        }
        // The assembled columns match the oscillator's own table entries:
        // V(r) = μω²r²/2 and E₀ = 3ħω/2, up to rounding in b² = 2ħ/μω.
        let e0 = rep.e0_value.ok_or("lambda = 2 needs E0")?;
        if (e0 - os.e_ground).abs() > 1e-12 * os.e_ground.abs() {
            return Err(format!("E0 = {e0}, table says {}", os.e_ground));
        }
        for r in [0.5, 1.0, 2.0] {
            let v_val = v.coefficient * r * r;
            let table = os.potential(r);
            if (v_val - table).abs() > 1e-12 * table.abs() {
                return Err(format!("V({r}) = {v_val}, table says {table}"));
            }
        }

        // Non-separable exponents are reported as such.
        for lambda in [0.5, 1.5, 3.0] {
            let rep = decompose_lambda(lambda, 1.0, &hy).map_err(|e| e.to_string())?;
            if rep.separable || rep.v_form.is_some() || rep.e0_value.is_some() {
                return Err(format!("lambda = {lambda} must not be separable"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_ladder_operators() {
    criterion(8, "ladders annihilate/raise psi0; hydrogen dz psi0 = 0", || {
        let state = oscillator_state(&oscillator_scales(), QuantumNumbers::new(0, 0, 0)).unwrap();
        let p = MapParams::for_state(&state);
        let b = state.scales.b;
        let cloud = cloud_for_state(&state, 42, 200);
        let mut ratios = Vec::new();
        let mut used = 0;
        for &(x, _t) in &cloud.points {
            if used >= 20 {
                break;
            }
            let jet = state.evaluate(x, 0.0).map_err(|e| e.to_string())?;
            for axis in 0..3 {
                let lowered = operators::ladder_apply(&state, x, 0.0, axis, Ladder::Lower, &p)
                    .map_err(|e| e.to_string())?;
                if lowered.norm() > 1e-12 * jet.psi.norm() {
                    return Err(format!("a psi0 = {lowered} at {x:?}"));
                }
                if x[axis].abs() >= 1e-3 * b {
                    let raised =
                        operators::ladder_apply(&state, x, 0.0, axis, Ladder::Raise, &p)
                            .map_err(|e| e.to_string())?;
                    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                    let reference = x[axis] * (-r2 / (b * b)).exp();
                    ratios.push(raised / reference);
                }
            }
            used += 1;
        }
        let mean = ratios.iter().sum::<num_complex::Complex64>() / ratios.len() as f64;
        for ratio in &ratios {
            if (ratio - mean).norm() > 1e-10 * mean.norm() {
                return Err(format!("raising ratio spread: {ratio} vs mean {mean}"));
            }
        }

        // Hydrogen ground state: the z-derivative itself vanishes.
        let state = hydrogen_state(&hydrogen_scales(), QuantumNumbers::new(1, 0, 0)).unwrap();
        let p = MapParams::for_state(&state);
        let cloud = cloud_for_state(&state, 42, 20);
        for &(x, t) in &cloud.points {
            let jet = state.evaluate(x, t).map_err(|e| e.to_string())?;
            for axis in 0..3 {
                let dz = operators::dz_apply(
                    &state,
                    x,
                    t,
                    axis,
                    false,
                    &p,
                    DerivativeMode::EnergySubstituted,
                )
                .map_err(|e| e.to_string())?;
                if dz.norm() > 1e-12 * jet.psi.norm() {
                    return Err(format!("hydrogen dz psi0 = {dz} at {x:?}"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_normalization_and_convention() {
    criterion(9, "quadrature norm = 1 to 1e-8; C_nl ratio documented per (n,l)", || {
        let states: Vec<Eigenstate> =
            hydrogen_states(4).into_iter().chain(oscillator_test_states()).collect();
        for state in &states {
            let cfg = conformal_qm::verify::checks::default_quadrature(state);
            let norm = state.normalization_check(&cfg).map_err(|e| e.to_string())?;
            if (norm - 1.0).abs() > 1e-8 {
                return Err(format!("{:?} ({}): norm = {norm}", state.qn, state.system));
            }
        }

        // Adjudication: either the numeric radial norm matches the
        // closed-form constant to 1e-9, or the per-(n,l) ratio is
        // documented in the report. Here the ratio comes out as (n+l)!,
        // the old-to-modern Laguerre conversion factor, so the
        // documented branch applies; verify the report carries it.
        let scales = hydrogen_scales();
        let mut matched_everywhere = true;
        for n in 1..=4u32 {
            for l in 0..n {
                let state = hydrogen_state(&scales, QuantumNumbers::new(n, l, 0)).unwrap();
                let ratio = state.radial_norm / cnl_closed_form(&scales, n, l).unwrap();
                if (ratio - 1.0).abs() > 1e-9 {
                    matched_everywhere = false;
                    let conversion = factorial(n + l);
                    if (ratio - conversion).abs() > 1e-9 * conversion {
                        return Err(format!(
                            "(n,l)=({n},{l}): ratio {ratio} is neither 1 nor (n+l)!"
                        ));
                    }
                }
            }
        }
        if !matched_everywhere {
            let config = SuiteConfig {
                hydrogen_n_max: 4,
                check_filter: vec!["norm-convention".to_string()],
                ..SuiteConfig::default()
            };
            let report = run_suite(&config).map_err(|e| e.to_string())?;
            let rows: Vec<_> =
                report.checks.iter().filter(|c| c.name == "norm-convention").collect();
            if rows.len() != 10 {
                return Err(format!("expected 10 documented ratios, got {}", rows.len()));
            }
            for row in rows {
                if !row.eq_ref.contains("radial_norm/C_nl") || !row.pass {
                    return Err(format!("ratio row not documented: {row:?}"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_reproducibility_and_runtime() {
    criterion(10, "identical config gives byte-identical JSON; suite < 60 s", || {
        let start = Instant::now();
        let config = SuiteConfig::default();
        let report_a = run_suite(&config).map_err(|e| e.to_string())?;
        let json_a = report_to_json(&report_a).map_err(|e| e.to_string())?;
        let report_b = run_suite(&config).map_err(|e| e.to_string())?;
        let json_b = report_to_json(&report_b).map_err(|e| e.to_string())?;
        if json_a != json_b {
            return Err("reports differ between runs".to_string());
        }
        if !report_a.overall_pass {
            let failing: Vec<_> =
                report_a.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
            return Err(format!("default suite failed: {failing:?}"));
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs_f64() >= 60.0 {
            return Err(format!("two suite runs took {elapsed:?}, limit 60 s"));
        }
        Ok(())
    });
}
