use super::*;
use crate::kernels::hypo_kernel;
use crate::lie::build_algebra;
use crate::quad::GaussLegendre;

#[test]
fn determinism() {
    let a = simulate_ou(2, FibreLaw::OuScaled, 1.0, &[0.3, -0.1], 1e-2, 0.5, 42, 64);
    let b = simulate_ou(2, FibreLaw::OuScaled, 1.0, &[0.3, -0.1], 1e-2, 0.5, 42, 64);
    for (p, q) in a.paths.iter().zip(&b.paths) {
        assert_eq!(p.y_final, q.y_final);
        assert_eq!(p.int_y_sq, q.int_y_sq);
    }
}

#[test]
fn ou_stationary_variance() {
    // long horizon: sample variance per coordinate within 3 stderr of 1/2
    let ens = simulate_ou(1, FibreLaw::OuScaled, 1.0, &[0.0], 1e-2, 8.0, 7, 20_000);
    let vals: Vec<f64> = ens.paths.iter().map(|p| p.y_final[0] * p.y_final[0]).collect();
    let r = summarize("var", &vals, Some(0.5));
    assert!(r.z_score.unwrap().abs() <= 3.0, "z = {:?}", r.z_score);
}

#[test]
fn lom7_pathwise_all() {
    for b in [0.5, 1.0, 2.0] {
        let ens = simulate_ou(2, FibreLaw::OuScaled, b, &[0.4, -0.2], 1e-3, 1.0, 11, 2_000);
        assert_eq!(lom7_pass_fraction(&ens), 1.0, "b={b}");
    }
}

#[test]
fn feynman_kac_closed_forms() {
    // (phan-11b): m=1, β=1, t=1, Y₀=0 → cosh(1)^{-1/2}
    let ens = simulate_ou(1, FibreLaw::Brownian, 1.0, &[0.0], 1e-3, 1.0, 3, 50_000);
    let r = feynman_kac_estimate(&ens, Functional::ExpNegSqInt { beta: 1.0 }).unwrap();
    let want = 1f64.cosh().powf(-0.5);
    assert!((r.closed_form.unwrap() - want).abs() < 1e-15);
    assert!(r.z_score.unwrap().abs() <= 3.0, "z = {:?}", r.z_score);

    // (rot7a) with β = 0 → exactly 1
    let ou = simulate_ou(1, FibreLaw::OuScaled, 1.0, &[0.2], 1e-3, 1.0, 5, 2_000);
    let r0 = feynman_kac_estimate(&ou, Functional::ExpPosSqInt { beta: 0.0 }).unwrap();
    assert_eq!(r0.mean, 1.0);
    assert_eq!(r0.closed_form.unwrap(), 1.0);

    // (rot7a) with β = 0.6 and bound (rot7ay1)
    let r1 = feynman_kac_estimate(&ou, Functional::ExpPosSqInt { beta: 0.6 }).unwrap();
    assert!(r1.z_score.unwrap().abs() <= 3.0, "z = {:?}", r1.z_score);
    assert_eq!(r1.bound_ok, Some(true));

    // domain guard
    let too_big = feynman_kac_estimate(&ou, Functional::ExpPosSqInt { beta: 2.5 });
    assert!(matches!(too_big, Err(HypolapError::DomainGuard { .. })));

    // (af1) bound
    let r2 = feynman_kac_estimate(&ou, Functional::ExpAbsInt { c: 0.5, beta: 0.8 }).unwrap();
    assert_eq!(r2.bound_ok, Some(true));
}

#[test]
fn girsanov_catalog() {
    let rep = girsanov_check(1, 1.0, &[0.3], 1e-3, 13, 50_000);
    assert!(rep.max_abs_z <= 3.0, "max |z| = {}", rep.max_abs_z);
}

#[test]
fn ito_identity_rate() {
    let pairs = ito_identity_refinement(1, 1.0, &[0.2], &[1e-1, 1e-2, 1e-3], 17, 400);
    let order = fitted_order(&pairs);
    assert!(order >= 0.4, "observed order {order}");
}

#[test]
fn generalized_ito_variants() {
    // constant: exactly zero
    let pairs = generalized_ito_residual(
        2,
        0.7,
        &ConstantFn(3.0),
        &[0.1, 0.2],
        1.0,
        &[1e-2],
        19,
        16,
        ItoForm::Unintegrated,
    );
    assert!(pairs[0].1 == 0.0);
    // linear: zero up to accumulated rounding (A^f exact for linear f)
    let pairs = generalized_ito_residual(
        2,
        0.7,
        &LinearFn(vec![1.0, -2.0]),
        &[0.1, 0.2],
        1.0,
        &[1e-2],
        19,
        16,
        ItoForm::Unintegrated,
    );
    assert!(pairs[0].1 < 1e-12, "linear residual {}", pairs[0].1);
    // distance bump, smoothed form: order ≥ 0.4 across the dt grid
    let f = DistanceBump { eps: 0.5 };
    let pairs = generalized_ito_residual(
        2,
        0.7,
        &f,
        &[0.0, 0.0],
        1.0,
        &[1e-2, 1e-3, 1e-4],
        23,
        200,
        ItoForm::Smoothed,
    );
    let order = fitted_order(&pairs);
    assert!(order >= 0.4, "observed order {order} ({pairs:?})");
}

#[test]
fn quintic_blend_is_c2() {
    let f = DistanceBump { eps: 1.0 };
    for (u, hd) in [(0.5, 1e-6), (1.0, 1e-6)] {
        let below = f.k(u - hd);
        let above = f.k(u + hd);
        assert!((below - above).abs() < 1e-5);
        let kp_below = f.kp(u - hd);
        let kp_above = f.kp(u + hd);
        assert!((kp_below - kp_above).abs() < 1e-4);
        let kpp_below = f.kpp(u - hd);
        let kpp_above = f.kpp(u + hd);
        assert!((kpp_below - kpp_above).abs() < 1e-3);
    }
}

#[test]
fn escape_tails_brownian_and_kinetic() {
    let sups = brownian_sup_dists(1, 1.0, 1e-2, 29, 20_000);
    let radii: Vec<f64> = (1..=10).map(|k| 0.4 + 0.25 * k as f64).collect();
    let fit = escape_tail_fit(&sups, 1.0, &radii).unwrap();
    assert!(fit.slope < 0.0 && fit.z.abs() >= 3.0, "slope {} z {}", fit.slope, fit.z);

    let kin = simulate_kinetic_euclidean(1, 0.5, 0.0, &[0.0], 1e-2, 1.0, 31, 20_000);
    let sups: Vec<f64> = kin.ensemble.paths.iter().map(|p| p.sup_dist).collect();
    let fit = escape_tail_fit(&sups, 1.0, &radii).unwrap();
    assert!(fit.slope < 0.0 && fit.z.abs() >= 3.0);

    // tiny t, huge radii: no tail events
    let small = brownian_sup_dists(1, 0.01, 1e-3, 37, 500);
    let res = escape_tail_fit(&small, 0.01, &[5.0, 6.0, 7.0]);
    assert!(matches!(res, Err(HypolapError::InsufficientTailEvents { .. })));
}

#[test]
fn kinetic_moment_vs_kernel_quadrature() {
    // the kernel r^E is the kernel of e^{-tA^E_b}, which carries the
    // oscillator potential: ∫ x'² r^E((0,0),(x',Y')) dx'dY'
    //   = e^{-|Y₀|²/2} E^Q[e^{|Y_t|²/2} x_t²]
    let (b, t) = (0.7, 1.0);
    let kin = simulate_kinetic_euclidean(1, b, 0.0, &[0.0], 1e-3, t, 41, 50_000);
    let vals: Vec<f64> = kin
        .ensemble
        .paths
        .iter()
        .map(|p| (0.5 * p.y_final[0] * p.y_final[0]).exp() * p.x_final[0] * p.x_final[0])
        .collect();
    let gl = GaussLegendre::new(120);
    let closed = gl.integrate(-8.0, 8.0, |x2| {
        gl.integrate(-8.0, 8.0, |y2| x2 * x2 * hypo_kernel(1, b, t, &[0.0], &[0.0], &[x2], &[y2]))
    });
    let r = summarize("kinetic-x2", &vals, Some(closed));
    assert!(r.z_score.unwrap().abs() <= 3.0, "z = {:?} (closed {closed})", r.z_score);
}

#[test]
fn hypoelliptic_group_paths() {
    let spec = build_algebra("sl2c_real").unwrap();
    // θ = π/2: Y^N frozen
    let ens = simulate_hypoelliptic(
        &spec,
        0.8,
        std::f64::consts::FRAC_PI_2,
        &[0.1, 0.0, 0.0],
        &[0.3, -0.2, 0.5],
        1e-3,
        0.2,
        43,
        8,
    )
    .unwrap();
    assert!(ens.yk_frozen_residual == 0.0);
    // constraint residual stays small
    let ens = simulate_hypoelliptic(
        &spec,
        0.6,
        0.4,
        &[0.0; 3],
        &[0.0; 3],
        1e-3,
        1.0,
        47,
        8,
    )
    .unwrap();
    for c in &ens.constraint_residuals {
        assert!(*c < 1e-8, "constraint residual {c}");
    }
    // zero drift at start: x stays near the origin for T << b²
    let spec2 = build_algebra("sl2r").unwrap();
    let short = simulate_hypoelliptic(&spec2, 1.0, 0.0, &[0.0, 0.0], &[0.0], 1e-4, 0.01, 53, 8)
        .unwrap();
    for g in &short.g_final {
        assert!(linalg::max_abs(&(g - &ceye(2))) < 0.2);
    }
}

#[test]
fn transport_identities() {
    let spec = build_algebra("sl2r").unwrap();
    // θ = π/2 closed form
    let res = transport_right_angle_residual(&spec, 0.5, 1e-3, 1.0).unwrap();
    assert!(res < 1e-8, "prin-2 residual {res}");
    // factorization + mel1 + limit diagnostics on the character E-rep
    let erep = weight_one_character();
    let rep = transport_ode_solve(&spec, erep.clone(), 0.5, 0.7, 1e-3, 1.0, 59, 24).unwrap();
    assert!(rep.factorization_residual < 1e-8, "U = U⁰ ⊗ E: {}", rep.factorization_residual);
    assert_eq!(rep.mel1_pass_fraction, 1.0);
    // b-trend: median error non-increasing over b ∈ {0.5, 0.25, 0.1}
    let medians: Vec<f64> = [0.5, 0.25, 0.1]
        .iter()
        .map(|&b| {
            transport_ode_solve(&spec, erep.clone(), b, 0.7, 1e-3, 1.0, 59, 24)
                .unwrap()
                .median_u0_vs_limit
        })
        .collect();
    assert!(
        medians[1] <= medians[0] * 1.02 && medians[2] <= medians[1] * 1.02,
        "medians {medians:?}"
    );
}

/// Weight-one character of the sl2r torus: ρ(e₃) = i.
pub fn weight_one_character() -> ERep {
    let mut rho = czeros(1);
    rho[[0, 0]] = Complex64::new(0.0, 1.0);
    ERep { dim: 1, rho: vec![rho], label: "character:weight1".into() }
}
