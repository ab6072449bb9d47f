//! Acceptance suite: every criterion runs at its pinned tolerance and
//! prints one pass/fail line (visible with `cargo test -- --nocapture`).

use hypolap::algebra::{ops, Engine};
use hypolap::clifford::{ERep, FibreSpace};
use hypolap::compression::{verify_compressions, verify_s_and_delta};
use hypolap::diffusion::{
    brownian_sup_dists, escape_tail_fit, feynman_kac_estimate, fitted_order,
    generalized_ito_residual, girsanov_check, lom7_pass_fraction, simulate_kinetic_euclidean,
    simulate_ou, transport_ode_solve, transport_right_angle_residual, DistanceBump, FibreLaw,
    Functional, ItoForm,
};
use hypolap::eta::{
    bob16_residual, bob9x1_residual, f_c_t, half_convolve, phi_tail, symmetry_test,
    Phi, SpectralInput,
};
use hypolap::kernels::{
    chapman_kolmogorov_residual, hypo_kernel, hypo_kernel_scaled_route, hypo_kernel_theta,
    limit_kernel, mehler_mass_closed, mehler_mass_quadrature,
};
use hypolap::lie::{build_algebra, cartan_split};
use hypolap::linalg;
use hypolap::orbital::{
    key4_residual, orbital_closed_tgen, orbital_rhs_tnew, spin_character_integrand,
    OrbitalConfig,
};
use hypolap::report::weight_one_character;
use num_complex::Complex64;
use std::time::Instant;

fn verdict(criterion: &str, ok: bool, detail: &str) {
    println!(
        "[acceptance] {criterion}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion} failed: {detail}");
}

#[test]
fn criterion_01_kostant_square_formula() {
    let t0 = Instant::now();
    let mut worst_model: f64 = 0.0;
    for name in ["abelian3", "sl2r", "su2", "sl2c_real", "sl3r"] {
        let spec = build_algebra(name).unwrap();
        let eng = Engine::new(&spec);
        let dg = ops::d_g(&eng);
        let lhs = eng.multiply(&dg, &dg);
        let rhs = ops::casimir(&eng).add(&hypolap::algebra::NormalForm::scalar(
            hypolap::algebra::Coeff::from_rat(ops::bstar_kappa_g(&eng) * hypolap::lie::rat(1, 4)),
        ));
        assert!(lhs.sub(&rhs).is_zero(), "{name}: D^g,2 not exact");
        let dh = ops::dhat_g(&eng);
        let lhs_h = eng.multiply(&dh, &dh);
        assert!(
            lhs_h.add(&rhs).is_zero(),
            "{name}: Dhat^g,2 not exact"
        );
        // matrix-model residual via the independent state model
        let model =
            hypolap::algebra::model::MatrixModel::new(&spec, spec.basis_matrices.clone());
        let mut st: hypolap::algebra::model::PolyState = Default::default();
        let mut v = vec![Complex64::new(0.0, 0.0); model.disc_dim()];
        for (i, x) in v.iter_mut().enumerate() {
            *x = Complex64::new(((i * 29 + 3) % 13) as f64 / 13.0 - 0.5, 0.2);
        }
        st.insert(vec![0u8; spec.dim], v);
        let a = model.apply_nf(&lhs, &st, 1.0, 0.0);
        let b = model.apply_nf(&rhs, &st, 1.0, 0.0);
        worst_model = worst_model.max(hypolap::algebra::model::state_diff_norm(&a, &b));
    }
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        "criterion 1 (kos22 exact + matrix model <= 1e-10, <= 30 s)",
        worst_model <= 1e-10 && elapsed <= 30.0,
        &format!("model residual {worst_model:.2e}, {elapsed:.1} s"),
    );
}

#[test]
fn criterion_02_hypoelliptic_squares() {
    let t0 = Instant::now();
    let mut all_ok = true;
    for name in ["sl2r", "sl2c_real"] {
        let eng = Engine::new(&build_algebra(name).unwrap());
        for r in ops::verify_square_identities(&eng) {
            if !r.ok {
                all_ok = false;
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        "criterion 2 (rio2a/rio2abis exact symbolic, <= 2 min)",
        all_ok && elapsed <= 120.0,
        &format!("{elapsed:.1} s"),
    );
}

#[test]
fn criterion_03_compression_suite() {
    let spec = build_algebra("sl2c_real").unwrap();
    let split = cartan_split(&spec).unwrap();
    let mut worst: f64 = 0.0;
    let mut worst_id = String::new();
    for erep in [ERep::trivial(3), hypolap::dirac::su2_erep(1)] {
        let fs = FibreSpace::new(&spec, &split, erep);
        for theta in [0.0, 0.3, 0.7, 1.2, 1.5] {
            for c in verify_compressions(&fs, theta).unwrap() {
                if c.residual > worst {
                    worst = c.residual;
                    worst_id = format!("{}@θ={theta}", c.id);
                }
                assert!(c.residual <= 1e-10, "{} residual {:.2e}", c.id, c.residual);
            }
        }
    }
    verdict(
        "criterion 3 (compression suite <= 1e-10 over the θ grid)",
        worst <= 1e-10,
        &format!("worst {worst:.2e} at {worst_id}"),
    );
}

#[test]
fn criterion_04_s_theta_delta_closed_forms() {
    let spec = build_algebra("sl2c_real").unwrap();
    let split = cartan_split(&spec).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for erep in [ERep::trivial(3), hypolap::dirac::su2_erep(1)] {
        let fs = FibreSpace::new(&spec, &split, erep);
        for theta in [0.0, 0.5, 1.2] {
            for c in verify_s_and_delta(&fs, theta).unwrap() {
                let tol = match c.id.as_str() {
                    "qsic7" => 1e-9,
                    "qsic16" => 0.0,
                    _ => 1e-10,
                };
                if c.residual > tol {
                    ok = false;
                    detail = format!("{}@θ={theta}: {:.2e}", c.id, c.residual);
                }
            }
        }
    }
    // rob3 at the right angle
    let fs = FibreSpace::new(&spec, &split, ERep::trivial(3));
    let kd = hypolap::lie::kappa_data(&spec, &split);
    let v = hypolap::compression::bold_delta0(&fs, std::f64::consts::FRAC_PI_2);
    if (v + kd.trk_ckk / 48.0).abs() > 1e-10 {
        ok = false;
        detail = "rob3 at θ=π/2".into();
    }
    verdict("criterion 4 (S_θ/δ_θ closed forms)", ok, &detail);
}

#[test]
fn criterion_05_elliptic_consistency() {
    let spec = build_algebra("sl2c_real").unwrap();
    let split = cartan_split(&spec).unwrap();
    let mut worst_thfub: f64 = 0.0;
    for erep in [ERep::trivial(3), hypolap::dirac::su2_erep(1)] {
        let fs = FibreSpace::new(&spec, &split, erep);
        for theta in [0.0, 0.4, 1.0] {
            worst_thfub = worst_thfub
                .max(hypolap::compression::thfub_endomorphism_residual(&fs, theta).unwrap());
        }
    }
    let mut worst_lich: f64 = 0.0;
    for (name, erep) in [
        ("sl2c_real", hypolap::dirac::su2_erep(1)),
        ("sl3r", ERep::trivial(3)),
        ("sl2r", ERep::trivial(1)),
    ] {
        let spec = build_algebra(name).unwrap();
        worst_lich =
            worst_lich.max(hypolap::dirac::lichnerowicz_consistency(&spec, erep).unwrap());
    }
    verdict(
        "criterion 5 (Thfub route <= 1e-9; Lichnerowicz two-route <= 1e-10)",
        worst_thfub <= 1e-9 && worst_lich <= 1e-10,
        &format!("thfub {worst_thfub:.2e}, lichnerowicz {worst_lich:.2e}"),
    );
}

#[test]
fn criterion_06_kernel_identities() {
    // Mehler normalization
    let mass =
        (mehler_mass_quadrature(1, 1.0, &[0.7]) - mehler_mass_closed(1, 1.0, &[0.7])).abs();
    // Chapman–Kolmogorov
    let mut ck: f64 = 0.0;
    for b in [0.5, 1.0, 2.0] {
        ck = ck.max(chapman_kolmogorov_residual(b, 1.0, 0.1, 0.3, -0.2, 0.4));
    }
    // scaling (stan6x2a) and (scal5)
    let mut scaling: f64 = 0.0;
    for &(x, y, x2, y2) in &[(0.3, 0.5, -0.2, 0.1), (1.0, -1.0, 0.5, 0.7)] {
        let k1 = hypo_kernel(1, 2.0, 4.0, &[x], &[y], &[x2], &[y2]);
        let k2 = hypo_kernel_scaled_route(1, 2.0, 4.0, &[x], &[y], &[x2], &[y2]);
        scaling = scaling.max((k1 - k2).abs());
        let c = 1.0f64.cos();
        let a = hypo_kernel_theta(1, 0.5, 1.0, 2.0, &[x], &[y], &[x2], &[y2]);
        let b2 = hypo_kernel_scaled_route(1, c * 0.5, c * c * 2.0, &[x], &[y], &[x2], &[y2]);
        scaling = scaling.max((a - b2).abs());
    }
    // b → 0 limit at b = 0.03 on 10 samples
    let mut limit_err: f64 = 0.0;
    for k in 0..10 {
        let u = k as f64 / 10.0;
        let (x, y, x2, y2) = (0.3 * u, 0.5 - u, -0.2 + 0.4 * u, 0.1 * u);
        let a = hypo_kernel(1, 0.03, 2.0, &[x], &[y], &[x2], &[y2]);
        let l = limit_kernel(1, 2.0, &[x], &[y], &[x2], &[y2]);
        limit_err = limit_err.max((a - l).abs());
    }
    verdict(
        "criterion 6 (kernel identities)",
        mass <= 1e-8 && ck <= 1e-6 && scaling <= 1e-12 && limit_err <= 1e-2,
        &format!("mass {mass:.2e}, CK {ck:.2e}, scaling {scaling:.2e}, b→0 {limit_err:.2e}"),
    );
}

#[test]
fn criterion_07_stochastic_closed_forms() {
    let t0 = Instant::now();
    let n = 100_000;
    let dt = 1e-3;
    let t = 1.0;
    let run = |seed: u64| -> (f64, bool, bool, String) {
        let bm = simulate_ou(1, FibreLaw::Brownian, 1.0, &[0.0], dt, t, seed, n);
        let r1 = feynman_kac_estimate(&bm, Functional::ExpNegSqInt { beta: 1.0 }).unwrap();
        let ou = simulate_ou(1, FibreLaw::OuScaled, 1.0, &[0.2], dt, t, seed + 1, n);
        let r2 = feynman_kac_estimate(&ou, Functional::ExpPosSqInt { beta: 0.6 }).unwrap();
        // glab17a via MC
        let mass_mc = r1.mean * (t / 2.0f64).exp();
        let z_mass =
            (mass_mc - mehler_mass_closed(1, t, &[0.0])) / (r1.stderr * (t / 2.0f64).exp());
        let g = girsanov_check(1, t, &[0.3], dt, seed + 2, n);
        let max_z = r1
            .z_score
            .unwrap()
            .abs()
            .max(r2.z_score.unwrap().abs())
            .max(z_mass.abs())
            .max(g.max_abs_z);
        let lom7 = lom7_pass_fraction(&simulate_ou(
            2,
            FibreLaw::OuScaled,
            0.5,
            &[0.4, -0.2],
            dt,
            t,
            seed + 3,
            10_000,
        )) == 1.0;
        let bound = r2.bound_ok == Some(true);
        (
            max_z,
            lom7,
            bound,
            format!(
                "|z|max {max_z:.2} (phan-11b {:.2}, rot7a {:.2}, glab17a {:.2}, girsanov {:.2})",
                r1.z_score.unwrap(),
                r2.z_score.unwrap(),
                z_mass,
                g.max_abs_z
            ),
        )
    };
    let (mut max_z, mut lom7, mut bound, mut detail) = run(7);
    if max_z > 3.0 {
        // documented flake policy: one rerun with a fresh seed
        let retry = run(7 ^ 0x5EED);
        max_z = retry.0;
        lom7 = retry.1;
        bound = retry.2;
        detail = format!("{} [reseeded]", retry.3);
    }
    // mel1 pathwise via the transport run (all paths must satisfy it)
    let spec = build_algebra("sl2r").unwrap();
    let tr = transport_ode_solve(&spec, weight_one_character(), 0.5, 0.7, 1e-3, 1.0, 11, 24)
        .unwrap();
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        "criterion 7 (stochastic closed forms, pathwise inequalities, <= 5 min)",
        max_z <= 3.0 && lom7 && bound && tr.mel1_pass_fraction == 1.0 && elapsed <= 300.0,
        &format!("{detail}; lom7/mel1 100%: {}/{}; {elapsed:.0} s", lom7, tr.mel1_pass_fraction == 1.0),
    );
}

#[test]
fn criterion_08_generalized_ito_order() {
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
    verdict(
        "criterion 8 (fex2 residual order >= 0.4)",
        order >= 0.4,
        &format!("fitted order {order:.3}, residuals {pairs:?}"),
    );
}

#[test]
fn criterion_09_escape_tails() {
    let radii: Vec<f64> = (1..=10).map(|k| 0.4 + 0.25 * k as f64).collect();
    let sups = brownian_sup_dists(1, 1.0, 1e-2, 29, 20_000);
    let fit_b = escape_tail_fit(&sups, 1.0, &radii).unwrap();
    let kin = simulate_kinetic_euclidean(1, 0.5, 0.0, &[0.0], 1e-2, 1.0, 31, 20_000);
    let sups: Vec<f64> = kin.ensemble.paths.iter().map(|p| p.sup_dist).collect();
    let fit_h = escape_tail_fit(&sups, 1.0, &radii).unwrap();
    verdict(
        "criterion 9 (escape-tail slopes negative, |z| >= 3)",
        fit_b.slope < 0.0 && fit_b.z.abs() >= 3.0 && fit_h.slope < 0.0 && fit_h.z.abs() >= 3.0,
        &format!(
            "brownian slope {:.2} z {:.0}; hypoelliptic slope {:.2} z {:.0}",
            fit_b.slope, fit_b.z, fit_h.slope, fit_h.z
        ),
    );
}

#[test]
fn criterion_10_transport_limits() {
    let spec = build_algebra("sl2r").unwrap();
    let erep = weight_one_character();
    let rep = transport_ode_solve(&spec, erep.clone(), 0.5, 0.7, 1e-3, 1.0, 59, 24).unwrap();
    let right_angle = transport_right_angle_residual(&spec, 0.5, 1e-3, 1.0).unwrap();
    let medians: Vec<f64> = [0.5, 0.25, 0.1]
        .iter()
        .map(|&b| {
            transport_ode_solve(&spec, erep.clone(), b, 0.7, 1e-3, 1.0, 59, 24)
                .unwrap()
                .median_u0_vs_limit
        })
        .collect();
    let trend = medians[1] <= medians[0] * 1.02 && medians[2] <= medians[1] * 1.02;
    verdict(
        "criterion 10 (transport factorization, prin-2, Tfiut trend)",
        rep.factorization_residual <= 1e-8 && right_angle <= 1e-8 && trend,
        &format!(
            "factorization {:.2e}, prin-2 {right_angle:.2e}, medians {medians:?}",
            rep.factorization_residual
        ),
    );
}

#[test]
fn criterion_11_eta_transgression() {
    let conk2 = (half_convolve(|s| s.powf(-0.5), 1.3) - std::f64::consts::PI).abs();
    let nauf = {
        let (x, t) = (1.0, 2.0);
        (half_convolve(|s| s.powf(-0.5) * (-x / s).exp(), t)
            - std::f64::consts::PI.sqrt() * phi_tail(x / t))
        .abs()
    };
    let inp = SpectralInput::diag(&[0.8, -0.5, 1.5], Phi::ExpNeg);
    let b9 = bob9x1_residual(&inp);
    let b16 = bob16_residual(&[0.8, -0.5, 1.5]).max(bob16_residual(&[3.0]));
    // psym both directions on 50 random matrices
    let mut state = 0x5A5Au64;
    let mut nf = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut psym_ok = true;
    for k in 0..50 {
        let n = 4;
        let symmetric_case = k % 2 == 0;
        let d = if symmetric_case {
            // D ⊕ (-D), conjugated by a random unitary reflection
            let vals: Vec<f64> = (0..n / 2).map(|_| 2.0 * nf()).collect();
            let mut all = vals.clone();
            all.extend(vals.iter().map(|v| -v));
            let diag = SpectralInput::diag(&all, Phi::ExpPos).d;
            // Householder reflection H = I - 2uu*/|u|²
            let u: Vec<Complex64> =
                (0..n).map(|_| Complex64::new(nf(), nf())).collect();
            let norm: f64 = u.iter().map(|z| z.norm_sqr()).sum();
            let mut h = linalg::ceye(n);
            for i in 0..n {
                for j in 0..n {
                    h[[i, j]] -= u[i] * u[j].conj() * (2.0 / norm);
                }
            }
            h.dot(&diag).dot(&linalg::adjoint(&h))
        } else {
            let mut d = linalg::czeros(n);
            for i in 0..n {
                for j in 0..n {
                    d[[i, j]] = Complex64::new(nf(), nf());
                }
            }
            (&d + &linalg::adjoint(&d)).mapv(|z| z * 0.5)
        };
        let (sym, cert) = symmetry_test(&d).unwrap();
        if sym != symmetric_case || !cert.iter().all(|c| c.ok) {
            // generic hermitian matrices are asymmetric with probability 1;
            // verify the F_{C,t} certificate matches
            psym_ok = false;
        }
        // converse direction: F vanishing on the grid forces symmetry
        if !sym {
            let input = SpectralInput::new(d.clone(), Phi::ExpPos).unwrap();
            let any_nonzero = [0.5, 1.0, 2.0]
                .iter()
                .any(|&t| f_c_t(&input, t).unwrap().abs() > 1e-9);
            if !any_nonzero {
                psym_ok = false;
            }
        }
    }
    verdict(
        "criterion 11 (eta transgression)",
        conk2 <= 1e-8 && nauf <= 1e-7 && b9 <= 1e-3 && b16 <= 1e-4 && psym_ok,
        &format!("conk2 {conk2:.2e}, nauf18 {nauf:.2e}, bob9x1 {b9:.2e}, bob16 {b16:.2e}, psym {psym_ok}"),
    );
}

#[test]
fn criterion_12_orbital_formulas() {
    // Tvan vanishing on sl3r, 100 regular draws
    let spec3 = build_algebra("sl3r").unwrap();
    let mut state = 0xFEEDu64;
    let mut nf = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut tvan: f64 = 0.0;
    for _ in 0..100 {
        let mut a = vec![0.0; 8];
        a[0] = 1.0 + nf();
        a[1] = 0.3 + 0.2 * nf();
        let cfg = OrbitalConfig::new(&spec3, a, vec![0.0; 8], ERep::trivial(3)).unwrap();
        assert!(cfg.cdata.b_gamma.len() >= 3);
        let (tr, _) = spin_character_integrand(&cfg, &[0.0; 8]);
        tvan = tvan.max(tr.norm());
    }
    // key4
    let k4 = key4_residual(0.5).max(key4_residual(1.0)).max(key4_residual(2.0));
    // free9 internal equality + dual route on sl2c_real
    let spec = build_algebra("sl2c_real").unwrap();
    let mut a = vec![0.0; 6];
    a[2] = 1.1;
    let mut k_log = vec![0.0; 6];
    k_log[5] = 0.9;
    let cfg = OrbitalConfig::new(&spec, a.clone(), k_log.clone(), ERep::trivial(3)).unwrap();
    let mut internal: f64 = 0.0;
    let mut dual: f64 = 0.0;
    for t in [0.5, 1.0, 2.0] {
        let (first, second) = orbital_closed_tgen(&cfg, t).unwrap();
        internal = internal.max(((first - second) / second).norm());
        let f_a = orbital_rhs_tnew(&cfg, t).unwrap();
        let conv = half_convolve(
            |s| orbital_closed_tgen(&cfg, s).map(|(_, v)| v.re).unwrap_or(0.0),
            t,
        );
        dual = dual.max(((conv - f_a.re) / f_a.re).abs());
    }
    // orientation-flip sign equivariance, exact
    let mut cfg_flip = OrbitalConfig::new(&spec, a, k_log, ERep::trivial(3)).unwrap();
    cfg_flip.orientation_sign = -1.0;
    let (_, v) = orbital_closed_tgen(&cfg, 1.0).unwrap();
    let (_, vf) = orbital_closed_tgen(&cfg_flip, 1.0).unwrap();
    let flip_exact = (v + vf).norm() == 0.0 && (v.norm() - vf.norm()).abs() == 0.0;
    verdict(
        "criterion 12 (orbital formulas)",
        tvan <= 1e-12 && k4 <= 1e-8 && internal <= 1e-6 && dual <= 1e-3 && flip_exact,
        &format!("tvan {tvan:.2e}, key4 {k4:.2e}, free9 {internal:.2e}, dual {dual:.2e}, flip {flip_exact}"),
    );
}
