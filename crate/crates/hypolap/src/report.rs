//! Machine-readable run reports and the suite drivers shared by the CLI and
//! the acceptance tests.

use crate::algebra::{model::MatrixModel, ops, Engine};
use crate::clifford::{number_operator_identities, rotation_ops, spin_rep_build, ERep, FibreSpace};
use crate::compression::{
    thfub_endomorphism_residual, verify_compressions, verify_s_and_delta,
};
use crate::diffusion::{
    brownian_sup_dists, escape_tail_fit, feynman_kac_estimate, fitted_order,
    generalized_ito_residual, girsanov_check, ito_identity_refinement, lom7_pass_fraction,
    simulate_kinetic_euclidean, simulate_ou, transport_ode_solve,
    transport_right_angle_residual, DistanceBump, FibreLaw, Functional, ItoForm,
};
use crate::eta::{
    bob16_residual, bob9x1_residual, half_convolve, phi_tail, symmetry_test,
    transgression_suite, Phi, SpectralInput,
};
use crate::kernels::{
    chapman_kolmogorov_residual, limiting_kernels, mehler_heat_residual, mehler_mass_closed,
    mehler_mass_quadrature,
};
use crate::lie::{build_algebra, cartan_split, kappa_data, preset_from_json, LieAlgebraSpec};
use crate::linalg;
use crate::orbital::{key4_residual, orbital_closed_tgen, orbital_rhs_tnew, OrbitalConfig};
use crate::tol::{Tolerances, SCHEMA_VERSION};
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub id: String,
    pub status: String,
    pub residual: f64,
    pub tolerance: f64,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub runs: Vec<RunRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report { version: SCHEMA_VERSION.to_string(), runs: Vec::new() }
    }

    pub fn push(&mut self, id: &str, residual: f64, tolerance: f64, details: &str) {
        let status = if residual <= tolerance { "pass" } else { "fail" };
        self.runs.push(RunRecord {
            id: id.to_string(),
            status: status.to_string(),
            residual,
            tolerance,
            details: details.to_string(),
        });
    }

    /// Record a boolean check (residual 0/1 against tolerance 0).
    pub fn push_bool(&mut self, id: &str, ok: bool, details: &str) {
        self.push(id, if ok { 0.0 } else { 1.0 }, 0.0, details);
    }

    pub fn all_pass(&self) -> bool {
        self.runs.iter().all(|r| r.status == "pass")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

/// Load a preset by name, or from `HYPOLAP_PRESET_DIR/<name>.json` when the
/// environment variable is set and the file exists.
pub fn load_preset(name: &str) -> Result<LieAlgebraSpec> {
    if let Ok(dir) = std::env::var("HYPOLAP_PRESET_DIR") {
        let path = std::path::Path::new(&dir).join(format!("{name}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| crate::HypolapError::Other(format!("cannot read {path:?}: {e}")))?;
            return preset_from_json(&text);
        }
    }
    build_algebra(name)
}

/// The E-representation used for a preset's representation-coupled checks.
fn default_erep(spec: &LieAlgebraSpec) -> ERep {
    match spec.name.as_str() {
        "sl2c_real" => crate::dirac::su2_erep(1),
        _ => ERep::trivial(spec.n()),
    }
}

/// The full identity suite for one preset (operator algebra, compression,
/// elliptic consistency, kernels, eta).
pub fn verify_suite(name: &str, tol: &Tolerances) -> Result<Report> {
    let spec = load_preset(name)?;
    let mut rep = Report::new();
    let split = cartan_split(&spec)?;

    // Lie-level identities: the builders validate Jacobi/invariance/θ
    // exactly; record the κ-norm identity (qsic-10) and the Casimir split.
    let kd = kappa_data(&spec, &split);
    let q10 = (kd.bstar_kappa_g - (0.5 * kd.trp_ckp + kd.trk_ckk / 6.0)).abs();
    rep.push("qsic-10", q10, tol.kostant_matrix, &spec.name);
    let q10k = (kd.bstar_kappa_k - kd.trk_ckk / 6.0).abs();
    rep.push("qsic-10:k", q10k, tol.kostant_matrix, &spec.name);

    if !spec.basis_matrices.is_empty() {
        // C^g = C^{g,H} + C^k and [C^{g,H}, C^k] = 0 in the faithful rep
        let rho: Vec<_> = (0..spec.dim)
            .map(|j| {
                let col = split.basis_vector(j);
                spec.realize(&col)
            })
            .collect();
        let m = split.m;
        let vdim = rho[0].nrows();
        let mut cgh = linalg::czeros(vdim);
        for r in rho.iter().take(m) {
            cgh = cgh - &r.dot(r);
        }
        let mut ck = linalg::czeros(vdim);
        for r in rho.iter().skip(m) {
            ck = ck + &r.dot(r);
        }
        let full = crate::lie::casimir_in_rep(&spec, &spec.basis_matrices)?;
        // express the full Casimir in the orthonormal basis too
        let mut cg = linalg::czeros(vdim);
        for (i, r) in rho.iter().enumerate() {
            let sign = if i < m { 1.0 } else { -1.0 };
            cg = cg - &r.dot(r).mapv(|z| z * sign);
        }
        let _ = full;
        rep.push(
            "kos16-3a2",
            linalg::max_abs(&(&cg - &(cgh.clone() + &ck))),
            tol.kostant_matrix,
            &spec.name,
        );
        rep.push(
            "comm1",
            linalg::max_abs(&linalg::commutator(&cgh, &ck)),
            tol.kostant_matrix,
            &spec.name,
        );
    }

    // exact operator-square identities
    let eng = Engine::new(&spec);
    for r in ops::verify_square_identities(&eng) {
        rep.push_bool(&r.id, r.ok, &format!("{} offending terms", r.offending_terms));
    }

    // matrix-model residual of the Kostant square (defining representation):
    // both sides applied to a fixed state through the independent model
    if !spec.basis_matrices.is_empty() {
        let model = MatrixModel::new(&spec, spec.basis_matrices.clone());
        let dg = ops::d_g(&eng);
        let lhs = eng.multiply(&dg, &dg);
        let rhs = ops::casimir(&eng).add(&crate::algebra::NormalForm::scalar(
            crate::algebra::Coeff::from_rat(ops::bstar_kappa_g(&eng) * crate::lie::rat(1, 4)),
        ));
        let mut st: crate::algebra::model::PolyState = Default::default();
        let mut v = vec![Complex64::new(0.0, 0.0); model.disc_dim()];
        for (i, x) in v.iter_mut().enumerate() {
            *x = Complex64::new(((i * 37 + 11) % 17) as f64 / 17.0 - 0.5, 0.3);
        }
        st.insert(vec![0u8; spec.dim], v);
        let out_l = model.apply_nf(&lhs, &st, 1.0, 0.0);
        let out_r = model.apply_nf(&rhs, &st, 1.0, 0.0);
        rep.push(
            "kos22:matrix-model",
            crate::algebra::model::state_diff_norm(&out_l, &out_r),
            tol.kostant_matrix,
            &spec.name,
        );
    }

    if spec.basis_is_orthonormal() {
        let sup = ops::superconnection_curvature(&eng)?;
        rep.push_bool("co33:grade00", sup.grade00_reduces.ok, "");
        rep.push_bool("co29x1y:dtheta", sup.dtheta_component.ok, "");
        rep.push_bool("co29x1y:db", sup.db_component.ok, "");
        rep.push_bool("co37:bianchi", sup.bianchi.ok, "");
    }

    // clifford and compression blocks; the large sl3r fibre (2^8·4) is
    // exercised through the spin/Λ checks and the Kostant model above, the
    // rotation-heavy blocks run on the fibres of moderate size
    let e_rep = default_erep(&spec);
    let fs = FibreSpace::new(&spec, &split, e_rep);
    if fs.m >= 1 {
        let spin = spin_rep_build(&fs);
        rep.push("clifford-relations", spin.clifford_residual, 1e-14, &spec.name);
        rep.push("batt1:equivariance", spin.equivariance_residual, 1e-12, &spec.name);
        rep.push("Lie11x1", spin.casimir_residual, tol.kostant_matrix, &spec.name);
    }
    let lich = crate::dirac::lichnerowicz_consistency(&spec, fs.e_rep.clone())?;
    rep.push("Lie17x1-vs-qsic-9", lich, tol.lichnerowicz, &spec.name);
    for theta in [0.0, 0.5, 1.2] {
        let parts = crate::dirac::elliptic_matrix_parts(&fs, theta);
        rep.push(&format!("japo4@θ={theta}"), parts.japo4_residual, tol.lichnerowicz, &spec.name);
    }

    if fs.total_dim() <= 512 {
        let rot = rotation_ops(&fs, 0.7);
        rep.push("co6:product", rot.product_formula_residual, 1e-12, &spec.name);
        rep.push("co7:conjugation", rot.conjugation_residual, 1e-12, &spec.name);
        let nops = number_operator_identities(&fs, std::f64::consts::FRAC_PI_3);
        rep.push("ors0", nops.ors0_residual, 1e-12, &spec.name);
        rep.push("co16x3", nops.co16x3_residual, 1e-12, &spec.name);
        rep.push("comp1z1", nops.comp1z1_residual, 1e-12, &spec.name);

        // compression suite over the θ grid, plus S_θ/δ_θ closed forms
        for theta in [0.0, 0.3, 0.7, 1.2, 1.5] {
            for c in verify_compressions(&fs, theta)? {
                rep.push(&format!("{}@θ={theta}", c.id), c.residual, c.tolerance, &spec.name);
            }
        }
        for theta in [0.0, 0.5, 1.2] {
            for c in verify_s_and_delta(&fs, theta)? {
                rep.push(&format!("{}@θ={theta}", c.id), c.residual, c.tolerance, &spec.name);
            }
            let th = thfub_endomorphism_residual(&fs, theta)?;
            rep.push(&format!("thfub@θ={theta}"), th, tol.thfub, &spec.name);
        }
    }

    // conjugation / scaling identities (engine-backed; orthonormal presets)
    if spec.basis_is_orthonormal() && !spec.basis_matrices.is_empty() {
        let bundle = crate::dirac::build_operators(&spec, fs.e_rep.clone(), 0.8)?;
        rep.push("co12", bundle.co12_residual, tol.conjugation, &spec.name);
        rep.push("co13a4", bundle.co13a4_residual, tol.conjugation, &spec.name);
        rep.push("he-1", bundle.he1_residual, tol.conjugation, &spec.name);
    }

    if spec.name == "sl2c_real" {
        for j2 in [1u8, 2] {
            let w = crate::dirac::weyl_constant_check(&spec, j2)?;
            rep.push(&format!("conk4y1:j2={j2}"), w, 1e-12, &spec.name);
        }
    }

    // kernels (flat model; preset-independent)
    let mass =
        (mehler_mass_quadrature(1, 1.0, &[0.7]) - mehler_mass_closed(1, 1.0, &[0.7])).abs();
    rep.push("glab17a", mass, tol.mehler_mass, "m=1");
    rep.push("glab14:heat", mehler_heat_residual(0.8, 0.4, -0.3, 1e-3), 1e-4, "");
    for b in [0.5, 1.0, 2.0] {
        rep.push(
            &format!("chapman-kolmogorov:b={b}"),
            chapman_kolmogorov_residual(b, 1.0, 0.1, 0.3, -0.2, 0.4),
            tol.chapman,
            "",
        );
    }
    for c in limiting_kernels(1, 1.0, 2.0) {
        rep.push(&c.id, c.residual, c.tolerance, "");
    }

    // eta transgression
    let input = SpectralInput::diag(&[2.0], Phi::Log1p);
    for c in transgression_suite(&input)? {
        rep.push(&c.id, c.residual, c.tolerance, "diag(2)");
    }
    let conk2 = (half_convolve(|s| s.powf(-0.5), 1.3) - std::f64::consts::PI).abs();
    rep.push("conk2", conk2, tol.conk2, "");
    let nauf = {
        let (x, t) = (1.0, 2.0);
        (half_convolve(|s| s.powf(-0.5) * (-x / s).exp(), t)
            - std::f64::consts::PI.sqrt() * phi_tail(x / t))
        .abs()
    };
    rep.push("nauf18", nauf, tol.nauf18, "erfc oracle");
    let inp = SpectralInput::diag(&[0.8, -0.5, 1.5], Phi::ExpNeg);
    rep.push("bob9x1", bob9x1_residual(&inp), tol.bob9x1, "t=1e4");
    rep.push("bob16", bob16_residual(&[0.8, -0.5, 1.5]), tol.bob16, "diagonal D");
    let (sym, cert) = symmetry_test(&SpectralInput::diag(&[1.0, -1.0, 0.0], Phi::ExpPos).d)?;
    rep.push_bool("psym", sym && cert.iter().all(|c| c.ok), "diag(1,-1,0)");

    Ok(rep)
}

/// One CSV row of an estimator table.
pub fn estimator_csv_header() -> String {
    "estimator,b,theta,t,mean,stderr,closed_form,z".to_string()
}

/// The stochastic suite: Feynman–Kac closed forms, Girsanov, pathwise
/// inequalities, the generalized Itô order, and escape tails, with the
/// pathwise checks swept over `b_grid` and the transport diagnostics run at
/// the head of `theta_grid`.
pub fn simulate_suite_gridded(
    seed: u64,
    n_paths: usize,
    dt: f64,
    t: f64,
    b_grid: &[f64],
    theta_grid: &[f64],
    tol: &Tolerances,
) -> Result<(Report, Vec<String>)> {
    simulate_suite_inner(seed, n_paths, dt, t, b_grid, theta_grid, tol)
}

/// [`simulate_suite_gridded`] with the default grids.
pub fn simulate_suite(
    seed: u64,
    n_paths: usize,
    dt: f64,
    t: f64,
    tol: &Tolerances,
) -> Result<(Report, Vec<String>)> {
    simulate_suite_inner(seed, n_paths, dt, t, &[0.5, 1.0], &[0.7], tol)
}

fn simulate_suite_inner(
    seed: u64,
    n_paths: usize,
    dt: f64,
    t: f64,
    b_grid: &[f64],
    theta_grid: &[f64],
    tol: &Tolerances,
) -> Result<(Report, Vec<String>)> {
    let mut rep = Report::new();
    let mut csv = vec![estimator_csv_header()];
    let fmt = |id: &str, b: f64, theta: f64, t: f64, r: &crate::diffusion::EstimatorResult| {
        format!(
            "{id},{b},{theta},{t},{:.12e},{:.12e},{},{}",
            r.mean,
            r.stderr,
            r.closed_form.map(|c| format!("{c:.12e}")).unwrap_or_default(),
            r.z_score.map(|z| format!("{z:.3}")).unwrap_or_default()
        )
    };

    // (phan-11b)
    let bm = simulate_ou(1, FibreLaw::Brownian, 1.0, &[0.0], dt, t, seed, n_paths);
    let r = feynman_kac_estimate(&bm, Functional::ExpNegSqInt { beta: 1.0 })?;
    rep.push("phan-11b", r.z_score.unwrap().abs(), tol.z_max, &fmt("phan-11b", 1.0, 0.0, t, &r));
    csv.push(fmt("phan-11b", 1.0, 0.0, t, &r));

    // (rot7a) + bound (rot7ay1)
    let ou = simulate_ou(1, FibreLaw::OuScaled, 1.0, &[0.2], dt, t, seed + 1, n_paths);
    let r = feynman_kac_estimate(&ou, Functional::ExpPosSqInt { beta: 0.6 })?;
    rep.push("rot7a", r.z_score.unwrap().abs(), tol.z_max, &fmt("rot7a", 1.0, 0.0, t, &r));
    rep.push_bool("rot7ay1:mean-bound", r.bound_ok == Some(true), "");
    csv.push(fmt("rot7a", 1.0, 0.0, t, &r));
    let r0 = feynman_kac_estimate(&ou, Functional::ExpPosSqInt { beta: 0.0 })?;
    rep.push("rot7a:beta=0", (r0.mean - 1.0).abs(), 0.0, "exact");
    let raf = feynman_kac_estimate(&ou, Functional::ExpAbsInt { c: 0.5, beta: 0.8 })?;
    rep.push_bool("af1:mean-bound", raf.bound_ok == Some(true), "");

    // (glab17a) via MC: E^Q-route for the Mehler mass,
    //   ∫h_t = e^{mt/2} e^{-|Y|²/2} E^Q[e^{|Y_t|²/2}] — use the P-route
    //   instead: E^P[exp(mt/2 - (1/2)∫|Y|²)] = e^{-...} mass formula
    let r = feynman_kac_estimate(&bm, Functional::ExpNegSqInt { beta: 1.0 })?;
    let mass_mc = r.mean * (t / 2.0).exp();
    let mass_closed = mehler_mass_closed(1, t, &[0.0]);
    let z = (mass_mc - mass_closed) / (r.stderr * (t / 2.0).exp());
    rep.push("glab17a:mc", z.abs(), tol.z_max, &format!("mass {mass_mc:.6} vs {mass_closed:.6}"));

    // Girsanov
    let g = girsanov_check(1, t, &[0.3], dt, seed + 2, n_paths);
    rep.push("girsanov", g.max_abs_z, tol.z_max, "5 test functions + weight mean");
    for c in &g.checks {
        csv.push(format!(
            "{},{},{},{},{:.12e},{:.12e},{},{}",
            c.id,
            1.0,
            0.0,
            t,
            c.mean,
            c.stderr,
            c.closed_form.map(|v| format!("{v:.12e}")).unwrap_or_default(),
            c.z_score.map(|z| format!("{z:.3}")).unwrap_or_default()
        ));
    }

    // pathwise (lom7) on the scaled ensemble, swept over the b grid
    for &b in b_grid {
        let ens = simulate_ou(2, FibreLaw::OuScaled, b, &[0.4, -0.2], dt, t, seed + 3, n_paths.min(10_000));
        rep.push_bool(
            &format!("lom7:b={b}"),
            lom7_pass_fraction(&ens) == 1.0,
            "pathwise on every path",
        );
    }

    // (phan-9) refinement
    let pairs = ito_identity_refinement(1, t, &[0.2], &[1e-1, 1e-2, 1e-3], seed + 4, 400);
    let order = fitted_order(&pairs);
    rep.push("phan-9:order", (0.5 - order).max(0.0), 0.35, &format!("order {order:.3}"));

    // generalized Itô (fex2): fitted order ≥ ito_order_min
    let f = DistanceBump { eps: 0.5 };
    let pairs = generalized_ito_residual(
        2,
        0.7,
        &f,
        &[0.0, 0.0],
        1.0,
        &[1e-2, 1e-3, 1e-4],
        seed + 5,
        200,
        ItoForm::Smoothed,
    );
    let order = fitted_order(&pairs);
    rep.push_bool(
        "fex2:order",
        order >= tol.ito_order_min,
        &format!("order {order:.3} over dt {:?}", pairs),
    );

    // escape tails
    let radii: Vec<f64> = (1..=10).map(|k| 0.4 + 0.25 * k as f64).collect();
    let sups = brownian_sup_dists(1, t, 1e-2, seed + 6, n_paths.min(20_000));
    let fit = escape_tail_fit(&sups, t, &radii)?;
    rep.push_bool(
        "anfst1:brownian",
        fit.slope < 0.0 && fit.z.abs() >= tol.escape_z_min,
        &format!("slope {:.3} z {:.1}", fit.slope, fit.z),
    );
    let kin = simulate_kinetic_euclidean(1, 0.5, 0.0, &[0.0], 1e-2, t, seed + 7, n_paths.min(20_000));
    let sups: Vec<f64> = kin.ensemble.paths.iter().map(|p| p.sup_dist).collect();
    let fit = escape_tail_fit(&sups, t, &radii)?;
    rep.push_bool(
        "led19:hypoelliptic",
        fit.slope < 0.0 && fit.z.abs() >= tol.escape_z_min,
        &format!("slope {:.3} z {:.1}", fit.slope, fit.z),
    );

    // transport ODEs on sl2r with the weight-1 character
    let spec = build_algebra("sl2r")?;
    let erep = weight_one_character();
    let theta0 = theta_grid.first().copied().unwrap_or(0.7);
    let tr = transport_ode_solve(&spec, erep.clone(), 0.5, theta0, 1e-3, 1.0, seed + 8, 24)?;
    rep.push("diff2:factorization", tr.factorization_residual, tol.transport_factorization, "");
    rep.push_bool("mel1", tr.mel1_pass_fraction == 1.0, "pathwise bound");
    let medians: Vec<f64> = [0.5, 0.25, 0.1]
        .iter()
        .map(|&b| {
            transport_ode_solve(&spec, erep.clone(), b, theta0, 1e-3, 1.0, seed + 8, 24)
                .map(|r| r.median_u0_vs_limit)
        })
        .collect::<Result<_>>()?;
    rep.push_bool(
        "tfiut:trend",
        medians[1] <= medians[0] * 1.02 && medians[2] <= medians[1] * 1.02,
        &format!("medians {medians:?}"),
    );
    let ra = transport_right_angle_residual(&spec, 0.5, 1e-3, 1.0)?;
    rep.push("prin-2", ra, tol.transport_right_angle, "θ=π/2 closed form");

    Ok((rep, csv))
}

/// Weight-one character of a rank-one torus: ρ(f₁) = i.
pub fn weight_one_character() -> ERep {
    let mut rho = linalg::czeros(1);
    rho[[0, 0]] = Complex64::new(0.0, 1.0);
    ERep { dim: 1, rho: vec![rho], label: "character:weight1".into() }
}

/// Orbital result tables over a `t`-grid with both routes.
pub fn orbital_table(
    preset: &str,
    t_grid: &[f64],
    tol: &Tolerances,
) -> Result<(Report, Vec<String>)> {
    let spec = load_preset(preset)?;
    let mut rep = Report::new();
    let mut csv =
        vec!["preset,|a|,k_tag,lambda_tag,t,value_re,value_im,route,orientation_sign".to_string()];
    match preset {
        "sl2c_real" => {
            let mut a = vec![0.0; 6];
            a[2] = 1.1;
            let mut k_log = vec![0.0; 6];
            k_log[5] = 0.9;
            let cfg = OrbitalConfig::new(&spec, a, k_log, ERep::trivial(3))?;
            let a_norm = cfg.a_norm();
            for &t in t_grid {
                let f_a = orbital_rhs_tnew(&cfg, t)?;
                let (first, second) = orbital_closed_tgen(&cfg, t)?;
                let internal = ((first - second) / second).norm();
                rep.push(&format!("free9:internal@t={t}"), internal, tol.free9_internal, "");
                let conv = half_convolve(
                    |s| orbital_closed_tgen(&cfg, s).map(|(_, v)| v.re).unwrap_or(0.0),
                    t,
                );
                let rel = ((conv - f_a.re) / f_a.re).abs();
                rep.push(&format!("tnew-tgen:dual@t={t}"), rel, tol.dual_route, "");
                csv.push(format!(
                    "{preset},{a_norm:.6},exp(0.9 k3),{},{t},{:.12e},{:.12e},tnew,{}",
                    cfg.lambda_tag, f_a.re, f_a.im, cfg.orientation_sign
                ));
                csv.push(format!(
                    "{preset},{a_norm:.6},exp(0.9 k3),{},{t},{:.12e},{:.12e},tgen,{}",
                    cfg.lambda_tag, second.re, second.im, cfg.orientation_sign
                ));
            }
            rep.push("key4", key4_residual(1.0), tol.key4, "x=1");
        }
        "sl3r" => {
            // vanishing table: regular a, k = id
            let mut worst: f64 = 0.0;
            let mut state = 0xFEEDu64;
            let mut nf = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64
            };
            for i in 0..100 {
                let mut a = vec![0.0; 8];
                a[0] = 1.0 + nf();
                a[1] = 0.3 + 0.2 * nf();
                let cfg = OrbitalConfig::new(&spec, a, vec![0.0; 8], ERep::trivial(3))?;
                let (tr, _) = crate::orbital::spin_character_integrand(&cfg, &[0.0; 8]);
                worst = worst.max(tr.norm());
                if i < 5 {
                    csv.push(format!(
                        "{preset},{:.6},identity,{},1,{:.3e},{:.3e},tvan,1",
                        cfg.a_norm(),
                        cfg.lambda_tag,
                        tr.re,
                        tr.im
                    ));
                }
            }
            rep.push("tvan:sl3r", worst, tol.tvan, "100 regular draws");
        }
        other => {
            return Err(crate::HypolapError::PresetNotFound { name: other.to_string() });
        }
    }
    Ok((rep, csv))
}
