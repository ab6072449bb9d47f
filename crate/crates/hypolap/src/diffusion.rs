//! Seeded Monte-Carlo simulation of the paper's diffusions: exact-in-law
//! Ornstein–Uhlenbeck updates, the kinetic (hypoelliptic) system on groups
//! and Euclidean space, Feynman–Kac and Girsanov cross-checks, the
//! generalized Itô refinement study, escape-tail fits, and the transport
//! ODEs along paths.
//!
//! Determinism: every path draws from its own counter-based stream
//! (`ChaCha8`, stream = path index), so results are bitwise reproducible
//! for a fixed `(seed, dt, n_paths, scheme)` regardless of worker count.

use crate::clifford::{ERep, FibreSpace};
use crate::compression::{bold_delta0, SThetaContext};
use crate::lie::{cartan_split, LieAlgebraSpec};
use crate::linalg::{self, ceye, czeros, expm, CMat};
use crate::{HypolapError, Result};
use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

/// Per-path summary state.
#[derive(Clone, Debug, Default)]
pub struct PathState {
    pub y_final: Vec<f64>,
    pub x_final: Vec<f64>,
    /// trapezoid `∫ |Y|² ds`
    pub int_y_sq: f64,
    /// trapezoid `∫ |Y| ds`
    pub int_y_abs: f64,
    /// left-point Itô sum `Σ ⟨Y, Δw⟩`
    pub ito_integral: f64,
    pub sup_scaled_y: f64,
    pub sup_w: f64,
    pub sup_dist: f64,
    pub lom7_ok: bool,
    pub constraint_residual: f64,
}

/// Seeded set of discretized trajectories with attached summaries.
pub struct PathEnsemble {
    pub seed: u64,
    pub n_paths: usize,
    pub dt: f64,
    pub horizon: f64,
    pub dim: usize,
    pub b: f64,
    pub law: FibreLaw,
    pub y0: Vec<f64>,
    pub paths: Vec<PathState>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FibreLaw {
    /// `Y_t = Y₀ + w_t`
    Brownian,
    /// `dY = -(Y/b²) dt + dw/b` (exact transition updates)
    OuScaled,
}

/// Simulate the fibre process with exact-in-law updates, jointly with its
/// driving Brownian increments (needed for the pathwise inequalities).
pub fn simulate_ou(
    dim: usize,
    law: FibreLaw,
    b: f64,
    y0: &[f64],
    dt: f64,
    horizon: f64,
    seed: u64,
    n_paths: usize,
) -> PathEnsemble {
    assert!(dt > 0.0 && horizon > 0.0);
    let steps = (horizon / dt).round() as usize;
    let paths: Vec<PathState> = (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = path_rng(seed, p as u64);
            let mut y = y0.to_vec();
            let mut w = vec![0.0; dim];
            let mut st = PathState {
                sup_scaled_y: norm(&y) * b,
                int_y_sq: 0.0,
                ..Default::default()
            };
            // exact joint law of (Y_{t+dt}, Δw): for OU with rate a = 1/b²,
            // vol σ = 1/b: Var(Δw) = dt, Var(I) = σ²(1-e^{-2a dt})/(2a),
            // Cov(I, Δw) = σ(1-e^{-a dt})/a
            let (decay, alpha, beta_c) = match law {
                FibreLaw::Brownian => (1.0, 1.0, 0.0),
                FibreLaw::OuScaled => {
                    let a = 1.0 / (b * b);
                    let sig = 1.0 / b;
                    let decay = (-a * dt).exp();
                    let var_i = sig * sig * (1.0 - (-2.0 * a * dt).exp()) / (2.0 * a);
                    let cov = sig * (1.0 - decay) / a;
                    let alpha = cov / dt;
                    let beta_sq = (var_i - cov * cov / dt).max(0.0);
                    (decay, alpha, beta_sq.sqrt())
                }
            };
            let mut prev_sq = norm_sq(&y);
            let mut prev_abs = prev_sq.sqrt();
            for _ in 0..steps {
                let mut new_sq = 0.0;
                for i in 0..dim {
                    let xi1: f64 = rng.sample(StandardNormal);
                    let dw = dt.sqrt() * xi1;
                    st.ito_integral += y[i] * dw;
                    let innov = match law {
                        FibreLaw::Brownian => dw,
                        FibreLaw::OuScaled => {
                            let xi2: f64 = rng.sample(StandardNormal);
                            alpha * dw + beta_c * xi2
                        }
                    };
                    y[i] = decay * y[i] + innov;
                    w[i] += dw;
                    new_sq += y[i] * y[i];
                }
                let new_abs = new_sq.sqrt();
                st.int_y_sq += 0.5 * (prev_sq + new_sq) * dt;
                st.int_y_abs += 0.5 * (prev_abs + new_abs) * dt;
                prev_sq = new_sq;
                prev_abs = new_abs;
                st.sup_scaled_y = st.sup_scaled_y.max(b * new_abs);
                st.sup_w = st.sup_w.max(norm(&w));
            }
            // (lom7): sup |b Y_{b,s}| ≤ |b Y₀| + 2 sup |w|
            st.lom7_ok = st.sup_scaled_y <= b * norm(y0) + 2.0 * st.sup_w + 1e-12;
            st.y_final = y;
            st
        })
        .collect();
    PathEnsemble {
        seed,
        n_paths,
        dt,
        horizon,
        dim,
        b,
        law,
        y0: y0.to_vec(),
        paths,
    }
}

fn norm(v: &[f64]) -> f64 {
    norm_sq(v).sqrt()
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Monte-Carlo estimator summary.
#[derive(Clone, Debug, Serialize)]
pub struct EstimatorResult {
    pub id: String,
    pub mean: f64,
    pub stderr: f64,
    pub n_paths: usize,
    pub closed_form: Option<f64>,
    pub z_score: Option<f64>,
    pub bound_ok: Option<bool>,
}

fn summarize(id: &str, values: &[f64], closed_form: Option<f64>) -> EstimatorResult {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
    let stderr = (var / n as f64).sqrt();
    let z = closed_form.map(|c| (mean - c) / stderr.max(1e-300));
    EstimatorResult {
        id: id.to_string(),
        mean,
        stderr,
        n_paths: n,
        closed_form,
        z_score: z,
        bound_ok: None,
    }
}

/// Functional catalog of the Feynman–Kac estimators.
#[derive(Clone, Copy, Debug)]
pub enum Functional {
    /// `exp(-(β²/2)∫|Y|²)` on the Brownian law (closed form: cosh)
    ExpNegSqInt { beta: f64 },
    /// `exp(+(β²/2)∫|Y|²)` on the OU law (domain guard β² ≤ 1 + (π/2t)²)
    ExpPosSqInt { beta: f64 },
    /// `exp(c ∫|Y|)` on the OU law (bound check only)
    ExpAbsInt { c: f64, beta: f64 },
}

pub fn feynman_kac_estimate(ens: &PathEnsemble, functional: Functional) -> Result<EstimatorResult> {
    let m = ens.dim as f64;
    let t = ens.horizon;
    let y0n = norm(&ens.y0);
    match functional {
        Functional::ExpNegSqInt { beta } => {
            assert_eq!(ens.law, FibreLaw::Brownian, "phan-11b needs the Brownian law");
            let vals: Vec<f64> = ens
                .paths
                .iter()
                .map(|p| (-(beta * beta) / 2.0 * p.int_y_sq).exp())
                .collect();
            let closed = if beta == 0.0 {
                1.0
            } else {
                (1.0 / (beta * t).cosh()).powf(m / 2.0)
                    * (-(beta * t).tanh() * beta * y0n * y0n / 2.0).exp()
            };
            Ok(summarize("phan-11b", &vals, Some(closed)))
        }
        Functional::ExpPosSqInt { beta } => {
            assert_eq!(ens.law, FibreLaw::OuScaled);
            let guard = 1.0 + (std::f64::consts::FRAC_PI_2 / t).powi(2);
            if beta * beta > guard {
                return Err(HypolapError::DomainGuard { beta_sq: beta * beta, guard });
            }
            let vals: Vec<f64> = ens
                .paths
                .iter()
                .map(|p| ((beta * beta) / 2.0 * p.int_y_sq).exp())
                .collect();
            let closed = if beta == 0.0 {
                1.0
            } else {
                let rho = (1.0 - beta * beta).max(0.0).sqrt();
                let (ch, sh_over_rho, th_term) = if rho > 1e-12 {
                    (
                        (rho * t).cosh(),
                        (rho * t).sinh() / rho,
                        (rho * t).tanh() / (rho + (rho * t).tanh()),
                    )
                } else {
                    (1.0, t, t / (1.0 + t))
                };
                (t.exp() / (ch + sh_over_rho)).powf(m / 2.0)
                    * (beta * beta * th_term * y0n * y0n / 2.0).exp()
            };
            let mut res = summarize("rot7a", &vals, Some(closed));
            // (rot7ay1) bound on the mean
            let bound = (beta * beta / 2.0 * (m * t + y0n * y0n)).exp();
            res.bound_ok = Some(res.mean <= bound);
            Ok(res)
        }
        Functional::ExpAbsInt { c, beta } => {
            assert_eq!(ens.law, FibreLaw::OuScaled);
            let vals: Vec<f64> = ens.paths.iter().map(|p| (c * p.int_y_abs).exp()).collect();
            let mut res = summarize("af1", &vals, None);
            let bound = (c * c * t / (2.0 * beta * beta)
                + beta * beta * m * t / 2.0
                + c * (1.0 - (-t).exp()) * y0n)
                .exp();
            res.bound_ok = Some(res.mean <= bound);
            Ok(res)
        }
    }
}

/// Fraction of paths satisfying (lom7).
pub fn lom7_pass_fraction(ens: &PathEnsemble) -> f64 {
    let ok = ens.paths.iter().filter(|p| p.lom7_ok).count();
    ok as f64 / ens.n_paths as f64
}

/// Girsanov cross-check: `E^P[weight · f(Y_t)] = E^Q[f(Y_t)]` for the
/// catalog test functions, with the weight of the elementary change of
/// measure.
#[derive(Debug, Serialize)]
pub struct GirsanovReport {
    pub checks: Vec<EstimatorResult>,
    pub max_abs_z: f64,
}

pub fn girsanov_check(
    dim: usize,
    t: f64,
    y0: &[f64],
    dt: f64,
    seed: u64,
    n_paths: usize,
) -> GirsanovReport {
    let bm = simulate_ou(dim, FibreLaw::Brownian, 1.0, y0, dt, t, seed, n_paths);
    let ou = simulate_ou(dim, FibreLaw::OuScaled, 1.0, y0, dt, t, seed ^ 0x9E37, n_paths);
    let m = dim as f64;
    let y0sq = norm_sq(y0);
    let weight = |p: &PathState| -> f64 {
        (m * t / 2.0 - 0.5 * p.int_y_sq + 0.5 * y0sq - 0.5 * norm_sq(&p.y_final)).exp()
    };
    let fns: Vec<(&str, Box<dyn Fn(&[f64]) -> f64 + Sync>)> = vec![
        ("f=1", Box::new(|_: &[f64]| 1.0)),
        ("f=|Y|^2", Box::new(|y: &[f64]| norm_sq(y))),
        ("f=exp(-|Y|^2)", Box::new(|y: &[f64]| (-norm_sq(y)).exp())),
        ("f=Y_1", Box::new(|y: &[f64]| y[0])),
        ("f=cos(Y_1)", Box::new(|y: &[f64]| y[0].cos())),
    ];
    let mut checks = Vec::new();
    let mut max_z: f64 = 0.0;
    for (name, f) in &fns {
        let wvals: Vec<f64> = bm.paths.iter().map(|p| weight(p) * f(&p.y_final)).collect();
        let qvals: Vec<f64> = ou.paths.iter().map(|p| f(&p.y_final)).collect();
        let a = summarize(name, &wvals, None);
        let b = summarize(name, &qvals, None);
        let z = (a.mean - b.mean) / (a.stderr * a.stderr + b.stderr * b.stderr).sqrt();
        max_z = max_z.max(z.abs());
        checks.push(EstimatorResult {
            id: format!("girsanov:{name}"),
            mean: a.mean,
            stderr: a.stderr,
            n_paths: n_paths,
            closed_form: Some(b.mean),
            z_score: Some(z),
            bound_ok: None,
        });
        if *name == "f=1" {
            // the weight itself has mean 1 (martingale property)
            let z1 = (a.mean - 1.0) / a.stderr;
            max_z = max_z.max(z1.abs());
            checks.push(EstimatorResult {
                id: "girsanov:weight-mean-1".into(),
                mean: a.mean,
                stderr: a.stderr,
                n_paths,
                closed_form: Some(1.0),
                z_score: Some(z1),
                bound_ok: None,
            });
        }
        if *name == "f=|Y|^2" {
            // OU second moment: e^{-2t}|Y₀|² + m(1-e^{-2t})/2
            let closed = (-2.0 * t).exp() * y0sq + m * (1.0 - (-2.0 * t).exp()) / 2.0;
            let zq = (b.mean - closed) / b.stderr;
            max_z = max_z.max(zq.abs());
            checks.push(EstimatorResult {
                id: "girsanov:ou-second-moment".into(),
                mean: b.mean,
                stderr: b.stderr,
                n_paths,
                closed_form: Some(closed),
                z_score: Some(zq),
                bound_ok: None,
            });
        }
    }
    GirsanovReport { checks, max_abs_z: max_z }
}

/// Per-path residual of the Itô identity (phan-9) at several step sizes:
/// `(1/2)|Y_t|² - (1/2)|Y₀|² - mt/2 - Σ⟨Y, δw⟩ → 0` at rate `O(√dt)`.
pub fn ito_identity_refinement(
    dim: usize,
    t: f64,
    y0: &[f64],
    dts: &[f64],
    seed: u64,
    n_paths: usize,
) -> Vec<(f64, f64)> {
    dts.iter()
        .map(|&dt| {
            let ens = simulate_ou(dim, FibreLaw::Brownian, 1.0, y0, dt, t, seed, n_paths);
            let mean_res = ens
                .paths
                .iter()
                .map(|p| {
                    (0.5 * norm_sq(&p.y_final)
                        - 0.5 * norm_sq(y0)
                        - dim as f64 * t / 2.0
                        - p.ito_integral)
                        .abs()
                })
                .sum::<f64>()
                / n_paths as f64;
            (dt, mean_res)
        })
        .collect()
}

/// Fitted slope of `log(residual)` against `log(dt)`.
pub fn fitted_order(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len() as f64;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = xs.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

// ---------------------------------------------------------------------------
// kinetic (hypoelliptic) simulation
// ---------------------------------------------------------------------------

/// Euclidean kinetic ensemble: `ẋ = cos θ·Y/b`, `Y` the scaled OU.
pub struct KineticEnsemble {
    pub ensemble: PathEnsemble,
}

pub fn simulate_kinetic_euclidean(
    dim: usize,
    b: f64,
    theta: f64,
    y0: &[f64],
    dt: f64,
    horizon: f64,
    seed: u64,
    n_paths: usize,
) -> KineticEnsemble {
    let steps = (horizon / dt).round() as usize;
    let cos_t = crate::compression::cos_clamped(theta);
    let a = 1.0 / (b * b);
    let sig = 1.0 / b;
    let decay = (-a * dt).exp();
    let var_i = sig * sig * (1.0 - (-2.0 * a * dt).exp()) / (2.0 * a);
    let cov = sig * (1.0 - decay) / a;
    let alpha = cov / dt;
    let beta_c = (var_i - cov * cov / dt).max(0.0).sqrt();
    let paths: Vec<PathState> = (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = path_rng(seed, p as u64);
            let mut y = y0.to_vec();
            let mut x = vec![0.0; dim];
            let mut st = PathState::default();
            let mut prev_sq = norm_sq(&y);
            for _ in 0..steps {
                let y_old = y.clone();
                for i in 0..dim {
                    let xi1: f64 = rng.sample(StandardNormal);
                    let dw = dt.sqrt() * xi1;
                    let xi2: f64 = rng.sample(StandardNormal);
                    y[i] = decay * y[i] + alpha * dw + beta_c * xi2;
                }
                // midpoint velocity update of x
                for i in 0..dim {
                    x[i] += dt * cos_t * 0.5 * (y_old[i] + y[i]) / b;
                }
                let new_sq = norm_sq(&y);
                st.int_y_sq += 0.5 * (prev_sq + new_sq) * dt;
                prev_sq = new_sq;
                st.sup_dist = st.sup_dist.max(norm(&x));
            }
            st.x_final = x;
            st.y_final = y;
            st.lom7_ok = true;
            st
        })
        .collect();
    KineticEnsemble {
        ensemble: PathEnsemble {
            seed,
            n_paths,
            dt,
            horizon,
            dim,
            b,
            law: FibreLaw::OuScaled,
            y0: y0.to_vec(),
            paths,
        },
    }
}

/// Group-valued kinetic ensemble on a preset with a faithful matrix
/// realization: `g` advanced by the midpoint exponential, `Y^p`/`Y^N`
/// by exact OU transitions with the θ-dependent rates.
pub struct GroupEnsemble {
    pub seed: u64,
    pub n_paths: usize,
    pub dt: f64,
    pub horizon: f64,
    pub theta: f64,
    pub b: f64,
    pub g_final: Vec<CMat>,
    pub yp_final: Vec<Vec<f64>>,
    pub yk_final: Vec<Vec<f64>>,
    pub constraint_residuals: Vec<f64>,
    pub yk_frozen_residual: f64,
}

pub fn simulate_hypoelliptic(
    spec: &LieAlgebraSpec,
    b: f64,
    theta: f64,
    y0p: &[f64],
    y0k: &[f64],
    dt: f64,
    horizon: f64,
    seed: u64,
    n_paths: usize,
) -> Result<GroupEnsemble> {
    let split = cartan_split(spec)?;
    let m = split.m;
    let n = split.n;
    assert_eq!(y0p.len(), m);
    assert_eq!(y0k.len(), n);
    let steps = (horizon / dt).round() as usize;
    let cos_t = crate::compression::cos_clamped(theta);
    // TX motion: rate 1/b², vol 1/b; N motion: rate cosθ/b², vol √cosθ/b
    let ou_coeffs = |a: f64, sig: f64| -> (f64, f64) {
        if a < 1e-300 {
            return (1.0, 0.0);
        }
        let decay = (-a * dt).exp();
        let var = sig * sig * (1.0 - (-2.0 * a * dt).exp()) / (2.0 * a);
        (decay, var.sqrt())
    };
    let (dec_p, sd_p) = ou_coeffs(1.0 / (b * b), 1.0 / b);
    let (dec_k, sd_k) = ou_coeffs(cos_t / (b * b), cos_t.max(0.0).sqrt() / b);
    let results: Result<Vec<(CMat, Vec<f64>, Vec<f64>, f64, f64)>> = (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = path_rng(seed, p as u64);
            let gdim = spec.basis_matrices[0].nrows();
            let mut g = ceye(gdim);
            let mut yp = y0p.to_vec();
            let mut yk = y0k.to_vec();
            let mut worst_constraint: f64 = 0.0;
            for step in 0..steps {
                let yp_old = yp.clone();
                for v in yp.iter_mut() {
                    let xi: f64 = rng.sample(StandardNormal);
                    *v = dec_p * *v + sd_p * xi;
                }
                for v in yk.iter_mut() {
                    let xi: f64 = rng.sample(StandardNormal);
                    *v = dec_k * *v + sd_k * xi;
                }
                // g step: midpoint exponential
                let mut mid = vec![0.0; m + n];
                for i in 0..m {
                    mid[i] = dt * cos_t * 0.5 * (yp_old[i] + yp[i]) / b;
                }
                let arg_spec: Vec<f64> = {
                    let mut out = vec![0.0; spec.dim];
                    for j in 0..m {
                        if mid[j] != 0.0 {
                            let col = split.basis_vector(j);
                            for i in 0..spec.dim {
                                out[i] += mid[j] * col[i];
                            }
                        }
                    }
                    out
                };
                let arg = spec.realize(&arg_spec);
                let arg_norm = linalg::max_abs(&arg);
                if arg_norm > 1.0 {
                    return Err(HypolapError::StepTooLarge { norm: arg_norm });
                }
                g = g.dot(&expm(&arg));
                // renormalize the defining constraint (det = 1) periodically
                if step % 100 == 99 {
                    let det = linalg::det(&g);
                    worst_constraint = worst_constraint.max((det.norm() - 1.0).abs());
                    let scale = det.powf(-1.0 / gdim as f64);
                    g = g.mapv(|z| z * scale);
                }
            }
            let mut f = 0.0;
            if cos_t.abs() < 1e-14 {
                for i in 0..n {
                    f = (yk[i] - y0k[i]).abs().max(f);
                }
            }
            Ok((g, yp, yk, worst_constraint, f))
        })
        .collect();
    let results = results?;
    let mut out = GroupEnsemble {
        seed,
        n_paths,
        dt,
        horizon,
        theta,
        b,
        g_final: Vec::new(),
        yp_final: Vec::new(),
        yk_final: Vec::new(),
        constraint_residuals: Vec::new(),
        yk_frozen_residual: 0.0,
    };
    for (g, yp, yk, c, f) in results {
        out.g_final.push(g);
        out.yp_final.push(yp);
        out.yk_final.push(yk);
        out.constraint_residuals.push(c);
        out.yk_frozen_residual = out.yk_frozen_residual.max(f);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// generalized Itô formula
// ---------------------------------------------------------------------------

/// Smooth test function with gradient and Hessian.
pub trait SmoothFn: Sync {
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
    fn hessian(&self, x: &[f64]) -> Array2<f64>;
}

pub struct ConstantFn(pub f64);
impl SmoothFn for ConstantFn {
    fn value(&self, _: &[f64]) -> f64 {
        self.0
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        vec![0.0; x.len()]
    }
    fn hessian(&self, x: &[f64]) -> Array2<f64> {
        Array2::zeros((x.len(), x.len()))
    }
}

pub struct LinearFn(pub Vec<f64>);
impl SmoothFn for LinearFn {
    fn value(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(a, b)| a * b).sum()
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let _ = x;
        self.0.clone()
    }
    fn hessian(&self, x: &[f64]) -> Array2<f64> {
        Array2::zeros((x.len(), x.len()))
    }
}

/// Smooth bump of the distance: `f(z) = ε k(|z|/ε)` with `k(u) = u²` for
/// `u ≤ 1/2`, `k(u) = u` for `u ≥ 1`, quintic C² blend in between.
pub struct DistanceBump {
    pub eps: f64,
}

impl DistanceBump {
    fn k(&self, u: f64) -> f64 {
        if u <= 0.5 {
            u * u
        } else if u >= 1.0 {
            u
        } else {
            quintic(u).0
        }
    }
    fn kp(&self, u: f64) -> f64 {
        if u <= 0.5 {
            2.0 * u
        } else if u >= 1.0 {
            1.0
        } else {
            quintic(u).1
        }
    }
    fn kpp(&self, u: f64) -> f64 {
        if u <= 0.5 {
            2.0
        } else if u >= 1.0 {
            0.0
        } else {
            quintic(u).2
        }
    }
}

/// Quintic Hermite on [1/2, 1] matching (v, v', v'') = (1/4, 1, 2) at 1/2
/// and (1, 1, 0) at 1; returns (value, first, second derivative).
fn quintic(u: f64) -> (f64, f64, f64) {
    let s = (u - 0.5) / 0.5;
    // Hermite quintic basis in s ∈ [0,1] with h = 0.5
    let h = 0.5;
    let (p0, m0, a0) = (0.25, 1.0 * h, 2.0 * h * h);
    let (p1, m1, a1) = (1.0, 1.0 * h, 0.0);
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let s5 = s4 * s;
    let h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    let h10 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    let h20 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    let h01 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    let h11 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    let h21 = 0.5 * s3 - s4 + 0.5 * s5;
    let v = p0 * h00 + m0 * h10 + a0 * h20 + p1 * h01 + m1 * h11 + a1 * h21;
    // derivatives w.r.t. u: d/du = (1/h) d/ds
    let dh00 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    let dh10 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    let dh20 = s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4;
    let dh01 = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;
    let dh11 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
    let dh21 = 1.5 * s2 - 4.0 * s3 + 2.5 * s4;
    let dv = (p0 * dh00 + m0 * dh10 + a0 * dh20 + p1 * dh01 + m1 * dh11 + a1 * dh21) / h;
    let d2h00 = -60.0 * s + 180.0 * s2 - 120.0 * s3;
    let d2h10 = -36.0 * s + 96.0 * s2 - 60.0 * s3;
    let d2h20 = 1.0 - 9.0 * s + 18.0 * s2 - 10.0 * s3;
    let d2h01 = 60.0 * s - 180.0 * s2 + 120.0 * s3;
    let d2h11 = -24.0 * s + 84.0 * s2 - 60.0 * s3;
    let d2h21 = 3.0 * s - 12.0 * s2 + 10.0 * s3;
    let d2v = (p0 * d2h00 + m0 * d2h10 + a0 * d2h20 + p1 * d2h01 + m1 * d2h11 + a1 * d2h21)
        / (h * h);
    (v, dv, d2v)
}

impl SmoothFn for DistanceBump {
    fn value(&self, x: &[f64]) -> f64 {
        self.eps * self.k(norm(x) / self.eps)
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let r = norm(x);
        if r < 1e-14 {
            return vec![0.0; x.len()];
        }
        let kp = self.kp(r / self.eps);
        x.iter().map(|v| kp * v / r).collect()
    }
    fn hessian(&self, x: &[f64]) -> Array2<f64> {
        let d = x.len();
        let r = norm(x);
        if r < 1e-14 {
            let mut h = Array2::zeros((d, d));
            for i in 0..d {
                h[[i, i]] = 2.0 / self.eps;
            }
            return h;
        }
        let u = r / self.eps;
        let kp = self.kp(u);
        let kpp = self.kpp(u) / self.eps;
        Array2::from_shape_fn((d, d), |(i, j)| {
            let xi = x[i] / r;
            let xj = x[j] / r;
            kpp * xi * xj + kp * ((if i == j { 1.0 } else { 0.0 }) - xi * xj) / r
        })
    }
}

/// Which form of the generalized Itô identity to test: the unintegrated
/// `(b² d/dt + 1) f` version (exact pathwise for `Hess f` constant) or the
/// exponentially-smoothed integral version.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItoForm {
    Unintegrated,
    Smoothed,
}

/// Per-path residual of the generalized Itô identity at the final time,
/// averaged over the ensemble, for each step size.
///
/// The position is advanced with the exact pathwise relation
/// `∫_step Y ds = b²(Y_old - Y_new) + b Δw`, so the linear-`f` residual of
/// the unintegrated form is zero to rounding.
pub fn generalized_ito_residual<F: SmoothFn>(
    dim: usize,
    b: f64,
    f: &F,
    y0: &[f64],
    horizon: f64,
    dts: &[f64],
    seed: u64,
    n_paths: usize,
    form: ItoForm,
) -> Vec<(f64, f64)> {
    dts.iter()
        .map(|&dt| {
            let steps = (horizon / dt).round() as usize;
            let a = 1.0 / (b * b);
            let sig = 1.0 / b;
            let decay = (-a * dt).exp();
            let var_i = sig * sig * (1.0 - (-2.0 * a * dt).exp()) / (2.0 * a);
            let cov = sig * (1.0 - decay) / a;
            let alpha = cov / dt;
            let beta_c = (var_i - cov * cov / dt).max(0.0).sqrt();
            let mean_res: f64 = (0..n_paths)
                .into_par_iter()
                .map(|p| {
                    let mut rng = path_rng(seed, p as u64);
                    let mut y = y0.to_vec();
                    let mut x = vec![0.0; dim];
                    // A^f_t = ∫ ⟨Y, Hess f(x) Y⟩ ds + Σ ⟨∇f(x), δw⟩ and the
                    // smoothed integral J_t = ∫ e^{-(t-s)/b²} A_s ds / b²
                    let mut a_f = 0.0;
                    let mut j_t = 0.0;
                    let edt = (-dt / (b * b)).exp();
                    let f0 = f.value(&x);
                    let g0 = f.gradient(&x);
                    let dfdt0: f64 =
                        g0.iter().zip(y.iter()).map(|(a, b)| a * b).sum::<f64>() / b;
                    for _ in 0..steps {
                        let grad = f.gradient(&x);
                        let hess = f.hessian(&x);
                        let mut quad = 0.0;
                        for i in 0..dim {
                            for j in 0..dim {
                                quad += y[i] * hess[[i, j]] * y[j];
                            }
                        }
                        let a_f_old = a_f;
                        let y_old = y.clone();
                        let mut dw = vec![0.0; dim];
                        for i in 0..dim {
                            let xi1: f64 = rng.sample(StandardNormal);
                            dw[i] = dt.sqrt() * xi1;
                            a_f += grad[i] * dw[i];
                            let xi2: f64 = rng.sample(StandardNormal);
                            y[i] = decay * y[i] + alpha * dw[i] + beta_c * xi2;
                        }
                        a_f += quad * dt;
                        for i in 0..dim {
                            // exact ∫_step Y ds
                            let int_y = b * b * (y_old[i] - y[i]) + b * dw[i];
                            x[i] += int_y / b;
                        }
                        j_t = edt * j_t + 0.5 * (a_f_old + a_f) * (1.0 - edt);
                    }
                    match form {
                        ItoForm::Unintegrated => {
                            // f(x_t) + b⟨∇f(x_t), Y_t⟩ = f(x₀) + b⟨∇f(x₀), Y₀⟩ + A_t
                            let gt = f.gradient(&x);
                            let lhs = f.value(&x)
                                + b * gt.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
                            let rhs = f0
                                + b * g0.iter().zip(y0).map(|(a, b)| a * b).sum::<f64>()
                                + a_f;
                            (lhs - rhs).abs()
                        }
                        ItoForm::Smoothed => {
                            let rhs = f0
                                + b * b * dfdt0 * (1.0 - (-horizon / (b * b)).exp())
                                + j_t;
                            (f.value(&x) - rhs).abs()
                        }
                    }
                })
                .sum::<f64>()
                / n_paths as f64;
            (dt, mean_res)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// escape tails
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct EscapeFit {
    pub radii: Vec<f64>,
    pub log_probs: Vec<f64>,
    pub slope: f64,
    pub slope_stderr: f64,
    pub z: f64,
}

/// Regress `log P[sup_{s≤t} d(x₀,x_s) ≥ r]` on `r²/t`; the slope must be
/// negative with `|z| ≥ 3`. Radii with too few tail events are dropped.
pub fn escape_tail_fit(sup_dists: &[f64], t: f64, radii: &[f64]) -> Result<EscapeFit> {
    let n = sup_dists.len() as f64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut kept = Vec::new();
    for &r in radii {
        let count = sup_dists.iter().filter(|&&d| d >= r).count();
        if count >= 10 && count as f64 <= 0.9 * n {
            xs.push(r * r / t);
            ys.push((count as f64 / n).ln());
            kept.push(r);
        }
    }
    if xs.len() < 3 {
        return Err(HypolapError::InsufficientTailEvents {
            context: format!("only {} usable radii", xs.len()),
        });
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let resid_var: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let pred = my + slope * (x - mx);
            (y - pred) * (y - pred)
        })
        .sum::<f64>()
        / (k - 2.0).max(1.0);
    let slope_stderr = (resid_var / sxx).sqrt();
    let z = slope / slope_stderr.max(1e-300);
    Ok(EscapeFit {
        radii: kept,
        log_probs: ys,
        slope,
        slope_stderr,
        z,
    })
}

/// Brownian sup-distance ensemble (eq. anst-1 model).
pub fn brownian_sup_dists(dim: usize, t: f64, dt: f64, seed: u64, n_paths: usize) -> Vec<f64> {
    let steps = (t / dt).round() as usize;
    (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = path_rng(seed, p as u64);
            let mut x = vec![0.0; dim];
            let mut sup: f64 = 0.0;
            for _ in 0..steps {
                for v in x.iter_mut() {
                    let xi: f64 = rng.sample(StandardNormal);
                    *v += dt.sqrt() * xi;
                }
                sup = sup.max(norm(&x));
            }
            sup
        })
        .collect()
}

// ---------------------------------------------------------------------------
// transport ODEs along paths
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct TransportReport {
    pub factorization_residual: f64,
    pub mel1_pass_fraction: f64,
    pub median_u0_vs_limit: f64,
}

/// Integrate the transport ODEs `U`, `U⁰`, `E` (4th-order Runge–Kutta with
/// the path step) and the coupled limit process `H_{0,θ}` on the same
/// noise; checks the `U = U⁰ ⊗ E` factorization and the (mel1) pathwise
/// bound, and returns the ensemble median of
/// `‖U⁰_{b,θ,t} - e^{𝛅⁰_θ t} H_{0,θ,t} P‖` at the horizon.
pub fn transport_ode_solve(
    spec: &LieAlgebraSpec,
    e_rep: ERep,
    b: f64,
    theta: f64,
    dt: f64,
    horizon: f64,
    seed: u64,
    n_paths: usize,
) -> Result<TransportReport> {
    let split = cartan_split(spec)?;
    let fs = FibreSpace::new(spec, &split, e_rep);
    let m = fs.m;
    let n = fs.n;
    let cos_t = crate::compression::cos_clamped(theta);
    let s_half = cos_t.max(0.0).sqrt();
    let ctx = SThetaContext::new(&fs, theta);
    let dim = fs.total_dim();
    let ls_dim = fs.ls_dim();
    let e_dim = fs.e_rep.dim;

    // generator pieces: A(Y) = -N_θ/b² + R_θ(Y)/b on the full fibre;
    // A⁰ on Λ⊗S (trivial-E part of R), A_E = -i cos^{1/2}θ ρ(Y^N)/b on E
    let n_diag_full: Vec<f64> = {
        let np = fs.n_lambda_p().mat;
        let nk = fs.n_lambda_k().mat;
        (0..dim).map(|i| np[[i, i]].re + cos_t * nk[[i, i]].re).collect()
    };
    // Λ⊗S–level symbol matrices (strip the trivial E extension)
    let to_ls = |mfull: &CMat| -> CMat {
        let mut out = czeros(ls_dim);
        for i in 0..ls_dim {
            for j in 0..ls_dim {
                out[[i, j]] = mfull[[i * e_dim, j * e_dim]];
            }
        }
        out
    };
    // R⁰ pieces exclude ρ; rebuild from the context matrices minus the ρ part
    let mut r0_mats: Vec<Option<CMat>> = vec![None; m + n];
    for t in 0..m {
        r0_mats[t] = ctx.mat_tx[t].as_ref().map(|mm| to_ls(mm));
    }
    for t in m..m + n {
        if let Some(mm) = &ctx.mat_n[t] {
            // subtract the -i cos^{1/2}θ ρ(e_t) part before stripping E
            let mut fk = vec![0.0; n];
            fk[t - m] = 1.0;
            let rho_full = fs.rho(&fk).mat.mapv(|z| z * Complex64::new(0.0, -s_half));
            r0_mats[t] = Some(to_ls(&(mm - &rho_full)));
        }
    }
    // ĉ(-i ad(e_t)|_{TX̄}) on the spin factor, for H processes
    let chat_ad_bar: Vec<CMat> = (m..m + n)
        .map(|t| {
            let mut e = vec![0.0; m + n];
            e[t] = 1.0;
            let ad = fs.ad_on(&e);
            let adp = Array2::from_shape_fn((m, m), |(i, j)| ad[[i, j]]);
            fs.chat_bar_endo_on_spin(&adp)
                .mapv(|z| z * Complex64::new(0.0, -1.0))
        })
        .collect();
    // (mel1) constant from (est0): operator norms of the symbol pieces
    let op_norm = |mm: &CMat| -> f64 {
        let g = linalg::adjoint(mm).dot(mm);
        linalg::hermitian_eigenvalues(&g)
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(0.0)
            .sqrt()
    };
    let mut c_est: f64 = 0.0;
    for t in 0..m {
        if let Some(mm) = &r0_mats[t] {
            if cos_t > 1e-14 {
                c_est = c_est.max(op_norm(mm) / cos_t);
            }
        }
    }
    for t in m..m + n {
        if let Some(mm) = &r0_mats[t] {
            if s_half > 1e-14 {
                c_est = c_est.max(op_norm(mm) / s_half);
            }
        }
    }
    let c_mel1 = c_est * ((m.max(n)) as f64).sqrt() + 1e-9;

    let steps = (horizon / dt).round() as usize;
    let ou_coeffs = |a: f64, sig: f64| -> (f64, f64, f64, f64) {
        if a < 1e-300 {
            return (1.0, 0.0, 0.0, 0.0);
        }
        let decay = (-a * dt).exp();
        let var = sig * sig * (1.0 - (-2.0 * a * dt).exp()) / (2.0 * a);
        let cov = sig * (1.0 - decay) / a;
        let alpha = cov / dt;
        let beta_sq = (var - cov * cov / dt).max(0.0);
        (decay, alpha, beta_sq.sqrt(), var)
    };
    let (dec_p, al_p, bc_p, _) = ou_coeffs(1.0 / (b * b), 1.0 / b);
    let (dec_k, al_k, bc_k, _) = ou_coeffs(cos_t / (b * b), s_half / b);

    let n_diag_ls: Vec<f64> = (0..ls_dim).map(|i| n_diag_full[i * e_dim]).collect();
    let delta0 = bold_delta0(&fs, theta);

    struct PathOut {
        fact_res: f64,
        mel1_ok: bool,
        u0_vs_limit: f64,
    }

    let results: Vec<PathOut> = (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = path_rng(seed, p as u64);
            let mut yp = vec![0.0; m];
            let mut yk = vec![0.0; n];
            let mut u_full = ceye(dim);
            let mut u0 = ceye(ls_dim);
            let mut e_mat = ceye(e_dim);
            let mut h0 = ceye(fs.spin_dim);
            let mut int_yp_abs = 0.0;
            let mut int_yk_abs = 0.0;
            // generator assembly at a given (yp, yk)
            let gen_u0 = |yp: &[f64], yk: &[f64]| -> CMat {
                let mut a = czeros(ls_dim);
                for i in 0..ls_dim {
                    a[[i, i]] = Complex64::new(-n_diag_ls[i] / (b * b), 0.0);
                }
                for t in 0..m {
                    if let Some(mm) = &r0_mats[t] {
                        if yp[t] != 0.0 {
                            a = a + &mm.mapv(|z| z * (yp[t] / b));
                        }
                    }
                }
                for t in 0..n {
                    if let Some(mm) = &r0_mats[m + t] {
                        if yk[t] != 0.0 {
                            a = a + &mm.mapv(|z| z * (yk[t] / b));
                        }
                    }
                }
                a
            };
            let gen_e = |yk: &[f64]| -> CMat {
                let mut acc = czeros(e_dim);
                for t in 0..n {
                    if yk[t] != 0.0 {
                        acc = acc + &fs.e_rep.rho[t].mapv(|z| z * yk[t]);
                    }
                }
                acc.mapv(|z| z * Complex64::new(0.0, -s_half / b))
            };
            // right-multiplication RK4 step U ← U + h U A(...)
            let rk4 = |u: &CMat, a0: &CMat, am: &CMat, a1: &CMat| -> CMat {
                let k1 = u.dot(a0);
                let k2 = (u + &k1.mapv(|z| z * (dt / 2.0))).dot(am);
                let k3 = (u + &k2.mapv(|z| z * (dt / 2.0))).dot(am);
                let k4 = (u + &k3.mapv(|z| z * dt)).dot(a1);
                u + &(k1 + k2.mapv(|z| z * 2.0) + k3.mapv(|z| z * 2.0) + k4)
                    .mapv(|z| z * (dt / 6.0))
            };
            for _ in 0..steps {
                let yp_old = yp.clone();
                let yk_old = yk.clone();
                let mut dwk = vec![0.0; n];
                for v in yp.iter_mut() {
                    let xi1: f64 = rng.sample(StandardNormal);
                    let dw = dt.sqrt() * xi1;
                    let xi2: f64 = rng.sample(StandardNormal);
                    *v = dec_p * *v + al_p * dw + bc_p * xi2;
                }
                for (t, v) in yk.iter_mut().enumerate() {
                    let xi1: f64 = rng.sample(StandardNormal);
                    let dw = dt.sqrt() * xi1;
                    let xi2: f64 = rng.sample(StandardNormal);
                    *v = dec_k * *v + al_k * dw + bc_k * xi2;
                    dwk[t] = dw;
                }
                let ym: Vec<f64> = (0..m).map(|i| 0.5 * (yp_old[i] + yp[i])).collect();
                let km: Vec<f64> = (0..n).map(|i| 0.5 * (yk_old[i] + yk[i])).collect();
                // U⁰ step
                let a0 = gen_u0(&yp_old, &yk_old);
                let am = gen_u0(&ym, &km);
                let a1 = gen_u0(&yp, &yk);
                u0 = rk4(&u0, &a0, &am, &a1);
                // E step
                let e0 = gen_e(&yk_old);
                let em = gen_e(&km);
                let e1 = gen_e(&yk);
                e_mat = rk4(&e_mat, &e0, &em, &e1);
                // full U step: A_full = A⁰ ⊗ I + I ⊗ A_E
                let full =
                    |als: &CMat, ae: &CMat| -> CMat { linalg::kron(als, &ceye(e_dim)) + fs.ext_e(ae) };
                u_full = rk4(&u_full, &full(&a0, &e0), &full(&am, &em), &full(&a1, &e1));
                // H_{0,θ} Euler–Maruyama on the same w^k increments
                let mut dh = czeros(fs.spin_dim);
                for t in 0..n {
                    if dwk[t] != 0.0 {
                        dh = dh + &chat_ad_bar[t].mapv(|z| z * dwk[t]);
                    }
                }
                h0 = h0.clone() + h0.dot(&dh).mapv(|z| z * (cos_t * cos_t));
                int_yp_abs += 0.5 * (norm(&yp_old) + norm(&yp)) * dt;
                int_yk_abs += 0.5 * (norm(&yk_old) + norm(&yk)) * dt;
            }
            // factorization residual
            let fact = linalg::max_abs(&(&u_full - &linalg::kron(&u0, &e_mat)));
            // (mel1) with the computed constant
            let u0_norm = op_norm(&u0);
            let bound =
                ((c_mel1 / b) * (cos_t * int_yp_abs + s_half * int_yk_abs)).exp();
            let mel1_ok = u0_norm <= bound * (1.0 + 1e-9);
            // ‖U⁰ - e^{𝛅⁰ t} H₀ P‖: P = Λ-degree-0 projection
            let mut h0_ext = czeros(ls_dim);
            for s in 0..fs.spin_dim {
                for s2 in 0..fs.spin_dim {
                    h0_ext[[s, s2]] = h0[[s, s2]] * (delta0 * horizon).exp();
                }
            }
            let mut u0_p = czeros(ls_dim);
            for r in 0..ls_dim {
                for c in 0..fs.spin_dim {
                    u0_p[[r, c]] = u0[[r, c]];
                }
            }
            let diff = linalg::max_abs(&(&u0_p - &h0_ext));
            PathOut { fact_res: fact, mel1_ok, u0_vs_limit: diff }
        })
        .collect();
    let fact_res = results.iter().map(|r| r.fact_res).fold(0.0f64, f64::max);
    let pass = results.iter().filter(|r| r.mel1_ok).count() as f64 / n_paths as f64;
    let mut diffs: Vec<f64> = results.iter().map(|r| r.u0_vs_limit).collect();
    diffs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = diffs[diffs.len() / 2];
    Ok(TransportReport {
        factorization_residual: fact_res,
        mel1_pass_fraction: pass,
        median_u0_vs_limit: median,
    })
}

/// θ = π/2 closed form: `U_{b,π/2,t} = exp(-t N^{Λ(T*X)}/b²)` exactly.
pub fn transport_right_angle_residual(
    spec: &LieAlgebraSpec,
    b: f64,
    dt: f64,
    horizon: f64,
) -> Result<f64> {
    let split = cartan_split(spec)?;
    let fs = FibreSpace::new(spec, &split, ERep::trivial(split.n));
    let theta = std::f64::consts::FRAC_PI_2;
    let ctx = SThetaContext::new(&fs, theta);
    // at θ = π/2 all symbol matrices vanish; U solves U' = -U N^{Λ(T*X)}/b²
    for mm in ctx.mat_tx.iter().chain(ctx.mat_n.iter()).flatten() {
        if linalg::max_abs(mm) > 1e-12 {
            return Err(HypolapError::IdentityFailed {
                id: "prin-2".into(),
                detail: "R_θ does not vanish at θ = π/2".into(),
            });
        }
    }
    let dim = fs.total_dim();
    let np = fs.n_lambda_p().mat;
    let mut u = ceye(dim);
    let steps = (horizon / dt).round() as usize;
    for _ in 0..steps {
        // RK4 for the constant diagonal generator
        let a = np.mapv(|z| z * (-1.0 / (b * b)));
        let k1 = u.dot(&a);
        let k2 = (&u + &k1.mapv(|z| z * (dt / 2.0))).dot(&a);
        let k3 = (&u + &k2.mapv(|z| z * (dt / 2.0))).dot(&a);
        let k4 = (&u + &k3.mapv(|z| z * dt)).dot(&a);
        u = &u + &(k1 + k2.mapv(|z| z * 2.0) + k3.mapv(|z| z * 2.0) + k4).mapv(|z| z * (dt / 6.0));
    }
    let mut want = czeros(dim);
    for i in 0..dim {
        want[[i, i]] = Complex64::new((-horizon * np[[i, i]].re / (b * b)).exp(), 0.0);
    }
    Ok(linalg::max_abs(&(&u - &want)))
}

#[cfg(test)]
mod tests;
