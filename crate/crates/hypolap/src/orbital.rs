//! Explicit orbital-integral right-hand sides: the density `J_γ`, Â-genera,
//! spin-character integrands, the heat-smoothed formula and its closed-form
//! counterpart on rank-one presets, with branch-tracked square roots.

use crate::clifford::{ERep, FibreSpace};
use crate::eta::half_convolve;
use crate::lie::{
    adjoint_map, cartan_split, centralizer_decomposition, kappa_data, CartanSplit,
    CentralizerData, LieAlgebraSpec,
};
use crate::linalg::{self, ceye, expm, hermitian_eigenvalues, CMat};
use crate::quad::{GaussHermite, GaussLegendre};
use crate::{HypolapError, Result};
use num_complex::Complex64;

/// Â(x) = (x/2)/sinh(x/2) applied to a self-adjoint matrix:
/// `det^{1/2}[(B/2)/sinh(B/2)]`, positive square root.
pub fn ahat_eval(b: &CMat) -> Result<f64> {
    let herm = linalg::max_abs(&(b - &linalg::adjoint(b)));
    if herm > 1e-10 {
        return Err(HypolapError::NotAntisymmetric { residual: herm });
    }
    let evs = hermitian_eigenvalues(b);
    let mut det = 1.0;
    for l in evs {
        let f = if l.abs() < 1e-10 {
            1.0 - l * l / 24.0
        } else {
            (l / 2.0) / (l / 2.0).sinh()
        };
        det *= f;
    }
    Ok(det.sqrt())
}

/// `Â^θ(x) = 1/(2 sinh((x + iθ)/2))`.
pub fn ahat_theta_eval(theta: f64, x: f64) -> Result<Complex64> {
    let z = Complex64::new(x / 2.0, theta / 2.0);
    let s = z.sinh();
    if s.norm() < 1e-12 {
        return Err(HypolapError::SingularSinh { value: x });
    }
    Ok(Complex64::new(0.5, 0.0) / s)
}

/// Rotation angles (pairs `±θ_j`, `0 < θ_j ≤ π`) of an orthogonal matrix
/// with no `+1` eigenvalue requirement; `+1`-eigenvalues are returned as
/// zero angles.
pub fn rotation_angles(m: &CMat) -> Vec<f64> {
    // eigenvalues of the orthogonal matrix via the Hermitian i(M - Mᵀ)/2
    // trick would lose the angle pairing; use cos θ from the symmetric part.
    let sym = (m + &linalg::adjoint(m)).mapv(|z| z * 0.5);
    let evs = hermitian_eigenvalues(&sym);
    // eigenvalues of the symmetric part are cos θ_j with multiplicity 2 per
    // rotation pair (and ±1 for fixed/flipped vectors)
    evs.iter().map(|c| c.clamp(-1.0, 1.0).acos()).collect()
}

/// `Â^{k|V}(0)` of an orthogonal block: each rotation 2-plane (angle
/// `θ_j ∈ (0, π]`) is a complex line and contributes one factor
/// `Â^{-θ_j}(0) = 1/(2 sinh(-iθ_j/2)) = +i/(2 sin(θ_j/2))`.
///
/// The angle-sign choice per plane carries the ±1 orientation ambiguity of
/// such genera; this fixed convention is the preset orientation, and only
/// sign-equivariant statements are asserted downstream.
pub fn ahat_theta_block_at_zero(block: &CMat) -> Result<Complex64> {
    let angles = rotation_angles(block);
    let mut sorted = angles;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.len() % 2 != 0 {
        return Err(HypolapError::Other("odd-dimensional rotation block".into()));
    }
    let mut prod = Complex64::new(1.0, 0.0);
    for pair in sorted.chunks(2) {
        let th = 0.5 * (pair[0] + pair[1]);
        if th.abs() < 1e-10 {
            return Err(HypolapError::SingularSinh { value: 0.0 });
        }
        prod *= Complex64::new(0.0, 1.0) / (2.0 * (th / 2.0).sin());
    }
    Ok(prod)
}

/// Orbital configuration: a semisimple `γ = e^a k^{-1}` with `k = exp(t₀)`
/// in the preset torus, plus the E-representation data.
pub struct OrbitalConfig {
    pub spec: LieAlgebraSpec,
    pub split: CartanSplit,
    pub fs: FibreSpace,
    pub cdata: CentralizerData,
    /// `a` in spec coordinates
    pub a: Vec<f64>,
    /// `t₀` in spec coordinates with `k = exp(t₀)`
    pub k_log: Vec<f64>,
    pub orientation_sign: f64,
    pub gh_order: usize,
    pub lambda_tag: String,
}

impl OrbitalConfig {
    pub fn new(
        spec: &LieAlgebraSpec,
        a: Vec<f64>,
        k_log: Vec<f64>,
        e_rep: ERep,
    ) -> Result<Self> {
        let split = cartan_split(spec)?;
        let k_elt = expm(&spec.realize(&k_log));
        let cdata = centralizer_decomposition(spec, &split, &a, &k_elt)?;
        let fs = FibreSpace::new(spec, &split, e_rep);
        if split.m % 2 == 0 {
            return Err(HypolapError::Other("orbital formulas require odd m".into()));
        }
        let a_norm = spec.metric(&a, &a).sqrt();
        if a_norm < 1e-12 {
            return Err(HypolapError::Other("gamma must be nonelliptic (a != 0)".into()));
        }
        let lambda_tag = fs.e_rep.label.clone();
        Ok(OrbitalConfig {
            spec: spec.clone(),
            split,
            fs,
            cdata,
            a,
            k_log,
            orientation_sign: 1.0,
            gh_order: 40,
            lambda_tag,
        })
    }

    pub fn a_norm(&self) -> f64 {
        self.spec.metric(&self.a, &self.a).sqrt()
    }

    /// Coordinates of `a` in the orthonormal p-basis.
    fn a_on(&self) -> Vec<f64> {
        (0..self.split.m)
            .map(|i| self.spec.metric(&self.a, &self.split.basis_vector(i)))
            .collect()
    }

    /// `Ad(γ)` on the spec basis.
    fn ad_gamma(&self) -> CMat {
        let ad_a = linalg::to_complex(&adjoint_map(&self.spec, &self.a));
        let exp_ada = expm(&ad_a);
        let adk = linalg::to_complex(&self.cdata.ad_k);
        let adk_inv = linalg::inv(&adk).unwrap();
        exp_ada.dot(&adk_inv)
    }
}

/// Restrict an operator on spec coordinates to the span of an orthonormal
/// basis (w.r.t. `⟨,⟩`).
fn restrict_op(spec: &LieAlgebraSpec, op: &CMat, basis: &[Vec<f64>]) -> CMat {
    let k = basis.len();
    let d = spec.dim;
    let mut out = linalg::czeros(k.max(0));
    for j in 0..k {
        // apply op to basis[j]
        let mut img_re = vec![0.0; d];
        let mut img_im = vec![0.0; d];
        for r in 0..d {
            let mut sre = 0.0;
            let mut sim = 0.0;
            for c in 0..d {
                sre += op[[r, c]].re * basis[j][c];
                sim += op[[r, c]].im * basis[j][c];
            }
            img_re[r] = sre;
            img_im[r] = sim;
        }
        for i in 0..k {
            let re = spec.metric(&img_re, &basis[i]);
            let im = spec.metric(&img_im, &basis[i]);
            out[[i, j]] = Complex64::new(re, im);
        }
    }
    out
}

fn det_one_minus(spec: &LieAlgebraSpec, op: &CMat, basis: &[Vec<f64>]) -> Complex64 {
    if basis.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let r = restrict_op(spec, op, basis);
    linalg::det(&(ceye(basis.len()) - r))
}

/// Square root along the homotopy `s ↦ f(s)`, continuous from the real
/// positive value at `s = 0`.
fn sqrt_homotopy<F: Fn(f64) -> Complex64>(f: F) -> Result<Complex64> {
    let f0 = f(0.0);
    if f0.re <= 0.0 || f0.im.abs() > 1e-8 * f0.re.abs().max(1.0) {
        return Err(HypolapError::BranchTrackingFailure {
            reason: format!("f(0) = {f0} not real positive"),
        });
    }
    let mut steps = 16usize;
    loop {
        let mut w = Complex64::new(f0.re.sqrt(), 0.0);
        let mut prev = f0;
        let mut ok = true;
        for k in 1..=steps {
            let s = k as f64 / steps as f64;
            let v = f(s);
            if v.norm() < 1e-14 {
                return Err(HypolapError::BranchTrackingFailure {
                    reason: format!("eigenvalue collision: f({s}) ~ 0"),
                });
            }
            // relative turn of the value; require < π/2 per step
            let turn = (v / prev).arg().abs();
            if turn > std::f64::consts::FRAC_PI_2 {
                ok = false;
                break;
            }
            let cand = v.sqrt();
            w = if (cand - w).norm() <= (-cand - w).norm() { cand } else { -cand };
            prev = v;
        }
        if ok {
            return Ok(w);
        }
        steps *= 2;
        if steps > 4096 {
            return Err(HypolapError::BranchTrackingFailure {
                reason: "phase varies too rapidly".into(),
            });
        }
    }
}

/// `J_γ(Y₀^k)` per the explicit density formula, with the square root of the
/// bracketed factor tracked by homotopy from `Y₀ = 0`.
pub fn j_gamma(config: &OrbitalConfig, y0k: &[f64]) -> Result<Complex64> {
    let spec = &config.spec;
    let cd = &config.cdata;
    let ad_gamma = config.ad_gamma();
    let det_z0perp = det_one_minus(spec, &ad_gamma, &cd.z0_perp);
    let factor1 = 1.0 / det_z0perp.norm().sqrt();

    // Â-quotient on p(γ), k(γ) with i·ad(Y₀)
    let ad_y0 = linalg::to_complex(&adjoint_map(spec, y0k)).mapv(|z| z * Complex64::new(0.0, 1.0));
    let ahat_p = ahat_eval(&restrict_op(spec, &ad_y0, &cd.p_gamma))?;
    let ahat_k = ahat_eval(&restrict_op(spec, &ad_y0, &cd.k_gamma))?;

    // bracketed factor with branch tracking from Y₀ = 0
    let adk = linalg::to_complex(&cd.ad_k);
    let adk_inv = linalg::inv(&adk).unwrap();
    let bracket = |s: f64| -> Complex64 {
        let ys: Vec<f64> = y0k.iter().map(|v| v * s).collect();
        let e = expm(
            &linalg::to_complex(&adjoint_map(spec, &ys)).mapv(|z| z * Complex64::new(0.0, -1.0)),
        );
        let m = e.dot(&adk_inv);
        let det_z = det_one_minus(spec, &adk_inv, &cd.z0_perp_gamma);
        let det_k = det_one_minus(spec, &m, &cd.k0_perp_gamma);
        let det_p = det_one_minus(spec, &m, &cd.p0_perp_gamma);
        det_k / (det_z * det_p)
    };
    let root = sqrt_homotopy(bracket)?;
    Ok(Complex64::new(factor1 * ahat_p / ahat_k, 0.0) * root)
}

/// Second route for `J_γ` (the factorized form): the first determinant is
/// re-derived from the block product over `p₀^⊥(γ) ⊕ k₀^⊥(γ)` inside `z₀`
/// together with the `z₀^⊥` factor.
pub fn j_gamma_factored(config: &OrbitalConfig, y0k: &[f64]) -> Result<Complex64> {
    let spec = &config.spec;
    let cd = &config.cdata;
    let ad_gamma = config.ad_gamma();
    let det_z0perp = det_one_minus(spec, &ad_gamma, &cd.z0_perp);

    let ad_y0 = linalg::to_complex(&adjoint_map(spec, y0k)).mapv(|z| z * Complex64::new(0.0, 1.0));
    let ahat_p = ahat_eval(&restrict_op(spec, &ad_y0, &cd.p_gamma))?;
    let ahat_k = ahat_eval(&restrict_op(spec, &ad_y0, &cd.k_gamma))?;

    let adk = linalg::to_complex(&cd.ad_k);
    let adk_inv = linalg::inv(&adk).unwrap();
    let bracket = |s: f64| -> Complex64 {
        let ys: Vec<f64> = y0k.iter().map(|v| v * s).collect();
        let e = expm(
            &linalg::to_complex(&adjoint_map(spec, &ys)).mapv(|z| z * Complex64::new(0.0, -1.0)),
        );
        let m = e.dot(&adk_inv);
        // block product for det(1-Ad(k^{-1}))|_{z₀^⊥(γ)}
        let det_zp = det_one_minus(spec, &adk_inv, &cd.p0_perp_gamma)
            * det_one_minus(spec, &adk_inv, &cd.k0_perp_gamma);
        let det_k = det_one_minus(spec, &m, &cd.k0_perp_gamma);
        let det_p = det_one_minus(spec, &m, &cd.p0_perp_gamma);
        det_k / (det_zp * det_p)
    };
    let root = sqrt_homotopy(bracket)?;
    Ok(Complex64::new(ahat_p / ahat_k / det_z0perp.norm().sqrt(), 0.0) * root)
}

/// Spin and E traces of the character integrand: returns
/// `(Tr^{S^p}[(c(a)/|a|) σ(k^{-1}) exp(-i c(ad(Y₀)|_p))], Tr^E[…])`.
pub fn spin_character_integrand(config: &OrbitalConfig, y0k: &[f64]) -> (Complex64, Complex64) {
    let fs = &config.fs;
    let m = fs.m;
    // c(a)/|a| on S: with ĉ(ē) = i c(ē), c(a) = -i ĉ(ā)
    let a_on = config.a_on();
    let norm: f64 = a_on.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a_unit: Vec<f64> = a_on.iter().map(|v| v / norm).collect();
    let c_a = fs.chat_bar_on_spin(&a_unit).mapv(|z| z * Complex64::new(0.0, -1.0));
    // σ(k^{-1}) = exp(ĉ(ad(-t₀)|_p̄))
    let neg_t0: Vec<f64> = config.k_log.iter().map(|v| -v).collect();
    let ad_t0 = crate::lie::adjoint_map_on(&config.split, &config.spec, &neg_t0);
    let ad_p = ndarray::Array2::from_shape_fn((m, m), |(i, j)| ad_t0[[i, j]]);
    let sigma_k = expm(&fs.chat_bar_endo_on_spin(&ad_p));
    // exp(-i c(ad(Y₀)|_p)); on S, c(A) = ĉ(A)
    let ad_y = crate::lie::adjoint_map_on(&config.split, &config.spec, y0k);
    let ad_yp = ndarray::Array2::from_shape_fn((m, m), |(i, j)| ad_y[[i, j]]);
    let rot = expm(
        &fs.chat_bar_endo_on_spin(&ad_yp)
            .mapv(|z| z * Complex64::new(0.0, -1.0)),
    );
    let spin_trace = crate::clifford::trace(&c_a.dot(&sigma_k).dot(&rot));

    // E trace: Tr^E[ρ(k^{-1}) exp(-i ρ(Y₀))]
    let e_trace = if fs.e_rep.dim == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        // k-components in the orthonormal basis
        let tk: Vec<f64> = (0..fs.n)
            .map(|t| {
                config
                    .spec
                    .metric(&neg_t0, &config.split.basis_vector(m + t))
            })
            .collect();
        let rho_k = expm(&fs.rho_on_e(&tk));
        let yk: Vec<f64> = (0..fs.n)
            .map(|t| config.spec.metric(y0k, &config.split.basis_vector(m + t)))
            .collect();
        let rho_y = expm(&fs.rho_on_e(&yk).mapv(|z| z * Complex64::new(0.0, -1.0)));
        crate::clifford::trace(&rho_k.dot(&rho_y))
    };
    (spin_trace, e_trace)
}

/// Graded-trace route for the spin character: `-i Tr_s^{S^{a^⊥}}[U]` with the
/// grading operator `τ = i c(a)/|a| = ĉ(ā)/|a|`.
pub fn spin_character_supertrace_route(config: &OrbitalConfig, y0k: &[f64]) -> Complex64 {
    let fs = &config.fs;
    let m = fs.m;
    let a_on = config.a_on();
    let norm: f64 = a_on.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a_unit: Vec<f64> = a_on.iter().map(|v| v / norm).collect();
    let tau = fs.chat_bar_on_spin(&a_unit);
    let neg_t0: Vec<f64> = config.k_log.iter().map(|v| -v).collect();
    let ad_t0 = crate::lie::adjoint_map_on(&config.split, &config.spec, &neg_t0);
    let ad_p = ndarray::Array2::from_shape_fn((m, m), |(i, j)| ad_t0[[i, j]]);
    let sigma_k = expm(&fs.chat_bar_endo_on_spin(&ad_p));
    let ad_y = crate::lie::adjoint_map_on(&config.split, &config.spec, y0k);
    let ad_yp = ndarray::Array2::from_shape_fn((m, m), |(i, j)| ad_y[[i, j]]);
    let rot = expm(
        &fs.chat_bar_endo_on_spin(&ad_yp)
            .mapv(|z| z * Complex64::new(0.0, -1.0)),
    );
    let u = sigma_k.dot(&rot);
    Complex64::new(0.0, -1.0) * crate::clifford::trace(&tau.dot(&u))
}

/// The heat-smoothed orbital value
/// `(Tr^{[γ]}[D^X e^{-sD^{X,2}/2}] * s^{-1/2})(t)` by Gauss–Hermite
/// quadrature over `k(γ)` (dimension ≤ 2).
pub fn orbital_rhs_tnew(config: &OrbitalConfig, t: f64) -> Result<Complex64> {
    let cd = &config.cdata;
    let q = cd.q;
    if q > 2 {
        return Err(HypolapError::QuadratureDim { dim: q, cap: 2 });
    }
    let kd = kappa_data(&config.spec, &config.split);
    let cas_e = crate::dirac::casimir_e(&config.fs);
    let c_e = cas_e[[0, 0]].re;
    let p = cd.p;
    let a_norm = config.a_norm();
    let pref = (2.0 * std::f64::consts::PI).sqrt()
        * (t * kd.trk_ckk / 48.0 + t * c_e / 2.0).exp()
        * (2.0 * std::f64::consts::PI * t).powf(-(p as f64) / 2.0);
    let integrand = |y0: &[f64]| -> Result<Complex64> {
        let j = j_gamma(config, y0)?;
        let (s_tr, e_tr) = spin_character_integrand(config, y0);
        Ok(j * s_tr * e_tr)
    };
    let value = match q {
        0 => (-a_norm * a_norm / (2.0 * t)).exp() * integrand(&vec![0.0; config.spec.dim])?,
        1 => {
            let gh = GaussHermite::new(config.gh_order);
            let basis = &cd.k_gamma[0];
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &xi) in gh.nodes.iter().enumerate() {
                let scale = (2.0 * t).sqrt() * xi;
                let y0: Vec<f64> = basis.iter().map(|v| v * scale).collect();
                acc += integrand(&y0)? * gh.weights[i];
            }
            // ∫ e^{-|Y|²/2t} g dY / √(2πt) = (1/√π) ∫ e^{-ξ²} g(√(2t)ξ) dξ
            (-a_norm * a_norm / (2.0 * t)).exp() * acc / std::f64::consts::PI.sqrt()
        }
        2 => {
            let gh = GaussHermite::new(config.gh_order);
            let b0 = &cd.k_gamma[0];
            let b1 = &cd.k_gamma[1];
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &xi) in gh.nodes.iter().enumerate() {
                for (j2, &xj) in gh.nodes.iter().enumerate() {
                    let s0 = (2.0 * t).sqrt() * xi;
                    let s1 = (2.0 * t).sqrt() * xj;
                    let y0: Vec<f64> =
                        b0.iter().zip(b1).map(|(u, v)| u * s0 + v * s1).collect();
                    acc += integrand(&y0)? * gh.weights[i] * gh.weights[j2];
                }
            }
            (-a_norm * a_norm / (2.0 * t)).exp() * acc / std::f64::consts::PI
        }
        _ => unreachable!(),
    };
    Ok(value * pref)
}

/// Closed-form orbital value on rank-one data: both expressions of the
/// explicit formula. Returns `(first, second)`; callers assert their
/// agreement.
pub fn orbital_closed_tgen(config: &OrbitalConfig, t: f64) -> Result<(Complex64, Complex64)> {
    let cd = &config.cdata;
    if cd.b_gamma.len() != 1 {
        return Err(HypolapError::RankTooHigh { dim: cd.b_gamma.len() });
    }
    // Euler class must be scalar: N_{X(γ)/X(k)} has rank dim(p₀^⊥ ∩ p(k));
    // p(k) ∩ p₀^⊥ = fixed vectors of Ad(k) in p₀^⊥
    let spec = &config.spec;
    let adk = linalg::to_complex(&cd.ad_k);
    let fixed_in_p0perp = {
        let r = restrict_op(spec, &adk, &cd.p0_perp);
        let n = cd.p0_perp.len();
        if n == 0 {
            0
        } else {
            let m = ceye(n) - r;
            n - linalg::rank_with_tol(&m, 1e-9)
        }
    };
    if fixed_in_p0perp != 0 {
        return Err(HypolapError::EulerClassNonScalar);
    }

    let adk_inv = linalg::inv(&adk).unwrap();
    let dim_p0perp = cd.p0_perp.len();
    let ahat_p0perp = ahat_theta_block_at_zero(&restrict_op(spec, &adk_inv, &cd.p0_perp))?;
    let ad_gamma = config.ad_gamma();
    let det_z0perp = det_one_minus(spec, &ad_gamma, &cd.z0_perp).norm().sqrt();

    // genus degree-0 part over p₀^⊥(γ) rotation pairs (1 when empty)
    let genus0 = if cd.p0_perp_gamma.is_empty() {
        Complex64::new(1.0, 0.0)
    } else {
        ahat_theta_block_at_zero(&restrict_op(spec, &adk_inv, &cd.p0_perp_gamma))?
    };
    // ch^{k^{-1}}(F) degree-0 part
    let ch0 = if config.fs.e_rep.dim == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        let neg_t0: Vec<f64> = config.k_log.iter().map(|v| -v).collect();
        let tk: Vec<f64> = (0..config.fs.n)
            .map(|s| spec.metric(&neg_t0, &config.split.basis_vector(config.fs.m + s)))
            .collect();
        crate::clifford::trace(&expm(&config.fs.rho_on_e(&tk)))
    };
    let sign = if dim_p0perp % 4 == 0 { 1.0 } else { -1.0 }; // (-1)^{dim/2}
    if ahat_p0perp.norm() == 0.0 {
        return Err(HypolapError::SingularSinh { value: 0.0 });
    }
    let pref = Complex64::new(0.0, -1.0) * sign / (ahat_p0perp * det_z0perp);

    let a_norm = config.a_norm();
    let sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt();
    // second expression: […·a*/√(2π)]^max t^{-3/2} e^{-|a|²/2t}
    let bracket2 = genus0 * ch0 * (a_norm / sqrt_2pi) * config.orientation_sign;
    let second = pref * bracket2 * t.powf(-1.5) * (-a_norm * a_norm / (2.0 * t)).exp();

    // first expression: […·𝐚/√(2π)]^max (√2/√π) d/dt[(s^{-1/2}e^{-|a|²/2s}) * s^{-1/2}](t)
    let bracket1 = genus0 * ch0 * (1.0 / sqrt_2pi) * config.orientation_sign;
    let x = a_norm * a_norm / 2.0;
    let conv = |tt: f64| half_convolve(|s| s.powf(-0.5) * (-x / s).exp(), tt);
    let h = 1e-4 * t;
    let deriv = (conv(t + h) - conv(t - h)) / (2.0 * h);
    let first = pref
        * bracket1
        * (2.0f64.sqrt() / std::f64::consts::PI.sqrt())
        * deriv;
    Ok((first, second))
}


/// Reconstruction of the orbital value from the heat-smoothed one by the
/// half-power deconvolution: `O(t) = (1/π) d/dt[(F_A * s^{-1/2})](t)`,
/// using a sampled `F_A`.
pub fn tanew_reconstruct(
    f_a_samples: &[(f64, Complex64)],
    t: f64,
) -> Result<Complex64> {
    let re: Vec<(f64, f64)> = f_a_samples.iter().map(|&(s, v)| (s, v.re)).collect();
    let im: Vec<(f64, f64)> = f_a_samples.iter().map(|&(s, v)| (s, v.im)).collect();
    let h = 1e-3 * t;
    let conv = |tt: f64| -> Result<Complex64> {
        Ok(Complex64::new(
            crate::eta::half_convolve_sampled(&re, tt)?,
            crate::eta::half_convolve_sampled(&im, tt)?,
        ))
    };
    let d = (conv(t + h)? - conv(t - h)?) / (2.0 * h);
    Ok(d / std::f64::consts::PI)
}

/// The quadrature identity
/// `∫₀^{π/2} cos^{-2}θ e^{-x²/2cos²θ} dθ = (√π/√2 x) e^{-x²/2}`
/// (v = tan θ substitution route).
pub fn key4_residual(x: f64) -> f64 {
    let gl = GaussLegendre::new(160);
    let upper = 50.0 / x.max(0.2);
    let quad = gl.integrate(0.0, upper, |v| (-(x * x) * (1.0 + v * v) / 2.0).exp());
    let want = std::f64::consts::PI.sqrt() / (2.0f64.sqrt() * x) * (-x * x / 2.0).exp();
    ((quad - want) / want).abs()
}
