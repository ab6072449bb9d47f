//! Operator builders over the normal-ordering engine: Kostant Dirac
//! operators, the hypoelliptic deformations `𝔇_b`, `𝔇_{b,θ}`, `𝔇'_{b,θ}`,
//! their square formulas, and the superconnection curvature with Bianchi
//! identity — all as exact [`NormalForm`] computations.

use super::{Coeff, Engine, Letter, NormalForm};
use crate::lie::{rat, rat_int, Rat};
use crate::{HypolapError, Result};
use num_traits::Zero;

/// `C^g = -Σ e*_i e_i = -Σ (1/B_ii) e_i e_i` (diagonal `B`).
pub fn casimir(eng: &Engine) -> NormalForm {
    let d = eng.spec.dim;
    let mut nf = NormalForm::zero();
    for i in 0..d {
        let binv = inv_rat(eng.spec.b_rat(i, i));
        nf = nf.add(&eng.word(
            Coeff::from_rat(-binv),
            vec![Letter::U(i as u8), Letter::U(i as u8)],
        ));
    }
    nf
}

fn inv_rat(r: &Rat) -> Rat {
    Rat::new(r.denom().clone(), r.numer().clone())
}

/// `κ(e_i, e_j, e_k) = B([e_i,e_j], e_k)`, exact.
fn kappa_rat(eng: &Engine, i: usize, j: usize, k: usize) -> Rat {
    eng.spec.c_rat(i, j, k).clone() * eng.spec.b_rat(k, k).clone()
}

/// `κ(e*_i, e*_j, e*_k)`.
fn kappa_dual_rat(eng: &Engine, i: usize, j: usize, k: usize) -> Rat {
    kappa_rat(eng, i, j, k)
        * inv_rat(eng.spec.b_rat(i, i))
        * inv_rat(eng.spec.b_rat(j, j))
        * inv_rat(eng.spec.b_rat(k, k))
}

/// Exact `B*(κ^g, κ^g)`.
pub fn bstar_kappa_g(eng: &Engine) -> Rat {
    let d = eng.spec.dim;
    let mut acc = Rat::zero();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                acc += kappa_dual_rat(eng, i, j, k) * kappa_rat(eng, i, j, k);
            }
        }
    }
    acc / rat_int(6)
}

/// `c(κ^g)` (hat = false) or `ĉ(-κ^g)` (hat = true), per the quadratic
/// embedding conventions.
pub fn clifford_kappa(eng: &Engine, hat: bool) -> NormalForm {
    let d = eng.spec.dim;
    let mut expr = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let kap = kappa_dual_rat(eng, i, j, k);
                if kap.is_zero() {
                    continue;
                }
                let sixth = kap * rat(1, 6);
                let (coeff, seq) = if hat {
                    (
                        Coeff::from_rat(-sixth),
                        vec![Letter::Ch(i as u8), Letter::Ch(j as u8), Letter::Ch(k as u8)],
                    )
                } else {
                    (
                        Coeff::from_rat(sixth),
                        vec![Letter::C(i as u8), Letter::C(j as u8), Letter::C(k as u8)],
                    )
                };
                expr.push((coeff, seq));
            }
        }
    }
    eng.normalize(expr)
}

/// Kostant Dirac operator `D^g = Σ c(e*_i) e_i + (1/2) c(κ^g)`.
pub fn d_g(eng: &Engine) -> NormalForm {
    let d = eng.spec.dim;
    let mut nf = NormalForm::zero();
    for i in 0..d {
        let binv = inv_rat(eng.spec.b_rat(i, i));
        nf = nf.add(&eng.word(Coeff::from_rat(binv), vec![Letter::C(i as u8), Letter::U(i as u8)]));
    }
    nf.add(&clifford_kappa(eng, false).scale(&Coeff::from_rat(rat(1, 2))))
}

/// `D̂^g = Σ ĉ(e*_i) e_i + (1/2) ĉ(-κ^g)`.
pub fn dhat_g(eng: &Engine) -> NormalForm {
    let d = eng.spec.dim;
    let mut nf = NormalForm::zero();
    for i in 0..d {
        let binv = inv_rat(eng.spec.b_rat(i, i));
        nf = nf.add(&eng.word(Coeff::from_rat(binv), vec![Letter::Ch(i as u8), Letter::U(i as u8)]));
    }
    nf.add(&clifford_kappa(eng, true).scale(&Coeff::from_rat(rat(1, 2))))
}

fn assert_orthonormal(eng: &Engine) {
    assert!(
        eng.spec.basis_is_orthonormal(),
        "θ/b-deformed operators require an orthonormal preset basis"
    );
}

/// `ĉ_θ(e_i)` as a normal form: for `i ∈ p`, `x ĉ(e_i) + sign·y ĉ(ē_i)`;
/// unchanged on `k`.
fn rot_chat(eng: &Engine, i: usize, sign: i64) -> NormalForm {
    let m = eng.spec.m();
    if i < m {
        eng.word(Coeff::x_pow(1), vec![Letter::Ch(i as u8)]).add(&eng.word(
            Coeff::y_gen().scale_int(sign),
            vec![Letter::Cb(i as u8)],
        ))
    } else {
        eng.letter(Letter::Ch(i as u8))
    }
}

/// `D̂^g_θ = R̂_θ D̂^g R̂_θ^{-1}`, with `x = cos θ` symbolic.
pub fn dhat_g_theta(eng: &Engine, sign: i64) -> NormalForm {
    assert_orthonormal(eng);
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let mut nf = NormalForm::zero();
    for i in 0..d {
        let eps = if i < m { 1 } else { -1 };
        let rc = rot_chat(eng, i, sign).scale(&Coeff::from_int(eps));
        nf = nf.add(&eng.multiply(&rc, &eng.letter(Letter::U(i as u8))));
    }
    // rotated ĉ(-κ^g)
    let mut kap = NormalForm::zero();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let kv = kappa_dual_rat(eng, i, j, k);
                if kv.is_zero() {
                    continue;
                }
                let prod = eng.multiply(
                    &eng.multiply(&rot_chat(eng, i, sign), &rot_chat(eng, j, sign)),
                    &rot_chat(eng, k, sign),
                );
                kap = kap.add(&prod.scale(&Coeff::from_rat(-kv * rat(1, 6))));
            }
        }
    }
    nf.add(&kap.scale(&Coeff::from_rat(rat(1, 2))))
}

/// The p-valued quadratic `[Y^k, Y^p]` as a list of
/// (component index l < m, coefficient, Y-letters).
fn bracket_yk_yp(eng: &Engine) -> Vec<(usize, Rat, Vec<Letter>)> {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let mut out = Vec::new();
    for j in m..d {
        for i in 0..m {
            for l in 0..m {
                let c = eng.spec.c_rat(j, i, l);
                if !c.is_zero() {
                    out.push((l, c.clone(), vec![Letter::Y(i as u8), Letter::Y(j as u8)]));
                }
            }
        }
    }
    out
}

/// `c([Y^k, Y^p])`.
fn c_bracket_ykyp(eng: &Engine) -> NormalForm {
    let mut expr = Vec::new();
    for (l, c, ys) in bracket_yk_yp(eng) {
        let mut seq = vec![Letter::C(l as u8)];
        seq.extend(ys);
        expr.push((Coeff::from_rat(c), seq));
    }
    eng.normalize(expr)
}

/// `(1/2)|[Y^k, Y^p]|²` (quartic polynomial).
fn half_norm_sq_bracket(eng: &Engine) -> NormalForm {
    let m = eng.spec.m();
    let terms = bracket_yk_yp(eng);
    let mut expr = Vec::new();
    for l in 0..m {
        for (l1, c1, y1) in terms.iter().filter(|t| t.0 == l) {
            for (l2, c2, y2) in terms.iter().filter(|t| t.0 == l) {
                let _ = (l1, l2);
                let mut seq = y1.clone();
                seq.extend(y2.iter().cloned());
                expr.push((Coeff::from_rat(c1.clone() * c2.clone() * rat(1, 2)), seq));
            }
        }
    }
    eng.normalize(expr)
}

/// `-i ∇^V_{[Y^k,Y^p]}` contribution letters: returns `Σ comp_l ∂_l`.
fn grad_bracket_ykyp(eng: &Engine) -> NormalForm {
    let mut expr = Vec::new();
    for (l, c, ys) in bracket_yk_yp(eng) {
        let mut seq = ys;
        seq.push(Letter::Dy(l as u8));
        expr.push((Coeff::from_rat(c), seq));
    }
    eng.normalize(expr)
}

/// de Rham pieces of eq. (brav12): `D^p`, `E^p`, `D^k`, `E^k`.
fn de_rham_pieces(eng: &Engine) -> (NormalForm, NormalForm, NormalForm, NormalForm) {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let mut dp = NormalForm::zero();
    let mut ep = NormalForm::zero();
    let mut dk = NormalForm::zero();
    let mut ek = NormalForm::zero();
    for i in 0..m {
        dp = dp.add(&eng.word(Coeff::one(), vec![Letter::C(i as u8), Letter::Dy(i as u8)]));
        ep = ep.add(&eng.word(Coeff::one(), vec![Letter::Y(i as u8), Letter::Ch(i as u8)]));
    }
    for i in m..d {
        // c(e*_i) = -c(e_i) on k
        dk = dk.add(&eng.word(Coeff::from_int(-1), vec![Letter::C(i as u8), Letter::Dy(i as u8)]));
        ek = ek.add(&eng.word(Coeff::one(), vec![Letter::Y(i as u8), Letter::Ch(i as u8)]));
    }
    (dp, ep, dk, ek)
}

/// `𝔇_b = D̂^g + i c([Y^k,Y^p]) + (1/b)(D^p + E^p - i D^k + i E^k)`.
pub fn frak_d_b(eng: &Engine) -> NormalForm {
    assert_orthonormal(eng);
    let (dp, ep, dk, ek) = de_rham_pieces(eng);
    let fibre = dp
        .add(&ep)
        .add(&dk.scale(&Coeff::i().neg()))
        .add(&ek.scale(&Coeff::i()));
    dhat_g(eng)
        .add(&c_bracket_ykyp(eng).scale(&Coeff::i()))
        .add(&fibre.scale(&Coeff::b_pow(-1)))
}

/// `𝔇_{b,θ}` (variant = 0), `𝔇'_{b,θ}` (variant = 1), `𝔇̄_{b,θ}`
/// (variant = 2), per eqs. (co11) and (co13a4).
pub fn frak_d_b_theta(eng: &Engine, variant: u8) -> NormalForm {
    assert_orthonormal(eng);
    let m = eng.spec.m();
    let (dp, ep, dk, ek) = de_rham_pieces(eng);
    match variant {
        0 => {
            let fibre = dp
                .add(&ep)
                .add(&dk.scale(&Coeff::i()).scale(&Coeff::from_int(-1)))
                .add(&ek.scale(&Coeff::i().mul(&Coeff::x_pow(1))));
            dhat_g_theta(eng, 1)
                .add(&c_bracket_ykyp(eng).scale(&Coeff::i().mul(&Coeff::x_pow(1))))
                .add(&fibre.scale(&Coeff::b_pow(-1)))
        }
        1 => {
            // E^p_{-θ} = Σ Y_i (x ĉ(e_i) - y ĉ(ē_i))
            let mut ep_rot = NormalForm::zero();
            for i in 0..m {
                ep_rot = ep_rot.add(&eng.word(
                    Coeff::x_pow(1),
                    vec![Letter::Y(i as u8), Letter::Ch(i as u8)],
                ));
                ep_rot = ep_rot.add(&eng.word(
                    Coeff::y_gen().neg(),
                    vec![Letter::Y(i as u8), Letter::Cb(i as u8)],
                ));
            }
            let fibre = dp
                .add(&ep_rot)
                .add(&dk.scale(&Coeff::i()).scale(&Coeff::from_int(-1)))
                .add(&ek.scale(&Coeff::i().mul(&Coeff::x_pow(1))));
            dhat_g(eng)
                .add(&c_bracket_ykyp(eng).scale(&Coeff::i().mul(&Coeff::x_pow(1))))
                .add(&fibre.scale(&Coeff::b_pow(-1)))
        }
        2 => {
            let fibre_p = dp.add(&ep);
            let fibre_k = dk.scale(&Coeff::i()).scale(&Coeff::from_int(-1)).add(&ek.scale(&Coeff::i()));
            dhat_g_theta(eng, 1)
                .add(&c_bracket_ykyp(eng).scale(&Coeff::i().mul(&Coeff::s_pow(1))))
                .add(&fibre_p.scale(&Coeff::b_pow(-1)))
                .add(&fibre_k.scale(&Coeff::b_pow(-1).mul(&Coeff::s_pow(1))))
        }
        _ => unreachable!(),
    }
}

/// `ĉ(ad(e_t))` as a quadratic `ĉ`-word: `-(1/4) Σ ε_i c_{ti}^j ĉ_i ĉ_j`.
fn chat_ad(eng: &Engine, t: usize) -> NormalForm {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let mut expr = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let c = eng.spec.c_rat(t, i, j);
            if c.is_zero() {
                continue;
            }
            let eps = if i < m { rat_int(1) } else { rat_int(-1) };
            expr.push((
                Coeff::from_rat(-eps * c.clone() * rat(1, 4)),
                vec![Letter::Ch(i as u8), Letter::Ch(j as u8)],
            ));
        }
    }
    eng.normalize(expr)
}

/// `ĉ_θ(ad(e_t)|_g)` on `g ⊕ p̄`, conjugated by `R_θ` per eq. (hero1a):
/// the endomorphism blocks pick up `x`, `y` factors and couple `ĉ(e)` with
/// `ĉ(ē)` letters: with `A = ad(e_t)` (blocks App, Apk, Akp, Akk),
/// `R A R^{-1} = [[x²App, xApk, xyApp], [xAkp, Akk, yAkp],
/// [xyApp, yApk, y²App]]` on (p, k, p̄).
fn chat_ad_rotated(eng: &Engine, t: usize) -> NormalForm {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    // letters for the extended index: 0..d = g, d..d+m = p̄
    let letter = |idx: usize| -> Letter {
        if idx < d {
            Letter::Ch(idx as u8)
        } else {
            Letter::Cb((idx - d) as u8)
        }
    };
    let eps = |idx: usize| -> i64 {
        if idx < m {
            1
        } else if idx < d {
            -1
        } else {
            1
        }
    };
    // block multiplier by (row-block, col-block): p=0, k=1, p̄=2
    let block = |idx: usize| -> usize {
        if idx < m {
            0
        } else if idx < d {
            1
        } else {
            2
        }
    };
    let factor = |rb: usize, cb: usize| -> Option<Coeff> {
        match (rb, cb) {
            (0, 0) => Some(Coeff::x_pow(2)),
            (0, 1) | (1, 0) => Some(Coeff::x_pow(1)),
            (1, 1) => Some(Coeff::one()),
            (0, 2) | (2, 0) => Some(Coeff::x_pow(1).mul(&Coeff::y_gen())),
            (1, 2) | (2, 1) => Some(Coeff::y_gen()),
            (2, 2) => Some(Coeff::y_gen().mul(&Coeff::y_gen())),
        _ => None,
        }
    };
    // underlying A entries: A_{ji} = c_{ti}^j; p̄ rows/cols fold onto the
    // corresponding p rows/cols of A, the block factor carries the rest.
    let a_entry = |jj: usize, ii: usize| -> Rat {
        let j0 = if jj < d { jj } else { jj - d };
        let i0 = if ii < d { ii } else { ii - d };
        eng.spec.c_rat(t, i0, j0).clone()
    };
    let ext = d + m;
    let mut expr = Vec::new();
    for ii in 0..ext {
        for jj in 0..ext {
            let f = match factor(block(jj), block(ii)) {
                Some(f) => f,
                None => continue,
            };
            let a = a_entry(jj, ii);
            if a.is_zero() {
                continue;
            }
            // -(1/4) ε_I M_{JI} ĉ_I ĉ_J
            let coeff = f
                .scale_rat(&(a * rat(1, 4)))
                .scale_int(-eps(ii));
            expr.push((coeff, vec![letter(ii), letter(jj)]));
        }
    }
    eng.normalize(expr)
}

/// `c(ad(e_t)|_p)` for `t ∈ k` (restriction to p): `(1/4) Σ_{i,j<m} c_{ti}^j c_i c_j`.
fn c_ad_restricted_p(eng: &Engine, t: usize) -> NormalForm {
    let m = eng.spec.m();
    let mut expr = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let c = eng.spec.c_rat(t, i, j);
            if !c.is_zero() {
                expr.push((
                    Coeff::from_rat(c.clone() * rat(1, 4)),
                    vec![Letter::C(i as u8), Letter::C(j as u8)],
                ));
            }
        }
    }
    eng.normalize(expr)
}

/// `c(ad(e_t))` full, `t ∈ p`: `(1/4) Σ ε_i c_{ti}^j c_i c_j`.
fn c_ad_full(eng: &Engine, t: usize) -> NormalForm {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let mut expr = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let c = eng.spec.c_rat(t, i, j);
            if c.is_zero() {
                continue;
            }
            let eps = if i < m { rat_int(1) } else { rat_int(-1) };
            expr.push((
                Coeff::from_rat(eps * c.clone() * rat(1, 4)),
                vec![Letter::C(i as u8), Letter::C(j as u8)],
            ));
        }
    }
    eng.normalize(expr)
}

/// Number operators as Clifford words: `N^{Λ(p*)} = (1/2)Σ_{i<m} c_i ĉ_i + m/2`,
/// `N^{Λ(k*)} = -(1/2)Σ_{i≥m} c_i ĉ_i + n/2`.
fn n_lambda_p(eng: &Engine) -> NormalForm {
    let m = eng.spec.m();
    let mut nf = NormalForm::scalar(Coeff::from_rat(rat(m as i64, 2)));
    for i in 0..m {
        nf = nf.add(&eng.word(
            Coeff::from_rat(rat(1, 2)),
            vec![Letter::C(i as u8), Letter::Ch(i as u8)],
        ));
    }
    nf
}

fn n_lambda_k(eng: &Engine) -> NormalForm {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let n = d - m;
    let mut nf = NormalForm::scalar(Coeff::from_rat(rat(n as i64, 2)));
    for i in m..d {
        nf = nf.add(&eng.word(
            Coeff::from_rat(rat(-1, 2)),
            vec![Letter::C(i as u8), Letter::Ch(i as u8)],
        ));
    }
    nf
}

/// Common 1/b-order linear terms of the square formulas:
/// `Y̲^p + i Y̲^k - i ∇_{[Y^k,Y^p]} + (ĉ-term) + 2i c(ad(Y^k)|_p) - c(ad(Y^p))`,
/// where the ĉ-term is rotated (`ĉ_θ`) or not.
fn linear_terms(eng: &Engine, rotated: bool) -> NormalForm {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let mut nf = NormalForm::zero();
    for t in 0..d {
        let coeff = if t < m { Coeff::one() } else { Coeff::i() };
        nf = nf.add(&eng.word(coeff.clone(), vec![Letter::Y(t as u8), Letter::U(t as u8)]));
        let chat_term = if rotated { chat_ad_rotated(eng, t) } else { chat_ad(eng, t) };
        nf = nf.add(
            &eng.multiply(&eng.letter(Letter::Y(t as u8)), &chat_term).scale(&coeff),
        );
        if t >= m {
            nf = nf.add(
                &eng.multiply(&eng.letter(Letter::Y(t as u8)), &c_ad_restricted_p(eng, t))
                    .scale(&Coeff::i().scale_int(2)),
            );
        } else {
            nf = nf.add(
                &eng.multiply(&eng.letter(Letter::Y(t as u8)), &c_ad_full(eng, t))
                    .scale(&Coeff::from_int(-1)),
            );
        }
    }
    nf.add(&grad_bracket_ykyp(eng).scale(&Coeff::i().neg()))
}

/// RHS of eq. (rio2a) for `𝔇_b²/2`.
pub fn rio2a_rhs(eng: &Engine) -> NormalForm {
    let d = eng.spec.dim;
    let dhat = dhat_g(eng);
    let dhat2 = eng.multiply(&dhat, &dhat);
    let mut osc = NormalForm::scalar(Coeff::from_int(-(d as i64)));
    for i in 0..d {
        osc = osc.add(&eng.word(Coeff::from_int(-1), vec![Letter::Dy(i as u8), Letter::Dy(i as u8)]));
        osc = osc.add(&eng.word(Coeff::one(), vec![Letter::Y(i as u8), Letter::Y(i as u8)]));
    }
    let n_lambda = n_lambda_p(eng).add(&n_lambda_k(eng));
    dhat2
        .scale(&Coeff::from_rat(rat(1, 2)))
        .add(&half_norm_sq_bracket(eng))
        .add(&osc.scale(&Coeff::b_pow(-2).scale_rat(&rat(1, 2))))
        .add(&n_lambda.scale(&Coeff::b_pow(-2)))
        .add(&linear_terms(eng, false).scale(&Coeff::b_pow(-1)))
}

/// RHS of eq. (rio2abis) for `𝔇²_{b,θ}/2` (`primed = false`) or
/// `𝔇'²_{b,θ}/2` (`primed = true`), with `x = cos θ` symbolic.
pub fn rio2abis_rhs(eng: &Engine, primed: bool) -> NormalForm {
    let d = eng.spec.dim;
    let m = eng.spec.m();
    let n = d - m;
    let dhat = dhat_g(eng);
    let dhat2 = eng.multiply(&dhat, &dhat);
    let x = Coeff::x_pow(1);
    // oscillator block: -Δ + |Y^p|² + x²|Y^k|² - m - x n
    let mut osc = NormalForm::scalar(
        Coeff::from_int(-(m as i64)).add(&Coeff::x_pow(1).scale_int(-(n as i64))),
    );
    for i in 0..d {
        osc = osc.add(&eng.word(Coeff::from_int(-1), vec![Letter::Dy(i as u8), Letter::Dy(i as u8)]));
        let w = if i < m { Coeff::one() } else { Coeff::x_pow(2) };
        osc = osc.add(&eng.word(w, vec![Letter::Y(i as u8), Letter::Y(i as u8)]));
    }
    // number operators
    let nops = if primed {
        // N^{Λ(p*)}'_{-θ} = x N^{Λ(p*)} - (y/2) Σ c_a ĉ(ē_a) + (m/2)(1-x)
        let mut npr = n_lambda_p(eng).scale(&x);
        for a in 0..m {
            npr = npr.add(&eng.word(
                Coeff::y_gen().scale_rat(&rat(-1, 2)),
                vec![Letter::C(a as u8), Letter::Cb(a as u8)],
            ));
        }
        npr = npr.add(&NormalForm::scalar(
            Coeff::from_rat(rat(m as i64, 2)).mul(&Coeff::one().add(&Coeff::x_pow(1).neg())),
        ));
        npr.add(&n_lambda_k(eng).scale(&x))
    } else {
        n_lambda_p(eng).add(&n_lambda_k(eng).scale(&x))
    };
    dhat2
        .scale(&Coeff::from_rat(rat(1, 2)))
        .add(&half_norm_sq_bracket(eng).scale(&Coeff::x_pow(2)))
        .add(&osc.scale(&Coeff::b_pow(-2).scale_rat(&rat(1, 2))))
        .add(&nops.scale(&Coeff::b_pow(-2)))
        .add(&linear_terms(eng, !primed).scale(&Coeff::b_pow(-1).mul(&x)))
}

/// Report entry of a symbolic identity check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub ok: bool,
    pub offending_terms: usize,
    pub detail: String,
}

fn check_zero(id: &str, diff: &NormalForm) -> IdentityReport {
    let ok = diff.is_zero();
    let detail = if ok {
        "exact".to_string()
    } else {
        let mut preview = String::new();
        for (w, c) in diff.terms.iter().take(3) {
            preview.push_str(&format!("{:?} -> {} ; ", w.letters, c));
        }
        preview
    };
    IdentityReport {
        id: id.to_string(),
        ok,
        offending_terms: diff.len(),
        detail,
    }
}

/// The operator-square identity suite:
/// (a) Kostant squares, (b) `𝔇_b²/2` (orthonormal presets), (c) the
/// `θ`-deformed squares, (d) θ-independence of `D̂^{g,2}_θ`.
pub fn verify_square_identities(eng: &Engine) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let bstar = bstar_kappa_g(eng);
    // (a) D^{g,2} = C^g + (1/4) B*(κ,κ) and the hat version with minus signs
    let dg = d_g(eng);
    let lhs = eng.multiply(&dg, &dg);
    let rhs = casimir(eng).add(&NormalForm::scalar(Coeff::from_rat(bstar.clone() * rat(1, 4))));
    out.push(check_zero("kos22:D^g,2", &lhs.sub(&rhs)));
    let dh = dhat_g(eng);
    let lhs = eng.multiply(&dh, &dh);
    let rhs = casimir(eng)
        .add(&NormalForm::scalar(Coeff::from_rat(bstar.clone() * rat(1, 4))))
        .scale(&Coeff::from_int(-1));
    out.push(check_zero("kos22:Dhat^g,2", &lhs.sub(&rhs)));

    if eng.spec.basis_is_orthonormal() {
        // (b) 𝔇_b²/2 = rio2a RHS
        let db = frak_d_b(eng);
        let lhs = eng.multiply(&db, &db).scale(&Coeff::from_rat(rat(1, 2)));
        out.push(check_zero("rio2a", &lhs.sub(&rio2a_rhs(eng))));

        // (c) the θ-deformed squares
        let dbt = frak_d_b_theta(eng, 0);
        let lhs = eng.multiply(&dbt, &dbt).scale(&Coeff::from_rat(rat(1, 2)));
        out.push(check_zero("rio2abis", &lhs.sub(&rio2abis_rhs(eng, false))));
        let dbtp = frak_d_b_theta(eng, 1);
        let lhs = eng.multiply(&dbtp, &dbtp).scale(&Coeff::from_rat(rat(1, 2)));
        out.push(check_zero("rio2abis:primed", &lhs.sub(&rio2abis_rhs(eng, true))));

        // (d) θ-independence of D̂^{g,2}_θ
        let dht = dhat_g_theta(eng, 1);
        let sq_t = eng.multiply(&dht, &dht);
        let sq_0 = eng.multiply(&dh, &dh);
        out.push(check_zero("co10:theta-independence", &sq_t.sub(&sq_0)));

        // 𝔇_{b,0} = 𝔇'_{b,0} = 𝔇_b at x = 1, y = 0
        let d0 = at_theta_zero(&frak_d_b_theta(eng, 0));
        let d0p = at_theta_zero(&frak_d_b_theta(eng, 1));
        out.push(check_zero(
            "co13:theta=0",
            &d0.sub(&frak_d_b(eng)).add(&d0p.sub(&frak_d_b(eng))),
        ));
    }
    out
}

/// Specialize `s -> 1`, `y -> 0` (i.e. θ = 0).
pub fn at_theta_zero(nf: &NormalForm) -> NormalForm {
    let mut clean = NormalForm::zero();
    for (w, c) in &nf.terms {
        let mut c0 = Coeff::zero();
        for (mono, g) in &c.terms {
            if mono.y == 1 {
                continue;
            }
            let m0 = super::Mono { s: 0, ..*mono };
            c0 = c0.add(&Coeff::monomial(m0, g.clone()));
        }
        if !c0.is_zero() {
            clean = clean.add(&single_term(w.clone(), c0));
        }
    }
    clean
}

fn single_term(w: super::TensorWord, c: Coeff) -> NormalForm {
    let mut nf = NormalForm::zero();
    nf.terms.insert(w, c);
    nf
}

/// Superconnection data at the algebra level:
/// `B = ∇ + 𝔇_{b,θ}/√2`, curvature `B² = (1/√2)[∇,𝔇] + 𝔇²/2`,
/// `L = B² + C^g/2 + B*(κ,κ)/8`, Bianchi `[B, L] = 0`.
pub struct SuperconnectionReport {
    pub grade00_reduces: IdentityReport,
    pub dtheta_component: IdentityReport,
    pub db_component: IdentityReport,
    pub bianchi: IdentityReport,
}

pub fn superconnection_curvature(eng: &Engine) -> Result<SuperconnectionReport> {
    assert_orthonormal(eng);
    let m = eng.spec.m();
    let d = eng.spec.dim;
    let frak_d = frak_d_b_theta(eng, 0);
    let nabla_d = eng.nabla_bracket(&frak_d);

    // Expected dθ and db components per the first line of eq. (co29x1y):
    //   ∇𝔇 = -(2db/b²)(b x i c([Y^k,Y^p]) + E^p + x i E^k)
    //        -(dθ/b)(b y i c([Y^k,Y^p]) + ĉ(Ȳ^p) + y i E^k)
    let (_, ep, _, ek) = de_rham_pieces(eng);
    let mut chat_bar_yp = NormalForm::zero();
    for i in 0..m {
        chat_bar_yp = chat_bar_yp.add(&eng.word(
            Coeff::one(),
            vec![Letter::Y(i as u8), Letter::Cb(i as u8)],
        ));
    }
    let c_br = c_bracket_ykyp(eng);
    let db_inner = c_br
        .scale(&Coeff::i().mul(&Coeff::x_pow(1)).mul(&Coeff::b_pow(1)))
        .add(&ep)
        .add(&ek.scale(&Coeff::i().mul(&Coeff::x_pow(1))));
    let want_db = eng
        .multiply(&eng.letter(Letter::Db), &db_inner)
        .scale(&Coeff::b_pow(-2).scale_int(-2));
    let dth_inner = c_br
        .scale(&Coeff::i().mul(&Coeff::y_gen()).mul(&Coeff::b_pow(1)))
        .add(&chat_bar_yp)
        .add(&ek.scale(&Coeff::i().mul(&Coeff::y_gen())));
    let want_dth = eng
        .multiply(&eng.letter(Letter::Dth), &dth_inner)
        .scale(&Coeff::b_pow(-1).scale_int(-1));

    let dth_cmp = check_zero(
        "co29x1y:dtheta",
        &nabla_d.ext_component(true, false).sub(&want_dth),
    );
    let db_cmp = check_zero("co29x1y:db", &nabla_d.ext_component(false, true).sub(&want_db));

    // curvature and L
    let half = Coeff::from_rat(rat(1, 2));
    let inv_sqrt2 = Coeff::sqrt2().mul(&half); // √2/2 = 1/√2
    let b_sq = eng
        .multiply(&frak_d, &frak_d)
        .scale(&half)
        .add(&nabla_d.scale(&inv_sqrt2));
    let grade00 = check_zero(
        "co33:grade00",
        &b_sq
            .ext_component(false, false)
            .sub(&eng.multiply(&frak_d, &frak_d).scale(&half)),
    );
    let bstar = bstar_kappa_g(eng);
    let l_op = b_sq
        .add(&casimir(eng).scale(&half))
        .add(&NormalForm::scalar(Coeff::from_rat(bstar * rat(1, 8))));
    // [B, L] = [∇, L] + (1/√2)(𝔇 L - L 𝔇)
    let bianchi_nf = eng
        .nabla_bracket(&l_op)
        .add(&eng.multiply(&frak_d, &l_op).sub(&eng.multiply(&l_op, &frak_d)).scale(&inv_sqrt2));
    let bianchi = check_zero("co37:bianchi", &bianchi_nf);
    let _ = d;
    if !bianchi.ok {
        return Err(HypolapError::IdentityFailed {
            id: "co37:bianchi".into(),
            detail: bianchi.detail,
        });
    }
    Ok(SuperconnectionReport {
        grade00_reduces: grade00,
        dtheta_component: dth_cmp,
        db_component: db_cmp,
        bianchi,
    })
}
