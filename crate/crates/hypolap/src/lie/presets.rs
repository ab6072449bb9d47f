//! Built-in Lie-algebra presets and the JSON preset-file format.
//!
//! Preset files are JSON with exact rationals encoded as `"p/q"` strings:
//! `{name, dim, c[i][j][k], B[i][j], theta[i][j], p_indices, k_indices,
//! torus_basis}`.

use super::{build_algebra_raw, format_rat, parse_rat, rat_int, LieAlgebraSpec, Rat};
use crate::linalg::{czeros, CMat};
use crate::{HypolapError, Result};
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
pub struct PresetFile {
    pub name: String,
    pub dim: usize,
    pub c: Vec<Vec<Vec<String>>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub theta: Vec<Vec<String>>,
    pub p_indices: Vec<usize>,
    pub k_indices: Vec<usize>,
    pub torus_basis: Vec<Vec<String>>,
    #[serde(default)]
    pub basis_labels: Vec<String>,
}

pub fn available_presets() -> Vec<&'static str> {
    vec!["abelian3", "sl2r", "so21", "su2", "sl2c_real", "sl3r"]
}

/// Build a named preset; `abelian<d>` is parametric in the dimension.
pub fn preset(name: &str) -> Result<LieAlgebraSpec> {
    match name {
        "sl2r" => sl2r(),
        "so21" => so21(),
        "su2" => su2(),
        "sl2c_real" => sl2c_real(),
        "sl3r" => sl3r(),
        _ => {
            if let Some(dstr) = name.strip_prefix("abelian") {
                let d: usize = dstr
                    .parse()
                    .map_err(|_| HypolapError::PresetNotFound { name: name.into() })?;
                if d < 2 || d > 16 {
                    return Err(HypolapError::PresetNotFound { name: name.into() });
                }
                abelian(d)
            } else {
                Err(HypolapError::PresetNotFound { name: name.into() })
            }
        }
    }
}

/// Parse a preset from its JSON file contents. When the name matches a
/// built-in preset, the faithful matrix realization is attached.
pub fn preset_from_json(json: &str) -> Result<LieAlgebraSpec> {
    let pf: PresetFile =
        serde_json::from_str(json).map_err(|e| HypolapError::Other(format!("bad preset file: {e}")))?;
    let d = pf.dim;
    let mut c = vec![Rat::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                c[(i * d + j) * d + k] = parse_rat(&pf.c[i][j][k])?;
            }
        }
    }
    let mut b = vec![Rat::zero(); d * d];
    let mut th = vec![Rat::zero(); d * d];
    for i in 0..d {
        for j in 0..d {
            b[i * d + j] = parse_rat(&pf.b[i][j])?;
            th[i * d + j] = parse_rat(&pf.theta[i][j])?;
        }
    }
    let torus: Result<Vec<Vec<Rat>>> = pf
        .torus_basis
        .iter()
        .map(|v| v.iter().map(|s| parse_rat(s)).collect())
        .collect();
    let labels = if pf.basis_labels.len() == d {
        pf.basis_labels.clone()
    } else {
        (0..d).map(|i| format!("e{}", i + 1)).collect()
    };
    let mats = preset(&pf.name)
        .map(|builtin| builtin.basis_matrices)
        .unwrap_or_default();
    build_algebra_raw(
        &pf.name,
        c,
        b,
        th,
        labels,
        pf.p_indices.clone(),
        pf.k_indices.clone(),
        torus?,
        mats,
    )
}

/// Serialize a spec in the preset-file format.
pub fn to_preset_file(spec: &LieAlgebraSpec) -> PresetFile {
    let d = spec.dim;
    let c = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| format_rat(spec.c_rat(i, j, k))).collect())
                .collect()
        })
        .collect();
    let b = (0..d)
        .map(|i| (0..d).map(|j| format_rat(spec.b_rat(i, j))).collect())
        .collect();
    let theta = (0..d)
        .map(|i| (0..d).map(|j| format_rat(&spec.theta[i * d + j])).collect())
        .collect();
    PresetFile {
        name: spec.name.clone(),
        dim: d,
        c,
        b,
        theta,
        p_indices: spec.p_indices.clone(),
        k_indices: spec.k_indices.clone(),
        torus_basis: spec
            .torus_basis
            .iter()
            .map(|v| v.iter().map(format_rat).collect())
        .collect(),
        basis_labels: spec.basis_labels.clone(),
    }
}

fn eps(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn diag_theta(m: usize, n: usize) -> Vec<Rat> {
    let d = m + n;
    let mut th = vec![Rat::zero(); d * d];
    for i in 0..d {
        th[i * d + i] = if i < m { rat_int(-1) } else { rat_int(1) };
    }
    th
}

fn diag_b(signs: &[i64]) -> Vec<Rat> {
    let d = signs.len();
    let mut b = vec![Rat::zero(); d * d];
    for i in 0..d {
        b[i * d + i] = rat_int(signs[i]);
    }
    b
}

fn cmat_from_rows(rows: &[&[(f64, f64)]]) -> CMat {
    let n = rows.len();
    let mut m = czeros(n);
    for (i, r) in rows.iter().enumerate() {
        for (j, &(re, im)) in r.iter().enumerate() {
            m[[i, j]] = Complex64::new(re, im);
        }
    }
    m
}

fn abelian(d: usize) -> Result<LieAlgebraSpec> {
    let m = d - 1;
    let c = vec![Rat::zero(); d * d * d];
    let mut signs = vec![1i64; d];
    signs[d - 1] = -1;
    let labels = (0..d).map(|i| format!("e{}", i + 1)).collect();
    let mut torus = vec![Rat::zero(); d];
    torus[d - 1] = rat_int(1);
    // nilpotent realization in (d+1)x(d+1): e_i = E_{0, i+1}
    let mats: Vec<CMat> = (0..d)
        .map(|i| {
            let mut m = czeros(d + 1);
            m[[0, i + 1]] = Complex64::new(1.0, 0.0);
            m
        })
        .collect();
    build_algebra_raw(
        &format!("abelian{}", d),
        c,
        diag_b(&signs),
        diag_theta(m, 1),
        labels,
        (0..m).collect(),
        vec![m],
        vec![torus],
        mats,
    )
}

/// sl(2,R) with B = Killing/8 = tr(ab)/2, basis (H, X+Y, X-Y).
fn sl2r() -> Result<LieAlgebraSpec> {
    let d = 3;
    let mut c = vec![Rat::zero(); d * d * d];
    let mut set = |i: usize, j: usize, k: usize, v: i64| {
        c[(i * d + j) * d + k] = rat_int(v);
        c[(j * d + i) * d + k] = rat_int(-v);
    };
    set(0, 1, 2, 2); // [e1,e2] = 2 e3
    set(0, 2, 1, 2); // [e1,e3] = 2 e2
    set(1, 2, 0, -2); // [e2,e3] = -2 e1
    let h = cmat_from_rows(&[&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (-1.0, 0.0)]]);
    let xpy = cmat_from_rows(&[&[(0.0, 0.0), (1.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0)]]);
    let xmy = cmat_from_rows(&[&[(0.0, 0.0), (1.0, 0.0)], &[(-1.0, 0.0), (0.0, 0.0)]]);
    build_algebra_raw(
        "sl2r",
        c,
        diag_b(&[1, 1, -1]),
        diag_theta(2, 1),
        vec!["H".into(), "X+Y".into(), "X-Y".into()],
        vec![0, 1],
        vec![2],
        vec![vec![Rat::zero(), Rat::zero(), rat_int(1)]],
        vec![h, xpy, xmy],
    )
}

/// so(2,1) with B = tr(ab)/2, basis (K1, K2, J12).
fn so21() -> Result<LieAlgebraSpec> {
    let d = 3;
    let mut c = vec![Rat::zero(); d * d * d];
    let mut set = |i: usize, j: usize, k: usize, v: i64| {
        c[(i * d + j) * d + k] = rat_int(v);
        c[(j * d + i) * d + k] = rat_int(-v);
    };
    set(0, 1, 2, 1); // [K1,K2] = J
    set(2, 0, 1, -1); // [J,K1] = -K2
    set(2, 1, 0, 1); // [J,K2] = K1
    let k1 = cmat_from_rows(&[
        &[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
        &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    ]);
    let k2 = cmat_from_rows(&[
        &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        &[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
        &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
    ]);
    let j12 = cmat_from_rows(&[
        &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
        &[(-1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    ]);
    build_algebra_raw(
        "so21",
        c,
        diag_b(&[1, 1, -1]),
        diag_theta(2, 1),
        vec!["K1".into(), "K2".into(), "J12".into()],
        vec![0, 1],
        vec![2],
        vec![vec![Rat::zero(), Rat::zero(), rat_int(1)]],
        vec![k1, k2, j12],
    )
}

/// su(2) (compact: m = 0) with B = 2 tr(ab), basis u_a = -i σ_a / 2.
fn su2() -> Result<LieAlgebraSpec> {
    let d = 3;
    let mut c = vec![Rat::zero(); d * d * d];
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                let e = eps(a, b, k);
                if e != 0 {
                    c[(a * d + b) * d + k] = rat_int(e);
                }
            }
        }
    }
    let mats = su2_generators();
    build_algebra_raw(
        "su2",
        c,
        diag_b(&[-1, -1, -1]),
        diag_theta(0, 3),
        vec!["u1".into(), "u2".into(), "u3".into()],
        vec![],
        vec![0, 1, 2],
        vec![vec![Rat::zero(), Rat::zero(), rat_int(1)]],
        mats,
    )
}

fn su2_generators() -> Vec<CMat> {
    // u_a = -i sigma_a / 2
    let u1 = cmat_from_rows(&[&[(0.0, 0.0), (0.0, -0.5)], &[(0.0, -0.5), (0.0, 0.0)]]);
    let u2 = cmat_from_rows(&[&[(0.0, 0.0), (-0.5, 0.0)], &[(0.5, 0.0), (0.0, 0.0)]]);
    let u3 = cmat_from_rows(&[&[(0.0, -0.5), (0.0, 0.0)], &[(0.0, 0.0), (0.0, 0.5)]]);
    vec![u1, u2, u3]
}

/// sl(2,C) as a real Lie algebra, B = 2 Re tr(ab); basis
/// (p_a = σ_a/2, k_a = -i σ_a/2); m = n = 3.
fn sl2c_real() -> Result<LieAlgebraSpec> {
    let d = 6;
    let mut c = vec![Rat::zero(); d * d * d];
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                let e = eps(a, b, k);
                if e == 0 {
                    continue;
                }
                // [p_a, p_b] = -eps k_c
                c[(a * d + b) * d + (3 + k)] = rat_int(-e);
                // [k_a, k_b] = eps k_c
                c[((3 + a) * d + (3 + b)) * d + (3 + k)] = rat_int(e);
                // [k_a, p_b] = eps p_c ; [p_b, k_a] = -eps p_c
                c[((3 + a) * d + b) * d + k] = rat_int(e);
                c[(b * d + (3 + a)) * d + k] = rat_int(-e);
            }
        }
    }
    let p1 = cmat_from_rows(&[&[(0.0, 0.0), (0.5, 0.0)], &[(0.5, 0.0), (0.0, 0.0)]]);
    let p2 = cmat_from_rows(&[&[(0.0, 0.0), (0.0, -0.5)], &[(0.0, 0.5), (0.0, 0.0)]]);
    let p3 = cmat_from_rows(&[&[(0.5, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (-0.5, 0.0)]]);
    let mut mats = vec![p1, p2, p3];
    mats.extend(su2_generators());
    let mut torus = vec![Rat::zero(); 6];
    torus[5] = rat_int(1);
    build_algebra_raw(
        "sl2c_real",
        c,
        diag_b(&[1, 1, 1, -1, -1, -1]),
        diag_theta(3, 3),
        vec![
            "p1".into(),
            "p2".into(),
            "p3".into(),
            "k1".into(),
            "k2".into(),
            "k3".into(),
        ],
        vec![0, 1, 2],
        vec![3, 4, 5],
        vec![torus],
        mats,
    )
}

/// sl(3,R) with B = tr(ab); p = symmetric traceless (5), k = so(3) (3).
/// Raw basis is B-orthogonal but not normalized; norms (2,6,2,2,2,-2,-2,-2).
fn sl3r() -> Result<LieAlgebraSpec> {
    type IMat = [[i64; 3]; 3];
    fn mul(a: &IMat, b: &IMat) -> IMat {
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }
    fn sub(a: &IMat, b: &IMat) -> IMat {
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = a[i][j] - b[i][j];
            }
        }
        out
    }
    fn tr_prod(a: &IMat, b: &IMat) -> i64 {
        let m = mul(a, b);
        m[0][0] + m[1][1] + m[2][2]
    }
    let e = |i: usize, j: usize| -> IMat {
        let mut m = [[0i64; 3]; 3];
        m[i][j] = 1;
        m
    };
    let add = |a: &IMat, b: &IMat| -> IMat { sub(a, &sub(&[[0; 3]; 3], b)) };
    let basis: Vec<IMat> = vec![
        // p
        sub(&e(0, 0), &e(1, 1)),            // d1 = diag(1,-1,0)
        sub(&add(&e(0, 0), &e(1, 1)), &mul(&e(2, 2), &[[2, 0, 0], [0, 2, 0], [0, 0, 2]])), // d2 = diag(1,1,-2)
        add(&e(0, 1), &e(1, 0)),             // s12
        add(&e(0, 2), &e(2, 0)),             // s13
        add(&e(1, 2), &e(2, 1)),             // s23
        // k
        sub(&e(0, 1), &e(1, 0)),             // a12
        sub(&e(0, 2), &e(2, 0)),             // a13
        sub(&e(1, 2), &e(2, 1)),             // a23
    ];
    let d = 8;
    let norms: Vec<i64> = basis.iter().map(|m| tr_prod(m, m)).collect();
    let mut c = vec![Rat::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let br = sub(&mul(&basis[i], &basis[j]), &mul(&basis[j], &basis[i]));
            for k in 0..d {
                // coefficient = tr(br * e_k) / tr(e_k e_k)
                let num = tr_prod(&br, &basis[k]);
                if num != 0 {
                    c[(i * d + j) * d + k] = Rat::new(num.into(), norms[k].into());
                }
            }
        }
    }
    let mut b = vec![Rat::zero(); d * d];
    for i in 0..d {
        b[i * d + i] = rat_int(norms[i]);
    }
    let mats: Vec<CMat> = basis
        .iter()
        .map(|m| {
            let mut out = czeros(3);
            for i in 0..3 {
                for j in 0..3 {
                    out[[i, j]] = Complex64::new(m[i][j] as f64, 0.0);
                }
            }
            out
        })
        .collect();
    let mut torus = vec![Rat::zero(); 8];
    torus[5] = rat_int(1);
    build_algebra_raw(
        "sl3r",
        c,
        b,
        diag_theta(5, 3),
        vec![
            "d1".into(),
            "d2".into(),
            "s12".into(),
            "s13".into(),
            "s23".into(),
            "a12".into(),
            "a13".into(),
            "a23".into(),
        ],
        vec![0, 1, 2, 3, 4],
        vec![5, 6, 7],
        vec![torus],
        mats,
    )
}
