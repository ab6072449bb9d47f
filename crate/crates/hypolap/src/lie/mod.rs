//! Reductive Lie-algebra data: structure constants, invariant form `B`,
//! Cartan splitting, Casimirs, the 3-form `κ`, and centralizer
//! decompositions of semisimple elements `γ = e^a k^{-1}`.

mod presets;

pub use presets::{available_presets, preset, preset_from_json, to_preset_file, PresetFile};

use crate::linalg::{self, CMat};
use crate::{HypolapError, Result};
use ndarray::Array2;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse a rational in `p/q` or integer string form.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let pn: i128 = p.trim().parse().map_err(|_| HypolapError::Other(format!("bad rational {s}")))?;
        let qn: i128 = q.trim().parse().map_err(|_| HypolapError::Other(format!("bad rational {s}")))?;
        Ok(Rat::new(BigInt::from(pn), BigInt::from(qn)))
    } else {
        let pn: i128 = s.parse().map_err(|_| HypolapError::Other(format!("bad rational {s}")))?;
        Ok(Rat::from_integer(BigInt::from(pn)))
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // exact for the small numbers appearing in presets
    let nf: f64 = num.to_string().parse().unwrap();
    let df: f64 = den.to_string().parse().unwrap();
    nf / df
}

/// Reductive Lie-algebra data in a fixed basis.
///
/// The convention throughout is that the first `m` basis vectors span `p`
/// and the remaining `n` span `k`; `B` is positive on `p`, negative on `k`,
/// and `θ` is `-1` on `p`, `+1` on `k`.
#[derive(Clone)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub dim: usize,
    /// Structure constants `[e_i, e_j] = Σ_k c_{ij}^k e_k`, exact.
    pub c: Vec<Rat>,
    /// Invariant bilinear form, exact.
    pub b_form: Vec<Rat>,
    /// Cartan involution matrix, exact.
    pub theta: Vec<Rat>,
    pub basis_labels: Vec<String>,
    pub p_indices: Vec<usize>,
    pub k_indices: Vec<usize>,
    /// Basis of a fixed maximal torus `t ⊂ k`, coordinates in the spec basis.
    pub torus_basis: Vec<Vec<Rat>>,
    /// Faithful matrix realization of the basis (used for `Ad(k)` and the
    /// group-valued diffusions). Empty when not available.
    pub basis_matrices: Vec<CMat>,
    // float mirrors
    c_f: Vec<f64>,
    b_f: Vec<f64>,
    theta_f: Vec<f64>,
}

impl LieAlgebraSpec {
    pub fn m(&self) -> usize {
        self.p_indices.len()
    }

    pub fn n(&self) -> usize {
        self.k_indices.len()
    }

    #[inline]
    pub fn c_f(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c_f[(i * self.dim + j) * self.dim + k]
    }

    pub fn c_rat(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn b_f(&self, i: usize, j: usize) -> f64 {
        self.b_f[i * self.dim + j]
    }

    pub fn b_rat(&self, i: usize, j: usize) -> &Rat {
        &self.b_form[i * self.dim + j]
    }

    #[inline]
    pub fn theta_f(&self, i: usize, j: usize) -> f64 {
        self.theta_f[i * self.dim + j]
    }

    /// `⟨x, y⟩ = -B(x, θ y)`, the positive scalar product.
    pub fn metric(&self, x: &[f64], y: &[f64]) -> f64 {
        let ty = self.apply_theta(y);
        -self.b_vec(x, &ty)
    }

    pub fn b_vec(&self, x: &[f64], y: &[f64]) -> f64 {
        let d = self.dim;
        let mut s = 0.0;
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                s += x[i] * self.b_f(i, j) * y[j];
            }
        }
        s
    }

    pub fn apply_theta(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.theta_f(i, j) * x[j]).sum())
            .collect()
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0.0 {
                    continue;
                }
                for k in 0..d {
                    out[k] += x[i] * y[j] * self.c_f(i, j, k);
                }
            }
        }
        out
    }

    /// True when the spec basis is already `B`-orthonormal with signature
    /// signs (`+1` on `p`, `-1` on `k`).
    pub fn basis_is_orthonormal(&self) -> bool {
        let d = self.dim;
        let m = self.m();
        for i in 0..d {
            for j in 0..d {
                let want = if i != j {
                    0.0
                } else if i < m {
                    1.0
                } else {
                    -1.0
                };
                if (self.b_f(i, j) - want).abs() > 1e-15 {
                    return false;
                }
            }
        }
        true
    }

    /// Matrix of a Lie-algebra element in the faithful realization.
    pub fn realize(&self, x: &[f64]) -> CMat {
        assert!(!self.basis_matrices.is_empty(), "preset has no matrix realization");
        let n = self.basis_matrices[0].nrows();
        let mut out = linalg::czeros(n);
        for (i, mat) in self.basis_matrices.iter().enumerate() {
            if x[i] != 0.0 {
                out = out + &mat.mapv(|z| z * x[i]);
            }
        }
        out
    }

    /// Expand a matrix of the faithful realization in the spec basis
    /// (real coefficients; least squares via the real Frobenius Gram matrix).
    pub fn expand_in_basis(&self, mat: &CMat) -> Result<Vec<f64>> {
        let d = self.dim;
        let mut gram = Array2::<f64>::zeros((d, d));
        let mut rhs = vec![0.0; d];
        let frob = |a: &CMat, b: &CMat| -> f64 {
            a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
        };
        for i in 0..d {
            for j in 0..d {
                gram[[i, j]] = frob(&self.basis_matrices[i], &self.basis_matrices[j]);
            }
            rhs[i] = frob(&self.basis_matrices[i], mat);
        }
        let gc = linalg::to_complex(&gram);
        let mut rc = linalg::czeros(d);
        for i in 0..d {
            rc[[i, 0]] = num_complex::Complex64::new(rhs[i], 0.0);
        }
        let rc = rc.slice_move(ndarray::s![.., 0..1]);
        let sol = linalg::solve(&gc, &rc.to_owned()).ok_or(HypolapError::SingularSubspaceSolve {
            context: "Frobenius Gram matrix singular".into(),
        })?;
        Ok((0..d).map(|i| sol[[i, 0]].re).collect())
    }

    /// `Ad(k)` as a matrix on `g` in the spec basis, for `k_elt` in the
    /// faithful realization.
    pub fn adjoint_group_action(&self, k_elt: &CMat) -> Result<Array2<f64>> {
        let d = self.dim;
        let k_inv = linalg::inv(k_elt).ok_or(HypolapError::SingularSubspaceSolve {
            context: "k_elt not invertible".into(),
        })?;
        let mut out = Array2::<f64>::zeros((d, d));
        for i in 0..d {
            let conj = k_elt.dot(&self.basis_matrices[i]).dot(&k_inv);
            let coords = self.expand_in_basis(&conj)?;
            for j in 0..d {
                out[[j, i]] = coords[j];
            }
        }
        Ok(out)
    }
}

/// Cartan splitting data with a `⟨,⟩`-orthonormal basis adapted to `p ⊕ k`.
#[derive(Clone)]
pub struct CartanSplit {
    pub m: usize,
    pub n: usize,
    pub p_indices: Vec<usize>,
    pub k_indices: Vec<usize>,
    /// Columns are the orthonormal basis vectors `e_1..e_{m+n}` expressed in
    /// the spec basis; `B(e_i, e_i) = +1` for `i <= m`, `-1` beyond.
    pub orthonormal_basis: Array2<f64>,
}

impl CartanSplit {
    pub fn basis_vector(&self, i: usize) -> Vec<f64> {
        self.orthonormal_basis.column(i).to_vec()
    }

    /// Sign `ε_i = B(e_i, e_i)` of the i-th orthonormal vector.
    pub fn sign(&self, i: usize) -> f64 {
        if i < self.m {
            1.0
        } else {
            -1.0
        }
    }
}

/// Validate and build a `LieAlgebraSpec` from raw exact data.
pub fn build_algebra_raw(
    name: &str,
    c: Vec<Rat>,
    b_form: Vec<Rat>,
    theta: Vec<Rat>,
    basis_labels: Vec<String>,
    p_indices: Vec<usize>,
    k_indices: Vec<usize>,
    torus_basis: Vec<Vec<Rat>>,
    basis_matrices: Vec<CMat>,
) -> Result<LieAlgebraSpec> {
    let dim = basis_labels.len();
    assert_eq!(c.len(), dim * dim * dim);
    assert_eq!(b_form.len(), dim * dim);
    assert_eq!(theta.len(), dim * dim);
    // The internal convention: p first, then k.
    assert!(
        p_indices.iter().enumerate().all(|(a, &i)| a == i)
            && k_indices.iter().enumerate().all(|(a, &i)| a + p_indices.len() == i),
        "spec basis must list p before k"
    );
    let c_f: Vec<f64> = c.iter().map(rat_to_f64).collect();
    let b_f: Vec<f64> = b_form.iter().map(rat_to_f64).collect();
    let theta_f: Vec<f64> = theta.iter().map(rat_to_f64).collect();
    let spec = LieAlgebraSpec {
        name: name.to_string(),
        dim,
        c,
        b_form,
        theta,
        basis_labels,
        p_indices,
        k_indices,
        torus_basis,
        basis_matrices,
        c_f,
        b_f,
        theta_f,
    };
    validate(&spec)?;
    Ok(spec)
}

/// Build one of the named presets (`abelian<d>` accepts any small `d`).
pub fn build_algebra(name: &str) -> Result<LieAlgebraSpec> {
    preset(name)
}

fn validate(spec: &LieAlgebraSpec) -> Result<()> {
    let d = spec.dim;
    // antisymmetry c_{ij}^k = -c_{ji}^k (exact)
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if spec.c_rat(i, j, k) != &(-spec.c_rat(j, i, k).clone()) {
                    return Err(HypolapError::Other(format!(
                        "structure constants not antisymmetric at ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    // Jacobi, exact
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for m in 0..d {
                    let mut s = Rat::zero();
                    for l in 0..d {
                        s += spec.c_rat(i, j, l).clone() * spec.c_rat(l, k, m).clone();
                        s += spec.c_rat(j, k, l).clone() * spec.c_rat(l, i, m).clone();
                        s += spec.c_rat(k, i, l).clone() * spec.c_rat(l, j, m).clone();
                    }
                    if !s.is_zero() {
                        return Err(HypolapError::JacobiViolation {
                            i,
                            j,
                            k,
                            residual: rat_to_f64(&s).abs(),
                        });
                    }
                }
            }
        }
    }
    // B nondegenerate
    let bc = linalg::to_complex(&Array2::from_shape_fn((d, d), |(i, j)| spec.b_f(i, j)));
    if linalg::det(&bc).norm() < 1e-12 {
        return Err(HypolapError::NonInvariantForm { residual: f64::INFINITY });
    }
    // B invariance: B([e_i,e_j],e_k) + B(e_j,[e_i,e_k]) = 0, exact
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut s = Rat::zero();
                for l in 0..d {
                    s += spec.c_rat(i, j, l).clone() * spec.b_rat(l, k).clone();
                    s += spec.c_rat(i, k, l).clone() * spec.b_rat(j, l).clone();
                }
                if !s.is_zero() {
                    return Err(HypolapError::NonInvariantForm {
                        residual: rat_to_f64(&s).abs(),
                    });
                }
            }
        }
    }
    // theta^2 = 1, theta preserves B, theta is an automorphism (exact)
    for i in 0..d {
        for j in 0..d {
            let mut s = Rat::zero();
            for l in 0..d {
                s += spec.theta[i * d + l].clone() * spec.theta[l * d + j].clone();
            }
            let want = if i == j { Rat::one() } else { Rat::zero() };
            if s != want {
                return Err(HypolapError::ThetaNotInvolution {
                    reason: "theta^2 != id".into(),
                });
            }
        }
    }
    // theta preserves B: B(theta x, theta y) = B(x,y)
    for i in 0..d {
        for j in 0..d {
            let mut s = Rat::zero();
            for a in 0..d {
                for b in 0..d {
                    s += spec.theta[a * d + i].clone()
                        * spec.b_rat(a, b).clone()
                        * spec.theta[b * d + j].clone();
                }
            }
            if s != spec.b_rat(i, j).clone() {
                return Err(HypolapError::ThetaNotInvolution {
                    reason: "theta does not preserve B".into(),
                });
            }
        }
    }
    // automorphism: theta[x,y] = [theta x, theta y]
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                // lhs: sum_l c_{ij}^l theta_{kl}
                let mut lhs = Rat::zero();
                for l in 0..d {
                    lhs += spec.c_rat(i, j, l).clone() * spec.theta[k * d + l].clone();
                }
                // rhs: sum_{a,b} theta_{ai} theta_{bj} c_{ab}^k
                let mut rhs = Rat::zero();
                for a in 0..d {
                    for b in 0..d {
                        rhs += spec.theta[a * d + i].clone()
                            * spec.theta[b * d + j].clone()
                            * spec.c_rat(a, b, k).clone();
                    }
                }
                if lhs != rhs {
                    return Err(HypolapError::ThetaNotInvolution {
                        reason: "theta is not a Lie-algebra automorphism".into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Compute the Cartan split with a `⟨,⟩`-orthonormal adapted basis
/// (Gram–Schmidt inside `p` and inside `k`).
pub fn cartan_split(spec: &LieAlgebraSpec) -> Result<CartanSplit> {
    let d = spec.dim;
    let m = spec.m();
    let n = spec.n();
    let mut basis = Array2::<f64>::zeros((d, d));
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for block in [&spec.p_indices, &spec.k_indices] {
        let mut block_cols: Vec<Vec<f64>> = Vec::new();
        for &i in block.iter() {
            let mut v = vec![0.0; d];
            v[i] = 1.0;
            for w in &block_cols {
                let proj = spec.metric(&v, w);
                for t in 0..d {
                    v[t] -= proj * w[t];
                }
            }
            let nn = spec.metric(&v, &v).sqrt();
            if nn < 1e-12 {
                return Err(HypolapError::SingularSubspaceSolve {
                    context: "degenerate block in Gram-Schmidt".into(),
                });
            }
            for t in 0..d {
                v[t] /= nn;
            }
            block_cols.push(v);
        }
        cols.extend(block_cols);
    }
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            basis[[i, j]] = col[i];
        }
    }
    let split = CartanSplit {
        m,
        n,
        p_indices: spec.p_indices.clone(),
        k_indices: spec.k_indices.clone(),
        orthonormal_basis: basis,
    };
    // bracket inclusions [p,p] ⊆ k, [p,k] ⊆ p, [k,k] ⊆ k
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let ei = split.basis_vector(i);
            let ej = split.basis_vector(j);
            let br = spec.bracket(&ei, &ej);
            for k in 0..d {
                let ek = split.basis_vector(k);
                let coeff = spec.metric(&br, &ek);
                let in_p = k < m;
                let expected_p = (i < m) != (j < m);
                if in_p != expected_p {
                    worst = worst.max(coeff.abs());
                }
            }
        }
    }
    if worst > 1e-12 {
        return Err(HypolapError::Other(format!(
            "Cartan bracket inclusions violated: residual {worst:.3e}"
        )));
    }
    Ok(split)
}

/// `ad(x)` in the spec basis.
pub fn adjoint_map(spec: &LieAlgebraSpec, x: &[f64]) -> Array2<f64> {
    let d = spec.dim;
    let mut out = Array2::<f64>::zeros((d, d));
    for j in 0..d {
        let mut ej = vec![0.0; d];
        ej[j] = 1.0;
        let br = spec.bracket(x, &ej);
        for i in 0..d {
            out[[i, j]] = br[i];
        }
    }
    out
}

/// `ad(x)` expressed on the orthonormal adapted basis of the split.
pub fn adjoint_map_on(split: &CartanSplit, spec: &LieAlgebraSpec, x: &[f64]) -> Array2<f64> {
    let d = spec.dim;
    let mut out = Array2::<f64>::zeros((d, d));
    for j in 0..d {
        let ej = split.basis_vector(j);
        let br = spec.bracket(x, &ej);
        for i in 0..d {
            let ei = split.basis_vector(i);
            out[[i, j]] = spec.metric(&br, &ei) * 1.0;
        }
    }
    out
}

/// Casimir of `spec` acting in a representation given by matrices
/// `rho[i] = ρ(e_i)` (spec basis): `C = -Σ ρ(e*_i) ρ(e_i)`.
pub fn casimir_in_rep(spec: &LieAlgebraSpec, rho: &[CMat]) -> Result<CMat> {
    let d = spec.dim;
    assert_eq!(rho.len(), d);
    let vdim = rho[0].nrows();
    // representation check: ρ([e_i,e_j]) = [ρ(e_i), ρ(e_j)]
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let comm = linalg::commutator(&rho[i], &rho[j]);
            let mut want = linalg::czeros(vdim);
            for k in 0..d {
                let cc = spec.c_f(i, j, k);
                if cc != 0.0 {
                    want = want + &rho[k].mapv(|z| z * cc);
                }
            }
            worst = worst.max(linalg::max_abs(&(comm - want)));
        }
    }
    if worst > 1e-10 {
        return Err(HypolapError::NotARepresentation { residual: worst });
    }
    // dual basis via B^{-1}
    let bmat = linalg::to_complex(&Array2::from_shape_fn((d, d), |(i, j)| spec.b_f(i, j)));
    let binv = linalg::inv(&bmat).ok_or(HypolapError::NonInvariantForm {
        residual: f64::INFINITY,
    })?;
    let mut cas = linalg::czeros(vdim);
    for i in 0..d {
        // ρ(e*_i) = Σ_j (B^{-1})_{ji} ρ(e_j); B symmetric so order immaterial
        let mut dual = linalg::czeros(vdim);
        for j in 0..d {
            let w = binv[[j, i]];
            if w.norm() > 0.0 {
                dual = dual + &rho[j].mapv(|z| z * w);
            }
        }
        cas = cas + &dual.dot(&rho[i]);
    }
    Ok(cas.mapv(|z| -z))
}

/// Outputs of [`kappa_data`].
pub struct KappaData {
    /// `κ(a,b,c) = B([a,b],c)` on the orthonormal adapted basis.
    pub kappa: Vec<f64>,
    pub bstar_kappa_g: f64,
    pub bstar_kappa_k: f64,
    pub trp_ckp: f64,
    pub trk_ckk: f64,
    pub scal_x: f64,
}

impl KappaData {
    pub fn kappa_at(&self, d: usize, i: usize, j: usize, k: usize) -> f64 {
        self.kappa[(i * d + j) * d + k]
    }
}

/// The 3-form `κ` together with its norms and the Casimir traces
/// `Tr^p[C^{k,p}]`, `Tr^k[C^{k,k}]` and the scalar curvature `S^X`.
pub fn kappa_data(spec: &LieAlgebraSpec, split: &CartanSplit) -> KappaData {
    let d = spec.dim;
    let m = split.m;
    let mut kappa = vec![0.0; d * d * d];
    for i in 0..d {
        let ei = split.basis_vector(i);
        for j in 0..d {
            let ej = split.basis_vector(j);
            let br = spec.bracket(&ei, &ej);
            for k in 0..d {
                let ek = split.basis_vector(k);
                kappa[(i * d + j) * d + k] = spec.b_vec(&br, &ek);
            }
        }
    }
    // B*(κ,κ) = (1/6) Σ κ(e*_i,e*_j,e*_k) κ(e_i,e_j,e_k); with the signed
    // orthonormal basis e*_i = ε_i e_i.
    let sign = |i: usize| if i < m { 1.0 } else { -1.0 };
    let mut bs_g = 0.0;
    let mut bs_k = 0.0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = kappa[(i * d + j) * d + k];
                let w = sign(i) * sign(j) * sign(k) * v * v / 6.0;
                bs_g += w;
                if i >= m && j >= m && k >= m {
                    bs_k += w;
                }
            }
        }
    }
    // Tr^p[C^{k,p}] = Σ_{i>m} tr(ad(e_i)^2 |_p), likewise on k.
    let mut trp = 0.0;
    let mut trk = 0.0;
    for i in m..d {
        let ei = split.basis_vector(i);
        let ad = adjoint_map_on(split, spec, &ei);
        let ad2 = ad.dot(&ad);
        for a in 0..m {
            trp += ad2[[a, a]];
        }
        for a in m..d {
            trk += ad2[[a, a]];
        }
    }
    KappaData {
        kappa,
        bstar_kappa_g: bs_g,
        bstar_kappa_k: bs_k,
        trp_ckp: trp,
        trk_ckk: trk,
        scal_x: trp,
    }
}

/// Orthonormal basis (columns, spec coordinates) of the span of `vectors`,
/// w.r.t. the positive scalar product.
fn orthonormalize(spec: &LieAlgebraSpec, vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let d = spec.dim;
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let pr = spec.metric(&w, u);
            for t in 0..d {
                w[t] -= pr * u[t];
            }
        }
        let nn = spec.metric(&w, &w).sqrt();
        if nn > tol {
            for t in 0..d {
                w[t] /= nn;
            }
            out.push(w);
        }
    }
    out
}

/// Joint kernel of a list of real matrices acting on spec coordinates,
/// restricted to the span of `ambient` (orthonormal), with rank tolerance.
fn joint_kernel_in(
    spec: &LieAlgebraSpec,
    maps: &[Array2<f64>],
    ambient: &[Vec<f64>],
    tol: f64,
) -> Vec<Vec<f64>> {
    let d = spec.dim;
    let k = ambient.len();
    if k == 0 {
        return Vec::new();
    }
    // stack the maps applied to the ambient basis
    let rows: usize = maps.len() * d;
    let mut m = linalg::czeros(rows.max(1));
    let mut mm = Array2::<f64>::zeros((rows, k));
    for (mi, map) in maps.iter().enumerate() {
        for (j, v) in ambient.iter().enumerate() {
            let mut mv = vec![0.0; d];
            for a in 0..d {
                for b in 0..d {
                    mv[a] += map[[a, b]] * v[b];
                }
            }
            for a in 0..d {
                mm[[mi * d + a, j]] = mv[a];
            }
        }
    }
    let _ = &mut m;
    let mc = linalg::to_complex(&mm);
    let ker = linalg::kernel_basis(&mc, tol);
    let mut out = Vec::new();
    for col in 0..ker.ncols() {
        let mut v = vec![0.0; d];
        for j in 0..k {
            let w = ker[[j, col]].re;
            for a in 0..d {
                v[a] += w * ambient[j][a];
            }
        }
        out.push(v);
    }
    orthonormalize(spec, &out, 1e-9)
}

fn complement_in(
    spec: &LieAlgebraSpec,
    sub: &[Vec<f64>],
    ambient: &[Vec<f64>],
) -> Vec<Vec<f64>> {
    // orthogonal complement of span(sub) inside span(ambient)
    let d = spec.dim;
    let mut out = Vec::new();
    for v in ambient {
        let mut w = v.clone();
        for u in sub.iter().chain(out.iter()) {
            let pr = spec.metric(&w, u);
            let un = spec.metric(u, u);
            for t in 0..d {
                w[t] -= pr / un * u[t];
            }
        }
        if spec.metric(&w, &w).sqrt() > 1e-9 {
            let nn = spec.metric(&w, &w).sqrt();
            for t in 0..d {
                w[t] /= nn;
            }
            out.push(w);
        }
    }
    out
}

/// Centralizer decomposition of a semisimple `γ = e^a k^{-1}`.
pub struct CentralizerData {
    pub a: Vec<f64>,
    pub k_elt: CMat,
    /// `Ad(k)` on the spec basis.
    pub ad_k: Array2<f64>,
    pub z_gamma: Vec<Vec<f64>>,
    pub p_gamma: Vec<Vec<f64>>,
    pub k_gamma: Vec<Vec<f64>>,
    pub z0: Vec<Vec<f64>>,
    pub p0: Vec<Vec<f64>>,
    pub k0: Vec<Vec<f64>>,
    pub z0_perp: Vec<Vec<f64>>,
    pub p0_perp: Vec<Vec<f64>>,
    pub k0_perp: Vec<Vec<f64>>,
    pub z0_perp_gamma: Vec<Vec<f64>>,
    pub p0_perp_gamma: Vec<Vec<f64>>,
    pub k0_perp_gamma: Vec<Vec<f64>>,
    pub b_space: Vec<Vec<f64>>,
    pub b_gamma: Vec<Vec<f64>>,
    pub t_gamma: Vec<Vec<f64>>,
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

/// Decompose the centralizer data of `γ = e^a k^{-1}` with `Ad(k) a = a`.
///
/// Subspaces are computed as kernels / orthocomplements w.r.t. the positive
/// scalar product, with singular-value tolerance `1e-9` for rank decisions.
pub fn centralizer_decomposition(
    spec: &LieAlgebraSpec,
    split: &CartanSplit,
    a: &[f64],
    k_elt: &CMat,
) -> Result<CentralizerData> {
    let d = spec.dim;
    let m = split.m;
    let tol = 1e-9;
    let ad_k = spec.adjoint_group_action(k_elt)?;
    // Ad(k) a = a
    let mut res: f64 = 0.0;
    for i in 0..d {
        let mut s = 0.0;
        for j in 0..d {
            s += ad_k[[i, j]] * a[j];
        }
        res = res.max((s - a[i]).abs());
    }
    if res > 1e-12 {
        return Err(HypolapError::NotCommuting { residual: res });
    }

    let p_basis: Vec<Vec<f64>> = (0..m).map(|i| split.basis_vector(i)).collect();
    let k_basis: Vec<Vec<f64>> = (m..d).map(|i| split.basis_vector(i)).collect();
    let g_basis: Vec<Vec<f64>> = (0..d).map(|i| split.basis_vector(i)).collect();

    let ad_a = adjoint_map(spec, a);
    // z0 = ker ad(a); p0, k0 its parts
    let p0 = joint_kernel_in(spec, &[ad_a.clone()], &p_basis, tol);
    let k0 = joint_kernel_in(spec, &[ad_a.clone()], &k_basis, tol);
    let mut z0 = p0.clone();
    z0.extend(k0.iter().cloned());

    // z(gamma) = ker ad(a) ∩ ker (Ad(k) - 1)
    let idm = Array2::<f64>::eye(d);
    let adk_minus = &ad_k - &idm;
    let p_gamma = joint_kernel_in(spec, &[ad_a.clone(), adk_minus.clone()], &p_basis, tol);
    let k_gamma = joint_kernel_in(spec, &[ad_a.clone(), adk_minus.clone()], &k_basis, tol);
    let mut z_gamma = p_gamma.clone();
    z_gamma.extend(k_gamma.iter().cloned());

    let p0_perp = complement_in(spec, &p0, &p_basis);
    let k0_perp = complement_in(spec, &k0, &k_basis);
    let mut z0_perp = p0_perp.clone();
    z0_perp.extend(k0_perp.iter().cloned());

    let p0_perp_gamma = complement_in(spec, &p_gamma, &p0);
    let k0_perp_gamma = complement_in(spec, &k_gamma, &k0);
    let mut z0_perp_gamma = p0_perp_gamma.clone();
    z0_perp_gamma.extend(k0_perp_gamma.iter().cloned());

    // b = {e in p : [e, t] = 0} for the preset torus t
    let torus_maps: Vec<Array2<f64>> = spec
        .torus_basis
        .iter()
        .map(|t| {
            let tf: Vec<f64> = t.iter().map(rat_to_f64).collect();
            adjoint_map(spec, &tf)
        })
        .collect();
    let b_space = if torus_maps.is_empty() {
        p_basis.clone()
    } else {
        joint_kernel_in(spec, &torus_maps, &p_basis, tol)
    };

    // t(gamma): maximal abelian subalgebra of k(gamma); start from t ∩ k(gamma)
    let t_gamma = torus_of(spec, split, &k_gamma, tol);

    // b(gamma) = {e in p(k) : [e, t(gamma)] = 0}
    let p_k = joint_kernel_in(spec, &[adk_minus.clone()], &p_basis, tol);
    let tg_maps: Vec<Array2<f64>> = t_gamma.iter().map(|t| adjoint_map(spec, t)).collect();
    let b_gamma = if tg_maps.is_empty() {
        p_k.clone()
    } else {
        joint_kernel_in(spec, &tg_maps, &p_k, tol)
    };

    let p = p_gamma.len();
    let q = k_gamma.len();
    let r = z_gamma.len();
    if r != p + q {
        return Err(HypolapError::SingularSubspaceSolve {
            context: format!("z(gamma) does not split: r={r}, p={p}, q={q}"),
        });
    }
    // cross-check: dim z0 via second route (rank of ad(a))
    let rank = linalg::rank_with_tol(&linalg::to_complex(&ad_a), tol);
    if d - rank != z0.len() {
        return Err(HypolapError::SingularSubspaceSolve {
            context: format!(
                "kernel dimension mismatch: svd route {} vs basis route {}",
                d - rank,
                z0.len()
            ),
        });
    }
    // a ∈ b(gamma) when a != 0
    let anorm = spec.metric(a, a).sqrt();
    if anorm > 1e-12 {
        let mut proj = vec![0.0; d];
        for u in &b_gamma {
            let pr = spec.metric(a, u);
            for t in 0..d {
                proj[t] += pr * u[t];
            }
        }
        let diff: f64 = (0..d).map(|t| (proj[t] - a[t]).powi(2)).sum::<f64>().sqrt();
        if diff > 1e-8 * anorm.max(1.0) {
            return Err(HypolapError::SingularSubspaceSolve {
                context: "a not contained in b(gamma)".into(),
            });
        }
    }
    let _ = g_basis;
    Ok(CentralizerData {
        a: a.to_vec(),
        k_elt: k_elt.clone(),
        ad_k,
        z_gamma,
        p_gamma,
        k_gamma,
        z0,
        p0,
        k0,
        z0_perp,
        p0_perp,
        k0_perp,
        z0_perp_gamma,
        p0_perp_gamma,
        k0_perp_gamma,
        b_space,
        b_gamma,
        t_gamma,
        p,
        q,
        r,
    })
}

/// Maximal abelian subalgebra of the span of `sub ⊆ k`, preferring vectors of
/// the preset torus.
fn torus_of(
    spec: &LieAlgebraSpec,
    _split: &CartanSplit,
    sub: &[Vec<f64>],
    tol: f64,
) -> Vec<Vec<f64>> {
    if sub.is_empty() {
        return Vec::new();
    }
    let d = spec.dim;
    // candidate seeds: preset torus vectors projected into span(sub), then sub itself
    let mut seeds: Vec<Vec<f64>> = Vec::new();
    for t in &spec.torus_basis {
        let tf: Vec<f64> = t.iter().map(rat_to_f64).collect();
        let mut proj = vec![0.0; d];
        for u in sub {
            let pr = spec.metric(&tf, u);
            for i in 0..d {
                proj[i] += pr * u[i];
            }
        }
        if spec.metric(&proj, &proj).sqrt() > tol {
            seeds.push(proj);
        }
    }
    seeds.extend(sub.iter().cloned());
    let mut torus: Vec<Vec<f64>> = Vec::new();
    for cand in seeds {
        let commutes = torus.iter().all(|t| {
            let br = spec.bracket(&cand, t);
            spec.metric(&br, &br).sqrt() < 1e-9
        });
        if !commutes {
            continue;
        }
        let mut w = cand.clone();
        for u in &torus {
            let pr = spec.metric(&w, u);
            for i in 0..d {
                w[i] -= pr * u[i];
            }
        }
        if spec.metric(&w, &w).sqrt() > tol {
            let nn = spec.metric(&w, &w).sqrt();
            for i in 0..d {
                w[i] /= nn;
            }
            torus.push(w);
        }
    }
    torus
}

/// Build the `k`-subalgebra of `spec` as a standalone spec (for Casimir
/// computations in `K`-representations). The basis is the `k`-block of the
/// spec basis; `B` is the restriction.
pub fn k_subalgebra(spec: &LieAlgebraSpec) -> Result<LieAlgebraSpec> {
    let d = spec.dim;
    let m = spec.m();
    let n = spec.n();
    let idx: Vec<usize> = (m..d).collect();
    let mut c = vec![Rat::zero(); n * n * n];
    for (ai, &i) in idx.iter().enumerate() {
        for (aj, &j) in idx.iter().enumerate() {
            for (ak, &k) in idx.iter().enumerate() {
                c[(ai * n + aj) * n + ak] = spec.c_rat(i, j, k).clone();
            }
        }
    }
    let mut b_form = vec![Rat::zero(); n * n];
    let mut theta = vec![Rat::zero(); n * n];
    for (ai, &i) in idx.iter().enumerate() {
        for (aj, &j) in idx.iter().enumerate() {
            b_form[ai * n + aj] = spec.b_rat(i, j).clone();
            if ai == aj {
                theta[ai * n + aj] = Rat::one();
            }
        }
    }
    let labels: Vec<String> = idx.iter().map(|&i| spec.basis_labels[i].clone()).collect();
    let torus = spec
        .torus_basis
        .iter()
        .map(|t| idx.iter().map(|&i| t[i].clone()).collect())
        .collect();
    let mats = if spec.basis_matrices.is_empty() {
        Vec::new()
    } else {
        idx.iter().map(|&i| spec.basis_matrices[i].clone()).collect()
    };
    build_algebra_raw(
        &format!("{}_k", spec.name),
        c,
        b_form,
        theta,
        labels,
        Vec::new(),
        (0..n).collect(),
        torus,
        mats,
    )
}

#[cfg(test)]
mod tests;
