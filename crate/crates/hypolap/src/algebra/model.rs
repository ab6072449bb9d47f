//! Matrix model used to cross-check the normal-ordering engine: Clifford
//! letters act on `Λ·(g*) ⊗ S^p̄ ⊗ V` (with `V` a faithful g-representation
//! for the `U(g)` letters), Weyl letters act on polynomials in `Y`.
//!
//! States are polynomial-coefficient vectors; letters are applied sparsely,
//! so the model stays independent of the rewrite rules it checks.

use super::{Letter, NormalForm};
use crate::clifford::spin_generators;
use crate::lie::LieAlgebraSpec;
use crate::linalg::CMat;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Monomial exponents -> coefficient vector on the discrete factor.
pub type PolyState = BTreeMap<Vec<u8>, Vec<Complex64>>;

pub struct MatrixModel {
    pub d: usize,
    pub m: usize,
    pub lambda_dim: usize,
    pub spin_dim: usize,
    pub v_dim: usize,
    bdiag: Vec<f64>,
    spin_gens: Vec<CMat>,
    urep: Vec<CMat>,
}

impl MatrixModel {
    /// `urep` are the `ρ(e_i)` matrices of a faithful representation in the
    /// spec basis (e.g. the preset's defining matrices).
    pub fn new(spec: &LieAlgebraSpec, urep: Vec<CMat>) -> Self {
        let d = spec.dim;
        let m = spec.m();
        let bdiag: Vec<f64> = (0..d).map(|i| spec.b_f(i, i)).collect();
        let spin_gens = spin_generators(m);
        let spin_dim = if m == 0 { 1 } else { spin_gens[0].nrows() };
        let v_dim = urep[0].nrows();
        MatrixModel {
            d,
            m,
            lambda_dim: 1 << d,
            spin_dim,
            v_dim,
            bdiag,
            spin_gens,
            urep,
        }
    }

    pub fn disc_dim(&self) -> usize {
        self.lambda_dim * self.spin_dim * self.v_dim
    }

    fn split_idx(&self, idx: usize) -> (usize, usize, usize) {
        let v = idx % self.v_dim;
        let s = (idx / self.v_dim) % self.spin_dim;
        let l = idx / (self.v_dim * self.spin_dim);
        (l, s, v)
    }

    fn join_idx(&self, l: usize, s: usize, v: usize) -> usize {
        (l * self.spin_dim + s) * self.v_dim + v
    }

    fn sign_below(mask: usize, i: usize) -> f64 {
        if (mask & ((1 << i) - 1)).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Apply one letter to the discrete part of a vector.
    fn apply_disc(&self, l: Letter, vin: &[Complex64], vout: &mut [Complex64], scale: Complex64) {
        match l {
            Letter::C(i) | Letter::Ch(i) => {
                let i = i as usize;
                let hat = matches!(l, Letter::Ch(_));
                for idx in 0..vin.len() {
                    let z = vin[idx];
                    if z == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let (lam, s, v) = self.split_idx(idx);
                    if lam & (1 << i) == 0 {
                        // wedge: B_ii φ_i ∧
                        let t = lam | (1 << i);
                        let sgn = Self::sign_below(lam, i) * self.bdiag[i];
                        vout[self.join_idx(t, s, v)] += z * sgn * scale;
                    } else {
                        // contraction, sign depends on hat
                        let t = lam & !(1 << i);
                        let mut sgn = Self::sign_below(t, i);
                        if !hat {
                            sgn = -sgn;
                        }
                        vout[self.join_idx(t, s, v)] += z * sgn * scale;
                    }
                }
            }
            Letter::Cb(a) => {
                let g = &self.spin_gens[a as usize];
                for idx in 0..vin.len() {
                    let z = vin[idx];
                    if z == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let (lam, s, v) = self.split_idx(idx);
                    let koszul = if lam.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    for s2 in 0..self.spin_dim {
                        let w = g[[s2, s]];
                        if w != Complex64::new(0.0, 0.0) {
                            vout[self.join_idx(lam, s2, v)] += z * w * koszul * scale;
                        }
                    }
                }
            }
            Letter::U(i) => {
                let r = &self.urep[i as usize];
                for idx in 0..vin.len() {
                    let z = vin[idx];
                    if z == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let (lam, s, v) = self.split_idx(idx);
                    for v2 in 0..self.v_dim {
                        let w = r[[v2, v]];
                        if w != Complex64::new(0.0, 0.0) {
                            vout[self.join_idx(lam, s, v2)] += z * w * scale;
                        }
                    }
                }
            }
            _ => unreachable!("apply_disc only handles discrete letters"),
        }
    }

    /// Apply a raw letter sequence (rightmost letter first) to a state.
    pub fn apply_seq(&self, seq: &[Letter], state: &PolyState) -> PolyState {
        let mut cur = state.clone();
        for &l in seq.iter().rev() {
            cur = self.apply_letter(l, &cur);
        }
        cur
    }

    pub fn apply_letter(&self, l: Letter, state: &PolyState) -> PolyState {
        let mut out: PolyState = BTreeMap::new();
        match l {
            Letter::Y(i) => {
                for (mono, vec) in state {
                    let mut m2 = mono.clone();
                    m2[i as usize] += 1;
                    add_into(&mut out, m2, vec, Complex64::new(1.0, 0.0));
                }
            }
            Letter::Dy(i) => {
                for (mono, vec) in state {
                    let e = mono[i as usize];
                    if e > 0 {
                        let mut m2 = mono.clone();
                        m2[i as usize] -= 1;
                        add_into(&mut out, m2, vec, Complex64::new(e as f64, 0.0));
                    }
                }
            }
            Letter::E(0) => {
                out = state.clone();
            }
            Letter::Dth | Letter::Db | Letter::E(_) => {
                panic!("letter {:?} not in the matrix model", l)
            }
            _ => {
                for (mono, vec) in state {
                    let mut nv = vec![Complex64::new(0.0, 0.0); vec.len()];
                    self.apply_disc(l, vec, &mut nv, Complex64::new(1.0, 0.0));
                    add_into(&mut out, mono.clone(), &nv, Complex64::new(1.0, 0.0));
                }
            }
        }
        prune(&mut out);
        out
    }

    /// Apply a normal form, evaluating coefficients at `(b, θ)`.
    pub fn apply_nf(&self, nf: &NormalForm, state: &PolyState, b: f64, theta: f64) -> PolyState {
        let mut acc: PolyState = BTreeMap::new();
        for (w, c) in &nf.terms {
            let val = c.eval(b, theta);
            let applied = self.apply_seq(&w.letters, state);
            for (mono, vec) in applied {
                add_into(&mut acc, mono, &vec, val);
            }
        }
        prune(&mut acc);
        acc
    }
}

fn add_into(out: &mut PolyState, mono: Vec<u8>, vec: &[Complex64], scale: Complex64) {
    let entry = out
        .entry(mono)
        .or_insert_with(|| vec![Complex64::new(0.0, 0.0); vec.len()]);
    for (a, b) in entry.iter_mut().zip(vec) {
        *a += b * scale;
    }
}

fn prune(s: &mut PolyState) {
    s.retain(|_, v| v.iter().any(|z| z.norm() > 0.0));
}

pub fn state_diff_norm(a: &PolyState, b: &PolyState) -> f64 {
    let mut worst: f64 = 0.0;
    for (mono, vec) in a {
        let zero = vec![Complex64::new(0.0, 0.0); vec.len()];
        let other = b.get(mono).unwrap_or(&zero);
        for (x, y) in vec.iter().zip(other) {
            worst = worst.max((x - y).norm());
        }
    }
    for (mono, vec) in b {
        if !a.contains_key(mono) {
            for x in vec {
                worst = worst.max(x.norm());
            }
        }
    }
    worst
}

pub fn state_norm(a: &PolyState) -> f64 {
    a.values()
        .flat_map(|v| v.iter().map(|z| z.norm()))
        .fold(0.0, f64::max)
}
