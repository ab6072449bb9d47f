//! Exact normal-ordering engine for the formal algebra
//! `U(g) ⊗ c(g) ⊗ ĉ(g) ⊗ c(p̄) ⊗ Weyl(Y) ⊗ End(E)` with `dθ`/`db`
//! exterior grades.
//!
//! Words are rewritten to a canonical order with the relations
//!
//! * `c(e_i)c(e_j) + c(e_j)c(e_i) = -2 B_{ij}`,
//!   `ĉ(e_i)ĉ(e_j) + ĉ(e_j)ĉ(e_i) = 2 B_{ij}` (diagonal `B`),
//! * `ĉ(ē_a)ĉ(ē_b) + ĉ(ē_b)ĉ(ē_a) = 2 δ_{ab}`,
//! * distinct odd families anticommute,
//! * `e_i e_j = e_j e_i + Σ_k c_{ij}^k e_k` (PBW, basis order),
//! * `∂_{Y_i} Y_j = Y_j ∂_{Y_i} + δ_{ij}`,
//!
//! over the coefficient ring of [`coeff::Coeff`] (Gaussian rationals,
//! Laurent in `b` and `s = cos^{1/2}θ`, with `y = sin θ`, `√2`).

pub mod coeff;
pub mod model;
pub mod ops;

pub use coeff::{Coeff, GaussRat, Mono};

use crate::lie::LieAlgebraSpec;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    /// `dθ` exterior generator
    Dth,
    /// `db` exterior generator
    Db,
    /// `c(e_i)`
    C(u8),
    /// `ĉ(e_i)`
    Ch(u8),
    /// `ĉ(ē_a)`, `a < m`
    Cb(u8),
    /// End(E) arena index
    E(u16),
    /// `e_i ∈ U(g)`
    U(u8),
    /// `Y_i`
    Y(u8),
    /// `∂_{Y_i}`
    Dy(u8),
}

impl Letter {
    fn rank(&self) -> u8 {
        match self {
            Letter::Dth => 0,
            Letter::Db => 1,
            Letter::C(_) => 2,
            Letter::Ch(_) => 3,
            Letter::Cb(_) => 4,
            Letter::E(_) => 5,
            Letter::U(_) => 6,
            Letter::Y(_) => 7,
            Letter::Dy(_) => 8,
        }
    }


    pub fn is_odd(&self) -> bool {
        matches!(
            self,
            Letter::Dth | Letter::Db | Letter::C(_) | Letter::Ch(_) | Letter::Cb(_)
        )
    }
}

/// Canonically ordered word (see module docs for the order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct TensorWord {
    pub letters: Vec<Letter>,
}

impl TensorWord {
    pub fn parity(&self) -> usize {
        self.letters.iter().filter(|l| l.is_odd()).count() % 2
    }

    pub fn ext_grade(&self) -> (bool, bool) {
        let dth = self.letters.contains(&Letter::Dth);
        let db = self.letters.contains(&Letter::Db);
        (dth, db)
    }
}

/// Canonical-form element: map word -> coefficient, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    pub terms: BTreeMap<TensorWord, Coeff>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scalar(c: Coeff) -> Self {
        let mut nf = NormalForm::zero();
        nf.insert(TensorWord::default(), c);
        nf
    }

    pub fn one() -> Self {
        Self::scalar(Coeff::one())
    }

    fn insert(&mut self, w: TensorWord, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &NormalForm) -> NormalForm {
        self.add(&o.scale(&Coeff::from_int(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> NormalForm {
        let mut out = NormalForm::zero();
        for (w, v) in &self.terms {
            out.insert(w.clone(), v.mul(c));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Project on an exterior grade (dθ-degree, db-degree).
    pub fn ext_component(&self, dth: bool, db: bool) -> NormalForm {
        let mut out = NormalForm::zero();
        for (w, c) in &self.terms {
            if w.ext_grade() == (dth, db) {
                out.insert(w.clone(), c.clone());
            }
        }
        out
    }

    /// Largest |coefficient| evaluated at (b, θ) — used to report residuals.
    pub fn max_eval(&self, b: f64, theta: f64) -> f64 {
        self.terms
            .values()
            .map(|c| c.eval(b, theta).norm())
            .fold(0.0, f64::max)
    }
}

/// Exact matrix (Gaussian-rational entries) for the End(E) arena.
#[derive(Clone, Debug, PartialEq)]
pub struct EMatrix {
    pub dim: usize,
    pub entries: Vec<GaussRat>,
}

impl EMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![GaussRat::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = GaussRat::one();
        }
        EMatrix { dim, entries }
    }

    fn mul(&self, o: &EMatrix) -> EMatrix {
        let d = self.dim;
        let mut entries = vec![GaussRat::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = GaussRat::zero();
                for k in 0..d {
                    s = s.add(&self.entries[i * d + k].mul(&o.entries[k * d + j]));
                }
                entries[i * d + j] = s;
            }
        }
        EMatrix { dim: d, entries }
    }
}

/// The rewriting engine for a fixed spec (diagonal `B` required).
pub struct Engine {
    pub spec: LieAlgebraSpec,
    pub e_arena: std::cell::RefCell<Vec<EMatrix>>,
}

impl Engine {
    pub fn new(spec: &LieAlgebraSpec) -> Self {
        let d = spec.dim;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    assert!(
                        spec.b_rat(i, j).is_zero(),
                        "normal-ordering engine requires diagonal B"
                    );
                }
            }
        }
        Engine {
            spec: spec.clone(),
            e_arena: std::cell::RefCell::new(vec![EMatrix::identity(1)]),
        }
    }

    pub fn intern_e(&self, m: EMatrix) -> u16 {
        let mut arena = self.e_arena.borrow_mut();
        for (i, e) in arena.iter().enumerate() {
            if *e == m {
                return i as u16;
            }
        }
        arena.push(m);
        (arena.len() - 1) as u16
    }

    /// Normalize a raw expression (sum of coefficient × letter sequence).
    pub fn normalize(&self, expr: Vec<(Coeff, Vec<Letter>)>) -> NormalForm {
        let mut out = NormalForm::zero();
        let mut work: Vec<(Coeff, Vec<Letter>)> = expr;
        while let Some((coeff, seq)) = work.pop() {
            if coeff.is_zero() {
                continue;
            }
            match self.first_reduction(&seq) {
                None => out.insert(TensorWord { letters: seq }, coeff),
                Some(pos) => {
                    self.apply_rule(&coeff, &seq, pos, &mut work);
                }
            }
        }
        out
    }

    /// Position of the first adjacent pair needing a rewrite, if any.
    fn first_reduction(&self, seq: &[Letter]) -> Option<usize> {
        for p in 0..seq.len().saturating_sub(1) {
            let (a, b) = (seq[p], seq[p + 1]);
            if self.needs_rule(a, b) {
                return Some(p);
            }
        }
        None
    }

    fn needs_rule(&self, a: Letter, b: Letter) -> bool {
        use Letter::*;
        if a.rank() > b.rank() {
            return true;
        }
        if a.rank() < b.rank() {
            return false;
        }
        match (a, b) {
            (Dth, Dth) | (Db, Db) => true,
            (C(i), C(j)) | (Ch(i), Ch(j)) | (Cb(i), Cb(j)) => i >= j,
            (U(i), U(j)) | (Y(i), Y(j)) | (Dy(i), Dy(j)) => i > j,
            (E(_), E(_)) => true,
            _ => false,
        }
    }

    fn apply_rule(
        &self,
        coeff: &Coeff,
        seq: &[Letter],
        p: usize,
        work: &mut Vec<(Coeff, Vec<Letter>)>,
    ) {
        use Letter::*;
        let a = seq[p];
        let b = seq[p + 1];
        let mut swapped = seq.to_vec();
        swapped.swap(p, p + 1);
        let mut dropped: Vec<Letter> = seq[..p].to_vec();
        dropped.extend_from_slice(&seq[p + 2..]);

        if a.rank() != b.rank() {
            // cross-family: pure (anti)commutation except Weyl ∂Y vs Y
            if let (Dy(i), Y(j)) = (a, b) {
                work.push((coeff.clone(), swapped));
                if i == j {
                    work.push((coeff.clone(), dropped));
                }
                return;
            }
            let sign = if a.is_odd() && b.is_odd() { -1 } else { 1 };
            work.push((coeff.scale_int(sign), swapped));
            return;
        }
        match (a, b) {
            (Dth, Dth) | (Db, Db) => { /* dθ∧dθ = 0 */ }
            (C(i), C(j)) => {
                if i == j {
                    // c_i^2 = -B_ii
                    work.push((coeff.scale_rat(&(-self.spec.b_rat(i as usize, i as usize).clone())), dropped));
                } else {
                    work.push((coeff.scale_int(-1), swapped));
                }
            }
            (Ch(i), Ch(j)) => {
                if i == j {
                    work.push((coeff.scale_rat(self.spec.b_rat(i as usize, i as usize)), dropped));
                } else {
                    work.push((coeff.scale_int(-1), swapped));
                }
            }
            (Cb(i), Cb(j)) => {
                if i == j {
                    work.push((coeff.clone(), dropped));
                } else {
                    work.push((coeff.scale_int(-1), swapped));
                }
            }
            (U(i), U(j)) => {
                // e_i e_j = e_j e_i + Σ_k c_{ij}^k e_k
                work.push((coeff.clone(), swapped));
                for k in 0..self.spec.dim {
                    let c = self.spec.c_rat(i as usize, j as usize, k);
                    if !c.is_zero() {
                        let mut bracket: Vec<Letter> = seq[..p].to_vec();
                        bracket.push(U(k as u8));
                        bracket.extend_from_slice(&seq[p + 2..]);
                        work.push((coeff.scale_rat(c), bracket));
                    }
                }
            }
            (Y(_), Y(_)) | (Dy(_), Dy(_)) => {
                work.push((coeff.clone(), swapped));
            }
            (E(i), E(j)) => {
                let prod = {
                    let arena = self.e_arena.borrow();
                    arena[i as usize].mul(&arena[j as usize])
                };
                let idx = self.intern_e(prod);
                let mut merged: Vec<Letter> = seq[..p].to_vec();
                if idx != 0 {
                    merged.push(E(idx));
                }
                merged.extend_from_slice(&seq[p + 2..]);
                work.push((coeff.clone(), merged));
            }
            _ => unreachable!(),
        }
    }

    pub fn multiply(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let mut expr = Vec::new();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let mut seq = wa.letters.clone();
                seq.extend_from_slice(&wb.letters);
                expr.push((ca.mul(cb), seq));
            }
        }
        self.normalize(expr)
    }

    /// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba`; requires pure
    /// parities.
    pub fn supercommutator(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let pa = pure_parity(a).expect("mixed parity in supercommutator");
        let pb = pure_parity(b).expect("mixed parity in supercommutator");
        let sign = if pa == 1 && pb == 1 { 1 } else { -1 };
        self.multiply(a, b).add(&self.multiply(b, a).scale(&Coeff::from_int(sign)))
    }

    /// Single-letter normal form.
    pub fn letter(&self, l: Letter) -> NormalForm {
        self.normalize(vec![(Coeff::one(), vec![l])])
    }

    pub fn word(&self, c: Coeff, ls: Vec<Letter>) -> NormalForm {
        self.normalize(vec![(c, ls)])
    }

    /// The flat superconnection bracket
    /// `[∇, T] = dθ ∂_θ T + db ∂_b T + [A, T]` with
    /// `A = -dθ ĉ(J) - db ((1/b) Σ Y_i ∂_i + (m+n)/(2b))`.
    pub fn nabla_bracket(&self, t: &NormalForm) -> NormalForm {
        let d = self.spec.dim;
        let m = self.spec.m();
        // coefficient derivatives
        let mut out = NormalForm::zero();
        for (w, c) in &t.terms {
            let dth = c.d_theta();
            if !dth.is_zero() {
                let mut seq = vec![Letter::Dth];
                seq.extend_from_slice(&w.letters);
                for (nw, nc) in self.normalize(vec![(dth, seq)]).terms {
                    out.insert(nw, nc);
                }
            }
            let dbv = c.d_b();
            if !dbv.is_zero() {
                let mut seq = vec![Letter::Db];
                seq.extend_from_slice(&w.letters);
                for (nw, nc) in self.normalize(vec![(dbv, seq)]).terms {
                    out.insert(nw, nc);
                }
            }
        }
        // connection term A
        let mut a = NormalForm::zero();
        // -dθ ĉ(J), ĉ(J) = -(1/2) Σ_a ĉ(e_a) ĉ(ē_a)
        for aa in 0..m {
            a = a.add(&self.word(
                Coeff::from_rat(crate::lie::rat(1, 2)),
                vec![Letter::Dth, Letter::Ch(aa as u8), Letter::Cb(aa as u8)],
            ));
        }
        // -db ((1/b) Σ Y_i ∂_i + (m+n)/(2b))
        for i in 0..d {
            a = a.add(&self.word(
                Coeff::b_pow(-1).neg(),
                vec![Letter::Db, Letter::Y(i as u8), Letter::Dy(i as u8)],
            ));
        }
        a = a.add(&self.word(
            Coeff::b_pow(-1).scale_rat(&crate::lie::rat(-(d as i64), 2)),
            vec![Letter::Db],
        ));
        let pt = pure_parity(t).expect("mixed parity in nabla_bracket");
        let sign = if pt == 1 { 1 } else { -1 };
        out.add(&self.multiply(&a, t))
            .add(&self.multiply(t, &a).scale(&Coeff::from_int(sign)))
    }
}

pub fn pure_parity(nf: &NormalForm) -> Option<usize> {
    let mut it = nf.terms.keys();
    let first = match it.next() {
        Some(w) => w.parity(),
        None => return Some(0),
    };
    for w in it {
        if w.parity() != first {
            return None;
        }
    }
    Some(first)
}

#[cfg(test)]
mod tests;
