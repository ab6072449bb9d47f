//! Matrix realizations of the Clifford algebras `c(g)`, `ĉ(g)` on
//! `Λ·(g*)`, the spin representation of `c(p̄)`, the rotations `R̂_θ`, and
//! the graded traces.
//!
//! All vectors are expressed in the `⟨,⟩`-orthonormal adapted basis of a
//! [`CartanSplit`]: the first `m` directions span `p` (`B = +1`), the rest
//! span `k` (`B = -1`). The total fibre is `Λ·(g*) ⊗ S^p̄ ⊗ E` with basis
//! index `((λ, s), e)`, `λ` a subset bitmask.

use crate::lie::{CartanSplit, LieAlgebraSpec};
use crate::linalg::{self, ceye, czeros, expm, kron, CMat};
use crate::{HypolapError, Result};
use ndarray::Array2;
use num_complex::Complex64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn combine_mul(self, other: Parity) -> Parity {
        use Parity::*;
        match (self, other) {
            (Even, Even) | (Odd, Odd) => Even,
            (Even, Odd) | (Odd, Even) => Odd,
            _ => Mixed,
        }
    }

    pub fn combine_add(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::Mixed
        }
    }
}

/// Parity-graded dense complex matrix on the fibre.
#[derive(Clone)]
pub struct GradedMatrix {
    pub mat: CMat,
    pub parity: Parity,
}

impl GradedMatrix {
    pub fn new(mat: CMat, parity: Parity) -> Self {
        GradedMatrix { mat, parity }
    }

    pub fn even(mat: CMat) -> Self {
        Self::new(mat, Parity::Even)
    }

    pub fn odd(mat: CMat) -> Self {
        Self::new(mat, Parity::Odd)
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(czeros(dim), Parity::Even)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mul(&self, other: &GradedMatrix) -> GradedMatrix {
        GradedMatrix::new(self.mat.dot(&other.mat), self.parity.combine_mul(other.parity))
    }

    pub fn add(&self, other: &GradedMatrix) -> GradedMatrix {
        GradedMatrix::new(&self.mat + &other.mat, self.parity.combine_add(other.parity))
    }

    pub fn sub(&self, other: &GradedMatrix) -> GradedMatrix {
        GradedMatrix::new(&self.mat - &other.mat, self.parity.combine_add(other.parity))
    }

    pub fn scale(&self, c: Complex64) -> GradedMatrix {
        GradedMatrix::new(self.mat.mapv(|z| z * c), self.parity)
    }

    /// Supercommutator `[a, b] = ab - (-1)^{|a||b|} ba`.
    pub fn supercommutator(&self, other: &GradedMatrix) -> GradedMatrix {
        let sign = match (self.parity, other.parity) {
            (Parity::Odd, Parity::Odd) => 1.0,
            (Parity::Mixed, _) | (_, Parity::Mixed) => f64::NAN,
            _ => -1.0,
        };
        let m = self.mat.dot(&other.mat) + other.mat.dot(&self.mat).mapv(|z| z * sign);
        GradedMatrix::new(m, self.parity.combine_mul(other.parity))
    }
}

/// Wedge/contraction operators on `Λ·(R^d)` with subset-bitmask basis;
/// `signs[i] = B(e_i, e_i) = ±1`.
pub struct LambdaAlgebra {
    pub d: usize,
    pub dim: usize,
    pub signs: Vec<f64>,
}

impl LambdaAlgebra {
    pub fn new(signs: Vec<f64>) -> Self {
        let d = signs.len();
        LambdaAlgebra { d, dim: 1 << d, signs }
    }

    fn sign_below(mask: usize, i: usize) -> f64 {
        let below = (mask & ((1 << i) - 1)).count_ones();
        if below % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `φ_i ∧` on the `⟨,⟩`-dual basis 1-forms.
    pub fn wedge(&self, i: usize) -> CMat {
        let mut m = czeros(self.dim);
        for s in 0..self.dim {
            if s & (1 << i) == 0 {
                let t = s | (1 << i);
                m[[t, s]] = Complex64::new(Self::sign_below(s, i), 0.0);
            }
        }
        m
    }

    /// Contraction `i_{e_i}`.
    pub fn contract(&self, i: usize) -> CMat {
        let mut m = czeros(self.dim);
        for s in 0..self.dim {
            if s & (1 << i) != 0 {
                let t = s & !(1 << i);
                m[[t, s]] = Complex64::new(Self::sign_below(t, i), 0.0);
            }
        }
        m
    }

    /// `c(e_i) = φe_i ∧ - i_{e_i} = ε_i φ_i ∧ - i_{e_i}`.
    pub fn c_gen(&self, i: usize) -> CMat {
        self.wedge(i).mapv(|z| z * self.signs[i]) - self.contract(i)
    }

    /// `ĉ(e_i) = φe_i ∧ + i_{e_i}`.
    pub fn chat_gen(&self, i: usize) -> CMat {
        self.wedge(i).mapv(|z| z * self.signs[i]) + self.contract(i)
    }

    /// Number operator.
    pub fn number_op(&self) -> CMat {
        let mut m = czeros(self.dim);
        for s in 0..self.dim {
            m[[s, s]] = Complex64::new(s.count_ones() as f64, 0.0);
        }
        m
    }

    /// Number operator counting only the indices in `set`.
    pub fn number_op_subset(&self, set: &[usize]) -> CMat {
        let mut m = czeros(self.dim);
        for s in 0..self.dim {
            let cnt = set.iter().filter(|&&i| s & (1 << i) != 0).count();
            m[[s, s]] = Complex64::new(cnt as f64, 0.0);
        }
        m
    }

    /// Parity operator `(-1)^{N^Λ}`.
    pub fn parity_op(&self) -> CMat {
        let mut m = czeros(self.dim);
        for s in 0..self.dim {
            let sign = if s.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[[s, s]] = Complex64::new(sign, 0.0);
        }
        m
    }
}

/// Hermitian gamma matrices `ĉ(ē_a)` with `ĉĉ + ĉĉ = 2δ`, for `a = 1..m`.
///
/// For odd `m`, the branch of `c(p̄) ⊗ C ≅ End(S) ⊕ End(S)` is pinned by the
/// volume convention `ĉ(ē_1)···ĉ(ē_m) = Id` for `m ≡ 1 (mod 4)` and
/// `= i·Id` for `m ≡ 3 (mod 4)` (the residues where the volume squares to
/// `+1` resp. `-1`).
pub fn spin_generators(m: usize) -> Vec<CMat> {
    if m == 0 {
        return Vec::new();
    }
    let pauli1 = {
        let mut p = czeros(2);
        p[[0, 1]] = Complex64::new(1.0, 0.0);
        p[[1, 0]] = Complex64::new(1.0, 0.0);
        p
    };
    let pauli2 = {
        let mut p = czeros(2);
        p[[0, 1]] = Complex64::new(0.0, -1.0);
        p[[1, 0]] = Complex64::new(0.0, 1.0);
        p
    };
    let pauli3 = {
        let mut p = czeros(2);
        p[[0, 0]] = Complex64::new(1.0, 0.0);
        p[[1, 1]] = Complex64::new(-1.0, 0.0);
        p
    };
    let even_m = m & !1;
    let mut gens: Vec<CMat> = Vec::new();
    let mut dim = 1;
    for _step in 0..(even_m / 2) {
        let mut new_gens = Vec::new();
        for g in &gens {
            new_gens.push(kron(g, &pauli3));
        }
        new_gens.push(kron(&ceye(dim), &pauli1));
        new_gens.push(kron(&ceye(dim), &pauli2));
        gens = new_gens;
        dim *= 2;
    }
    if m % 2 == 1 {
        if m == 1 {
            gens.push(ceye(1));
        } else {
            let mut prod = ceye(dim);
            for g in &gens {
                prod = prod.dot(g);
            }
            // make it Hermitian with square 1
            let sq = prod.dot(&prod);
            let z = if (sq[[0, 0]].re - 1.0).abs() < 1e-9 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 1.0)
            };
            gens.push(prod.mapv(|v| v * z));
        }
        // pin the volume convention
        let sdim = gens[0].nrows();
        let mut vol = ceye(sdim);
        for g in &gens {
            vol = vol.dot(g);
        }
        let target = if m % 4 == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        if (vol[[0, 0]] - target).norm() > 1e-9 {
            let idx = gens.len() - 1;
            let flipped = gens[idx].mapv(|z| -z);
            gens[idx] = flipped;
        }
    }
    gens
}

/// Representation data for the auxiliary space `E` (a `K`-representation).
#[derive(Clone)]
pub struct ERep {
    pub dim: usize,
    /// `ρ^E(f_a)` for the orthonormal `k`-basis vectors `f_1..f_n`.
    pub rho: Vec<CMat>,
    pub label: String,
}

impl ERep {
    pub fn trivial(n: usize) -> Self {
        ERep {
            dim: 1,
            rho: vec![czeros(1); n],
            label: "trivial".into(),
        }
    }
}

/// The total fibre `Λ·(g*) ⊗ S^p̄ ⊗ E` and its operator constructors.
pub struct FibreSpace {
    pub spec: LieAlgebraSpec,
    pub split: CartanSplit,
    pub m: usize,
    pub n: usize,
    pub lambda: LambdaAlgebra,
    pub spin_dim: usize,
    pub spin_gens: Vec<CMat>,
    pub e_rep: ERep,
}

impl FibreSpace {
    pub fn new(spec: &LieAlgebraSpec, split: &CartanSplit, e_rep: ERep) -> Self {
        let m = split.m;
        let n = split.n;
        let mut signs = vec![1.0; m];
        signs.extend(vec![-1.0; n]);
        let lambda = LambdaAlgebra::new(signs);
        let spin_gens = spin_generators(m);
        let spin_dim = if m == 0 { 1 } else { spin_gens[0].nrows() };
        assert_eq!(e_rep.rho.len(), n);
        FibreSpace {
            spec: spec.clone(),
            split: split.clone(),
            m,
            n,
            lambda,
            spin_dim,
            spin_gens,
            e_rep,
        }
    }

    pub fn total_dim(&self) -> usize {
        self.lambda.dim * self.spin_dim * self.e_rep.dim
    }

    pub fn ext_lambda(&self, op: &CMat) -> CMat {
        kron(op, &ceye(self.spin_dim * self.e_rep.dim))
    }

    /// Extend a spin operator with abstract parity `spin_parity`; odd spin
    /// operators pick up the Koszul twist `(-1)^{N^Λ}` on the Λ factor.
    pub fn ext_spin(&self, op: &CMat, spin_parity: Parity) -> CMat {
        let lam = match spin_parity {
            Parity::Odd => self.lambda.parity_op(),
            _ => ceye(self.lambda.dim),
        };
        kron(&lam, &kron(op, &ceye(self.e_rep.dim)))
    }

    pub fn ext_e(&self, op: &CMat) -> CMat {
        kron(&ceye(self.lambda.dim * self.spin_dim), op)
    }

    /// `c(a)` or `ĉ(a)` for `a` in orthonormal-basis coordinates.
    pub fn clifford_action(&self, a: &[f64], hat: bool) -> Result<GradedMatrix> {
        let d = self.m + self.n;
        if a.len() != d {
            return Err(HypolapError::DimensionMismatch { expected: d, got: a.len() });
        }
        let mut op = czeros(self.lambda.dim);
        for i in 0..d {
            if a[i] != 0.0 {
                let gen = if hat { self.lambda.chat_gen(i) } else { self.lambda.c_gen(i) };
                op = op + &gen.mapv(|z| z * a[i]);
            }
        }
        Ok(GradedMatrix::odd(self.ext_lambda(&op)))
    }

    pub fn c(&self, a: &[f64]) -> GradedMatrix {
        self.clifford_action(a, false).unwrap()
    }

    pub fn chat(&self, a: &[f64]) -> GradedMatrix {
        self.clifford_action(a, true).unwrap()
    }

    /// `ĉ(ū)` for `u ∈ p` (length-m coordinates) through the spin
    /// representation, with the Koszul twist on Λ.
    pub fn chat_bar(&self, u: &[f64]) -> GradedMatrix {
        GradedMatrix::odd(self.ext_spin(&self.chat_bar_on_spin(u), Parity::Odd))
    }

    /// Spin-space matrix of `ĉ(ū)` without the Λ extension.
    pub fn chat_bar_on_spin(&self, u: &[f64]) -> CMat {
        assert_eq!(u.len(), self.m);
        let mut op = czeros(self.spin_dim);
        for a in 0..self.m {
            if u[a] != 0.0 {
                op = op + &self.spin_gens[a].mapv(|z| z * u[a]);
            }
        }
        op
    }

    fn check_b_antisym(&self, a_mat: &Array2<f64>) -> Result<()> {
        let d = self.m + self.n;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                // B(A e_i, e_j) + B(e_i, A e_j) = ε_j A_{ji} + ε_i A_{ij}
                let r = self.split.sign(j) * a_mat[[j, i]] + self.split.sign(i) * a_mat[[i, j]];
                worst = worst.max(r.abs());
            }
        }
        if worst > 1e-10 {
            return Err(HypolapError::NotAntisymmetric { residual: worst });
        }
        Ok(())
    }

    /// `c(A) = (1/4) Σ B(A e*_i, e*_j) c(e_i) c(e_j)` (or the `ĉ` version
    /// with the opposite sign) for a `B`-antisymmetric endomorphism given as
    /// a matrix on the orthonormal basis.
    pub fn clifford_of_endo(&self, a_mat: &Array2<f64>, hat: bool) -> Result<GradedMatrix> {
        self.check_b_antisym(a_mat)?;
        let d = self.m + self.n;
        let mut op = czeros(self.lambda.dim);
        for i in 0..d {
            for j in 0..d {
                // B(A e*_i, e*_j) = ε_i ε_j · ε_j A_{ji} = ε_i A_{ji}
                let coeff = self.split.sign(i) * a_mat[[j, i]];
                if coeff == 0.0 {
                    continue;
                }
                let gi = if hat { self.lambda.chat_gen(i) } else { self.lambda.c_gen(i) };
                let gj = if hat { self.lambda.chat_gen(j) } else { self.lambda.c_gen(j) };
                let w = if hat { -0.25 } else { 0.25 };
                op = op + &gi.dot(&gj).mapv(|z| z * (w * coeff));
            }
        }
        Ok(GradedMatrix::even(self.ext_lambda(&op)))
    }

    /// `ĉ(A|_p̄)` on the spin factor, for `A` antisymmetric on `p`
    /// (m×m, positive scalar product): `-(1/4) Σ <A e_a, e_b> ĉ_a ĉ_b`.
    pub fn chat_bar_endo(&self, a_mat: &Array2<f64>) -> GradedMatrix {
        GradedMatrix::even(self.ext_spin(&self.chat_bar_endo_on_spin(a_mat), Parity::Even))
    }

    pub fn chat_bar_endo_on_spin(&self, a_mat: &Array2<f64>) -> CMat {
        let mut op = czeros(self.spin_dim);
        for a in 0..self.m {
            for b in 0..self.m {
                let coeff = -0.25 * a_mat[[b, a]];
                if coeff == 0.0 {
                    continue;
                }
                op = op + &self.spin_gens[a].dot(&self.spin_gens[b]).mapv(|z| z * coeff);
            }
        }
        op
    }

    /// Spin representation of `f ∈ k`: `σ(f) = ĉ(ad(f)|_p̄)` on the spin
    /// factor.
    pub fn sigma_spin_on_spin(&self, f_k: &[f64]) -> CMat {
        assert_eq!(f_k.len(), self.n);
        let d = self.m + self.n;
        let mut f = vec![0.0; d];
        for (a, &v) in f_k.iter().enumerate() {
            f[self.m + a] = v;
        }
        let ad = self.ad_on(&f);
        let adp = Array2::from_shape_fn((self.m, self.m), |(i, j)| ad[[i, j]]);
        self.chat_bar_endo_on_spin(&adp)
    }

    /// ρ^E(f) for `f ∈ k` (length-n coordinates), on the E factor alone.
    pub fn rho_on_e(&self, f_k: &[f64]) -> CMat {
        let mut op = czeros(self.e_rep.dim);
        for (a, &v) in f_k.iter().enumerate() {
            if v != 0.0 {
                op = op + &self.e_rep.rho[a].mapv(|z| z * v);
            }
        }
        op
    }

    pub fn rho(&self, f_k: &[f64]) -> GradedMatrix {
        GradedMatrix::even(self.ext_e(&self.rho_on_e(f_k)))
    }

    /// Convert orthonormal-basis coordinates to spec-basis coordinates.
    pub fn to_spec_coords(&self, v: &[f64]) -> Vec<f64> {
        let d = self.m + self.n;
        let mut out = vec![0.0; self.spec.dim];
        for j in 0..d {
            if v[j] != 0.0 {
                let col = self.split.basis_vector(j);
                for i in 0..self.spec.dim {
                    out[i] += v[j] * col[i];
                }
            }
        }
        out
    }

    /// `ad(x)` on the orthonormal basis, `x` in orthonormal coordinates.
    pub fn ad_on(&self, x: &[f64]) -> Array2<f64> {
        let xs = self.to_spec_coords(x);
        crate::lie::adjoint_map_on(&self.split, &self.spec, &xs)
    }

    pub fn n_lambda(&self) -> GradedMatrix {
        GradedMatrix::even(self.ext_lambda(&self.lambda.number_op()))
    }

    pub fn n_lambda_p(&self) -> GradedMatrix {
        let set: Vec<usize> = (0..self.m).collect();
        GradedMatrix::even(self.ext_lambda(&self.lambda.number_op_subset(&set)))
    }

    pub fn n_lambda_k(&self) -> GradedMatrix {
        let set: Vec<usize> = (self.m..self.m + self.n).collect();
        GradedMatrix::even(self.ext_lambda(&self.lambda.number_op_subset(&set)))
    }

    /// `ĉ(J) = -(1/2) Σ_a ĉ(e_a) ĉ(ē_a)`.
    pub fn chat_j(&self) -> GradedMatrix {
        let dim = self.total_dim();
        let mut op = czeros(dim);
        for a in 0..self.m {
            let mut ea = vec![0.0; self.m + self.n];
            ea[a] = 1.0;
            let mut eba = vec![0.0; self.m];
            eba[a] = 1.0;
            let t = self.chat(&ea).mul(&self.chat_bar(&eba));
            op = op + &t.mat.mapv(|z| z * (-0.5));
        }
        GradedMatrix::even(op)
    }

    /// `R̂_θ = exp(θ ĉ(J))`.
    pub fn r_hat(&self, theta: f64) -> GradedMatrix {
        GradedMatrix::even(self.ext_ls(&self.r_hat_ls(theta)))
    }

    // ------------------------------------------------------------------
    // Λ ⊗ S — level constructors (no E factor); extend with [`ext_ls`].
    // ------------------------------------------------------------------

    pub fn ls_dim(&self) -> usize {
        self.lambda.dim * self.spin_dim
    }

    /// Extend an operator on `Λ ⊗ S` by the identity on `E`.
    pub fn ext_ls(&self, op: &CMat) -> CMat {
        if self.e_rep.dim == 1 {
            op.clone()
        } else {
            kron(op, &ceye(self.e_rep.dim))
        }
    }

    pub fn c_ls(&self, a: &[f64]) -> CMat {
        let d = self.m + self.n;
        let mut op = czeros(self.lambda.dim);
        for i in 0..d {
            if a[i] != 0.0 {
                op = op + &self.lambda.c_gen(i).mapv(|z| z * a[i]);
            }
        }
        kron(&op, &ceye(self.spin_dim))
    }

    pub fn chat_ls(&self, a: &[f64]) -> CMat {
        let d = self.m + self.n;
        let mut op = czeros(self.lambda.dim);
        for i in 0..d {
            if a[i] != 0.0 {
                op = op + &self.lambda.chat_gen(i).mapv(|z| z * a[i]);
            }
        }
        kron(&op, &ceye(self.spin_dim))
    }

    pub fn chat_bar_ls(&self, u: &[f64]) -> CMat {
        kron(&self.lambda.parity_op(), &self.chat_bar_on_spin(u))
    }

    pub fn clifford_of_endo_ls(&self, a_mat: &Array2<f64>, hat: bool) -> Result<CMat> {
        self.check_b_antisym(a_mat)?;
        let d = self.m + self.n;
        let mut op = czeros(self.lambda.dim);
        for i in 0..d {
            for j in 0..d {
                let coeff = self.split.sign(i) * a_mat[[j, i]];
                if coeff == 0.0 {
                    continue;
                }
                let gi = if hat { self.lambda.chat_gen(i) } else { self.lambda.c_gen(i) };
                let gj = if hat { self.lambda.chat_gen(j) } else { self.lambda.c_gen(j) };
                let w = if hat { -0.25 } else { 0.25 };
                op = op + &gi.dot(&gj).mapv(|z| z * (w * coeff));
            }
        }
        Ok(kron(&op, &ceye(self.spin_dim)))
    }

    pub fn chat_bar_endo_ls(&self, a_mat: &Array2<f64>) -> CMat {
        kron(&ceye(self.lambda.dim), &self.chat_bar_endo_on_spin(a_mat))
    }

    pub fn chat_j_ls(&self) -> CMat {
        let dim = self.ls_dim();
        let mut op = czeros(dim);
        for a in 0..self.m {
            let mut ea = vec![0.0; self.m + self.n];
            ea[a] = 1.0;
            let mut eba = vec![0.0; self.m];
            eba[a] = 1.0;
            let t = self.chat_ls(&ea).dot(&self.chat_bar_ls(&eba));
            op = op + &t.mapv(|z| z * (-0.5));
        }
        op
    }

    pub fn r_hat_ls(&self, theta: f64) -> CMat {
        expm(&self.chat_j_ls().mapv(|z| z * theta))
    }

    pub fn identity(&self) -> GradedMatrix {
        GradedMatrix::even(ceye(self.total_dim()))
    }

    /// Graded traces: `Tr_s` weights by `(-1)^{N^Λ}`; `Tr^odd` vanishes on
    /// even elements and is the plain trace on odd ones.
    pub fn graded_trace(&self, mat: &GradedMatrix, kind: TraceKind) -> Result<Complex64> {
        match kind {
            TraceKind::Plain => Ok(trace(&mat.mat)),
            TraceKind::Super => {
                let p = self.ext_lambda(&self.lambda.parity_op());
                Ok(trace(&p.dot(&mat.mat)))
            }
            TraceKind::Odd => match mat.parity {
                Parity::Even => Ok(Complex64::new(0.0, 0.0)),
                Parity::Odd => Ok(trace(&mat.mat)),
                Parity::Mixed => Err(HypolapError::MixedParityForOddTrace),
            },
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum TraceKind {
    Plain,
    Super,
    Odd,
}

pub fn trace(m: &CMat) -> Complex64 {
    (0..m.nrows()).map(|i| m[[i, i]]).sum()
}

/// Residuals of the number-operator identities at a given angle.
pub struct NumberOpReport {
    pub ors0_residual: f64,
    pub co16x3_residual: f64,
    pub comp1z1_residual: f64,
}

/// Verifies `N^Λ = (1/2) Σ c(e*_i) ĉ(e_i) + (m+n)/2` together with the
/// rotated number-operator formulas.
pub fn number_operator_identities(fs: &FibreSpace, theta: f64) -> NumberOpReport {
    let d = fs.m + fs.n;
    let dim = fs.total_dim();
    let mut acc = czeros(dim);
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        let mut estar = vec![0.0; d];
        estar[i] = fs.split.sign(i);
        let t = fs.c(&estar).mul(&fs.chat(&e));
        acc = acc + &t.mat.mapv(|z| z * 0.5);
    }
    let half = Complex64::new(d as f64 / 2.0, 0.0);
    let nl = fs.n_lambda();
    let ors0 = linalg::max_abs(&(&acc + &ceye(dim).mapv(|z| z * half) - &nl.mat));

    // co16x3: R̂_θ N^{Λ(p*)} R̂_θ^{-1} = cos θ N^{Λ(p*)}
    //   + (1/2) sin θ Σ c(e_a) ĉ(ē_a) + (m/2)(1 - cos θ)
    let r = fs.r_hat(theta);
    let rinv = fs.r_hat(-theta);
    let np = fs.n_lambda_p();
    let lhs = r.mat.dot(&np.mat).dot(&rinv.mat);
    let mut cross = czeros(dim);
    for a in 0..fs.m {
        let mut ea = vec![0.0; d];
        ea[a] = 1.0;
        let mut eba = vec![0.0; fs.m];
        eba[a] = 1.0;
        cross = cross + &fs.c(&ea).mul(&fs.chat_bar(&eba)).mat;
    }
    let rhs = np.mat.mapv(|z| z * theta.cos())
        + cross.mapv(|z| z * (0.5 * theta.sin()))
        + ceye(dim).mapv(|z| z * Complex64::new(fs.m as f64 / 2.0 * (1.0 - theta.cos()), 0.0));
    let co16x3 = linalg::max_abs(&(&lhs - &rhs));

    // comp1z1: N^{Λ(T*X⊕N*)}'_{-θ} = cos θ N^{Λ(T*X⊕N*)}
    //   - (1/2) sin θ Σ c(e_a) ĉ(ē_a) + (m/2)(1 - cos θ)
    let lhs2 = rinv.mat.dot(&np.mat).dot(&r.mat) + fs.n_lambda_k().mat.mapv(|z| z * theta.cos());
    let ntot = np.mat.clone() + fs.n_lambda_k().mat.clone();
    let rhs2 = ntot.mapv(|z| z * theta.cos())
        + cross.mapv(|z| z * (-0.5 * theta.sin()))
        + ceye(dim).mapv(|z| z * Complex64::new(fs.m as f64 / 2.0 * (1.0 - theta.cos()), 0.0));
    let comp1z1 = linalg::max_abs(&(&lhs2 - &rhs2));

    NumberOpReport {
        ors0_residual: ors0,
        co16x3_residual: co16x3,
        comp1z1_residual: comp1z1,
    }
}

/// Structural identities of the spin representation.
pub struct SpinRepReport {
    pub clifford_residual: f64,
    pub equivariance_residual: f64,
    pub casimir_residual: f64,
    pub casimir_value: f64,
}

/// Builds `σ: k → End(S^p̄)` data and checks the Clifford relations, the
/// equivariance `[σ(f), ĉ(ū)] = ĉ(ad(f)u)`, and the Casimir identity
/// `C^{k,S^p̄} = (1/8) Tr^p[C^{k,p}]`.
pub fn spin_rep_build(fs: &FibreSpace) -> SpinRepReport {
    let m = fs.m;
    let n = fs.n;
    let mut cliff: f64 = 0.0;
    for a in 0..m {
        for b in 0..m {
            let anti = linalg::anticommutator(&fs.spin_gens[a], &fs.spin_gens[b]);
            let want = if a == b { 2.0 } else { 0.0 };
            cliff = cliff.max(linalg::max_abs(&(anti - ceye(fs.spin_dim).mapv(|z| z * want))));
        }
    }
    let mut equiv: f64 = 0.0;
    for t in 0..n {
        let mut f = vec![0.0; n];
        f[t] = 1.0;
        let sig = fs.sigma_spin_on_spin(&f);
        let mut fx = vec![0.0; m + n];
        fx[m + t] = 1.0;
        let ad = fs.ad_on(&fx);
        for a in 0..m {
            let mut u = vec![0.0; m];
            u[a] = 1.0;
            let lhs = linalg::commutator(&sig, &fs.chat_bar_on_spin(&u));
            let adu: Vec<f64> = (0..m).map(|i| ad[[i, a]]).collect();
            let rhs = fs.chat_bar_on_spin(&adu);
            equiv = equiv.max(linalg::max_abs(&(lhs - rhs)));
        }
    }
    let mut cas = czeros(fs.spin_dim);
    for t in 0..n {
        let mut f = vec![0.0; n];
        f[t] = 1.0;
        let sig = fs.sigma_spin_on_spin(&f);
        cas = cas + &sig.dot(&sig);
    }
    let kd = crate::lie::kappa_data(&fs.spec, &fs.split);
    let want = kd.trp_ckp / 8.0;
    let diff = linalg::max_abs(&(cas.clone() - ceye(fs.spin_dim).mapv(|z| z * want)));
    SpinRepReport {
        clifford_residual: cliff,
        equivariance_residual: equiv,
        casimir_residual: diff,
        casimir_value: cas[[0, 0]].re,
    }
}

/// `R̂_θ` consistency: the product formula and the conjugation rule
/// `ĉ_θ(f) = R̂_θ ĉ(f) R̂_θ^{-1}`.
pub struct RotationReport {
    pub product_formula_residual: f64,
    pub conjugation_residual: f64,
}

pub fn rotation_ops(fs: &FibreSpace, theta: f64) -> RotationReport {
    let dim = fs.total_dim();
    let r = fs.r_hat(theta);
    let mut prod = ceye(dim);
    for a in 0..fs.m {
        let mut ea = vec![0.0; fs.m + fs.n];
        ea[a] = 1.0;
        let mut eba = vec![0.0; fs.m];
        eba[a] = 1.0;
        let t = fs.chat(&ea).mul(&fs.chat_bar(&eba));
        let factor = ceye(dim).mapv(|z| z * Complex64::new((theta / 2.0).cos(), 0.0))
            - t.mat.mapv(|z| z * Complex64::new((theta / 2.0).sin(), 0.0));
        prod = prod.dot(&factor);
    }
    let product_residual = linalg::max_abs(&(&prod - &r.mat));

    let rinv = fs.r_hat(-theta);
    let mut conj_res: f64 = 0.0;
    for a in 0..fs.m {
        let mut ea = vec![0.0; fs.m + fs.n];
        ea[a] = 1.0;
        let mut eba = vec![0.0; fs.m];
        eba[a] = 1.0;
        let lhs = r.mat.dot(&fs.chat(&ea).mat).dot(&rinv.mat);
        let rhs = fs.chat(&ea).mat.mapv(|z| z * theta.cos())
            + fs.chat_bar(&eba).mat.mapv(|z| z * theta.sin());
        conj_res = conj_res.max(linalg::max_abs(&(lhs - rhs)));
    }
    RotationReport {
        product_formula_residual: product_residual,
        conjugation_residual: conj_res,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_algebra, cartan_split};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fs_for(name: &str) -> FibreSpace {
        let spec = build_algebra(name).unwrap();
        let split = cartan_split(&spec).unwrap();
        let n = split.n;
        FibreSpace::new(&spec, &split, ERep::trivial(n))
    }

    #[test]
    fn rank_one_clifford_squares() {
        // g = R^1 with B = 1: c(e)^2 = -1, ĉ(e)^2 = +1 on Λ·(R)
        let lam = LambdaAlgebra::new(vec![1.0]);
        let c = lam.c_gen(0);
        let chat = lam.chat_gen(0);
        assert!(linalg::max_abs(&(c.dot(&c) + ceye(2))) < 1e-15);
        assert!(linalg::max_abs(&(chat.dot(&chat) - ceye(2))) < 1e-15);
    }

    #[test]
    fn clifford_relations_random_vectors() {
        // The relations live on the Λ factor; check them there for every
        // preset (100 pairs), and once more on the extended fibre for
        // sl2c_real to exercise the Koszul extension.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["sl2r", "sl2c_real", "su2", "sl3r"] {
            let fs = fs_for(name);
            let d = fs.m + fs.n;
            let lam = &fs.lambda;
            let c_gens: Vec<CMat> = (0..d).map(|i| lam.c_gen(i)).collect();
            let h_gens: Vec<CMat> = (0..d).map(|i| lam.chat_gen(i)).collect();
            let combine = |gens: &[CMat], v: &[f64]| -> CMat {
                let mut out = czeros(lam.dim);
                for i in 0..d {
                    if v[i] != 0.0 {
                        out = out + &gens[i].mapv(|z| z * v[i]);
                    }
                }
                out
            };
            for _ in 0..100 {
                let a: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let b: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let bab: f64 = (0..d).map(|i| fs.split.sign(i) * a[i] * b[i]).sum();
                let id = ceye(lam.dim);
                let ca = combine(&c_gens, &a);
                let cb = combine(&c_gens, &b);
                let r1 = linalg::max_abs(
                    &(linalg::anticommutator(&ca, &cb) + id.mapv(|z| z * (2.0 * bab))),
                );
                let ha = combine(&h_gens, &a);
                let hb = combine(&h_gens, &b);
                let r2 = linalg::max_abs(
                    &(linalg::anticommutator(&ha, &hb) - id.mapv(|z| z * (2.0 * bab))),
                );
                let r3 = linalg::max_abs(&linalg::anticommutator(&ca, &hb));
                assert!(r1 < 1e-14 && r2 < 1e-14 && r3 < 1e-14, "{name}: {r1} {r2} {r3}");
            }
        }
        // extended fibre once
        let fs = fs_for("sl2c_real");
        let d = 6;
        let a: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let bab: f64 = (0..d).map(|i| fs.split.sign(i) * a[i] * b[i]).sum();
        let id = ceye(fs.total_dim());
        let r1 = linalg::max_abs(
            &(linalg::anticommutator(&fs.c(&a).mat, &fs.c(&b).mat) + id.mapv(|z| z * (2.0 * bab))),
        );
        let r3 = linalg::max_abs(&linalg::anticommutator(&fs.c(&a).mat, &fs.chat(&b).mat));
        assert!(r1 < 1e-14 && r3 < 1e-14);
    }

    #[test]
    fn zero_vector_gives_zero() {
        let fs = fs_for("sl2r");
        let z = fs.c(&[0.0, 0.0, 0.0]);
        assert!(linalg::max_abs(&z.mat) == 0.0);
    }

    #[test]
    fn clifford_of_endo_commutation() {
        // [c(A), c(e)] = c(Ae) for A = ad(x), x ∈ k (preset sl2c_real)
        let fs = fs_for("sl2c_real");
        let d = fs.m + fs.n;
        for t in 0..fs.n {
            let mut x = vec![0.0; d];
            x[fs.m + t] = 1.0;
            let ad = fs.ad_on(&x);
            for hat in [false, true] {
                let ca = fs.clifford_of_endo(&ad, hat).unwrap();
                for j in 0..d {
                    let mut e = vec![0.0; d];
                    e[j] = 1.0;
                    let ce = fs.clifford_action(&e, hat).unwrap();
                    let ade: Vec<f64> = (0..d).map(|i| ad[[i, j]]).collect();
                    let want = fs.clifford_action(&ade, hat).unwrap();
                    let lhs = linalg::commutator(&ca.mat, &ce.mat);
                    assert!(
                        linalg::max_abs(&(lhs - &want.mat)) < 1e-12,
                        "ors2 fails hat={hat} t={t} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn endo_rejects_non_antisymmetric() {
        let fs = fs_for("sl2r");
        let mut a = Array2::<f64>::zeros((3, 3));
        a[[0, 0]] = 1.0;
        assert!(matches!(
            fs.clifford_of_endo(&a, false),
            Err(HypolapError::NotAntisymmetric { .. })
        ));
    }

    #[test]
    fn chat_j_matches_co4_and_rotations() {
        let fs = fs_for("sl2c_real");
        let rep = rotation_ops(&fs, 0.7);
        assert!(rep.product_formula_residual < 1e-12);
        assert!(rep.conjugation_residual < 1e-12);
        let r0 = fs.r_hat(0.0);
        assert!(linalg::max_abs(&(&r0.mat - &ceye(fs.total_dim()))) < 1e-14);
        // θ = π/2 sends ĉ(f) to ĉ(f̄) for f ∈ p
        let th = std::f64::consts::FRAC_PI_2;
        let r = fs.r_hat(th);
        let rinv = fs.r_hat(-th);
        let mut e1 = vec![0.0; 6];
        e1[0] = 1.0;
        let lhs = r.mat.dot(&fs.chat(&e1).mat).dot(&rinv.mat);
        let rhs = fs.chat_bar(&[1.0, 0.0, 0.0]).mat;
        assert!(linalg::max_abs(&(lhs - rhs)) < 1e-12);
        let prod = fs.r_hat(0.31).mat.dot(&fs.r_hat(-0.31).mat);
        assert!(linalg::max_abs(&(prod - ceye(fs.total_dim()))) < 1e-12);
    }

    #[test]
    fn number_operator_identities_check() {
        for name in ["sl2r", "sl2c_real"] {
            let fs = fs_for(name);
            let rep = number_operator_identities(&fs, std::f64::consts::FRAC_PI_3);
            assert!(rep.ors0_residual < 1e-12, "{name}: ors0 {}", rep.ors0_residual);
            assert!(rep.co16x3_residual < 1e-12, "{name}: co16x3 {}", rep.co16x3_residual);
            assert!(rep.comp1z1_residual < 1e-12, "{name}: comp1z1 {}", rep.comp1z1_residual);
            let rep0 = number_operator_identities(&fs, 0.0);
            assert!(rep0.co16x3_residual < 1e-13);
        }
    }

    #[test]
    fn spin_reps_all_presets() {
        // m = 1 -> 1-dim, generator ±1
        let g1 = spin_generators(1);
        assert_eq!(g1[0].nrows(), 1);
        assert!((g1[0][[0, 0]].norm() - 1.0).abs() < 1e-15);
        // m = 3 -> Pauli-type: volume = i
        let g3 = spin_generators(3);
        let vol = g3[0].dot(&g3[1]).dot(&g3[2]);
        assert!((vol[[0, 0]] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        // m = 5 -> dim 4, volume = +1
        let g5 = spin_generators(5);
        assert_eq!(g5[0].nrows(), 4);
        let mut vol5 = ceye(4);
        for g in &g5 {
            vol5 = vol5.dot(g);
        }
        assert!(linalg::max_abs(&(&vol5 - &ceye(4))) < 1e-13);

        for name in ["sl2r", "sl2c_real", "sl3r"] {
            let fs = fs_for(name);
            let rep = spin_rep_build(&fs);
            assert!(rep.clifford_residual < 1e-14, "{name}");
            assert!(rep.equivariance_residual < 1e-12, "{name}");
            assert!(rep.casimir_residual < 1e-10, "{name}: casimir {}", rep.casimir_residual);
        }
    }

    #[test]
    fn graded_traces() {
        let fs = fs_for("sl2c_real");
        let id = fs.identity();
        let ts = fs.graded_trace(&id, TraceKind::Super).unwrap();
        assert!(ts.norm() < 1e-12);
        let w = fs.chat_bar(&[1.0, 0.0, 0.0]).mul(&fs.chat_bar(&[0.0, 1.0, 0.0]));
        assert_eq!(w.parity, Parity::Even);
        let to = fs.graded_trace(&w, TraceKind::Odd).unwrap();
        assert!(to.norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = fs.m + fs.n;
        for i in 0..100 {
            let a: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ca = fs.c(&a);
            let cb = fs.chat(&b);
            let sc = ca.supercommutator(&cb);
            let t = fs.graded_trace(&sc, TraceKind::Super).unwrap();
            assert!(t.norm() < 1e-11);
            let todd = fs.graded_trace(&sc, TraceKind::Odd).unwrap();
            assert!(todd.norm() < 1e-11);
            if i % 5 == 0 {
                let mixed_word = ca.mul(&cb).mul(&fs.chat_bar(&[0.3, -0.2, 0.9]));
                let sc2 = mixed_word.supercommutator(&fs.c(&b));
                let t2 = fs.graded_trace(&sc2, TraceKind::Super).unwrap();
                assert!(t2.norm() < 1e-11);
                let t3 = fs.graded_trace(&sc2, TraceKind::Odd).unwrap();
                assert!(t3.norm() < 1e-11);
            }
        }
    }

    #[test]
    fn koszul_sign_between_factors() {
        // c(e) on Λ and ĉ(ē) on S anticommute in the graded tensor product
        let fs = fs_for("sl2c_real");
        let mut e = vec![0.0; 6];
        e[1] = 1.0;
        let a = fs.c(&e);
        let b = fs.chat_bar(&[0.0, 0.0, 1.0]);
        let anti = linalg::anticommutator(&a.mat, &b.mat);
        assert!(linalg::max_abs(&anti) < 1e-14);
    }
}
