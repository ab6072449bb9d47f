//! Exact coefficient ring for the normal-ordering engine:
//! Gaussian rationals times Laurent monomials in `b` and `s = cos^{1/2}θ`,
//! with two square-root generators reduced on the fly:
//! `y = sin θ` (`y² = 1 - s⁴`) and `q = √2` (`q² = 2`).

use crate::lie::{rat_int, rat_to_f64, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        GaussRat { re: Rat::one(), im: Rat::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn from_int(v: i64) -> Self {
        GaussRat { re: rat_int(v), im: Rat::zero() }
    }

    pub fn from_rat(r: Rat) -> Self {
        GaussRat { re: r, im: Rat::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        }
    }

    pub fn add(&self, o: &GaussRat) -> GaussRat {
        GaussRat { re: self.re.clone() + o.re.clone(), im: self.im.clone() + o.im.clone() }
    }

    pub fn neg(&self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale_rat(&self, r: &Rat) -> GaussRat {
        GaussRat { re: self.re.clone() * r.clone(), im: self.im.clone() * r.clone() }
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

/// Monomial key: powers of `b` and `s`, flags for `y` and `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mono {
    pub b: i16,
    pub s: i16,
    pub y: u8,
    pub q: u8,
}

impl Mono {
    pub const ONE: Mono = Mono { b: 0, s: 0, y: 0, q: 0 };
}

/// Element of the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coeff {
    pub terms: BTreeMap<Mono, GaussRat>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Coeff::from_gauss(GaussRat::one())
    }

    pub fn i() -> Self {
        Coeff::from_gauss(GaussRat::i())
    }

    pub fn from_int(v: i64) -> Self {
        Coeff::from_gauss(GaussRat::from_int(v))
    }

    pub fn from_rat(r: Rat) -> Self {
        Coeff::from_gauss(GaussRat::from_rat(r))
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        let mut t = BTreeMap::new();
        if !g.is_zero() {
            t.insert(Mono::ONE, g);
        }
        Coeff { terms: t }
    }

    pub fn monomial(mono: Mono, g: GaussRat) -> Self {
        let mut c = Coeff::zero();
        c.insert(mono, g);
        c
    }

    /// `b^k`
    pub fn b_pow(k: i16) -> Self {
        Coeff::monomial(Mono { b: k, s: 0, y: 0, q: 0 }, GaussRat::one())
    }

    /// `x^k = s^{2k}` (x = cos θ)
    pub fn x_pow(k: i16) -> Self {
        Coeff::monomial(Mono { b: 0, s: 2 * k, y: 0, q: 0 }, GaussRat::one())
    }

    /// `s^k` (s = cos^{1/2} θ)
    pub fn s_pow(k: i16) -> Self {
        Coeff::monomial(Mono { b: 0, s: k, y: 0, q: 0 }, GaussRat::one())
    }

    /// `y = sin θ`
    pub fn y_gen() -> Self {
        Coeff::monomial(Mono { b: 0, s: 0, y: 1, q: 0 }, GaussRat::one())
    }

    /// `q = √2`
    pub fn sqrt2() -> Self {
        Coeff::monomial(Mono { b: 0, s: 0, y: 0, q: 1 }, GaussRat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, mono: Mono, g: GaussRat) {
        if g.is_zero() {
            return;
        }
        // reduce y^2 -> 1 - s^4 and q^2 -> 2 (flags only reach 2 transiently)
        if mono.y >= 2 {
            let m0 = Mono { y: mono.y - 2, ..mono };
            self.insert(m0, g.clone());
            let m4 = Mono { y: mono.y - 2, s: mono.s + 4, ..mono };
            self.insert(m4, g.neg());
            return;
        }
        if mono.q >= 2 {
            let m0 = Mono { q: mono.q - 2, ..mono };
            self.insert(m0, g.scale_rat(&rat_int(2)));
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(GaussRat::zero);
        *entry = entry.add(&g);
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (m, g) in &o.terms {
            out.insert(*m, g.clone());
        }
        out
    }

    pub fn neg(&self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(m, g)| (*m, g.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (m1, g1) in &self.terms {
            for (m2, g2) in &o.terms {
                let mono = Mono {
                    b: m1.b + m2.b,
                    s: m1.s + m2.s,
                    y: m1.y + m2.y,
                    q: m1.q + m2.q,
                };
                out.insert(mono, g1.mul(g2));
            }
        }
        out
    }

    pub fn scale_int(&self, v: i64) -> Coeff {
        self.mul(&Coeff::from_int(v))
    }

    pub fn scale_rat(&self, r: &Rat) -> Coeff {
        self.mul(&Coeff::from_rat(r.clone()))
    }

    /// ∂/∂θ, using s' = -y/(2s), y' = s².
    pub fn d_theta(&self) -> Coeff {
        let mut out = Coeff::zero();
        for (m, g) in &self.terms {
            // s^k y^e -> -(k/2) s^{k-2} y^{e+1} + e * s^{k+2} y^{e-1}
            if m.s != 0 {
                let mono = Mono { s: m.s - 2, y: m.y + 1, ..*m };
                out.insert(mono, g.scale_rat(&Rat::new((-(m.s as i64)).into(), 2.into())));
            }
            if m.y == 1 {
                let mono = Mono { s: m.s + 2, y: 0, ..*m };
                out.insert(mono, g.clone());
            }
        }
        out
    }

    /// ∂/∂b.
    pub fn d_b(&self) -> Coeff {
        let mut out = Coeff::zero();
        for (m, g) in &self.terms {
            if m.b != 0 {
                let mono = Mono { b: m.b - 1, ..*m };
                out.insert(mono, g.scale_rat(&rat_int(m.b as i64)));
            }
        }
        out
    }

    /// Numeric evaluation at (b, θ).
    pub fn eval(&self, b: f64, theta: f64) -> num_complex::Complex64 {
        let s = theta.cos().max(0.0).sqrt();
        let y = theta.sin();
        let q = 2f64.sqrt();
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (m, g) in &self.terms {
            let scale = b.powi(m.b as i32)
                * s.powi(m.s as i32)
                * y.powi(m.y as i32)
                * q.powi(m.q as i32);
            acc += g.to_c64() * scale;
        }
        acc
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}", crate::lie::format_rat(&g.re))?;
            if !g.im.is_zero() {
                let s = if g.im.is_negative() { "-" } else { "+" };
                write!(f, " {} {}i", s, crate::lie::format_rat(&g.im.abs()))?;
            }
            write!(f, ")")?;
            if m.b != 0 {
                write!(f, " b^{}", m.b)?;
            }
            if m.s != 0 {
                write!(f, " s^{}", m.s)?;
            }
            if m.y != 0 {
                write!(f, " y")?;
            }
            if m.q != 0 {
                write!(f, " sqrt2")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_square_reduces() {
        let y = Coeff::y_gen();
        let y2 = y.mul(&y);
        // y^2 = 1 - s^4
        let want = Coeff::one().add(&Coeff::s_pow(4).neg());
        assert_eq!(y2, want);
    }

    #[test]
    fn sqrt2_square() {
        let q = Coeff::sqrt2();
        assert_eq!(q.mul(&q), Coeff::from_int(2));
    }

    #[test]
    fn theta_derivative_chain() {
        // d/dθ (s^2) = d/dθ cos θ = -sin θ = -y
        let x = Coeff::x_pow(1);
        assert_eq!(x.d_theta(), Coeff::y_gen().neg());
        // d/dθ y = cos θ = s^2
        assert_eq!(Coeff::y_gen().d_theta(), Coeff::x_pow(1));
        // evaluate sin² + cos² = 1
        let one = Coeff::y_gen().mul(&Coeff::y_gen()).add(&Coeff::x_pow(2));
        let v = one.eval(2.0, 0.7);
        assert!((v.re - 1.0).abs() < 1e-15 && v.im.abs() < 1e-15);
    }
}
