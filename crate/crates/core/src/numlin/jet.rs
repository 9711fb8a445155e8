//! Truncated multivariate jets for exact forward-mode differentiation.
//!
//! A [`Jet`] is an element of the algebra `R[e_0, .., e_{k-1}] / (e_i^2)`:
//! every generator squares to zero but products of distinct generators
//! survive. Coefficients are indexed by the bitmask of the monomial.
//! Pushing one fresh generator per differentiation level makes nested
//! directional derivatives exact to rounding, which is what curvature
//! evaluation (second derivatives of vector fields) needs.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Maximum number of simultaneously active generators (nesting depth).
pub const MAX_GENERATORS: usize = 4;
const SLOTS: usize = 1 << MAX_GENERATORS;

#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    gens: u8,
    coeffs: [f64; SLOTS],
}

impl Jet {
    pub const ZERO: Jet = Jet {
        gens: 0,
        coeffs: [0.0; SLOTS],
    };

    pub const ONE: Jet = {
        let mut coeffs = [0.0; SLOTS];
        coeffs[0] = 1.0;
        Jet { gens: 0, coeffs }
    };

    #[inline]
    pub fn constant(value: f64) -> Self {
        let mut coeffs = [0.0; SLOTS];
        coeffs[0] = value;
        Jet { gens: 0, coeffs }
    }

    /// `value + tangent * e_gen`, where `value` and `tangent` only involve
    /// generators below `gen`.
    pub(crate) fn seeded(value: Jet, tangent: Jet, gen: usize) -> Self {
        debug_assert!(gen < MAX_GENERATORS);
        debug_assert!((value.gens as usize) <= gen && (tangent.gens as usize) <= gen);
        let mut out = value;
        out.gens = (gen + 1) as u8;
        let bit = 1 << gen;
        for s in 0..(1 << gen) {
            out.coeffs[s | bit] = tangent.coeffs[s];
        }
        out
    }

    /// Coefficient of `e_gen` as a jet over the lower generators.
    pub(crate) fn tangent_part(&self, gen: usize) -> Jet {
        let bit = 1 << gen;
        let mut out = Jet::ZERO;
        out.gens = gen as u8;
        if (self.gens as usize) > gen {
            for s in 0..(1 << gen) {
                out.coeffs[s] = self.coeffs[s | bit];
            }
        }
        out
    }

    /// The real part (coefficient of the empty monomial).
    #[inline]
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Number of active generators.
    #[inline]
    pub fn generators(&self) -> usize {
        self.gens as usize
    }

    /// Coefficient of the monomial given by `mask`.
    pub fn coefficient(&self, mask: usize) -> f64 {
        self.coeffs.get(mask).copied().unwrap_or(0.0)
    }

    #[inline]
    fn width(&self) -> usize {
        1 << self.gens
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs[..self.width()].iter().all(|c| c.is_finite())
    }

    pub fn recip(self) -> Jet {
        let a0 = self.coeffs[0];
        // 1/(a0 + n) = sum_j (-n)^j / a0^(j+1); n is nilpotent of order gens + 1.
        let mut nil = self;
        nil.coeffs[0] = 0.0;
        let step = -nil * (1.0 / a0);
        let mut term = Jet::constant(1.0 / a0);
        let mut acc = term;
        for _ in 0..self.gens {
            term *= step;
            acc += term;
        }
        acc
    }

    pub fn powi(self, exp: u32) -> Jet {
        (0..exp).fold(Jet::ONE, |acc, _| acc * self)
    }
}

impl Default for Jet {
    fn default() -> Self {
        Jet::ZERO
    }
}

impl From<f64> for Jet {
    fn from(value: f64) -> Self {
        Jet::constant(value)
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet{:?}", &self.coeffs[..self.width()])
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeffs[0])?;
        for s in 1..self.width() {
            if self.coeffs[s] != 0.0 {
                write!(f, " + {}e{:b}", self.coeffs[s], s)?;
            }
        }
        Ok(())
    }
}

impl Add for Jet {
    type Output = Jet;
    #[inline]
    fn add(mut self, rhs: Jet) -> Jet {
        self += rhs;
        self
    }
}

impl AddAssign for Jet {
    #[inline]
    fn add_assign(&mut self, rhs: Jet) {
        self.gens = self.gens.max(rhs.gens);
        for s in 0..self.width() {
            self.coeffs[s] += rhs.coeffs[s];
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    #[inline]
    fn sub(mut self, rhs: Jet) -> Jet {
        self -= rhs;
        self
    }
}

impl SubAssign for Jet {
    #[inline]
    fn sub_assign(&mut self, rhs: Jet) {
        self.gens = self.gens.max(rhs.gens);
        for s in 0..self.width() {
            self.coeffs[s] -= rhs.coeffs[s];
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    #[inline]
    fn neg(mut self) -> Jet {
        for s in 0..self.width() {
            self.coeffs[s] = -self.coeffs[s];
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    #[inline]
    fn mul(self, rhs: Jet) -> Jet {
        let gens = self.gens.max(rhs.gens);
        let mut out = Jet {
            gens,
            coeffs: [0.0; SLOTS],
        };
        // subset convolution: c[s] = sum over a subset of s of x[a] * y[s \ a]
        for s in 0..(1usize << gens) {
            let mut acc = 0.0;
            let mut a = s;
            loop {
                acc += self.coeffs[a] * rhs.coeffs[s ^ a];
                if a == 0 {
                    break;
                }
                a = (a - 1) & s;
            }
            out.coeffs[s] = acc;
        }
        out
    }
}

impl MulAssign for Jet {
    #[inline]
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn mul(mut self, rhs: f64) -> Jet {
        for s in 0..self.width() {
            self.coeffs[s] *= rhs;
        }
        self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    #[inline]
    fn mul(self, rhs: Jet) -> Jet {
        rhs * self
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn div(self, rhs: f64) -> Jet {
        self * (1.0 / rhs)
    }
}

impl Sum for Jet {
    fn sum<I: Iterator<Item = Jet>>(iter: I) -> Jet {
        iter.fold(Jet::ZERO, |a, b| a + b)
    }
}

/// Vector helpers over jet coordinates.
pub mod vec {
    use super::Jet;

    pub fn constant(v: &[f64]) -> Vec<Jet> {
        v.iter().copied().map(Jet::constant).collect()
    }

    pub fn values(v: &[Jet]) -> Vec<f64> {
        v.iter().map(Jet::value).collect()
    }

    pub fn zeros(dim: usize) -> Vec<Jet> {
        vec![Jet::ZERO; dim]
    }

    pub fn dot(a: &[Jet], b: &[Jet]) -> Jet {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| *x * *y).sum()
    }

    pub fn add(a: &[Jet], b: &[Jet]) -> Vec<Jet> {
        a.iter().zip(b).map(|(x, y)| *x + *y).collect()
    }

    pub fn sub(a: &[Jet], b: &[Jet]) -> Vec<Jet> {
        a.iter().zip(b).map(|(x, y)| *x - *y).collect()
    }

    pub fn scale(s: Jet, a: &[Jet]) -> Vec<Jet> {
        a.iter().map(|x| s * *x).collect()
    }

    /// `acc += s * a`
    pub fn axpy(acc: &mut [Jet], s: Jet, a: &[Jet]) {
        for (o, x) in acc.iter_mut().zip(a) {
            *o += s * *x;
        }
    }

    pub fn max_generators(v: &[Jet]) -> usize {
        v.iter().map(Jet::generators).max().unwrap_or(0)
    }

    pub fn all_finite(v: &[Jet]) -> bool {
        v.iter().all(Jet::is_finite)
    }
}
