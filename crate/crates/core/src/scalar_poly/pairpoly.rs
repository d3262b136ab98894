use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::rational::{rat_pow, Rational};
use super::unipoly::{join_signed_terms, UniPoly};

/// Sparse polynomial in the commuting variables `z_+`, `z_-`.
/// Keys are `(exponent of z_+, exponent of z_-)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PairPoly {
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl PairPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, plus: u32, minus: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(plus, minus, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in terms {
            out.add_term(a, b, c);
        }
        out
    }

    /// `f(z_+ z_-)`.
    pub fn in_product(f: &UniPoly) -> Self {
        Self::from_terms(f.terms().map(|(e, c)| ((e, e), c.clone())))
    }

    pub(crate) fn add_term(&mut self, plus: u32, minus: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((plus, minus)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(plus, minus));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, plus: u32, minus: u32) -> Rational {
        self.coeffs.get(&(plus, minus)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Substitutes `z_+ -> w_+^j z_+`, `z_- -> w_-^j z_-`.
    pub fn rescale(&self, w_plus: &Rational, w_minus: &Rational, j: i64) -> Self {
        if j == 0 {
            return self.clone();
        }
        let wp = rat_pow(w_plus, j);
        let wm = rat_pow(w_minus, j);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(a, b), c)| ((a, b), c * rat_pow(&wp, a as i64) * rat_pow(&wm, b as i64)))
                .collect(),
        }
    }

    /// Multiplies by `z_+^a z_-^b`.
    pub fn shift(&self, plus: u32, minus: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&(a, b), c)| ((a + plus, b + minus), c.clone())).collect(),
        }
    }

    /// Recovers `f` from `f(z_+ z_-)`; `None` if some monomial is unbalanced.
    pub fn as_product_poly(&self) -> Option<UniPoly> {
        let mut out = UniPoly::zero();
        for (&(a, b), c) in &self.coeffs {
            if a != b {
                return None;
            }
            out.add_term(a, c.clone());
        }
        Some(out)
    }
}

impl fmt::Display for PairPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = self
            .terms()
            .map(|((a, b), c)| {
                let mut parts = Vec::new();
                for (name, e) in [("zp", a), ("zm", b)] {
                    match e {
                        0 => {}
                        1 => parts.push(name.to_string()),
                        _ => parts.push(format!("{name}^{e}")),
                    }
                }
                (c.clone(), parts.join("*"))
            })
            .collect();
        f.write_str(&join_signed_terms(&terms))
    }
}

impl<'a> Add<&'a PairPoly> for &'a PairPoly {
    type Output = PairPoly;
    fn add(self, rhs: &PairPoly) -> PairPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.coeffs {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PairPoly> for &'a PairPoly {
    type Output = PairPoly;
    fn sub(self, rhs: &PairPoly) -> PairPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.coeffs {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl<'a> Mul<&'a PairPoly> for &'a PairPoly {
    type Output = PairPoly;
    fn mul(self, rhs: &PairPoly) -> PairPoly {
        let mut out = PairPoly::zero();
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &rhs.coeffs {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &PairPoly {
    type Output = PairPoly;
    fn neg(self) -> PairPoly {
        PairPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_poly::{int, rat};

    #[test]
    fn product_variable_roundtrip() {
        let f = UniPoly::from_coeffs([int(1), int(-3), rat(1, 2)]);
        let g = PairPoly::in_product(&f);
        assert_eq!(g.as_product_poly(), Some(f));
        assert_eq!(PairPoly::monomial(int(1), 1, 0).as_product_poly(), None);
    }

    #[test]
    fn display() {
        let g = PairPoly::from_terms([((2, 1), int(1)), ((0, 0), int(-2)), ((0, 1), rat(1, 3))]);
        assert_eq!(g.to_string(), "-2 + 1/3*zm + zp^2*zm");
    }

    #[test]
    fn rescale_by_weights() {
        let g = PairPoly::monomial(int(1), 2, 1);
        assert_eq!(g.rescale(&int(2), &int(3), 1), PairPoly::monomial(int(12), 2, 1));
        assert_eq!(g.rescale(&int(2), &int(3), -1), PairPoly::monomial(rat(1, 12), 2, 1));
    }
}
