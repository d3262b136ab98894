use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Sparse univariate polynomial in `z` over Q.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from dense coefficients, lowest degree first.
    pub fn from_coeffs<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as u32, c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// `(L, [(e, L c_e)])` with `L` the lcm of the coefficient denominators.
    fn integer_form(&self) -> (BigInt, Vec<(u32, BigInt)>) {
        let l = self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.coeffs.iter().map(|(&e, c)| (e, c.numer() * (&l / c.denom()))).collect();
        (l, nums)
    }

    pub(crate) fn add_term(&mut self, exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Dense random polynomial of degree at most `max_deg` with coefficients
    /// `a/b`, `|a| <= 3`, `1 <= b <= 2`.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, max_deg: u32) -> Self {
        Self::from_terms((0..=max_deg).map(|i| {
            let c = Rational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into());
            (i, c)
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut prev = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (e, c) in self.coeffs.iter().rev() {
            for _ in *e..prev {
                acc *= at;
            }
            acc += c;
            prev = *e;
        }
        for _ in 0..prev {
            acc *= at;
        }
        acc
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        use num::ToPrimitive;
        self.terms()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * at.powi(e as i32))
            .sum()
    }

    /// `f(a z + b)`, by Horner's scheme.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        if b.is_zero() {
            let mut power = Rational::one();
            let mut coeffs = BTreeMap::new();
            let mut last = 0;
            for (&e, c) in &self.coeffs {
                for _ in last..e {
                    power *= a;
                }
                last = e;
                coeffs.insert(e, c * &power);
            }
            return Self { coeffs };
        }
        // dense Horner: acc <- acc * (a z + b) + c_e
        let mut acc: Vec<Rational> = Vec::with_capacity(deg as usize + 1);
        for e in (0..=deg).rev() {
            acc.push(Rational::zero());
            for i in (0..acc.len()).rev() {
                let lower = if i > 0 { &acc[i - 1] * a } else { Rational::zero() };
                acc[i] = &acc[i] * b + lower;
            }
            acc[0] += self.coeff(e);
        }
        Self::from_coeffs(acc)
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let (dd, lc) = match (divisor.degree(), divisor.leading_coeff()) {
            (Some(d), Some(c)) => (d, c.clone()),
            _ => return Err(Error::InexactDivision("division by zero polynomial".into())),
        };
        let mut quot = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.coeff(rd) / &lc;
            let step = Self::monomial(c, rd - dd);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok((quot, rem))
    }

    /// Quotient of an exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("({self}) / ({divisor}) leaves {r}")));
        }
        Ok(q)
    }

    /// Printed with the given variable name, ascending degree: `1 - 3*z + z^2`.
    pub fn fmt_var(&self, var: &str) -> String {
        let terms: Vec<(Rational, String)> = self
            .terms()
            .map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{e}"),
                };
                (c.clone(), mono)
            })
            .collect();
        join_signed_terms(&terms)
    }
}

/// Joins `(coefficient, monomial)` pairs as `a + b - c`, writing unit
/// coefficients implicitly. An empty monomial stands for the constant 1.
pub(crate) fn join_signed_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono.clone()
        } else {
            format!("{mag}*{mono}")
        };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let (Some(d1), Some(d2)) = (self.degree(), rhs.degree()) else {
            return UniPoly::zero();
        };
        // fraction-free: one gcd per output coefficient instead of per product
        let (l1, n1) = self.integer_form();
        let (l2, n2) = rhs.integer_form();
        let mut dense = vec![BigInt::zero(); (d1 + d2) as usize + 1];
        for (e1, c1) in &n1 {
            for (e2, c2) in &n2 {
                dense[(e1 + e2) as usize] += c1 * c2;
            }
        }
        let denom = l1 * l2;
        UniPoly::from_coeffs(dense.into_iter().map(|c| Rational::new(c, denom.clone())))
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl AddAssign<&UniPoly> for UniPoly {
    fn add_assign(&mut self, rhs: &UniPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Splits off the root 0: returns `(k, p~)` with `p = z^k p~` and `p~(0) != 0`.
pub fn factor_zero_root(p: &UniPoly) -> Result<(u32, UniPoly)> {
    let k = *p.coeffs.keys().next().ok_or(Error::UndefinedFactorization)?;
    let reduced = UniPoly {
        coeffs: p.coeffs.iter().map(|(e, c)| (e - k, c.clone())).collect(),
    };
    Ok((k, reduced))
}

/// The polynomial `p^` with `p~(z) = p~(0) - z p^(z)`.
pub fn hat_decompose(p_tilde: &UniPoly) -> UniPoly {
    UniPoly {
        coeffs: p_tilde
            .coeffs
            .iter()
            .filter(|(e, _)| **e > 0)
            .map(|(e, c)| (e - 1, -c))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_poly::{int, rat};

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|c| int(*c)))
    }

    #[test]
    fn printing_is_ascending() {
        assert_eq!(poly(&[1, -3, 1]).to_string(), "1 - 3*z + z^2");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(poly(&[0, -1]).to_string(), "-z");
        let p = UniPoly::from_terms([(0, rat(3, 2)), (2, rat(-1, 4))]);
        assert_eq!(p.to_string(), "3/2 - 1/4*z^2");
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(poly(&[0, 0, 5]).degree(), Some(2));
        assert_eq!(poly(&[1, 1]) - poly(&[1, 1]), UniPoly::zero());
    }

    #[test]
    fn factor_zero_root_examples() {
        // z^2 (1 - z)
        assert_eq!(factor_zero_root(&poly(&[0, 0, 1, -1])).unwrap(), (2, poly(&[1, -1])));
        assert_eq!(factor_zero_root(&poly(&[1, -1])).unwrap(), (0, poly(&[1, -1])));
        assert_eq!(factor_zero_root(&poly(&[0, 0, 0, 1])).unwrap(), (3, UniPoly::one()));
        assert_eq!(factor_zero_root(&UniPoly::zero()), Err(Error::UndefinedFactorization));
    }

    #[test]
    fn hat_decompose_examples() {
        assert_eq!(hat_decompose(&poly(&[1, -1])), UniPoly::one());
        assert_eq!(hat_decompose(&poly(&[7])), UniPoly::zero());
        assert_eq!(hat_decompose(&poly(&[1, -3, 1])), poly(&[3, -1]));
    }

    #[test]
    fn division() {
        let a = poly(&[-1, 0, 0, 1]);
        let b = poly(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, poly(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(poly(&[1, 0, 1]).div_exact(&b).is_err());
    }

    #[test]
    fn evaluation_and_composition() {
        let p = poly(&[2, -3, 0, 1]);
        assert_eq!(p.eval(&int(2)), int(4));
        assert_eq!(p.eval(&int(0)), int(2));
        let c = p.compose_affine(&int(2), &int(1));
        for x in -3..4 {
            let x = int(x);
            assert_eq!(c.eval(&x), p.eval(&(int(2) * &x + int(1))));
        }
    }
}
