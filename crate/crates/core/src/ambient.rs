//! The Z-graded algebra `A(p; q_+, q_-)` over `Q[z_+, z_-]`:
//!
//! ```text
//! z_+ z_- = z_- z_+,   x_+ x_- = p~(z_+ z_-),   x_- x_+ = p~(q z_+ z_-),
//! x_+ z_± = q_±^{-1} z_± x_+,   x_- z_± = q_± z_± x_-,
//! ```
//!
//! with `p = z^k p~`, `q = q_+ q_-`, `deg z_± = ±1`, `deg x_± = ±k`.
//!
//! Storage mirrors [`crate::gwa_core`]: `x_-` plays the role of `x` (it
//! twists the base ring by `z_± -> q_± z_±`) and gets positive keys.
//!
//! | key `m` | monomial                  |
//! |---------|---------------------------|
//! | `m > 0` | `x_-^m  f(z_+, z_-)`      |
//! | `m = 0` | `f(z_+, z_-)`             |
//! | `m < 0` | `x_+^{-m} f(z_+, z_-)`    |

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::gwa_core::{GwaAlgebra, GwaElem};
use crate::rewrite::{self, GwaRules, Terms};
use crate::scalar_poly::{factor_zero_root, hat_decompose, PairPoly, Rational, UniPoly};

/// Basis monomial `(m, a, b)`: the `m`-keyed power of `x_∓` times `z_+^a z_-^b`.
pub type MonomialKey = (i64, u32, u32);

#[derive(Debug, PartialEq, Eq)]
struct AmbParams {
    p: UniPoly,
    k: u32,
    p_tilde: UniPoly,
    p_hat: UniPoly,
    q_plus: Rational,
    q_minus: Rational,
    q: Rational,
    central: PairPoly,
}

impl GwaRules for AmbParams {
    type B = PairPoly;
    fn central(&self) -> &PairPoly {
        &self.central
    }
    fn twist(&self, j: i64, f: &PairPoly) -> PairPoly {
        f.rescale(&self.q_plus, &self.q_minus, j)
    }
}

#[derive(Clone, Debug)]
pub struct AmbAlgebra(Arc<AmbParams>);

impl PartialEq for AmbAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for AmbAlgebra {}

impl AmbAlgebra {
    /// Requires `p(0) = 0` so that `k >= 1`, and non-zero `q_±`.
    pub fn new(p: UniPoly, q_plus: Rational, q_minus: Rational) -> Result<Self> {
        let (k, p_tilde) = factor_zero_root(&p)?;
        if k == 0 {
            return Err(Error::InvalidParameter("0 must be a root of p".into()));
        }
        if q_plus.is_zero() || q_minus.is_zero() {
            return Err(Error::InvalidParameter("q_+ and q_- must be non-zero".into()));
        }
        let p_hat = hat_decompose(&p_tilde);
        let q = &q_plus * &q_minus;
        let central = PairPoly::in_product(&p_tilde);
        Ok(Self(Arc::new(AmbParams { p, k, p_tilde, p_hat, q_plus, q_minus, q, central })))
    }

    pub fn p(&self) -> &UniPoly {
        &self.0.p
    }

    /// Multiplicity of the root 0 of `p`.
    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn p_tilde(&self) -> &UniPoly {
        &self.0.p_tilde
    }

    pub fn p_hat(&self) -> &UniPoly {
        &self.0.p_hat
    }

    pub fn q_plus(&self) -> &Rational {
        &self.0.q_plus
    }

    pub fn q_minus(&self) -> &Rational {
        &self.0.q_minus
    }

    pub fn q(&self) -> &Rational {
        &self.0.q
    }

    /// The degree-zero part `B(p; q, 0)` of the Veronese subalgebra.
    pub fn base_algebra(&self) -> GwaAlgebra {
        GwaAlgebra::new(self.0.p.clone(), self.0.q.clone(), Rational::zero()).expect("p != 0, q != 0")
    }

    pub fn zero(&self) -> AmbElem {
        self.from_terms(Terms::new())
    }

    pub fn one(&self) -> AmbElem {
        self.base(PairPoly::one())
    }

    pub fn scalar(&self, c: Rational) -> AmbElem {
        self.base(PairPoly::constant(c))
    }

    pub fn base(&self, f: PairPoly) -> AmbElem {
        self.keyed(0, f)
    }

    /// `f(z_+ z_-)`.
    pub fn in_z(&self, f: &UniPoly) -> AmbElem {
        self.base(PairPoly::in_product(f))
    }

    pub fn keyed(&self, m: i64, f: PairPoly) -> AmbElem {
        let mut terms = Terms::new();
        rewrite::add_into(&mut terms, m, f);
        self.from_terms(terms)
    }

    pub fn monomial(&self, key: MonomialKey, c: Rational) -> AmbElem {
        let (m, a, b) = key;
        self.keyed(m, PairPoly::monomial(c, a, b))
    }

    pub fn x_plus(&self) -> AmbElem {
        self.monomial((-1, 0, 0), Rational::one())
    }

    pub fn x_minus(&self) -> AmbElem {
        self.monomial((1, 0, 0), Rational::one())
    }

    pub fn z_plus(&self) -> AmbElem {
        self.monomial((0, 1, 0), Rational::one())
    }

    pub fn z_minus(&self) -> AmbElem {
        self.monomial((0, 0, 1), Rational::one())
    }

    pub fn from_terms(&self, terms: BTreeMap<i64, PairPoly>) -> AmbElem {
        let terms = terms.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        AmbElem { alg: self.clone(), terms }
    }

    pub fn from_monomials<I: IntoIterator<Item = (MonomialKey, Rational)>>(&self, items: I) -> AmbElem {
        let mut terms = Terms::new();
        for ((m, a, b), c) in items {
            rewrite::add_into(&mut terms, m, PairPoly::monomial(c, a, b));
        }
        self.from_terms(terms)
    }

    /// Z-degree `-mk + a - b` of a basis monomial.
    pub fn degree_of(&self, key: MonomialKey) -> i64 {
        let (m, a, b) = key;
        -m * self.0.k as i64 + a as i64 - b as i64
    }

    /// Image of `x^d` (`d > 0`) or `y^{-d}` under `x -> x_- z_+^k`, `y -> z_-^k x_+`.
    fn word_image(&self, d: i64) -> AmbElem {
        let k = self.0.k;
        let gen = if d > 0 {
            self.monomial((1, k, 0), Rational::one())
        } else {
            // z_-^k x_+ = x_+ q_-^k z_-^k
            self.z_minus().pow(k).mul(&self.x_plus()).expect("same algebra")
        };
        gen.pow(d.unsigned_abs() as u32)
    }

    fn check_base(&self, e: &GwaElem) -> Result<()> {
        let b = e.algebra();
        if !b.r().is_zero() {
            return Err(Error::InvalidParameter("embedding requires r = 0".into()));
        }
        if b.q() != self.q() || b.p() != self.p() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// The homomorphism `B(p; q, 0) -> A(p; q_±)` given by `x -> x_- z_+^k`,
    /// `y -> z_-^k x_+`, `z -> z_+ z_-`.
    pub fn embed_b(&self, e: &GwaElem) -> Result<AmbElem> {
        self.check_base(e)?;
        let mut out = self.zero();
        for (&d, f) in e.terms() {
            let image = self.word_image(d).mul(&self.in_z(f))?;
            out = out.add(&image)?;
        }
        Ok(out)
    }

    /// Inverse of [`Self::embed_b`] on homogeneous degree-zero elements.
    ///
    /// A degree-zero monomial is `x_-^m z_+^{mk+b} z_-^b` or
    /// `x_+^m z_+^a z_-^{a+mk}`; the embedded power of `x` (or `y`) is a
    /// scalar multiple of its leading part, and that scalar is read off the
    /// embedding rather than a closed formula.
    pub fn project_degree_zero(&self, e: &AmbElem) -> Result<GwaElem> {
        let base = self.base_algebra();
        let mut out = BTreeMap::<i64, UniPoly>::new();
        let k = self.0.k;
        for (&m, f) in &e.terms {
            let scale = if m == 0 {
                Rational::one()
            } else {
                let image = self.word_image(m);
                let lead = image.terms.get(&m).expect("embedded power is a single monomial");
                let (a, b) = if m > 0 { (m as u32 * k, 0) } else { (0, (-m) as u32 * k) };
                lead.coeff(a, b)
            };
            for ((a, b), c) in f.terms() {
                if self.degree_of((m, a, b)) != 0 {
                    return Err(Error::NotHomogeneous { expected: 0 });
                }
                let zexp = if m >= 0 { b } else { a };
                let slot = out.entry(m).or_default();
                slot.add_term(zexp, c / &scale);
            }
        }
        Ok(base.from_terms(out))
    }

    /// Degree-`n` component of the Veronese subalgebra `A^{(k)}`, i.e. the
    /// part of `e` of Z-degree `nk`.
    pub fn veronese_component(&self, n: i64, e: &AmbElem) -> AmbElem {
        e.component(n * self.0.k as i64)
    }
}

/// Element of `A(p; q_±)` in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbElem {
    alg: AmbAlgebra,
    terms: Terms<PairPoly>,
}

impl AmbElem {
    pub fn algebra(&self) -> &AmbAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<i64, PairPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Basis expansion: `(monomial, coefficient)` pairs in key order.
    pub fn monomials(&self) -> impl Iterator<Item = (MonomialKey, &Rational)> + '_ {
        self.terms.iter().flat_map(|(&m, f)| f.terms().map(move |((a, b), c)| ((m, a, b), c)))
    }

    pub fn coefficient_of_one(&self) -> Rational {
        self.terms.get(&0).map(|f| f.coeff(0, 0)).unwrap_or_else(Rational::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.alg.from_terms(rewrite::add(&self.terms, &other.terms)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.alg.from_terms(self.terms.iter().map(|(m, f)| (*m, f.scale(c))).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.alg.from_terms(rewrite::multiply(&*self.alg.0, &self.terms, &other.terms)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.alg.one();
        for _ in 0..n {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Part of Z-degree `d`.
    pub fn component(&self, d: i64) -> AmbElem {
        let alg = &self.alg;
        alg.from_monomials(self.monomials().filter(|(key, _)| alg.degree_of(*key) == d).map(|(key, c)| (key, c.clone())))
    }

    /// Decomposition into homogeneous components; the parts sum back to `self`.
    pub fn degree_split(&self) -> BTreeMap<i64, AmbElem> {
        let alg = &self.alg;
        let mut grouped: BTreeMap<i64, Vec<(MonomialKey, Rational)>> = BTreeMap::new();
        for (key, c) in self.monomials() {
            grouped.entry(alg.degree_of(key)).or_default().push((key, c.clone()));
        }
        grouped.into_iter().map(|(d, items)| (d, alg.from_monomials(items))).collect()
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.monomials().map(|(key, _)| self.alg.degree_of(key)).collect()
    }

    /// `true` if every monomial has Z-degree `d` (vacuously for zero).
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.monomials().all(|(key, _)| self.alg.degree_of(key) == d)
    }
}

impl fmt::Display for AmbElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&m, poly)| match m {
                0 => format!("({poly})"),
                1 => format!("xm*({poly})"),
                -1 => format!("xp*({poly})"),
                m if m > 0 => format!("xm^{m}*({poly})"),
                m => format!("xp^{}*({poly})", -m),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
