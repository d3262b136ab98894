//! The generalized Weyl algebra `B(p; q, r)`: generators `x, y, z` with
//!
//! ```text
//! xy = p(qz + r),  yx = p(z),  xz = (qz + r)x,  yz = q^{-1}(z - r)y.
//! ```
//!
//! Elements are stored on the basis `x^m z^l`, `y^m z^l` with the
//! polynomial in `z` to the right of the power of `x` or `y`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rewrite::{self, GwaRules, Terms};
use crate::scalar_poly::{s_n, AffineAuto, Rational, UniPoly};

#[derive(Debug, PartialEq, Eq)]
struct GwaParams {
    p: UniPoly,
    sigma: AffineAuto,
}

/// Parameters `(p, q, r)` of `B(p; q, r)`. Cheap to clone; elements keep a
/// handle to their parent algebra.
#[derive(Clone, Debug)]
pub struct GwaAlgebra(Arc<GwaParams>);

impl PartialEq for GwaAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for GwaAlgebra {}

impl GwaRules for GwaParams {
    type B = UniPoly;
    fn central(&self) -> &UniPoly {
        &self.p
    }
    fn twist(&self, j: i64, f: &UniPoly) -> UniPoly {
        self.sigma.apply(j, f)
    }
}

impl GwaAlgebra {
    pub fn new(p: UniPoly, q: Rational, r: Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidParameter("p must be non-zero".into()));
        }
        let sigma = AffineAuto::new(q, r)?;
        Ok(Self(Arc::new(GwaParams { p, sigma })))
    }

    pub fn p(&self) -> &UniPoly {
        &self.0.p
    }

    pub fn sigma(&self) -> &AffineAuto {
        &self.0.sigma
    }

    pub fn q(&self) -> &Rational {
        self.0.sigma.q()
    }

    pub fn r(&self) -> &Rational {
        self.0.sigma.r()
    }

    pub fn zero(&self) -> GwaElem {
        self.from_terms(Terms::new())
    }

    pub fn one(&self) -> GwaElem {
        self.poly(UniPoly::one())
    }

    pub fn scalar(&self, c: Rational) -> GwaElem {
        self.poly(UniPoly::constant(c))
    }

    pub fn poly(&self, f: UniPoly) -> GwaElem {
        self.monomial(0, f)
    }

    pub fn x(&self) -> GwaElem {
        self.monomial(1, UniPoly::one())
    }

    pub fn y(&self) -> GwaElem {
        self.monomial(-1, UniPoly::one())
    }

    pub fn z(&self) -> GwaElem {
        self.poly(UniPoly::z())
    }

    /// `x^d f(z)` for `d > 0`, `y^{-d} f(z)` for `d < 0`, `f(z)` for `d = 0`.
    pub fn monomial(&self, d: i64, f: UniPoly) -> GwaElem {
        let mut terms = Terms::new();
        rewrite::add_into(&mut terms, d, f);
        self.from_terms(terms)
    }

    pub fn from_terms(&self, terms: BTreeMap<i64, UniPoly>) -> GwaElem {
        let terms = terms.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        GwaElem { alg: self.clone(), terms }
    }

    /// A random element with one to three terms, keys in `[-max_d, max_d]`
    /// and small rational coefficients up to `z^max_deg`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_d: i64, max_deg: u32) -> GwaElem {
        let mut e = self.zero();
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(-max_d..=max_d);
            e = e.add(&self.monomial(d, UniPoly::random(rng, max_deg))).expect("same algebra");
        }
        e
    }

    /// Closed form of `[x^n z^k, z^l y^n]`, computed with polynomial
    /// arithmetic only:
    /// `sigma^n(s_n) (sigma^n(z))^{k+l} - s_n z^{k+l}`.
    pub fn commutator_basis(&self, n: u32, k: u32, l: u32) -> GwaElem {
        let sigma = self.sigma();
        let s = s_n(self.p(), sigma, n);
        let (a, b) = sigma.power(n as i64);
        let shifted = UniPoly::from_terms([(1, a), (0, b)]).pow(k + l);
        let left = &sigma.apply(n as i64, &s) * &shifted;
        let right = s.shift(k + l);
        self.poly(&left - &right)
    }
}

/// Element of `B(p; q, r)` in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaElem {
    alg: GwaAlgebra,
    terms: Terms<UniPoly>,
}

impl GwaElem {
    pub fn algebra(&self) -> &GwaAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<i64, UniPoly> {
        &self.terms
    }

    /// Coefficient polynomial of `x^d` (`d > 0`), `y^{-d}` or `1`.
    pub fn part(&self, d: i64) -> UniPoly {
        self.terms.get(&d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The element as a polynomial in `z`, when it has no `x` or `y` terms.
    pub fn as_poly(&self) -> Option<UniPoly> {
        match self.terms.keys().any(|d| *d != 0) {
            true => None,
            false => Some(self.part(0)),
        }
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
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.alg.from_terms(self.terms.iter().map(|(d, f)| (*d, f.scale(c))).collect())
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

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

impl fmt::Display for GwaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&d, poly)| match d {
                0 => format!("({poly})"),
                1 => format!("x*({poly})"),
                -1 => format!("y*({poly})"),
                d if d > 0 => format!("x^{d}*({poly})"),
                d => format!("y^{}*({poly})", -d),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Reference normal form of a word over `b"xyz"`, computed by applying one
/// defining relation at a time to the leftmost out-of-order pair. Slow but
/// independent of the closed-form product used by [`GwaElem::mul`].
pub fn reduce_word(b: &GwaAlgebra, word: &[u8]) -> Result<GwaElem> {
    type Comb = BTreeMap<Vec<u8>, Rational>;

    fn push(c: &mut Comb, w: Vec<u8>, v: Rational) {
        if v.is_zero() {
            return;
        }
        let slot = c.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            c.remove(&w);
        }
    }

    fn poly_words(f: &UniPoly) -> Vec<(Vec<u8>, Rational)> {
        f.terms().map(|(e, c)| (vec![b'z'; e as usize], c.clone())).collect()
    }

    if let Some(bad) = word.iter().find(|g| !b"xyz".contains(g)) {
        return Err(Error::InvalidParameter(format!("unknown generator {:?}", *bad as char)));
    }
    let q = b.q().clone();
    let r = b.r().clone();
    let p = b.p().clone();
    let xy = b.sigma().apply(1, &p);
    let mut todo = Comb::new();
    todo.insert(word.to_vec(), Rational::one());
    let mut done = b.zero();
    while let Some((w, c)) = todo.pop_first() {
        let pos = w.windows(2).position(|pair| matches!(pair, b"zx" | b"zy" | b"xy" | b"yx"));
        let Some(i) = pos else {
            let d = w.iter().filter(|g| **g == b'x').count() as i64 - w.iter().filter(|g| **g == b'y').count() as i64;
            let zs = w.iter().filter(|g| **g == b'z').count() as u32;
            done = done.add(&b.monomial(d, UniPoly::monomial(c, zs)))?;
            continue;
        };
        let (pre, post) = (&w[..i], &w[i + 2..]);
        let replacement: Vec<(Vec<u8>, Rational)> = match &w[i..i + 2] {
            b"zx" => vec![(b"xz".to_vec(), q.recip()), (b"x".to_vec(), -&r / &q)],
            b"zy" => vec![(b"yz".to_vec(), q.clone()), (b"y".to_vec(), r.clone())],
            b"xy" => poly_words(&xy),
            _ => poly_words(&p),
        };
        for (mid, v) in replacement {
            let mut nw = pre.to_vec();
            nw.extend(mid);
            nw.extend_from_slice(post);
            push(&mut todo, nw, &c * v);
        }
    }
    Ok(done)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalar_poly::{int, rat};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn sphere(q: i64) -> GwaAlgebra {
        GwaAlgebra::new(UniPoly::from_coeffs([int(0), int(1), int(-1)]), int(q), int(0)).unwrap()
    }

    fn general() -> GwaAlgebra {
        GwaAlgebra::new(UniPoly::from_coeffs([int(1), int(0), int(-2), int(1)]), rat(3, 2), rat(1, 2)).unwrap()
    }

    #[test]
    fn addition() {
        let b = sphere(4);
        let f = b.monomial(1, UniPoly::z());
        let g = b.monomial(1, UniPoly::one());
        assert_eq!(f.add(&g).unwrap(), b.monomial(1, UniPoly::from_coeffs([int(1), int(1)])));
        assert_eq!(f.add(&b.zero()).unwrap(), f);
        let s = b.x().add(&b.y()).unwrap();
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.part(1), UniPoly::one());
        assert_eq!(s.part(-1), UniPoly::one());
    }

    #[test]
    fn mismatched_algebras() {
        assert_eq!(sphere(4).x().mul(&sphere(2).x()), Err(Error::AlgebraMismatch));
        assert_eq!(sphere(4).x().add(&general().x()), Err(Error::AlgebraMismatch));
        // equal parameters, separate handles
        assert!(sphere(4).x().mul(&sphere(4).y()).is_ok());
    }

    #[test]
    fn defining_relations() {
        for b in [sphere(4), general()] {
            let (x, y, z) = (b.x(), b.y(), b.z());
            let p = b.p().clone();
            let sigma = b.sigma();
            assert_eq!(y.mul(&x).unwrap(), b.poly(p.clone()));
            assert_eq!(x.mul(&y).unwrap(), b.poly(sigma.apply(1, &p)));
            let (q, r) = (b.q().clone(), b.r().clone());
            let qz_r = b.poly(UniPoly::from_terms([(1, q.clone()), (0, r.clone())]));
            assert_eq!(x.mul(&z).unwrap(), qz_r.mul(&x).unwrap());
            let back = b.poly(UniPoly::from_terms([(1, q.recip()), (0, -&r / &q)]));
            assert_eq!(y.mul(&z).unwrap(), back.mul(&y).unwrap());
        }
    }

    #[test]
    fn z_times_x_moves_sigma_inverse() {
        let b = sphere(4);
        let zx = b.z().mul(&b.x()).unwrap();
        assert_eq!(zx, b.monomial(1, UniPoly::monomial(rat(1, 4), 1)));
        assert_eq!(zx.to_string(), "x*(1/4*z)");
        assert_eq!(b.x().mul(&b.z()).unwrap().to_string(), "x*(z)");
    }

    #[test]
    fn powers_of_x_and_y() {
        for b in [sphere(4), general()] {
            for n in 0..=4u32 {
                let s = s_n(b.p(), b.sigma(), n);
                assert_eq!(b.y().pow(n).mul(&b.x().pow(n)).unwrap(), b.poly(s.clone()));
                assert_eq!(b.x().pow(n).mul(&b.y().pow(n)).unwrap(), b.poly(b.sigma().apply(n as i64, &s)));
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let b = sphere(4);
        let z2 = b.poly(UniPoly::monomial(int(1), 2));
        assert!(b.z().commutator(&z2).unwrap().is_zero());
        let p = b.p().clone();
        let expected = b.poly(&b.sigma().apply(1, &p) - &p);
        assert_eq!(b.x().commutator(&b.y()).unwrap(), expected);
        assert_eq!(b.commutator_basis(1, 0, 0), expected);
        assert!(b.commutator_basis(0, 2, 3).is_zero());
        // n = 2, k = 1, l = 0: sigma^2(s_2)(16z) - s_2 z
        let s2 = s_n(&p, b.sigma(), 2);
        let expected = &(&b.sigma().apply(2, &s2) * &UniPoly::monomial(int(16), 1)) - &s2.shift(1);
        assert_eq!(b.commutator_basis(2, 1, 0), b.poly(expected));
    }

    #[test]
    fn commutator_basis_matches_engine() {
        for b in [sphere(4), general()] {
            for n in 0..=3u32 {
                for k in 0..=3u32 {
                    for l in 0..=3u32 {
                        let left = b.monomial(n as i64, UniPoly::monomial(int(1), k));
                        let right = b.poly(UniPoly::monomial(int(1), l)).mul(&b.y().pow(n)).unwrap();
                        assert_eq!(left.commutator(&right).unwrap(), b.commutator_basis(n, k, l), "n={n} k={k} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn printing() {
        let b = sphere(4);
        let e = b
            .monomial(2, UniPoly::from_coeffs([int(1), int(-1)]))
            .add(&b.scalar(rat(3, 2)))
            .unwrap()
            .add(&b.monomial(-1, UniPoly::monomial(int(1), 2)))
            .unwrap();
        assert_eq!(e.to_string(), "x^2*(1 - z) + (3/2) + y*(z^2)");
        assert_eq!(b.zero().to_string(), "0");
    }

    #[test]
    fn free_reduction_agrees_on_short_words() {
        for b in [sphere(4), general()] {
            let gens = [(b'x', b.x()), (b'y', b.y()), (b'z', b.z())];
            let mut words: Vec<(Vec<u8>, GwaElem)> = vec![(vec![], b.one())];
            let mut frontier = words.clone();
            for _ in 0..5 {
                let mut next = Vec::new();
                for (w, e) in &frontier {
                    for (g, ge) in &gens {
                        let mut nw = w.clone();
                        nw.push(*g);
                        next.push((nw, e.mul(ge).unwrap()));
                    }
                }
                words.extend(next.iter().cloned());
                frontier = next;
            }
            assert_eq!(words.len(), 364);
            for (w, e) in words {
                assert_eq!(reduce_word(&b, &w).unwrap(), e, "word {}", String::from_utf8_lossy(&w));
            }
        }
    }

    pub(crate) fn random_elem(b: &GwaAlgebra, rng: &mut StdRng, max_d: i64, max_deg: u32) -> GwaElem {
        b.random_element(rng, max_d, max_deg)
    }

    #[test]
    fn associativity_and_unit() {
        let mut rng = StdRng::seed_from_u64(7);
        for b in [sphere(4), general()] {
            for _ in 0..100 {
                let a = random_elem(&b, &mut rng, 2, 2);
                let c = random_elem(&b, &mut rng, 2, 2);
                let d = random_elem(&b, &mut rng, 2, 2);
                let left = a.mul(&c).unwrap().mul(&d).unwrap();
                let right = a.mul(&c.mul(&d).unwrap()).unwrap();
                assert_eq!(left, right);
                assert_eq!(b.one().mul(&a).unwrap(), a);
                assert_eq!(a.mul(&b.one()).unwrap(), a);
            }
        }
    }

    proptest! {
        #[test]
        fn x_power_times_poly(d in -4i64..=4, c in -5i64..=5, e in 0u32..4) {
            // f(z) w = w sigma^{-deg w}(f)
            let b = general();
            let f = UniPoly::monomial(int(c), e);
            let w = b.monomial(d, UniPoly::one());
            let lhs = b.poly(f.clone()).mul(&w).unwrap();
            prop_assert_eq!(lhs, b.monomial(d, b.sigma().apply(-d, &f)));
        }
    }
}
