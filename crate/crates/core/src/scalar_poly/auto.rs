use num::{One, Zero};

use super::rational::{int, rat_pow, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// The automorphism `sigma(z) = qz + r` of `Q[z]`, `q != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAuto {
    q: Rational,
    r: Rational,
}

impl AffineAuto {
    pub fn new(q: Rational, r: Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidParameter("q must be non-zero".into()));
        }
        Ok(Self { q, r })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// Coefficients `(a, b)` with `sigma^j(z) = a z + b`.
    pub fn power(&self, j: i64) -> (Rational, Rational) {
        let qj = rat_pow(&self.q, j);
        let shift = if self.q.is_one() {
            &self.r * int(j)
        } else {
            &self.r * (&qj - Rational::one()) / (&self.q - Rational::one())
        };
        (qj, shift)
    }

    pub fn apply(&self, j: i64, f: &UniPoly) -> UniPoly {
        if j == 0 {
            return f.clone();
        }
        let (a, b) = self.power(j);
        f.compose_affine(&a, &b)
    }
}

/// `f(sigma^j(z))`.
pub fn apply_auto(sigma: &AffineAuto, j: i64, f: &UniPoly) -> UniPoly {
    sigma.apply(j, f)
}

/// `s_n = prod_{m=0}^{n-1} sigma^{-m}(p)`, with `s_0 = 1`.
pub fn s_n(p: &UniPoly, sigma: &AffineAuto, n: u32) -> UniPoly {
    (0..n as i64).fold(UniPoly::one(), |acc, m| &acc * &sigma.apply(-m, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_poly::rat;
    use proptest::prelude::*;

    fn sphere_p() -> UniPoly {
        UniPoly::from_coeffs([int(0), int(1), int(-1)])
    }

    /// j-fold single-step substitution, the oracle for the closed form.
    fn iterate(sigma: &AffineAuto, j: i64, f: &UniPoly) -> UniPoly {
        let (step_a, step_b) = if j >= 0 {
            (sigma.q.clone(), sigma.r.clone())
        } else {
            (sigma.q.recip(), -&sigma.r / &sigma.q)
        };
        (0..j.abs()).fold(f.clone(), |acc, _| acc.compose_affine(&step_a, &step_b))
    }

    #[test]
    fn inverse_step_scales_down() {
        let sigma = AffineAuto::new(int(4), int(0)).unwrap();
        let z4 = UniPoly::monomial(rat(1, 4), 1);
        let expected = &z4 * &(&UniPoly::one() - &z4);
        assert_eq!(apply_auto(&sigma, -1, &sphere_p()), expected);
        assert_eq!(iterate(&sigma, -1, &sphere_p()), expected);
    }

    #[test]
    fn identity_and_second_power() {
        let sigma = AffineAuto::new(int(2), int(3)).unwrap();
        let f = sphere_p();
        assert_eq!(apply_auto(&sigma, 0, &f), f);
        let expected = UniPoly::from_coeffs([int(9), int(4)]);
        assert_eq!(apply_auto(&sigma, 2, &UniPoly::z()), expected);
        assert_eq!(iterate(&sigma, 2, &UniPoly::z()), expected);
    }

    #[test]
    fn q_equal_one_translates() {
        let sigma = AffineAuto::new(int(1), rat(1, 2)).unwrap();
        assert_eq!(sigma.power(-3), (int(1), rat(-3, 2)));
        assert!(AffineAuto::new(int(0), int(1)).is_err());
    }

    #[test]
    fn s_n_examples() {
        let sigma = AffineAuto::new(int(4), int(0)).unwrap();
        let p = sphere_p();
        assert_eq!(s_n(&p, &sigma, 0), UniPoly::one());
        assert_eq!(s_n(&p, &sigma, 1), p);
        let z4 = UniPoly::monomial(rat(1, 4), 1);
        let second = &z4 * &(&UniPoly::one() - &z4);
        assert_eq!(s_n(&p, &sigma, 2), &p * &second);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(UniPoly::from_coeffs)
    }

    fn nonzero_q() -> impl Strategy<Value = Rational> {
        small_rational().prop_filter("q != 0", |q| !q.is_zero())
    }

    proptest! {
        #[test]
        fn powers_compose(q in nonzero_q(), r in small_rational(), i in -4i64..=4, j in -4i64..=4, f in small_poly(6)) {
            let sigma = AffineAuto::new(q, r).unwrap();
            prop_assert_eq!(sigma.apply(i, &sigma.apply(j, &f)), sigma.apply(i + j, &f));
            prop_assert_eq!(sigma.apply(j, &f), iterate(&sigma, j, &f));
        }

        #[test]
        fn s_n_recursion(q in nonzero_q(), r in small_rational(), p in small_poly(3)) {
            let sigma = AffineAuto::new(q, r).unwrap();
            for n in 0..=6u32 {
                let next = &s_n(&p, &sigma, n) * &sigma.apply(-(n as i64), &p);
                prop_assert_eq!(s_n(&p, &sigma, n + 1), next);
            }
        }

        #[test]
        fn zero_root_and_hat_reconstruct(p in small_poly(8)) {
            prop_assume!(!p.is_zero());
            let (k, pt) = crate::scalar_poly::factor_zero_root(&p).unwrap();
            prop_assert!(!pt.coeff(0).is_zero());
            prop_assert_eq!(pt.shift(k), p);
            let ph = crate::scalar_poly::hat_decompose(&pt);
            let rebuilt = &UniPoly::constant(pt.coeff(0)) - &ph.shift(1);
            prop_assert_eq!(rebuilt, pt);
        }
    }
}
