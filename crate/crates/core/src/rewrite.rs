//! Normal-form multiplication shared by every degree-one generalized Weyl
//! algebra in the crate.
//!
//! An element is a map from a signed key to a coefficient in a commutative
//! base ring. Key `d > 0` stands for `X^d f`, `d < 0` for `Y^{-d} f` and
//! `d = 0` for `f`, with the base-ring factor always on the right. The
//! algebra is described by the central element `P` and the automorphism
//! `twist`, subject to `X a = twist(a) X`, `Y a = twist^{-1}(a) Y`,
//! `XY = twist(P)`, `YX = P`.

use std::collections::BTreeMap;

use crate::scalar_poly::{PairPoly, UniPoly};

pub(crate) trait Base: Clone + PartialEq {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

macro_rules! impl_base {
    ($t:ty) => {
        impl Base for $t {
            fn one() -> Self {
                <$t>::one()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn plus(&self, other: &Self) -> Self {
                self + other
            }
            fn times(&self, other: &Self) -> Self {
                self * other
            }
        }
    };
}
impl_base!(UniPoly);
impl_base!(PairPoly);

pub(crate) trait GwaRules {
    type B: Base;
    fn central(&self) -> &Self::B;
    /// `twist^j(f)`.
    fn twist(&self, j: i64, f: &Self::B) -> Self::B;
}

pub(crate) type Terms<B> = BTreeMap<i64, B>;

pub(crate) fn add_into<B: Base>(terms: &mut Terms<B>, key: i64, f: B) {
    if f.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(slot) => {
            *slot = slot.plus(&f);
            if slot.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            terms.insert(key, f);
        }
    }
}

/// Normal form of the word product `W(d1) W(d2)` as `W(d) h`.
///
/// Each step strips one `XY` or `YX` pair, so opposite-signed keys reach a
/// single-signed word after `min(|d1|, |d2|)` steps.
pub(crate) fn word_product<R: GwaRules>(rules: &R, d1: i64, d2: i64) -> (i64, R::B) {
    let (mut left, mut right) = (d1, d2);
    let mut acc = R::B::one();
    loop {
        if left > 0 && right < 0 {
            // X^a Y^b = X^{a-1} Y^{b-1} twist^b(P)
            let b = -right;
            acc = acc.times(&rules.twist(b, rules.central()));
            left -= 1;
            right += 1;
        } else if left < 0 && right > 0 {
            // Y^a X^b = Y^{a-1} X^{b-1} twist^{-(b-1)}(P)
            let b = right;
            acc = acc.times(&rules.twist(-(b - 1), rules.central()));
            left += 1;
            right -= 1;
        } else {
            return (left + right, acc);
        }
    }
}

pub(crate) fn multiply<R: GwaRules>(rules: &R, a: &Terms<R::B>, b: &Terms<R::B>) -> Terms<R::B> {
    let mut out = Terms::new();
    for (&d1, f) in a {
        for (&d2, g) in b {
            let (d, h) = word_product(rules, d1, d2);
            // W(d1) f W(d2) g = W(d1) W(d2) twist^{-d2}(f) g
            let coeff = h.times(&rules.twist(-d2, f)).times(g);
            add_into(&mut out, d, coeff);
        }
    }
    out
}

pub(crate) fn add<B: Base>(a: &Terms<B>, b: &Terms<B>) -> Terms<B> {
    let mut out = a.clone();
    for (&d, f) in b {
        add_into(&mut out, d, f.clone());
    }
    out
}
