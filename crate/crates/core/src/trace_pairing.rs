//! Cyclic traces `τ_ζ` on `B(p; q, r)` attached to roots `ζ` of `p`, and
//! their pairing with the line-bundle idempotents.
//!
//! On `Q[z]` the functional is
//!
//! ```text
//! τ^(z^n) = (1 / (1 - q^n)) Σ_{i=1}^n t^n_i ζ^i,   t^n_n = 1,
//! t^n_{n-k} = Σ_{i=1}^k C(n, i) r^i q^{n-i} / (1 - q^{n-i}) t^{n-i}_{n-k},
//! ```
//!
//! with `τ^(1) = 0`; `τ_ζ` applies `τ^` to the `z`-only part of an element
//! and vanishes on every monomial containing `x` or `y`.

use std::sync::Mutex;

use num::{BigInt, One, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::ambient::AmbAlgebra;
use crate::connection::StrongConnection;
use crate::error::{Error, Result};
use crate::gwa_core::{GwaAlgebra, GwaElem};
use crate::scalar_poly::{factor_zero_root, rat_pow, Rational, UniPoly};

#[derive(Debug)]
pub struct TraceFunctional {
    alg: GwaAlgebra,
    zeta: Rational,
    // t[n - 1][i - 1] = t^n_i
    cache: Mutex<Vec<Vec<Rational>>>,
}

/// A rational `q` is a root of unity iff `q = ±1`.
pub fn is_admissible_q(q: &Rational) -> bool {
    !q.is_zero() && *q != Rational::one() && *q != -Rational::one()
}

/// `true` iff `p` has a root other than 0 over an algebraic closure, i.e.
/// `p / z^k` is not constant.
pub fn has_nonzero_root(p: &UniPoly) -> bool {
    factor_zero_root(p).map(|(_, pt)| !pt.is_constant()).unwrap_or(false)
}

impl TraceFunctional {
    /// Requires `p(0) = p(ζ) = 0` and `q ∉ {0, 1, -1}`.
    pub fn new(alg: &GwaAlgebra, zeta: Rational) -> Result<Self> {
        if !alg.p().coeff(0).is_zero() {
            return Err(Error::InvalidParameter("0 must be a root of p".into()));
        }
        if !alg.p().eval(&zeta).is_zero() {
            return Err(Error::InvalidParameter(format!("zeta = {zeta} is not a root of p")));
        }
        if !is_admissible_q(alg.q()) {
            return Err(Error::InvalidParameter(format!("q = {} is a root of unity", alg.q())));
        }
        Ok(Self { alg: alg.clone(), zeta, cache: Mutex::new(Vec::new()) })
    }

    pub fn zeta(&self) -> &Rational {
        &self.zeta
    }

    pub fn algebra(&self) -> &GwaAlgebra {
        &self.alg
    }

    /// `[t^n_1, ..., t^n_n]`.
    pub fn t_coeffs(&self, n: u32) -> Vec<Rational> {
        if n == 0 {
            return Vec::new();
        }
        let mut cache = self.cache.lock().expect("cache poisoned");
        let q = self.alg.q();
        let r = self.alg.r();
        while cache.len() < n as usize {
            let m = cache.len() as u32 + 1;
            let mut row = vec![Rational::zero(); m as usize];
            row[m as usize - 1] = Rational::one();
            for k in 1..m {
                let mut acc = Rational::zero();
                let mut binom = BigInt::one();
                for i in 1..=k {
                    binom = binom * BigInt::from(m - i + 1) / BigInt::from(i);
                    let qi = rat_pow(q, (m - i) as i64);
                    let weight = Rational::from_integer(binom.clone()) * rat_pow(r, i as i64) * &qi
                        / (Rational::one() - &qi);
                    acc += weight * &cache[(m - i) as usize - 1][(m - k) as usize - 1];
                }
                row[(m - k) as usize - 1] = acc;
            }
            cache.push(row);
        }
        cache[n as usize - 1].clone()
    }

    /// `τ^(z^n)`; zero for `n = 0`.
    pub fn hat_tau_monomial(&self, n: u32) -> Rational {
        if n == 0 {
            return Rational::zero();
        }
        let t = self.t_coeffs(n);
        let sum = t
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, ti)| acc + ti * rat_pow(&self.zeta, i as i64 + 1));
        sum / (Rational::one() - rat_pow(self.alg.q(), n as i64))
    }

    pub fn hat_tau(&self, f: &UniPoly) -> Rational {
        f.terms().fold(Rational::zero(), |acc, (e, c)| acc + c * self.hat_tau_monomial(e))
    }

    pub fn tau(&self, e: &GwaElem) -> Result<Rational> {
        if e.algebra() != &self.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.hat_tau(&e.part(0)))
    }
}

/// Outcome of [`verify_trace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceReport {
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl TraceReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks that `τ` kills `[x^n z^k, z^l y^n]` for `n, k, l <= bound` and
/// that `τ(ab) = τ(ba)` on `samples` random pairs.
pub fn verify_trace(tf: &TraceFunctional, bound: u32, samples: usize, seed: u64) -> Result<TraceReport> {
    let alg = tf.algebra();
    let mut report = TraceReport { checked: 0, counterexamples: Vec::new() };
    for n in 0..=bound {
        for k in 0..=bound {
            for l in 0..=bound {
                let value = tf.tau(&alg.commutator_basis(n, k, l))?;
                report.checked += 1;
                if !value.is_zero() {
                    report.counterexamples.push(format!("tau([x^{n} z^{k}, z^{l} y^{n}]) = {value}"));
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = alg.random_element(&mut rng, 3, 3);
        let b = alg.random_element(&mut rng, 3, 3);
        let (ab, ba) = (tf.tau(&a.mul(&b)?)?, tf.tau(&b.mul(&a)?)?);
        report.checked += 1;
        if ab != ba {
            report.counterexamples.push(format!("a = {a}, b = {b}: tau(ab) = {ab}, tau(ba) = {ba}"));
        }
    }
    Ok(report)
}

/// Checks `τ^(f(z)) - τ^(f(qz + r)) = f(ζ) - f(0)` on `samples` random
/// polynomials of degree at most `max_deg`.
pub fn verify_shift_identity(tf: &TraceFunctional, samples: usize, max_deg: u32, seed: u64) -> TraceReport {
    let alg = tf.algebra();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = TraceReport { checked: 0, counterexamples: Vec::new() };
    for _ in 0..samples {
        let f = UniPoly::random(&mut rng, max_deg);
        let lhs = tf.hat_tau(&f) - tf.hat_tau(&f.compose_affine(alg.q(), alg.r()));
        let rhs = f.eval(tf.zeta()) - f.eval(&Rational::zero());
        report.checked += 1;
        if lhs != rhs {
            report.counterexamples.push(format!("f = {f}: {lhs} != {rhs}"));
        }
    }
    report
}

/// `τ_ζ(e_n)`, the pairing of the trace at the non-zero root `ζ` with the
/// idempotent of the degree-`n` line bundle. Expected value: `-n`.
pub fn chern_pairing(amb: &AmbAlgebra, zeta: &Rational, n: i64) -> Result<Rational> {
    chern_pairing_with(&StrongConnection::new(amb)?, zeta, n)
}

pub fn chern_pairing_with(conn: &StrongConnection, zeta: &Rational, n: i64) -> Result<Rational> {
    let amb = conn.algebra();
    if zeta.is_zero() || !amb.p().eval(zeta).is_zero() {
        return Err(Error::NotANonZeroRoot(zeta.to_string()));
    }
    let base = amb.base_algebra();
    let tf = TraceFunctional::new(&base, zeta.clone())?;
    let e = conn.trace_idempotent(n)?;
    tf.tau(&base.poly(e))
}
