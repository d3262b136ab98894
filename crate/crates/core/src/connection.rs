//! Strong connections on the Veronese subalgebra `A^{(k)}` of
//! `A(p; q_±)`, the idempotents `E(n)` they produce, and their traces.
//!
//! With `c = p~(0)`, `z = z_+ z_-` and `p~(z) = c - z p^(z)`:
//!
//! ```text
//! ω  = c^{-k} ( q^k p^(qz)^k z_-^k ⊗ z_+^k  +  x_- ⊗ S(z) x_+ ),
//! ω̄ = c^{-k} ( p^(z)^k z_+^k ⊗ z_-^k     +  x_+ ⊗ Q(z) x_- ),
//! ```
//!
//! where `S(z) = Σ_{i<k} z^i p^(z)^i c^{k-i-1}` and
//! `Q(z) = (c^k - q^k z^k p^(qz)^k) / p~(qz)`.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::ambient::{AmbAlgebra, AmbElem, MonomialKey};
use crate::error::{Error, Result};
use crate::gwa_core::GwaElem;
use crate::scalar_poly::{rat_pow, Rational, UniPoly};

pub const DEFAULT_MAX_DEGREE: u32 = 5;

/// Formal sum `Σ_i left_i ⊗ right_i` in `A ⊗ A`, with Veronese bidegree.
#[derive(Clone, Debug)]
pub struct Tensor2 {
    pub pairs: Vec<(AmbElem, AmbElem)>,
    pub bidegree: (i64, i64),
}

impl Tensor2 {
    /// `1 ⊗ 1`.
    pub fn unit(alg: &AmbAlgebra) -> Self {
        Self { pairs: vec![(alg.one(), alg.one())], bidegree: (0, 0) }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Expansion over pairs of basis monomials with identical pairs merged;
    /// two tensors are equal iff their canonical forms are.
    pub fn canonical(&self) -> BTreeMap<(MonomialKey, MonomialKey), Rational> {
        let mut out: BTreeMap<(MonomialKey, MonomialKey), Rational> = BTreeMap::new();
        for (l, r) in &self.pairs {
            for (lk, lc) in l.monomials() {
                for (rk, rc) in r.monomials() {
                    let slot = out.entry((lk, rk)).or_insert_with(Rational::zero);
                    *slot += lc * rc;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn canonically_eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// `Σ_i left_i right_i`.
    pub fn contract(&self) -> Result<AmbElem> {
        let (first, _) = self.pairs.first().ok_or(Error::InvalidParameter("empty tensor".into()))?;
        let mut acc = first.algebra().zero();
        for (l, r) in &self.pairs {
            acc = acc.add(&l.mul(r)?)?;
        }
        Ok(acc)
    }

    /// Every stored leg is homogeneous of the recorded Veronese degree.
    pub fn legs_have_bidegree(&self, k: u32) -> bool {
        let k = k as i64;
        self.pairs
            .iter()
            .all(|(l, r)| l.is_homogeneous_of(self.bidegree.0 * k) && r.is_homogeneous_of(self.bidegree.1 * k))
    }
}

/// `true` iff the tensor multiplies out to exactly 1.
pub fn check_connection(t: &Tensor2) -> bool {
    match t.contract() {
        Ok(e) => e == e.algebra().one(),
        Err(_) => false,
    }
}

/// `N × N` matrix over `B(p; q, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdemMatrix {
    pub n: i64,
    pub entries: Vec<Vec<GwaElem>>,
}

#[derive(Serialize)]
struct IdemJson {
    n: i64,
    size: usize,
    entries: Vec<Vec<String>>,
}

impl IdemMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &Self) -> Result<Vec<Vec<GwaElem>>> {
        let size = self.size();
        let zero = self.entries[0][0].algebra().zero();
        let mut out = vec![vec![zero; size]; size];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for m in 0..size {
                    *slot = slot.add(&self.entries[i][m].mul(&other.entries[m][j])?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.mul(self)? == self.entries)
    }

    pub fn trace(&self) -> Result<GwaElem> {
        let mut acc = self.entries[0][0].algebra().zero();
        for (i, row) in self.entries.iter().enumerate() {
            acc = acc.add(&row[i])?;
        }
        Ok(acc)
    }

    /// `{"n": .., "size": .., "entries": [[..]]}` with canonical element strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdemJson {
            n: self.n,
            size: self.size(),
            entries: self.entries.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect(),
        })
        .expect("plain data serializes")
    }
}

/// Strong connection data for `A^{(k)}`, with ω and ω̄ precomputed.
#[derive(Clone, Debug)]
pub struct StrongConnection {
    alg: AmbAlgebra,
    omega: Tensor2,
    omega_bar: Tensor2,
    max_degree: u32,
}

impl StrongConnection {
    pub fn new(alg: &AmbAlgebra) -> Result<Self> {
        Ok(Self {
            omega: omega(alg),
            omega_bar: omega_bar(alg)?,
            alg: alg.clone(),
            max_degree: DEFAULT_MAX_DEGREE,
        })
    }

    pub fn with_max_degree(mut self, bound: u32) -> Self {
        self.max_degree = bound;
        self
    }

    pub fn algebra(&self) -> &AmbAlgebra {
        &self.alg
    }

    pub fn omega(&self) -> &Tensor2 {
        &self.omega
    }

    pub fn omega_bar(&self) -> &Tensor2 {
        &self.omega_bar
    }

    fn check_bound(&self, n: i64) -> Result<()> {
        if n.unsigned_abs() > self.max_degree as u64 {
            return Err(Error::DegreeBound { n, bound: self.max_degree });
        }
        Ok(())
    }

    fn base_for(&self, n: i64) -> &Tensor2 {
        if n > 0 {
            &self.omega
        } else {
            &self.omega_bar
        }
    }

    /// `ω(n) = Σ_i ω'_i ω(n-1) ω''_i` (`n > 0`), dually with ω̄ for `n < 0`.
    pub fn omega_n(&self, n: i64) -> Result<Tensor2> {
        self.check_bound(n)?;
        let base = self.base_for(n);
        let mut acc = Tensor2::unit(&self.alg);
        for _ in 0..n.unsigned_abs() {
            let mut pairs = Vec::with_capacity(base.len() * acc.len());
            for (l, r) in &base.pairs {
                for (ll, rr) in &acc.pairs {
                    pairs.push((l.mul(ll)?, rr.mul(r)?));
                }
            }
            acc = Tensor2 { pairs, bidegree: (acc.bidegree.0 + base.bidegree.0, acc.bidegree.1 + base.bidegree.1) };
        }
        Ok(acc)
    }

    /// `ω(n) = Σ_i ω(n-1)'_i ω ω(n-1)''_i` (`n > 0`), dually with ω̄.
    pub fn omega_n_alt(&self, n: i64) -> Result<Tensor2> {
        self.check_bound(n)?;
        let base = self.base_for(n);
        let mut acc = Tensor2::unit(&self.alg);
        for _ in 0..n.unsigned_abs() {
            let mut pairs = Vec::with_capacity(base.len() * acc.len());
            for (ll, rr) in &acc.pairs {
                for (l, r) in &base.pairs {
                    pairs.push((ll.mul(l)?, r.mul(rr)?));
                }
            }
            acc = Tensor2 { pairs, bidegree: (acc.bidegree.0 + base.bidegree.0, acc.bidegree.1 + base.bidegree.1) };
        }
        Ok(acc)
    }

    /// `E(n)_{ij} = ω''(n)_i ω'(n)_j`, read in `B(p; q, 0)`.
    pub fn idempotent(&self, n: i64) -> Result<IdemMatrix> {
        let w = self.omega_n(n)?;
        let entries = w
            .pairs
            .iter()
            .map(|(_, r)| {
                w.pairs
                    .iter()
                    .map(|(l, _)| self.alg.project_degree_zero(&r.mul(l)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdemMatrix { n, entries })
    }

    /// `e_n = Tr E(n) = Σ_i ω''(n)_i ω'(n)_i` as a polynomial in `z`.
    pub fn trace_idempotent(&self, n: i64) -> Result<UniPoly> {
        let w = self.omega_n(n)?;
        let mut acc = self.alg.zero();
        for (l, r) in &w.pairs {
            acc = acc.add(&r.mul(l)?)?;
        }
        let b = self.alg.project_degree_zero(&acc)?;
        b.as_poly().ok_or_else(|| Error::NonPolynomialTrace(b.to_string()))
    }

    /// Row vector of `a ∈ A^{(k)}_n` in `B^N E(n)`:
    /// `row_j = Σ_i (a ω'(n)_i) E(n)_{ij}`.
    pub fn module_row(&self, n: i64, a: &AmbElem) -> Result<Vec<GwaElem>> {
        let expected = n * self.alg.k() as i64;
        if !a.is_homogeneous_of(expected) {
            return Err(Error::NotHomogeneous { expected });
        }
        let w = self.omega_n(n)?;
        let e = self.idempotent(n)?;
        let coords = w
            .pairs
            .iter()
            .map(|(l, _)| self.alg.project_degree_zero(&a.mul(l)?))
            .collect::<Result<Vec<_>>>()?;
        let base = self.alg.base_algebra();
        (0..e.size())
            .map(|j| {
                coords.iter().enumerate().try_fold(base.zero(), |acc, (i, c)| acc.add(&c.mul(&e.entries[i][j])?))
            })
            .collect()
    }

    /// The inverse `Σ_i v_i φ(u_i)` of `u = φ^{-1}(1)`, built from an
    /// isomorphism `φ: A^{(k)}_n -> B` of left modules and the legs
    /// `v_i ⊗ u_i` of `ω(n)`.
    pub fn inverse_from_isomorphism<F>(&self, n: i64, phi: F) -> Result<AmbElem>
    where
        F: Fn(&AmbElem) -> Result<GwaElem>,
    {
        let w = self.omega_n(n)?;
        let mut acc = self.alg.zero();
        for (v, u) in &w.pairs {
            acc = acc.add(&v.mul(&self.alg.embed_b(&phi(u)?)?)?)?;
        }
        Ok(acc)
    }
}

fn push_pair(pairs: &mut Vec<(AmbElem, AmbElem)>, l: AmbElem, r: AmbElem) {
    if !l.is_zero() && !r.is_zero() {
        pairs.push((l, r));
    }
}

pub fn omega(alg: &AmbAlgebra) -> Tensor2 {
    let k = alg.k();
    let c = alg.p_tilde().coeff(0);
    let norm = rat_pow(&c, -(k as i64));
    let q = alg.q();
    let zero = Rational::zero();
    let hat_qz = alg.p_hat().compose_affine(q, &zero);
    let first_coeff = hat_qz.pow(k).scale(&rat_pow(q, k as i64)).scale(&norm);
    let s = sum_s(alg);
    let mut pairs = Vec::new();
    push_pair(&mut pairs, alg.in_z(&first_coeff).mul(&alg.z_minus().pow(k)).unwrap(), alg.z_plus().pow(k));
    push_pair(&mut pairs, alg.x_minus().scale(&norm), alg.in_z(&s).mul(&alg.x_plus()).unwrap());
    Tensor2 { pairs, bidegree: (-1, 1) }
}

/// `S(z) = Σ_{i=0}^{k-1} z^i p^(z)^i c^{k-i-1}`.
fn sum_s(alg: &AmbAlgebra) -> UniPoly {
    let k = alg.k();
    let c = alg.p_tilde().coeff(0);
    let zp = alg.p_hat().shift(1);
    (0..k).fold(UniPoly::zero(), |acc, i| &acc + &zp.pow(i).scale(&rat_pow(&c, (k - i - 1) as i64)))
}

pub fn omega_bar(alg: &AmbAlgebra) -> Result<Tensor2> {
    let k = alg.k();
    let c = alg.p_tilde().coeff(0);
    let norm = rat_pow(&c, -(k as i64));
    let q = alg.q();
    let zero = Rational::zero();
    let hat_qz = alg.p_hat().compose_affine(q, &zero);
    let numer = &UniPoly::constant(rat_pow(&c, k as i64))
        - &hat_qz.pow(k).shift(k).scale(&rat_pow(q, k as i64));
    let quotient = numer.div_exact(&alg.p_tilde().compose_affine(q, &zero))?;
    let first = alg.p_hat().pow(k).scale(&norm);
    let mut pairs = Vec::new();
    push_pair(&mut pairs, alg.in_z(&first).mul(&alg.z_plus().pow(k)).unwrap(), alg.z_minus().pow(k));
    push_pair(&mut pairs, alg.x_plus().scale(&norm), alg.in_z(&quotient).mul(&alg.x_minus()).unwrap());
    Ok(Tensor2 { pairs, bidegree: (1, -1) })
}

pub fn omega_n(alg: &AmbAlgebra, n: i64) -> Result<Tensor2> {
    StrongConnection::new(alg)?.omega_n(n)
}

pub fn omega_n_alt(alg: &AmbAlgebra, n: i64) -> Result<Tensor2> {
    StrongConnection::new(alg)?.omega_n_alt(n)
}

pub fn idempotent(alg: &AmbAlgebra, n: i64) -> Result<IdemMatrix> {
    StrongConnection::new(alg)?.idempotent(n)
}

pub fn trace_idempotent(alg: &AmbAlgebra, n: i64) -> Result<UniPoly> {
    StrongConnection::new(alg)?.trace_idempotent(n)
}

pub fn module_row(alg: &AmbAlgebra, n: i64, a: &AmbElem) -> Result<Vec<GwaElem>> {
    StrongConnection::new(alg)?.module_row(n, a)
}

/// `e_n` from the polynomial recursion
///
/// ```text
/// e_1(z)     = c^{-k} (q^k p^(qz)^k - p^(z)^k) z^k + 1,
/// e_{m+1}(z) = c^{-k} ((c^k - p^(z)^k z^k) e_m(z/q) - (c^k - q^k p^(qz)^k z^k) e_m(z)) + e_m(z),
/// ```
///
/// without touching the algebra.
pub fn e_n_recursive(alg: &AmbAlgebra, n: u32) -> UniPoly {
    if n == 0 {
        return UniPoly::one();
    }
    let k = alg.k();
    let c = alg.p_tilde().coeff(0);
    let ck = rat_pow(&c, k as i64);
    let norm = ck.recip();
    let q = alg.q();
    let zero = Rational::zero();
    let hat_z_k = alg.p_hat().pow(k).shift(k);
    let hat_qz_k = alg.p_hat().compose_affine(q, &zero).pow(k).shift(k).scale(&rat_pow(q, k as i64));
    let mut e = &(&hat_qz_k - &hat_z_k).scale(&norm) + &UniPoly::one();
    let left = &UniPoly::constant(ck.clone()) - &hat_z_k;
    let right = &UniPoly::constant(ck) - &hat_qz_k;
    for _ in 1..n {
        let shifted = e.compose_affine(&q.recip(), &zero);
        let step = &(&left * &shifted) - &(&right * &e);
        e = &step.scale(&norm) + &e;
    }
    e
}

/// A unit of Veronese degree `n` with its inverse, found when `p~` is a
/// non-zero constant (so `x_±` are invertible). `None` otherwise; that is
/// not a proof that no unit exists.
pub fn unit_in_degree(alg: &AmbAlgebra, n: i64) -> Option<(AmbElem, AmbElem)> {
    if n == 0 {
        return Some((alg.one(), alg.one()));
    }
    if !alg.p_tilde().is_constant() {
        return None;
    }
    let c = alg.p_tilde().coeff(0);
    let m = n.unsigned_abs() as u32;
    let inv_scale = rat_pow(&c, -(m as i64));
    let (u, u_inv) = if n > 0 {
        (alg.x_plus().pow(m), alg.x_minus().pow(m).scale(&inv_scale))
    } else {
        (alg.x_minus().pow(m), alg.x_plus().pow(m).scale(&inv_scale))
    };
    let one = alg.one();
    if u.mul(&u_inv).ok()? != one || u_inv.mul(&u).ok()? != one {
        return None;
    }
    Some((u, u_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::tests::{kleinian, lens_2_1_2, poly, random_amb, sphere};
    use crate::scalar_poly::{int, rat};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn presets() -> Vec<AmbAlgebra> {
        vec![sphere(), lens_2_1_2(), kleinian()]
    }

    fn tensor(pairs: Vec<(AmbElem, AmbElem)>, bidegree: (i64, i64)) -> Tensor2 {
        Tensor2 { pairs, bidegree }
    }

    #[test]
    fn sphere_omegas() {
        let a = sphere();
        let expected = tensor(
            vec![(a.z_minus().scale(&int(4)), a.z_plus()), (a.x_minus(), a.x_plus())],
            (-1, 1),
        );
        assert!(omega(&a).canonically_eq(&expected));
        let expected_bar = tensor(vec![(a.z_plus(), a.z_minus()), (a.x_plus(), a.x_minus())], (1, -1));
        assert!(omega_bar(&a).unwrap().canonically_eq(&expected_bar));
    }

    #[test]
    fn monomial_p_drops_vanishing_pair() {
        let a = AmbAlgebra::new(poly(&[0, 0, 1]), int(2), int(3)).unwrap();
        let bar = omega_bar(&a).unwrap();
        assert_eq!(bar.len(), 1);
        assert!(bar.canonically_eq(&tensor(vec![(a.x_plus(), a.x_minus())], (1, -1))));
        assert!(check_connection(&bar));
    }

    #[test]
    fn connections_multiply_to_one() {
        for a in presets() {
            let (w, wb) = (omega(&a), omega_bar(&a).unwrap());
            assert!(check_connection(&w) && check_connection(&wb));
            assert!(w.legs_have_bidegree(a.k()) && wb.legs_have_bidegree(a.k()));
        }
        let a = sphere();
        assert!(check_connection(&Tensor2::unit(&a)));
        assert!(!check_connection(&tensor(vec![(a.z_plus(), a.z_minus())], (0, 0))));
    }

    #[test]
    fn recursion_base_cases() {
        let a = kleinian();
        let conn = StrongConnection::new(&a).unwrap();
        assert!(conn.omega_n(0).unwrap().canonically_eq(&Tensor2::unit(&a)));
        assert!(conn.omega_n(1).unwrap().canonically_eq(conn.omega()));
        assert!(conn.omega_n_alt(1).unwrap().canonically_eq(conn.omega()));
        assert!(conn.omega_n(-1).unwrap().canonically_eq(conn.omega_bar()));
        let two = omega_n(&sphere(), 2).unwrap();
        assert_eq!(two.len(), 4);
        assert!(check_connection(&two));
    }

    #[test]
    fn recursions_agree_and_connect() {
        for a in presets() {
            let conn = StrongConnection::new(&a).unwrap();
            for n in -3..=3 {
                let w = conn.omega_n(n).unwrap();
                assert!(check_connection(&w), "n = {n}");
                assert!(w.legs_have_bidegree(a.k()));
                assert!(w.canonically_eq(&conn.omega_n_alt(n).unwrap()), "n = {n}");
            }
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let conn = StrongConnection::new(&sphere()).unwrap();
        assert_eq!(conn.omega_n(6).unwrap_err(), Error::DegreeBound { n: 6, bound: 5 });
        let tight = conn.with_max_degree(1);
        assert!(tight.idempotent(-2).is_err());
    }

    #[test]
    fn sphere_first_idempotent() {
        let a = sphere();
        let b = a.base_algebra();
        let e = idempotent(&a, 1).unwrap();
        let expected = vec![
            vec![b.z().scale(&int(4)), b.x().scale(&rat(1, 2))],
            vec![b.y().scale(&int(2)), b.poly(poly(&[1, -1]))],
        ];
        assert_eq!(e.entries, expected);
        assert!(e.is_idempotent().unwrap());
        assert_eq!(e.trace().unwrap(), b.poly(poly(&[1, 3])));
        assert_eq!(idempotent(&a, 0).unwrap().entries, vec![vec![b.one()]]);
        let json = e.to_json();
        assert_eq!(json["n"], 1);
        assert_eq!(json["size"], 2);
        assert_eq!(json["entries"][0][1], "x*(1/2)");
    }

    #[test]
    fn idempotents_are_idempotent() {
        for a in presets() {
            let conn = StrongConnection::new(&a).unwrap();
            for n in -2..=2 {
                let e = conn.idempotent(n).unwrap();
                assert_eq!(e.size(), 1 << n.unsigned_abs());
                assert!(e.is_idempotent().unwrap(), "n = {n}");
            }
        }
    }

    #[test]
    fn traces_match_recursion() {
        let a = sphere();
        assert_eq!(trace_idempotent(&a, 1).unwrap(), poly(&[1, 3]));
        assert_eq!(e_n_recursive(&a, 1), poly(&[1, 3]));
        assert_eq!(trace_idempotent(&a, 0).unwrap(), UniPoly::one());
        for a in presets() {
            let conn = StrongConnection::new(&a).unwrap();
            for n in 1..=3u32 {
                let e = conn.trace_idempotent(n as i64).unwrap();
                assert_eq!(e, e_n_recursive(&a, n));
                assert_eq!(e.coeff(0), int(1));
            }
        }
    }

    #[test]
    fn module_rows_are_fixed_by_idempotent() {
        let mut rng = StdRng::seed_from_u64(21);
        for a in presets() {
            let conn = StrongConnection::new(&a).unwrap();
            let b = a.base_algebra();
            assert_eq!(conn.module_row(0, &a.one()).unwrap(), vec![b.one()]);
            for n in -2..=2i64 {
                let e = conn.idempotent(n).unwrap();
                for _ in 0..5 {
                    let elem = random_amb(&a, &mut rng).component(n * a.k() as i64);
                    let row = conn.module_row(n, &elem).unwrap();
                    let fixed: Vec<GwaElem> = (0..e.size())
                        .map(|j| (0..e.size()).fold(b.zero(), |acc, i| acc.add(&row[i].mul(&e.entries[i][j]).unwrap()).unwrap()))
                        .collect();
                    assert_eq!(fixed, row);
                    let d0 = crate::gwa_core::tests::random_elem(&b, &mut rng, 1, 1);
                    let left = conn.module_row(n, &a.embed_b(&d0).unwrap().mul(&elem).unwrap()).unwrap();
                    let scaled: Vec<GwaElem> = row.iter().map(|r| d0.mul(r).unwrap()).collect();
                    assert_eq!(left, scaled);
                }
            }
            assert!(conn.module_row(1, &a.one()).is_err());
        }
    }

    #[test]
    fn units_when_p_tilde_is_constant() {
        let a = AmbAlgebra::new(poly(&[0, 0, 1]), int(2), int(2)).unwrap();
        let (u, u_inv) = unit_in_degree(&a, 1).unwrap();
        assert_eq!(u, a.x_plus());
        assert_eq!(u_inv, a.x_minus());
        assert_eq!(unit_in_degree(&a, 0).unwrap(), (a.one(), a.one()));
        let scaled = AmbAlgebra::new(poly(&[0, 0, 0, 5]), rat(1, 2), int(3)).unwrap();
        for n in -3..=3 {
            let (u, u_inv) = unit_in_degree(&scaled, n).unwrap();
            assert!(u.is_homogeneous_of(n * 3));
            assert_eq!(u.mul(&u_inv).unwrap(), scaled.one());
        }
        for n in [-2, -1, 1, 2] {
            assert!(unit_in_degree(&sphere(), n).is_none());
        }
    }

    #[test]
    fn inverse_from_module_isomorphism() {
        let a = AmbAlgebra::new(poly(&[0, 0, 7]), int(3), rat(1, 2)).unwrap();
        let conn = StrongConnection::new(&a).unwrap();
        for n in -2..=2 {
            let (u, u_inv) = unit_in_degree(&a, n).unwrap();
            let phi = |x: &AmbElem| a.project_degree_zero(&x.mul(&u_inv)?);
            assert_eq!(conn.inverse_from_isomorphism(n, phi).unwrap(), u_inv);
            let row = conn.module_row(n, &u).unwrap();
            // u maps to the single coordinate 1 up to the idempotent's row
            assert!(row.iter().any(|c| !c.is_zero()));
        }
    }
}
