//! Degree-bounded analysis of group gradings.
//!
//! A grading is strong in degree `g` when `1` is a sum of products `a b`
//! with `a` of degree `g` and `b` of degree `-g`. [`witness_search`] looks
//! for such a sum among basis monomials of bounded size by solving an
//! exact linear system; failure only means "none within the bound".
//!
//! Views over `Z` can be coarsened along `Z -> Z/kZ` ([`induced_quotient_view`])
//! or restricted along `n -> kn` ([`veronese_view`]), and witnesses for
//! the two induced gradings recombine into one for the original grading
//! ([`compose_witnesses`]).

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::ambient::{AmbAlgebra, AmbElem, MonomialKey};
use crate::connection::StrongConnection;
use crate::error::{Error, Result};
use crate::scalar_poly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingGroup {
    Integers,
    Cyclic(u32),
}

impl GradingGroup {
    /// Canonical representative of `g`.
    pub fn reduce(&self, g: i64) -> i64 {
        match self {
            Self::Integers => g,
            Self::Cyclic(k) => g.rem_euclid(*k as i64),
        }
    }

    pub fn inverse(&self, g: i64) -> i64 {
        self.reduce(-g)
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => f.write_str("Z"),
            Self::Cyclic(k) => write!(f, "Z/{k}Z"),
        }
    }
}

/// A graded algebra with a monomial basis that can be enumerated by degree
/// and size.
pub trait GradedView {
    type Elem: Clone + fmt::Display;
    type Key: Ord + Clone;

    fn group(&self) -> GradingGroup;
    /// All basis monomials of degree `g` whose size is at most `bound`,
    /// in a deterministic order.
    fn basis(&self, g: i64, bound: u32) -> Vec<Self::Elem>;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn expand(&self, e: &Self::Elem) -> Vec<(Self::Key, Rational)>;
    fn unit_key(&self) -> Self::Key;
    fn one(&self) -> Self::Elem;
    fn scale(&self, e: &Self::Elem, c: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Degree of a non-zero homogeneous element.
    fn degree(&self, e: &Self::Elem) -> Option<i64>;
    /// Largest `|g|` of a basis monomial of size at most `bound`.
    fn max_abs_degree(&self, bound: u32) -> i64;

    fn coefficient_of_one(&self, e: &Self::Elem) -> Rational {
        let unit = self.unit_key();
        self.expand(e).into_iter().filter(|(k, _)| *k == unit).map(|(_, c)| c).fold(Rational::zero(), |a, c| a + c)
    }

    fn is_one(&self, e: &Self::Elem) -> bool {
        let unit = self.unit_key();
        let terms = self.expand(e);
        terms.len() == 1 && terms[0].0 == unit && terms[0].1.is_one()
    }
}

/// `A(p; q_±)` with its Z-grading `deg z_± = ±1`, `deg x_± = ±k`. The size
/// of `x_∓^m z_+^a z_-^b` is `|m| + a + b`.
#[derive(Clone, Debug)]
pub struct AmbientView {
    alg: AmbAlgebra,
}

impl AmbientView {
    pub fn new(alg: &AmbAlgebra) -> Self {
        Self { alg: alg.clone() }
    }
}

impl GradedView for AmbientView {
    type Elem = AmbElem;
    type Key = MonomialKey;

    fn group(&self) -> GradingGroup {
        GradingGroup::Integers
    }

    fn basis(&self, g: i64, bound: u32) -> Vec<AmbElem> {
        let k = self.alg.k() as i64;
        let bound = bound as i64;
        let mut out = Vec::new();
        for m in -bound..=bound {
            // a - b = g + mk
            let diff = g + m * k;
            let room = bound - m.abs();
            for b in 0..=room {
                let a = b + diff;
                if a < 0 || a + b > room {
                    continue;
                }
                out.push(self.alg.monomial((m, a as u32, b as u32), Rational::one()));
            }
        }
        out
    }

    fn multiply(&self, a: &AmbElem, b: &AmbElem) -> AmbElem {
        a.mul(b).expect("view elements share the algebra")
    }

    fn expand(&self, e: &AmbElem) -> Vec<(MonomialKey, Rational)> {
        e.monomials().map(|(k, c)| (k, c.clone())).collect()
    }

    fn unit_key(&self) -> MonomialKey {
        (0, 0, 0)
    }

    fn one(&self) -> AmbElem {
        self.alg.one()
    }

    fn scale(&self, e: &AmbElem, c: &Rational) -> AmbElem {
        e.scale(c)
    }

    fn add(&self, a: &AmbElem, b: &AmbElem) -> AmbElem {
        a.add(b).expect("view elements share the algebra")
    }

    fn degree(&self, e: &AmbElem) -> Option<i64> {
        let degrees = e.degrees();
        match degrees.len() {
            1 => degrees.into_iter().next(),
            _ => None,
        }
    }

    fn max_abs_degree(&self, bound: u32) -> i64 {
        bound as i64 * (self.alg.k() as i64).max(1)
    }
}

/// The `Z/kZ`-grading induced by `n -> n mod k` on a Z-graded view.
#[derive(Clone, Debug)]
pub struct QuotientView<V> {
    inner: V,
    k: u32,
}

/// The Z-graded subalgebra of degrees divisible by `k`, regraded by `n / k`.
#[derive(Clone, Debug)]
pub struct VeroneseView<V> {
    inner: V,
    k: u32,
}

pub fn induced_quotient_view<V: GradedView>(view: V, k: u32) -> Result<QuotientView<V>> {
    if k == 0 || view.group() != GradingGroup::Integers {
        return Err(Error::InvalidParameter("quotient needs a Z-graded view and k >= 1".into()));
    }
    Ok(QuotientView { inner: view, k })
}

pub fn veronese_view<V: GradedView>(view: V, k: u32) -> Result<VeroneseView<V>> {
    if k == 0 || view.group() != GradingGroup::Integers {
        return Err(Error::InvalidParameter("Veronese needs a Z-graded view and k >= 1".into()));
    }
    Ok(VeroneseView { inner: view, k })
}

macro_rules! delegate_algebra {
    () => {
        fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
            self.inner.multiply(a, b)
        }
        fn expand(&self, e: &Self::Elem) -> Vec<(Self::Key, Rational)> {
            self.inner.expand(e)
        }
        fn unit_key(&self) -> Self::Key {
            self.inner.unit_key()
        }
        fn one(&self) -> Self::Elem {
            self.inner.one()
        }
        fn scale(&self, e: &Self::Elem, c: &Rational) -> Self::Elem {
            self.inner.scale(e, c)
        }
        fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
            self.inner.add(a, b)
        }
    };
}

impl<V: GradedView> GradedView for QuotientView<V> {
    type Elem = V::Elem;
    type Key = V::Key;

    fn group(&self) -> GradingGroup {
        GradingGroup::Cyclic(self.k)
    }

    fn basis(&self, g: i64, bound: u32) -> Vec<V::Elem> {
        let k = self.k as i64;
        let h = g.rem_euclid(k);
        let span = self.inner.max_abs_degree(bound);
        (-span..=span).filter(|d| d.rem_euclid(k) == h).flat_map(|d| self.inner.basis(d, bound)).collect()
    }

    fn degree(&self, e: &V::Elem) -> Option<i64> {
        self.inner.degree(e).map(|d| d.rem_euclid(self.k as i64))
    }

    fn max_abs_degree(&self, _bound: u32) -> i64 {
        self.k as i64 - 1
    }

    delegate_algebra!();
}

impl<V: GradedView> GradedView for VeroneseView<V> {
    type Elem = V::Elem;
    type Key = V::Key;

    fn group(&self) -> GradingGroup {
        GradingGroup::Integers
    }

    fn basis(&self, g: i64, bound: u32) -> Vec<V::Elem> {
        self.inner.basis(g * self.k as i64, bound)
    }

    fn degree(&self, e: &V::Elem) -> Option<i64> {
        let k = self.k as i64;
        self.inner.degree(e).filter(|d| d % k == 0).map(|d| d / k)
    }

    fn max_abs_degree(&self, bound: u32) -> i64 {
        self.inner.max_abs_degree(bound) / self.k as i64
    }

    delegate_algebra!();
}

/// `Σ_i c_i a_i b_i`, meant to equal 1.
#[derive(Clone, Debug)]
pub struct Witness<E> {
    pub pairs: Vec<(E, E, Rational)>,
}

impl<E: Clone + fmt::Display> Witness<E> {
    pub fn product<V: GradedView<Elem = E>>(&self, view: &V) -> E {
        let zero = view.scale(&view.one(), &Rational::zero());
        self.pairs.iter().fold(zero, |acc, (a, b, c)| view.add(&acc, &view.scale(&view.multiply(a, b), c)))
    }

    /// Recomputes `Σ c_i a_i b_i` and compares with 1.
    pub fn check_product<V: GradedView<Elem = E>>(&self, view: &V) -> bool {
        view.is_one(&self.product(view))
    }

    /// `[[a, b, c], ...]` with canonical element strings.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Row(String, String, String);
        let rows: Vec<Row> = self.pairs.iter().map(|(a, b, c)| Row(a.to_string(), b.to_string(), c.to_string())).collect();
        serde_json::to_value(rows).expect("plain data serializes")
    }
}

/// Dense matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn from_rows(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.data[i][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].recip();
            for v in self.data[row].iter_mut().skip(col) {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let pivot_row = self.data[row].clone();
            for (i, r) in self.data.iter_mut().enumerate() {
                if i == row || r[col].is_zero() {
                    continue;
                }
                let f = r[col].clone();
                for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                    if !pv.is_zero() {
                        r[j] -= &f * pv;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// One solution of `self · x = rhs` (free variables set to 0), or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for (i, row) in self.data.iter().enumerate() {
            aug.data[i][..self.cols].clone_from_slice(row);
            aug.data[i][self.cols] = rhs[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = aug.data[i][self.cols].clone();
        }
        Some(x)
    }
}

/// Searches for `Σ c_ij a_i b_j = 1` with `a_i` of degree `g`, `b_j` of
/// degree `-g` and both of size at most `bound`.
///
/// Products that agree up to a scalar share one unknown. `None` means no
/// witness exists among monomials of that size.
pub fn witness_search<V: GradedView>(view: &V, g: i64, bound: u32) -> Option<Witness<V::Elem>> {
    let group = view.group();
    if group.reduce(g) == 0 {
        return Some(Witness { pairs: vec![(view.one(), view.one(), Rational::one())] });
    }
    let lefts = view.basis(group.reduce(g), bound);
    let rights = view.basis(group.inverse(g), bound);

    // normalized product vector -> (left index, right index, scale)
    type Columns<K> = BTreeMap<Vec<(K, Rational)>, (usize, usize, Rational)>;
    let mut columns: Columns<V::Key> = BTreeMap::new();
    for (i, a) in lefts.iter().enumerate() {
        for (j, b) in rights.iter().enumerate() {
            let mut v = view.expand(&view.multiply(a, b));
            if v.is_empty() {
                continue;
            }
            v.sort_by(|x, y| x.0.cmp(&y.0));
            let lead = v[0].1.clone();
            for entry in v.iter_mut() {
                entry.1 /= &lead;
            }
            columns.entry(v).or_insert((i, j, lead));
        }
    }
    let mut keys: BTreeMap<V::Key, usize> = BTreeMap::new();
    keys.insert(view.unit_key(), 0);
    for v in columns.keys() {
        for (key, _) in v {
            let next = keys.len();
            keys.entry(key.clone()).or_insert(next);
        }
    }
    let mut system = ExactMatrix::zeros(keys.len(), columns.len());
    for (col, v) in columns.keys().enumerate() {
        for (key, c) in v {
            system.set(keys[key], col, c.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); keys.len()];
    rhs[0] = Rational::one();
    let solution = system.solve(&rhs)?;
    let pairs = columns
        .values()
        .zip(solution)
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j, scale), c)| (lefts[*i].clone(), rights[*j].clone(), c / scale))
        .collect();
    Some(Witness { pairs })
}

/// Recombines witnesses of the induced gradings into one for the middle
/// grading of `0 -> Z --(·k)--> Z -> Z/kZ -> 0`.
///
/// Each `a_j` of the quotient witness for `g mod k` has G-degree
/// `g + k·k_j`; the Veronese witness of degree `-k_j` corrects it, and
/// `Σ_{i,j} (a_j a_ij)(b_ij b_j) = 1`.
pub fn compose_witnesses<V: GradedView>(
    view: &V,
    k: u32,
    quotient: &BTreeMap<i64, Witness<V::Elem>>,
    veronese: &BTreeMap<i64, Witness<V::Elem>>,
    g: i64,
) -> Result<Witness<V::Elem>> {
    if g == 0 {
        return Ok(Witness { pairs: vec![(view.one(), view.one(), Rational::one())] });
    }
    let k = k as i64;
    let h = g.rem_euclid(k);
    let outer = quotient.get(&h).ok_or(Error::MissingCorrector(h))?;
    let mut pairs = Vec::new();
    for (a, b, c) in &outer.pairs {
        let d = view.degree(a).ok_or(Error::NotHomogeneous { expected: g })?;
        if (d - g).rem_euclid(k) != 0 {
            return Err(Error::NotHomogeneous { expected: g });
        }
        let kj = (d - g) / k;
        let inner = veronese.get(&-kj).ok_or(Error::MissingCorrector(-kj))?;
        for (ai, bi, ci) in &inner.pairs {
            pairs.push((view.multiply(a, ai), view.multiply(bi, b), c * ci));
        }
    }
    Ok(Witness { pairs })
}

/// Witness of Veronese degree `g` for `A^{(k)}` read off `ω(-g)`, whose
/// legs lie in degrees `g` and `-g`.
pub fn witness_from_connection(conn: &StrongConnection, g: i64) -> Result<Witness<AmbElem>> {
    let w = conn.omega_n(-g)?;
    Ok(Witness { pairs: w.pairs.into_iter().map(|(a, b)| (a, b, Rational::one())).collect() })
}
