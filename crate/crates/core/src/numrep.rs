//! Floating point realizations of `B(p; q, r)` by real matrices.
//!
//! Two families: the one-dimensional representations at the fixed point
//! `r / (1 - q)` of `σ`, and the truncated orbit representations on
//! `span(e_0, ..., e_{N-1})` with `z e_k = q^k ζ e_k`.

use nalgebra::DMatrix;
use num::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gwa_core::GwaAlgebra;
use crate::scalar_poly::UniPoly;

fn to_f64(r: &crate::scalar_poly::Rational) -> f64 {
    r.to_f64().expect("rationals convert to f64")
}

/// Scalar images of the generators in a one-dimensional representation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OneDimRep {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    #[serde(skip)]
    p: UniPoly,
    q: f64,
    r: f64,
}

impl OneDimRep {
    /// Relative residuals of `xy = p(qz+r)`, `yx = p(z)`, `xz = (qz+r)x`,
    /// `yz = q^{-1}(z-r)y`, in that order.
    pub fn residuals(&self) -> [f64; 4] {
        let (x, y, z, q, r) = (self.x, self.y, self.z, self.q, self.r);
        let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / rhs.abs().max(1.0);
        [
            rel(x * y, self.p.eval_f64(q * z + r)),
            rel(y * x, self.p.eval_f64(z)),
            rel(x * z, (q * z + r) * x),
            rel(y * z, (z - r) / q * y),
        ]
    }
}

/// `z ↦ r/(1-q)`, `x = y ↦ λ sqrt(p(r/(1-q)))` for `λ = ±1`.
pub fn one_dim_rep(alg: &GwaAlgebra, lambda: i8) -> Result<OneDimRep> {
    if lambda != 1 && lambda != -1 {
        return Err(Error::InvalidParameter(format!("lambda must be 1 or -1, got {lambda}")));
    }
    if alg.q().is_one() {
        return Err(Error::InvalidParameter("q = 1 has no finite fixed point".into()));
    }
    let (q, r) = (to_f64(alg.q()), to_f64(alg.r()));
    let z = r / (1.0 - q);
    let radicand = alg.p().eval_f64(z);
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand(radicand));
    }
    let x = f64::from(lambda) * radicand.sqrt();
    Ok(OneDimRep { x, y: x, z, p: alg.p().clone(), q, r })
}

/// Orbit representation truncated to dimension `n`. The matrices are public
/// so that they can be inspected or perturbed.
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    pub n: usize,
    pub zeta: f64,
    pub q: f64,
    pub x: DMatrix<f64>,
    pub y: DMatrix<f64>,
    pub z: DMatrix<f64>,
    p: UniPoly,
    /// `p(q^k ζ)` for `0 <= k <= n`.
    pub orbit_values: Vec<f64>,
}

pub fn truncated_rep(alg: &GwaAlgebra, zeta: f64, n: usize) -> Result<TruncatedRep> {
    if !alg.r().is_zero() {
        return Err(Error::InvalidParameter("truncated representations need r = 0".into()));
    }
    let q = to_f64(alg.q());
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let orbit: Vec<f64> = (0..=n).map(|k| q.powi(k as i32) * zeta).collect();
    let orbit_values: Vec<f64> = orbit.iter().map(|&t| alg.p().eval_f64(t)).collect();
    // NaN counts as a violation
    if let Some(k) = (1..=n).find(|&k| orbit_values[k].partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::SignViolation { k, value: orbit_values[k] });
    }
    let mut x = DMatrix::zeros(n, n);
    for k in 1..n {
        x[(k - 1, k)] = orbit_values[k].sqrt();
    }
    let y = x.transpose();
    let z = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, orbit[..n].iter().copied()));
    Ok(TruncatedRep { n, zeta, q, x, y, z, p: alg.p().clone(), orbit_values })
}

/// Largest interior residual of each relation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub dim: usize,
    /// Basis indices the residuals were taken over.
    pub indices: Vec<usize>,
    pub xy: f64,
    pub yx: f64,
    pub xz: f64,
    pub yz: f64,
    /// Positivity of `p(q^k ζ)` was only checked for `1 <= k <= checked_up_to`.
    pub checked_up_to: usize,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.xy.max(self.yx).max(self.xz).max(self.yz)
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.max() < tol
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

impl TruncatedRep {
    /// `p(M)` by Horner's scheme.
    fn poly_of(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let mut acc = DMatrix::zeros(self.n, self.n);
        let id = DMatrix::identity(self.n, self.n);
        let top = self.p.degree().unwrap_or(0);
        for e in (0..=top).rev() {
            acc = &acc * m + &id * to_f64(&self.p.coeff(e));
        }
        acc
    }

    /// Residuals of the four defining relations (with `r = 0`) over the
    /// interior indices `1..=n-2`. For `n = 2` index 1 is used; the last
    /// index is never tested against `xy`, whose `y` leaves the truncation.
    pub fn relation_residuals(&self) -> ResidualReport {
        let n = self.n;
        let qz = &self.z * self.q;
        let zq = &self.z / self.q;
        let xy = &self.x * &self.y - self.poly_of(&qz);
        let yx = &self.y * &self.x - self.poly_of(&self.z);
        let xz = &self.x * &self.z - &qz * &self.x;
        let yz = &self.y * &self.z - &zq * &self.y;
        let indices: Vec<usize> = if n >= 3 { (1..=n - 2).collect() } else if n == 2 { vec![1] } else { vec![] };
        let worst = |m: &DMatrix<f64>, skip_last: bool| {
            indices.iter().filter(|&&k| !(skip_last && k + 1 == n)).map(|&k| m.column(k).norm()).fold(0.0, f64::max)
        };
        ResidualReport {
            dim: n,
            xy: worst(&xy, true),
            yx: worst(&yx, false),
            xz: worst(&xz, false),
            yz: worst(&yz, false),
            indices,
            checked_up_to: n,
        }
    }

    /// Eigenvalues of the `z` matrix in decreasing order.
    pub fn z_spectrum(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.z.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        ev
    }
}

/// Comma separated rows.
pub fn matrix_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:e}", m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_poly::{int, rat};

    fn sphere_b(q: crate::scalar_poly::Rational) -> GwaAlgebra {
        GwaAlgebra::new(UniPoly::from_coeffs(vec![int(0), int(1), int(-1)]), q, int(0)).unwrap()
    }

    #[test]
    fn one_dim_examples() {
        let b = sphere_b(int(4));
        for lambda in [1, -1] {
            let rep = one_dim_rep(&b, lambda).unwrap();
            assert_eq!((rep.z, rep.x, rep.y), (0.0, 0.0, 0.0));
            assert!(rep.residuals().iter().all(|&r| r < 1e-12));
        }
        // p = (z - 2) z, q = 1/2, r = 1: fixed point 2
        let b = GwaAlgebra::new(UniPoly::from_coeffs(vec![int(0), int(-2), int(1)]), rat(1, 2), int(1)).unwrap();
        let rep = one_dim_rep(&b, 1).unwrap();
        assert_eq!(rep.z, 2.0);
        assert_eq!(rep.x, 0.0);
        // p = 3 - z with q = 1/2, r = 1: p(2) = 1, x = ±1
        let b = GwaAlgebra::new(UniPoly::from_coeffs(vec![int(3), int(-1)]), rat(1, 2), int(1)).unwrap();
        let rep = one_dim_rep(&b, -1).unwrap();
        assert_eq!(rep.x, -1.0);
        assert!(rep.residuals().iter().all(|&r| r < 1e-12));
    }

    #[test]
    fn one_dim_errors() {
        let b = GwaAlgebra::new(UniPoly::from_coeffs(vec![int(-1)]), rat(1, 2), int(1)).unwrap();
        assert!(matches!(one_dim_rep(&b, 1), Err(Error::NegativeRadicand(v)) if v == -1.0));
        let b = GwaAlgebra::new(UniPoly::z(), int(1), int(1)).unwrap();
        assert!(matches!(one_dim_rep(&b, 1), Err(Error::InvalidParameter(_))));
        assert!(one_dim_rep(&sphere_b(int(4)), 2).is_err());
    }

    #[test]
    fn sphere_orbit_rep() {
        let rep = truncated_rep(&sphere_b(rat(1, 4)), 1.0, 16).unwrap();
        for k in 0..16 {
            assert!((rep.z[(k, k)] - 0.25f64.powi(k as i32)).abs() < 1e-15);
        }
        for k in 1..16 {
            let t = 0.25f64.powi(k as i32);
            assert!((rep.x[(k - 1, k)] - (t * (1.0 - t)).sqrt()).abs() < 1e-15);
        }
        let report = rep.relation_residuals();
        assert!(report.pass(1e-10), "{report:?}");
        assert_eq!(report.indices, (1..=14).collect::<Vec<_>>());
        let spectrum = rep.z_spectrum();
        for (k, ev) in spectrum.iter().enumerate() {
            assert!((ev - 0.25f64.powi(k as i32)).abs() < 1e-12);
        }
        // yx e_k = p(q^k) e_k for k <= N - 2
        let yx = &rep.y * &rep.x;
        for k in 0..=14 {
            let t = 0.25f64.powi(k as i32);
            assert!((yx[(k, k)] - t * (1.0 - t)).abs() < 1e-10);
        }
        let json = report.to_json();
        assert_eq!(json["dim"], 16);
        assert_eq!(matrix_csv(&rep.z).lines().count(), 16);
    }

    #[test]
    fn tiny_truncation() {
        let rep = truncated_rep(&sphere_b(rat(1, 4)), 1.0, 2).unwrap();
        let report = rep.relation_residuals();
        assert_eq!(report.indices, vec![1]);
        assert!(report.pass(1e-12));
    }

    #[test]
    fn perturbed_entry_is_flagged() {
        let mut rep = truncated_rep(&sphere_b(rat(1, 4)), 1.0, 8).unwrap();
        rep.x[(3, 4)] += 1e-3;
        assert!(!rep.relation_residuals().pass(1e-10));
        let mut rep = truncated_rep(&sphere_b(rat(1, 4)), 1.0, 8).unwrap();
        rep.z[(2, 2)] *= 1.01;
        assert!(!rep.relation_residuals().pass(1e-10));
    }

    #[test]
    fn truncated_preconditions() {
        // p(z) = z(1 - z) is negative at z = 4 q^k for small k
        let err = truncated_rep(&sphere_b(rat(1, 4)), 4.0, 6).unwrap_err();
        assert_eq!(err, Error::SignViolation { k: 1, value: 0.0 });
        let err = truncated_rep(&sphere_b(rat(1, 2)), 8.0, 6).unwrap_err();
        assert!(matches!(err, Error::SignViolation { k: 1, .. }));
        assert!(truncated_rep(&sphere_b(int(2)), 1.0, 4).is_err());
        let shifted = GwaAlgebra::new(UniPoly::z(), rat(1, 2), int(1)).unwrap();
        assert!(truncated_rep(&shifted, 1.0, 4).is_err());
    }

    proptest::proptest! {
        #[test]
        fn orbit_reps_satisfy_relations(qn in 1i64..10, zn in 1i64..20, n in 2usize..24) {
            let q = rat(qn, 10);
            let zeta = zn as f64 / 20.0;
            let rep = truncated_rep(&sphere_b(q), zeta, n).unwrap();
            let report = rep.relation_residuals();
            proptest::prop_assert!(report.pass(1e-10), "{:?}", report);
            for (k, ev) in rep.z_spectrum().iter().enumerate() {
                proptest::prop_assert!((ev - (qn as f64 / 10.0).powi(k as i32) * zeta).abs() < 1e-12);
            }
        }
    }
}
