//! The acceptance checks, one function per criterion. Shared by
//! `weylb verify-all` and the `acceptance` test target.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use weyl_bundles::connection::{check_connection, e_n_recursive, unit_in_degree};
use weyl_bundles::grading_lab::{
    compose_witnesses, induced_quotient_view, veronese_view, witness_from_connection, witness_search, AmbientView,
    GradedView, Witness,
};
use weyl_bundles::gwa_core::reduce_word;
use weyl_bundles::numrep::{one_dim_rep, truncated_rep};
use weyl_bundles::scalar_poly::{int, rat, s_n};
use weyl_bundles::trace_pairing::{chern_pairing, chern_pairing_with, has_nonzero_root, verify_shift_identity, verify_trace};
use weyl_bundles::{AmbAlgebra, AmbElem, Error, GwaAlgebra, Rational, StrongConnection, TraceFunctional, UniPoly};

use crate::config::{preset, Params};
use crate::report::Check;

/// Presets every criterion runs over.
pub const PRESETS: [&str; 3] = ["sphere", "lens(2,1,2)", "kleinian-demo"];

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Criterion {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn summary_line(&self) -> String {
        let mark = if self.pass() { "PASS" } else { "FAIL" };
        let passed = self.checks.iter().filter(|c| c.pass).count();
        format!(
            "criterion {:>2} [{mark}] {} ({passed}/{} checks, {:.1}s)",
            self.id,
            self.title,
            self.checks.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

type CheckFn = fn() -> Vec<Check>;

pub const CRITERIA: [(u8, &str, CheckFn); 10] = [
    (1, "index pairing equals -n", index_pairing),
    (2, "strong connections multiply to 1", strong_connections),
    (3, "line-bundle idempotents", idempotents),
    (4, "traced idempotent matches the recursion", trace_oracle),
    (5, "trace axioms", trace_axioms),
    (6, "GWA normal-form engine", gwa_engine),
    (7, "degree-zero part is B(p;q,0)", degree_zero),
    (8, "grading laboratory", grading_lab),
    (9, "degenerate case p = z^2", degenerate),
    (10, "matrix representations", representations),
];

pub fn run(id: u8) -> Option<Criterion> {
    let (id, title, f) = *CRITERIA.iter().find(|(i, _, _)| *i == id)?;
    let start = Instant::now();
    let checks = f();
    Some(Criterion { id, title, checks, elapsed: start.elapsed() })
}

/// All criteria, run on separate threads, in id order.
pub fn run_all() -> Vec<Criterion> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA.iter().map(|(id, _, _)| s.spawn(move || run(*id).expect("listed id"))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

/// Turns an error into a failed check.
fn attempt(check: &str, params: Value, expected: impl ToString, f: impl FnOnce() -> weyl_bundles::Result<String>) -> Check {
    match f() {
        Ok(got) => Check::compare(check, params, expected, got),
        Err(e) => Check::new(check, params, expected, format!("error: {e}"), false),
    }
}

fn params_of(name: &str) -> Params {
    preset(name).expect("built-in presets are valid")
}

fn ambient_of(name: &str) -> AmbAlgebra {
    params_of(name).ambient().expect("built-in presets have r = 0")
}

fn gwa(p: &[i64], q: Rational, r: Rational) -> GwaAlgebra {
    GwaAlgebra::new(UniPoly::from_coeffs(p.iter().map(|c| int(*c))), q, r).expect("valid parameters")
}

fn count_check(check: &str, params: Value, total: usize, bad: usize) -> Check {
    Check::compare(check, params, format!("{total}/{total}"), format!("{}/{total}", total - bad))
}

pub fn index_pairing() -> Vec<Check> {
    let mut out = Vec::new();
    for name in PRESETS {
        let params = params_of(name);
        let conn = match StrongConnection::new(&ambient_of(name)) {
            Ok(c) => c,
            Err(e) => {
                out.push(Check::new("chern", json!({"preset": name}), "connection", format!("error: {e}"), false));
                continue;
            }
        };
        for zeta in params.nonzero_zetas() {
            for n in -4..=4i64 {
                let p = json!({"preset": name, "zeta": zeta.to_string(), "n": n});
                out.push(attempt("chern", p, -n, || Ok(chern_pairing_with(&conn, &zeta, n)?.to_string())));
            }
        }
    }
    out
}

pub fn strong_connections() -> Vec<Check> {
    let mut out = Vec::new();
    for name in PRESETS {
        let amb = ambient_of(name);
        let Ok(conn) = StrongConnection::new(&amb) else { continue };
        for n in -4..=4i64 {
            let p = json!({"preset": name, "n": n});
            out.push(attempt("connection", p.clone(), "true", || {
                let w = conn.omega_n(n)?;
                Ok((check_connection(&w) && w.legs_have_bidegree(amb.k())).to_string())
            }));
            out.push(attempt("connection-alt", p, "true", || {
                Ok(conn.omega_n(n)?.canonically_eq(&conn.omega_n_alt(n)?).to_string())
            }));
        }
    }
    out
}

pub fn idempotents() -> Vec<Check> {
    let mut out = Vec::new();
    for name in PRESETS {
        let amb = ambient_of(name);
        let Ok(conn) = StrongConnection::new(&amb) else { continue };
        for n in -4..=4i64 {
            let p = json!({"preset": name, "n": n});
            out.push(attempt("idempotent", p, "true", || {
                let e = conn.idempotent(n)?;
                let mut ok = e.is_idempotent()?;
                for entry in e.entries.iter().flatten() {
                    ok &= amb.project_degree_zero(&amb.embed_b(entry)?)? == *entry;
                }
                Ok(ok.to_string())
            }));
        }
    }
    out
}

pub fn trace_oracle() -> Vec<Check> {
    let mut out = Vec::new();
    for name in PRESETS {
        let amb = ambient_of(name);
        let Ok(conn) = StrongConnection::new(&amb) else { continue };
        out.push(Check::compare("e_n", json!({"preset": name, "n": 0}), "1", e_n_recursive(&amb, 0)));
        for n in 1..=4u32 {
            let p = json!({"preset": name, "n": n});
            let recursive = e_n_recursive(&amb, n);
            out.push(attempt("trace-vs-recursion", p.clone(), &recursive, || Ok(conn.trace_idempotent(n as i64)?.to_string())));
            out.push(Check::compare("e_n(0)", p, "1", recursive.eval(&Rational::zero())));
        }
    }
    out
}

pub fn trace_axioms() -> Vec<Check> {
    let configs = [
        ("z - z^2", gwa(&[0, 1, -1], int(4), int(0)), int(1)),
        ("z - z^2", gwa(&[0, 1, -1], int(4), rat(1, 2)), int(1)),
        ("2z^2 - 3z^3 + z^4", gwa(&[0, 0, 2, -3, 1], int(3), int(0)), int(2)),
    ];
    let mut out = Vec::new();
    for (seed, (p, alg, zeta)) in configs.into_iter().enumerate() {
        let params = json!({"p": p, "q": alg.q().to_string(), "r": alg.r().to_string(), "zeta": zeta.to_string()});
        let tf = match TraceFunctional::new(&alg, zeta) {
            Ok(tf) => tf,
            Err(e) => {
                out.push(Check::new("trace", params, "functional", format!("error: {e}"), false));
                continue;
            }
        };
        let shift = verify_shift_identity(&tf, 100, 8, 100 + seed as u64);
        out.push(count_check("shift-identity", params.clone(), shift.checked, shift.counterexamples.len()));
        match verify_trace(&tf, 3, 200, 200 + seed as u64) {
            Ok(report) => out.push(count_check("commutators-and-cyclicity", params, report.checked, report.counterexamples.len())),
            Err(e) => out.push(Check::new("commutators-and-cyclicity", params, "pass", format!("error: {e}"), false)),
        }
    }
    out
}

pub fn gwa_engine() -> Vec<Check> {
    let configs = [gwa(&[0, 1, -1], int(4), int(0)), gwa(&[1, 0, -2, 1], rat(-1, 3), rat(1, 2))];
    let mut out = Vec::new();
    for (seed, b) in configs.iter().enumerate() {
        let params = json!({"p": b.p().to_string(), "q": b.q().to_string(), "r": b.r().to_string()});
        for n in 0..=4u32 {
            let p = json!({"p": b.p().to_string(), "q": b.q().to_string(), "r": b.r().to_string(), "n": n});
            let sn = s_n(b.p(), b.sigma(), n);
            out.push(attempt("y^n x^n", p.clone(), b.poly(sn.clone()), || Ok(b.y().pow(n).mul(&b.x().pow(n))?.to_string())));
            out.push(attempt("x^n y^n", p, b.poly(b.sigma().apply(n as i64, &sn)), || {
                Ok(b.x().pow(n).mul(&b.y().pow(n))?.to_string())
            }));
        }
        let mut rng = StdRng::seed_from_u64(300 + seed as u64);
        let mut bad = 0;
        for _ in 0..100 {
            let (a, c, d) = (b.random_element(&mut rng, 2, 2), b.random_element(&mut rng, 2, 2), b.random_element(&mut rng, 2, 2));
            let left = a.mul(&c).and_then(|ac| ac.mul(&d));
            let right = c.mul(&d).and_then(|cd| a.mul(&cd));
            bad += usize::from(left.is_err() || left != right);
        }
        out.push(count_check("associativity", params.clone(), 100, bad));

        let gens = [(b'x', b.x()), (b'y', b.y()), (b'z', b.z())];
        let mut frontier = vec![(Vec::new(), b.one())];
        let (mut total, mut bad) = (0, 0);
        for len in 0..=5 {
            if len > 0 {
                let mut next = Vec::new();
                for (w, e) in &frontier {
                    for (g, ge) in &gens {
                        let mut nw: Vec<u8> = w.clone();
                        nw.push(*g);
                        next.push((nw, e.mul(ge).expect("same algebra")));
                    }
                }
                frontier = next;
            }
            for (w, e) in &frontier {
                total += 1;
                bad += usize::from(reduce_word(b, w).ok().as_ref() != Some(e));
            }
        }
        out.push(count_check("free-reduction", params, total, bad));
    }
    out
}

/// Random element of degree 0 in `A`: combinations of basis monomials.
fn random_degree_zero(amb: &AmbAlgebra, rng: &mut StdRng) -> AmbElem {
    let basis = AmbientView::new(amb).basis(0, 4);
    let mut e = amb.zero();
    for _ in 0..rng.gen_range(1..=4) {
        let m = &basis[rng.gen_range(0..basis.len())];
        e = e.add(&m.scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))).expect("same algebra");
    }
    e
}

pub fn degree_zero() -> Vec<Check> {
    let mut out = Vec::new();
    for (seed, name) in PRESETS.iter().enumerate() {
        let amb = ambient_of(name);
        let b = amb.base_algebra();
        let mut rng = StdRng::seed_from_u64(400 + seed as u64);
        let (mut hom_bad, mut round_bad, mut back_bad) = (0, 0, 0);
        for _ in 0..100 {
            let (x, y) = (b.random_element(&mut rng, 2, 2), b.random_element(&mut rng, 2, 2));
            let hom = (|| -> weyl_bundles::Result<bool> {
                Ok(amb.embed_b(&x.mul(&y)?)? == amb.embed_b(&x)?.mul(&amb.embed_b(&y)?)?)
            })();
            hom_bad += usize::from(hom != Ok(true));
            round_bad += usize::from(amb.embed_b(&x).and_then(|e| amb.project_degree_zero(&e)).as_ref() != Ok(&x));
            let e = random_degree_zero(&amb, &mut rng);
            back_bad += usize::from(amb.project_degree_zero(&e).and_then(|g| amb.embed_b(&g)).as_ref() != Ok(&e));
        }
        let p = json!({"preset": name});
        out.push(count_check("embed-homomorphism", p.clone(), 100, hom_bad));
        out.push(count_check("project-after-embed", p.clone(), 100, round_bad));
        out.push(count_check("embed-after-project", p, 100, back_bad));
    }
    out
}

fn witness_check<V: GradedView>(check: &str, params: Value, view: &V, w: Option<Witness<V::Elem>>, want: bool) -> Check {
    let got = match &w {
        Some(w) if w.check_product(view) => "witness",
        Some(_) => "invalid witness",
        None => "none within bound",
    };
    let expected = if want { "witness" } else { "none within bound" };
    let c = Check::compare(check, params, expected, got);
    match w {
        Some(w) => c.with_detail(w.to_json()),
        None => c,
    }
}

pub fn grading_lab() -> Vec<Check> {
    let mut out = Vec::new();
    for name in PRESETS {
        let amb = ambient_of(name);
        let k = amb.k();
        let ver = veronese_view(AmbientView::new(&amb), k).expect("k >= 1");
        for g in [1, -1] {
            let p = json!({"preset": name, "view": format!("veronese {k}"), "degree": g, "bound": 4});
            out.push(witness_check("witness-search", p, &ver, witness_search(&ver, g, 4), true));
        }
        if k == 2 {
            let view = AmbientView::new(&amb);
            let p = json!({"preset": name, "view": "ambient", "degree": 1, "bound": 10});
            out.push(witness_check("witness-search", p, &view, witness_search(&view, 1, 10), false));
            let quot = induced_quotient_view(AmbientView::new(&amb), k).expect("k >= 1");
            let p = json!({"preset": name, "view": format!("quotient {k}"), "degree": 1, "bound": 8});
            out.push(witness_check("witness-search", p, &quot, witness_search(&quot, 1, 8), false));
        }
        // Z ⊃ 2Z inside the Z-graded A^{(k)}: induced witnesses come from the
        // strong connection, then compose_witnesses recombines them.
        let Ok(conn) = StrongConnection::new(&amb) else { continue };
        let mut quotient = BTreeMap::new();
        let mut veronese = BTreeMap::new();
        let induced: weyl_bundles::Result<()> = (|| {
            quotient.insert(0, Witness { pairs: vec![(amb.one(), amb.one(), Rational::one())] });
            quotient.insert(1, witness_from_connection(&conn, 3)?);
            for j in -2..=2 {
                veronese.insert(j, witness_from_connection(&conn, 2 * j)?);
            }
            Ok(())
        })();
        for g in [1, 2] {
            let p = json!({"preset": name, "chain": "Z > 2Z", "degree": g});
            out.push(attempt("compose-witnesses", p, "product 1, degrees balanced", || {
                induced.clone()?;
                let w = compose_witnesses(&ver, 2, &quotient, &veronese, g)?;
                let balanced = w.pairs.iter().all(|(a, b, _)| ver.degree(a) == Some(g) && ver.degree(b) == Some(-g));
                Ok(match (w.check_product(&ver), balanced) {
                    (true, true) => "product 1, degrees balanced".to_string(),
                    (prod, bal) => format!("product ok: {prod}, degrees ok: {bal}"),
                })
            }));
        }
    }
    out
}

pub fn degenerate() -> Vec<Check> {
    let mut out = Vec::new();
    let p = UniPoly::monomial(Rational::one(), 2);
    let amb = match AmbAlgebra::new(p.clone(), int(2), int(3)) {
        Ok(a) => a,
        Err(e) => return vec![Check::new("degenerate", json!({"p": "z^2"}), "algebra", format!("error: {e}"), false)],
    };
    for n in -3..=3i64 {
        let params = json!({"p": "z^2", "q_plus": "2", "q_minus": "3", "n": n});
        let got = match unit_in_degree(&amb, n) {
            None => "no unit".to_string(),
            Some((u, v)) => {
                let one = amb.one();
                let inverse = u.mul(&v).ok() == Some(one.clone()) && v.mul(&u).ok() == Some(one);
                let k = amb.k() as i64;
                let degrees = u.is_homogeneous_of(n * k) && v.is_homogeneous_of(-n * k);
                format!("unit: inverse {inverse}, degree {degrees}")
            }
        };
        out.push(Check::compare("unit-in-degree", params, "unit: inverse true, degree true", got));
    }
    let params = json!({"p": "z^2"});
    out.push(Check::compare("nonzero-root", params.clone(), "false", has_nonzero_root(&p)));
    let refused = matches!(chern_pairing(&amb, &Rational::zero(), 1), Err(Error::NotANonZeroRoot(_)));
    out.push(Check::compare("pairing-refuses-zero-root", params, "true", refused));
    // contrast: a non-degenerate preset has no unit from x_± alone
    let sphere = ambient_of("sphere");
    out.push(Check::compare(
        "sphere-has-nonzero-root",
        json!({"preset": "sphere"}),
        "true, no unit",
        format!("{}, {}", has_nonzero_root(sphere.p()), if unit_in_degree(&sphere, 1).is_some() { "unit" } else { "no unit" }),
    ));
    out
}

pub fn representations() -> Vec<Check> {
    let mut out = Vec::new();
    let b = gwa(&[0, 1, -1], rat(1, 4), int(0));
    let params = json!({"p": "z - z^2", "q": "1/4", "zeta": "1", "dim": 16});
    match truncated_rep(&b, 1.0, 16) {
        Ok(rep) => {
            let report = rep.relation_residuals();
            out.push(
                Check::new("truncated-rep", params, "max residual < 1e-10", format!("max residual {:e}", report.max()), report.pass(1e-10))
                    .with_detail(report.to_json()),
            );
        }
        Err(e) => out.push(Check::new("truncated-rep", params, "max residual < 1e-10", format!("error: {e}"), false)),
    }
    let one_dim = [
        (gwa(&[0, 1, -1], int(4), int(0)), "z - z^2"),
        (gwa(&[0, -2, 1], rat(1, 2), int(1)), "-2*z + z^2"),
        (gwa(&[3, -1], rat(1, 2), int(1)), "3 - z"),
    ];
    for (alg, p) in one_dim {
        for lambda in [1i8, -1] {
            let params = json!({"p": p, "q": alg.q().to_string(), "r": alg.r().to_string(), "lambda": lambda});
            match one_dim_rep(&alg, lambda) {
                Ok(rep) => {
                    let worst = rep.residuals().into_iter().fold(0.0, f64::max);
                    out.push(Check::new("one-dim-rep", params, "max residual < 1e-12", format!("max residual {worst:e}"), worst < 1e-12));
                }
                Err(e) => out.push(Check::new("one-dim-rep", params, "max residual < 1e-12", format!("error: {e}"), false)),
            }
        }
    }
    out
}
