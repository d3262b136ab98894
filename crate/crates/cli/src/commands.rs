//! Implementations of the `weylb` subcommands. Each returns the lines to
//! print; checks among them decide the exit code.

use std::path::Path;

use num::ToPrimitive;
use serde_json::{json, Value};
use weyl_bundles::connection::check_connection;
use weyl_bundles::grading_lab::{induced_quotient_view, veronese_view, witness_search, AmbientView, GradedView};
use weyl_bundles::numrep::{matrix_csv, truncated_rep};
use weyl_bundles::scalar_poly::parse_rational;
use weyl_bundles::trace_pairing::{chern_pairing_with, verify_shift_identity, verify_trace};
use weyl_bundles::{AmbElem, GwaAlgebra, GwaElem, Rational, StrongConnection, TraceFunctional};

use crate::config::Params;
use crate::error::{CliError, CliResult};
use crate::expr::{parse, Expr, Family};
use crate::report::Check;
use crate::verify;

/// Something to print: a verification or a plain result.
#[derive(Clone, Debug)]
pub enum Line {
    Check(Check),
    Value { json: Value, text: String },
}

impl Line {
    pub fn passed(&self) -> bool {
        match self {
            Line::Check(c) => c.pass,
            Line::Value { .. } => true,
        }
    }

    pub fn render(&self, text: bool) -> String {
        match (self, text) {
            (Line::Check(c), false) => c.json_line(),
            (Line::Check(c), true) => c.text_line(),
            (Line::Value { json, .. }, false) => json.to_string(),
            (Line::Value { text, .. }, true) => text.clone(),
        }
    }
}

fn rational_arg(name: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|_| CliError::Usage(format!("--{name}: not a rational number: {s:?}")))
}

/// A parsed element of `B` or `A`.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Gwa(GwaElem),
    Ambient(AmbElem),
}

impl Element {
    fn algebra_name(&self) -> &'static str {
        match self {
            Element::Gwa(_) => "B",
            Element::Ambient(_) => "A",
        }
    }

    /// Normal form; degree-zero elements of `B` print as bare polynomials.
    pub fn normal_form(&self) -> String {
        match self {
            Element::Gwa(e) => match e.as_poly() {
                Some(f) => f.to_string(),
                None => e.to_string(),
            },
            Element::Ambient(e) => match (e.terms().len(), e.terms().get(&0)) {
                (1, Some(f)) => f.to_string(),
                _ => e.to_string(),
            },
        }
    }
}

fn eval_in(expr: &Expr, family: Option<Family>, params: &Params) -> CliResult<Element> {
    match family {
        Some(Family::Ambient) => Ok(Element::Ambient(expr.eval_ambient(&params.ambient()?)?)),
        _ => Ok(Element::Gwa(expr.eval_gwa(&params.gwa()?)?)),
    }
}

/// Parses and evaluates `text` in `B` or `A` depending on its generators.
pub fn evaluate(params: &Params, text: &str) -> CliResult<Element> {
    let expr = parse(text)?;
    let family = expr.family()?;
    eval_in(&expr, family, params)
}

pub fn normalize(params: &Params, text: &str) -> CliResult<Vec<Line>> {
    let e = evaluate(params, text)?;
    let nf = e.normal_form();
    Ok(vec![Line::Value { json: json!({"input": text, "algebra": e.algebra_name(), "normal_form": nf}), text: nf }])
}

pub fn mul(params: &Params, left: &str, right: &str) -> CliResult<Vec<Line>> {
    let (l, r) = (parse(left)?, parse(right)?);
    let family = match (l.family()?, r.family()?) {
        (Some(a), Some(b)) if a != b => return Err(CliError::Usage("factors live in different algebras".into())),
        (a, b) => a.or(b),
    };
    let product = match (eval_in(&l, family, params)?, eval_in(&r, family, params)?) {
        (Element::Gwa(a), Element::Gwa(b)) => Element::Gwa(a.mul(&b)?),
        (Element::Ambient(a), Element::Ambient(b)) => Element::Ambient(a.mul(&b)?),
        _ => unreachable!("both factors are evaluated in the same family"),
    };
    let nf = product.normal_form();
    Ok(vec![Line::Value {
        json: json!({"left": left, "right": right, "algebra": product.algebra_name(), "normal_form": nf}),
        text: nf,
    }])
}

fn connection_of(params: &Params) -> CliResult<StrongConnection> {
    Ok(StrongConnection::new(&params.ambient()?)?)
}

pub fn connection(params: &Params, n: i64) -> CliResult<Vec<Line>> {
    let conn = connection_of(params)?;
    let w = conn.omega_n(n)?;
    let pairs: Vec<(String, String)> = w.pairs.iter().map(|(l, r)| (l.to_string(), r.to_string())).collect();
    let text = pairs.iter().map(|(l, r)| format!("  {l} (x) {r}")).collect::<Vec<_>>().join("\n");
    let contraction = w.contract()?;
    let check = Check::new(
        "connection",
        json!({"preset": params.name, "n": n}),
        "1",
        contraction.to_string().trim_matches(|c| c == '(' || c == ')'),
        check_connection(&w),
    );
    Ok(vec![
        Line::Value {
            json: json!({"omega": pairs, "bidegree": [w.bidegree.0, w.bidegree.1]}),
            text: format!("omega({n}) = sum of {} terms:\n{text}", pairs.len()),
        },
        Line::Check(check),
    ])
}

pub fn idempotent(params: &Params, n: i64) -> CliResult<Vec<Line>> {
    let conn = connection_of(params)?;
    let e = conn.idempotent(n)?;
    let rows: Vec<String> = e
        .entries
        .iter()
        .map(|row| format!("  [{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    let square = e.is_idempotent()?;
    let check = Check::new("idempotent", json!({"preset": params.name, "n": n}), "E^2 = E", if square { "E^2 = E" } else { "E^2 != E" }, square);
    Ok(vec![
        Line::Value { json: e.to_json(), text: format!("E({n}) ({0}x{0}):\n{1}", e.size(), rows.join("\n")) },
        Line::Check(check),
    ])
}

pub fn chern(params: &Params, n: i64, zeta: Option<&str>) -> CliResult<Vec<Line>> {
    let zetas = match zeta {
        Some(z) => vec![rational_arg("zeta", z)?],
        None => params.nonzero_zetas(),
    };
    if zetas.is_empty() {
        return Err(CliError::Config("no non-zero root zeta configured; pass --zeta".into()));
    }
    let conn = connection_of(params)?;
    zetas
        .into_iter()
        .map(|z| {
            let got = chern_pairing_with(&conn, &z, n)?;
            Ok(Line::Check(Check::compare("chern", json!({"preset": params.name, "n": n, "zeta": z.to_string()}), -n, got)))
        })
        .collect()
}

pub fn trace_check(params: &Params, bound: u32) -> CliResult<Vec<Line>> {
    if params.zetas.is_empty() {
        return Err(CliError::Config("no root zeta configured".into()));
    }
    let b = params.gwa()?;
    let mut out = Vec::new();
    for z in &params.zetas {
        let tf = TraceFunctional::new(&b, z.clone())?;
        let p = json!({"preset": params.name, "zeta": z.to_string(), "bound": bound});
        let shift = verify_shift_identity(&tf, 100, 8, 11);
        let report = verify_trace(&tf, bound, 200, 12)?;
        for (name, r) in [("shift-identity", shift), ("commutators-and-cyclicity", report)] {
            let mut c = Check::compare(name, p.clone(), format!("{0}/{0}", r.checked), format!("{}/{}", r.checked - r.counterexamples.len(), r.checked));
            if !r.counterexamples.is_empty() {
                c = c.with_detail(json!(r.counterexamples.iter().take(5).collect::<Vec<_>>()));
            }
            out.push(Line::Check(c));
        }
    }
    Ok(out)
}

const Z_GRADING_NOTE: &str = "for k >= 2 every monomial of degree +-1 contains zp or zm, so all products of degree-1 and degree-(-1) \
monomials stay in the proper ideal generated by zp and zm; the search itself only covers the stated bound";

fn search<V: GradedView>(view: &V, label: String, params: &Params, g: i64, bound: u32, note: Option<&str>) -> Line {
    let p = json!({"preset": params.name, "view": label, "degree": g, "bound": bound});
    let expected = format!("valid witness or none within bound {bound}");
    let check = match witness_search(view, g, bound) {
        Some(w) => {
            let ok = w.check_product(view);
            let got = if ok { format!("witness with {} pairs", w.pairs.len()) } else { "witness fails its product check".into() };
            Check::new("grading-check", p, expected, got, ok).with_detail(w.to_json())
        }
        None => {
            let c = Check::new("grading-check", p, expected, format!("none within bound {bound}"), true);
            match note {
                Some(n) => c.with_note(n),
                None => c,
            }
        }
    };
    Line::Check(check)
}

pub fn grading_check(params: &Params, g: i64, bound: u32, quotient: Option<u32>, veronese: Option<u32>) -> CliResult<Vec<Line>> {
    if bound == 0 {
        return Err(CliError::Usage("--bound must be at least 1".into()));
    }
    let amb = params.ambient()?;
    let base = AmbientView::new(&amb);
    let k = amb.k() as i64;
    let line = match (quotient, veronese) {
        (Some(m), _) => {
            let view = induced_quotient_view(base, m)?;
            search(&view, format!("quotient {m}"), params, g, bound, None)
        }
        (None, Some(m)) => {
            let view = veronese_view(base, m)?;
            search(&view, format!("veronese {m}"), params, g, bound, None)
        }
        (None, None) => {
            let note = (k >= 2 && g.abs() == 1).then_some(Z_GRADING_NOTE);
            search(&base, "ambient".into(), params, g, bound, note)
        }
    };
    Ok(vec![line])
}

pub fn rep_check(params: &Params, zeta: &str, dim: usize, q: Option<&str>, csv: Option<&Path>) -> CliResult<Vec<Line>> {
    let q = match q {
        Some(q) => rational_arg("q", q)?,
        None => params.q(),
    };
    let zeta = rational_arg("zeta", zeta)?;
    let b = GwaAlgebra::new(params.p.clone(), q.clone(), params.r.clone())?;
    let rep = truncated_rep(&b, zeta.to_f64().unwrap_or(f64::NAN), dim)?;
    let report = rep.relation_residuals();
    if let Some(dir) = csv {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
        for (name, m) in [("x", &rep.x), ("y", &rep.y), ("z", &rep.z)] {
            let path = dir.join(format!("{name}.csv"));
            std::fs::write(&path, matrix_csv(m)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        }
    }
    let p = json!({"preset": params.name, "q": q.to_string(), "zeta": zeta.to_string(), "dim": dim});
    let check = Check::new("rep-check", p, "max residual < 1e-10", format!("max residual {:e}", report.max()), report.pass(1e-10))
        .with_detail(report.to_json());
    Ok(vec![Line::Check(check)])
}

pub fn verify_all(text: bool) -> Vec<Line> {
    let mut out = Vec::new();
    for c in verify::run_all() {
        let failed = c.failures().count();
        let got = if failed == 0 { "pass".to_string() } else { format!("{failed} failing checks") };
        let mut check = Check::new(
            &format!("criterion {}", c.id),
            json!({"title": c.title, "checks": c.checks.len(), "seconds": (c.elapsed.as_secs_f64() * 10.0).round() / 10.0}),
            "pass",
            got,
            c.pass(),
        );
        if failed > 0 {
            check = check.with_detail(Value::Array(c.failures().take(5).map(|f| serde_json::to_value(f).expect("serializable")).collect()));
        }
        if text {
            out.push(Line::Value { json: Value::Null, text: c.summary_line() });
            out.extend(c.failures().take(5).map(|f| Line::Value { json: Value::Null, text: format!("    {}", f.text_line()) }));
            if !c.pass() {
                out.push(Line::Check(check));
            }
        } else {
            out.push(Line::Check(check));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::preset;

    fn text_of(lines: &[Line]) -> Vec<String> {
        lines.iter().map(|l| l.render(true)).collect()
    }

    #[test]
    fn normalize_examples() {
        let s = preset("sphere").unwrap();
        assert_eq!(text_of(&normalize(&s, "y*x").unwrap()), vec!["z - z^2"]);
        assert_eq!(text_of(&normalize(&s, "x*y").unwrap()), vec!["4*z - 16*z^2"]);
        assert_eq!(text_of(&normalize(&s, "xp*xm").unwrap()), vec!["1 - zp*zm"]);
        assert_eq!(text_of(&normalize(&s, "z*x").unwrap()), vec!["x*(1/4*z)"]);
        assert!(normalize(&s, "x*xp").is_err());
        assert!(normalize(&s, "x^-1").is_err());
    }

    #[test]
    fn mul_mixes_constants() {
        let s = preset("sphere").unwrap();
        assert_eq!(text_of(&mul(&s, "y", "x").unwrap()), vec!["z - z^2"]);
        assert_eq!(text_of(&mul(&s, "2", "zp").unwrap()), vec!["2*zp"]);
        assert!(mul(&s, "x", "zp").is_err());
    }

    #[test]
    fn chern_on_sphere() {
        let s = preset("sphere").unwrap();
        let lines = chern(&s, 2, None).unwrap();
        let Line::Check(c) = &lines[0] else { panic!() };
        assert_eq!((c.expected.as_str(), c.got.as_str(), c.pass), ("-2", "-2", true));
        assert!(chern(&s, 1, Some("0")).is_err());
    }

    #[test]
    fn connection_and_idempotent_lines() {
        let s = preset("lens(2,1,2)").unwrap();
        let lines = connection(&s, -1).unwrap();
        assert!(lines.iter().all(Line::passed));
        let lines = idempotent(&s, 1).unwrap();
        let Line::Value { json, .. } = &lines[0] else { panic!() };
        assert_eq!(json["size"], 2);
        assert!(lines[1].passed());
    }

    #[test]
    fn grading_check_reports_bound() {
        let l = preset("lens(2,1,2)").unwrap();
        let lines = grading_check(&l, 1, 8, None, None).unwrap();
        let Line::Check(c) = &lines[0] else { panic!() };
        assert_eq!(c.got, "none within bound 8");
        assert!(c.note.is_some());
        let lines = grading_check(&l, 1, 4, None, Some(2)).unwrap();
        let Line::Check(c) = &lines[0] else { panic!() };
        assert!(c.got.starts_with("witness"));
    }

    #[test]
    fn trace_and_rep_checks() {
        let s = preset("sphere").unwrap();
        assert!(trace_check(&s, 2).unwrap().iter().all(Line::passed));
        assert!(rep_check(&s, "1", 16, Some("1/4"), None).unwrap().iter().all(Line::passed));
        assert!(rep_check(&s, "1", 16, None, None).is_err());
    }
}
