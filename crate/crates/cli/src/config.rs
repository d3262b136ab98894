//! Parameter sets: JSON configuration files and named presets.
//!
//! ```json
//! {"p": {"roots": [["0", 1], ["1", 1]]}, "q_plus": "2", "q_minus": "2", "r": "0", "zeta": "1"}
//! ```
//!
//! `p` may instead be given as `{"coeffs": ["0", "1", "-1"]}` in ascending
//! degree. With roots, `p = z^{m_0} Π (1 - z/ρ)^m` over the non-zero roots
//! `ρ`, so the constant of `p/z^{m_0}` is 1.

use std::path::Path;

use num::{One, Zero};
use serde::Deserialize;
use serde_json::json;
use weyl_bundles::scalar_poly::{int, parse_rational, rat_pow};
use weyl_bundles::{AmbAlgebra, GwaAlgebra, Rational, UniPoly};

use crate::error::{CliError, CliResult};

/// A rational written either as a string (`"3/4"`) or a JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RatField {
    Text(String),
    Int(i64),
}

impl RatField {
    fn value(&self) -> CliResult<Rational> {
        match self {
            Self::Text(s) => parse_rational(s).map_err(|e| CliError::Config(e.to_string())),
            Self::Int(n) => Ok(int(*n)),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PSpec {
    Roots { roots: Vec<(RatField, u32)> },
    Coeffs { coeffs: Vec<RatField> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ZetaSpec {
    One(RatField),
    Many(Vec<RatField>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub p: PSpec,
    pub q_plus: RatField,
    pub q_minus: RatField,
    #[serde(default)]
    pub r: Option<RatField>,
    #[serde(default)]
    pub zeta: Option<ZetaSpec>,
}

/// Validated parameters shared by all commands.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub name: String,
    pub p: UniPoly,
    pub q_plus: Rational,
    pub q_minus: Rational,
    pub r: Rational,
    /// Roots of `p` used for traces and pairings.
    pub zetas: Vec<Rational>,
}

impl Config {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn resolve(&self, name: &str) -> CliResult<Params> {
        let (p, implied_zetas) = match &self.p {
            PSpec::Roots { roots } => {
                let mut p = UniPoly::one();
                let mut zetas = Vec::new();
                for (root, mult) in roots {
                    let rho = root.value()?;
                    let factor = if rho.is_zero() {
                        UniPoly::z()
                    } else {
                        zetas.push(rho.clone());
                        UniPoly::from_coeffs([Rational::one(), -rho.recip()])
                    };
                    p = &p * &factor.pow(*mult);
                }
                (p, zetas)
            }
            PSpec::Coeffs { coeffs } => {
                let cs = coeffs.iter().map(RatField::value).collect::<CliResult<Vec<_>>>()?;
                (UniPoly::from_coeffs(cs), Vec::new())
            }
        };
        let zetas = match &self.zeta {
            None => implied_zetas,
            Some(ZetaSpec::One(z)) => vec![z.value()?],
            Some(ZetaSpec::Many(zs)) => zs.iter().map(RatField::value).collect::<CliResult<_>>()?,
        };
        let r = self.r.as_ref().map(RatField::value).transpose()?.unwrap_or_else(Rational::zero);
        Params::new(name, p, self.q_plus.value()?, self.q_minus.value()?, r, zetas)
    }
}

impl Params {
    pub fn new(name: &str, p: UniPoly, q_plus: Rational, q_minus: Rational, r: Rational, zetas: Vec<Rational>) -> CliResult<Self> {
        if p.is_zero() {
            return Err(CliError::Config("p must be non-zero".into()));
        }
        if q_plus.is_zero() || q_minus.is_zero() {
            return Err(CliError::Config("q_plus and q_minus must be non-zero".into()));
        }
        if let Some(z) = zetas.iter().find(|z| !p.eval(z).is_zero()) {
            return Err(CliError::Config(format!("zeta = {z} is not a root of p = {p}")));
        }
        Ok(Self { name: name.to_string(), p, q_plus, q_minus, r, zetas })
    }

    pub fn q(&self) -> Rational {
        &self.q_plus * &self.q_minus
    }

    /// `B(p; q_+ q_-, r)`.
    pub fn gwa(&self) -> CliResult<GwaAlgebra> {
        Ok(GwaAlgebra::new(self.p.clone(), self.q(), self.r.clone())?)
    }

    /// `A(p; q_±)`; needs `r = 0` and `p(0) = 0`.
    pub fn ambient(&self) -> CliResult<AmbAlgebra> {
        if !self.r.is_zero() {
            return Err(CliError::Config("ambient commands need r = 0".into()));
        }
        Ok(AmbAlgebra::new(self.p.clone(), self.q_plus.clone(), self.q_minus.clone())?)
    }

    /// Non-zero entries of `zetas`.
    pub fn nonzero_zetas(&self) -> Vec<Rational> {
        self.zetas.iter().filter(|z| !z.is_zero()).cloned().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "p": self.p.to_string(),
            "q_plus": self.q_plus.to_string(),
            "q_minus": self.q_minus.to_string(),
            "r": self.r.to_string(),
            "zeta": self.zetas.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

pub const PRESET_NAMES: &[&str] = &["sphere", "lens(k,l,q)", "kleinian-demo"];

/// `sphere`, `lens(k,l,q)` or `kleinian-demo`.
pub fn preset(name: &str) -> CliResult<Params> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "sphere" => Params::new(
            "sphere",
            UniPoly::from_coeffs([int(0), int(1), int(-1)]),
            int(2),
            int(2),
            int(0),
            vec![int(1)],
        ),
        "kleinian-demo" => Params::new(
            "kleinian-demo",
            UniPoly::from_coeffs([int(0), int(0), int(2), int(-3), int(1)]),
            int(3),
            int(1),
            int(0),
            vec![int(1), int(2)],
        ),
        s if s.starts_with("lens(") && s.ends_with(')') => {
            let args: Vec<&str> = s[5..s.len() - 1].split(',').collect();
            let bad = || CliError::Config(format!("lens preset needs lens(k,l,q) with naturals k, l and rational q, got {name:?}"));
            let [k, l, q] = args[..] else { return Err(bad()) };
            let k: u32 = k.parse().map_err(|_| bad())?;
            let l: u32 = l.parse().map_err(|_| bad())?;
            let q = parse_rational(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            lens(k, l, &q)
        }
        _ => Err(CliError::Config(format!("unknown preset {name:?}; known: {}", PRESET_NAMES.join(", ")))),
    }
}

/// `p = z^k Π_{i<l} (1 - q^{-2i} z)`, `q_± = q^l`, roots `q^{2i}`.
fn lens(k: u32, l: u32, q: &Rational) -> CliResult<Params> {
    let mut p = UniPoly::monomial(Rational::one(), k);
    let mut zetas = Vec::new();
    for i in 0..l {
        let root = rat_pow(q, 2 * i as i64);
        p = &p * &UniPoly::from_coeffs([Rational::one(), -root.recip()]);
        zetas.push(root);
    }
    zetas.dedup();
    let ql = rat_pow(q, l as i64);
    Params::new(&format!("lens({k},{l},{q})"), p, ql.clone(), ql, Rational::zero(), zetas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use weyl_bundles::scalar_poly::rat;

    #[test]
    fn presets() {
        let s = preset("sphere").unwrap();
        assert_eq!(s.p.to_string(), "z - z^2");
        assert_eq!(s.q(), int(4));
        let l = preset("lens(1,1,2)").unwrap();
        assert_eq!((l.p.clone(), l.q_plus.clone(), l.q_minus.clone()), (s.p.clone(), int(2), int(2)));
        let l = preset("lens(2, 1, 2)").unwrap();
        assert_eq!(l.ambient().unwrap().k(), 2);
        let l = preset("lens(0,2,2)").unwrap();
        assert_eq!(l.p.to_string(), "1 - 5/4*z + 1/4*z^2");
        assert_eq!(l.zetas, vec![int(1), int(4)]);
        assert_eq!(l.q(), int(16));
        let k = preset("kleinian-demo").unwrap();
        assert_eq!(k.zetas, vec![int(1), int(2)]);
        assert_eq!(k.q(), int(3));
        assert!(preset("torus").is_err());
        assert!(preset("lens(1,x,2)").is_err());
        assert!(preset("lens(1,1,0)").is_err());
    }

    #[test]
    fn config_forms() {
        let c = Config::from_json(r#"{"p": {"roots": [["0", 1], ["1", 1]]}, "q_plus": "2", "q_minus": "2", "zeta": "1"}"#).unwrap();
        assert_eq!(c.resolve("c").unwrap().p, preset("sphere").unwrap().p);
        let c = Config::from_json(r#"{"p": {"coeffs": ["0", "0", 2, "-3", "1"]}, "q_plus": 3, "q_minus": "1", "r": "0", "zeta": ["1", "2"]}"#).unwrap();
        let params = c.resolve("c").unwrap();
        assert_eq!(params.p, preset("kleinian-demo").unwrap().p);
        assert_eq!(params.zetas, vec![int(1), int(2)]);
        // roots imply zetas; root 2 gives the factor 1 - z/2
        let c = Config::from_json(r#"{"p": {"roots": [["0", 2], ["2", 1]]}, "q_plus": "1/2", "q_minus": "3"}"#).unwrap();
        let params = c.resolve("c").unwrap();
        assert_eq!(params.zetas, vec![int(2)]);
        assert_eq!(params.p.coeff(3), rat(-1, 2));
        assert_eq!(params.q(), rat(3, 2));
    }

    #[test]
    fn config_errors() {
        let bad_zeta = r#"{"p": {"coeffs": ["0", "1", "-1"]}, "q_plus": "2", "q_minus": "2", "zeta": "3"}"#;
        assert!(Config::from_json(bad_zeta).unwrap().resolve("c").is_err());
        let zero_p = r#"{"p": {"coeffs": ["0"]}, "q_plus": "2", "q_minus": "2"}"#;
        assert!(Config::from_json(zero_p).unwrap().resolve("c").is_err());
        assert!(Config::from_json(r#"{"p": {"coeffs": ["1"]}, "q_plus": "2"}"#).is_err());
        assert!(Config::from_json(r#"{"p": {"coeffs": ["x"]}, "q_plus": "2", "q_minus": "1"}"#).unwrap().resolve("c").is_err());
        let shifted = r#"{"p": {"coeffs": ["0", "1"]}, "q_plus": "2", "q_minus": "2", "r": "1/2"}"#;
        let params = Config::from_json(shifted).unwrap().resolve("c").unwrap();
        assert!(params.gwa().is_ok());
        assert!(params.ambient().is_err());
    }
}
