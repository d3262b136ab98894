//! Expressions over the generators of `B` (`x`, `y`, `z`) or `A`
//! (`xp`, `xm`, `zp`, `zm`).
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' nat]
//! atom   := nat ['/' nat] | generator | '(' expr ')'
//! ```
//!
//! The optional leading minus lets printed normal forms be read back.

use std::fmt;

use num::{BigInt, Zero};
use weyl_bundles::{AmbAlgebra, AmbElem, GwaAlgebra, GwaElem, Rational};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
    Z,
    Xp,
    Xm,
    Zp,
    Zm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `B(p; q, r)`
    Gwa,
    /// `A(p; q_+, q_-)`
    Ambient,
}

impl Generator {
    fn from_token(s: &str) -> Option<Self> {
        Some(match s {
            "x" => Self::X,
            "y" => Self::Y,
            "z" => Self::Z,
            "xp" => Self::Xp,
            "xm" => Self::Xm,
            "zp" => Self::Zp,
            "zm" => Self::Zm,
            _ => return None,
        })
    }

    pub fn family(self) -> Family {
        match self {
            Self::X | Self::Y | Self::Z => Family::Gwa,
            _ => Family::Ambient,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::X => "x",
            Self::Y => "y",
            Self::Z => "z",
            Self::Xp => "xp",
            Self::Xm => "xm",
            Self::Zp => "zp",
            Self::Zm => "zm",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Lit(Rational),
    Gen(Generator),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// The algebra the generators belong to; `None` for constant expressions.
    pub fn family(&self) -> CliResult<Option<Family>> {
        fn walk(e: &Expr, seen: &mut Option<Family>) -> CliResult<()> {
            match e {
                Expr::Lit(_) => Ok(()),
                Expr::Gen(g) => match *seen {
                    Some(f) if f != g.family() => {
                        Err(CliError::Usage("expression mixes generators of B (x, y, z) and A (xp, xm, zp, zm)".into()))
                    }
                    _ => {
                        *seen = Some(g.family());
                        Ok(())
                    }
                },
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, seen),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                    walk(a, seen)?;
                    walk(b, seen)
                }
            }
        }
        let mut seen = None;
        walk(self, &mut seen)?;
        Ok(seen)
    }

    pub fn eval_gwa(&self, b: &GwaAlgebra) -> CliResult<GwaElem> {
        Ok(match self {
            Expr::Lit(c) => b.scalar(c.clone()),
            Expr::Gen(Generator::X) => b.x(),
            Expr::Gen(Generator::Y) => b.y(),
            Expr::Gen(Generator::Z) => b.z(),
            Expr::Gen(g) => return Err(CliError::Usage(format!("generator {} does not belong to B", g.name()))),
            Expr::Neg(a) => a.eval_gwa(b)?.neg(),
            Expr::Add(l, r) => l.eval_gwa(b)?.add(&r.eval_gwa(b)?)?,
            Expr::Sub(l, r) => l.eval_gwa(b)?.sub(&r.eval_gwa(b)?)?,
            Expr::Mul(l, r) => l.eval_gwa(b)?.mul(&r.eval_gwa(b)?)?,
            Expr::Pow(a, n) => a.eval_gwa(b)?.pow(*n),
        })
    }

    pub fn eval_ambient(&self, a: &AmbAlgebra) -> CliResult<AmbElem> {
        Ok(match self {
            Expr::Lit(c) => a.scalar(c.clone()),
            Expr::Gen(Generator::Xp) => a.x_plus(),
            Expr::Gen(Generator::Xm) => a.x_minus(),
            Expr::Gen(Generator::Zp) => a.z_plus(),
            Expr::Gen(Generator::Zm) => a.z_minus(),
            Expr::Gen(g) => return Err(CliError::Usage(format!("generator {} does not belong to A", g.name()))),
            Expr::Neg(e) => e.eval_ambient(a)?.neg(),
            Expr::Add(l, r) => l.eval_ambient(a)?.add(&r.eval_ambient(a)?)?,
            Expr::Sub(l, r) => l.eval_ambient(a)?.sub(&r.eval_ambient(a)?)?,
            Expr::Mul(l, r) => l.eval_ambient(a)?.mul(&r.eval_ambient(a)?)?,
            Expr::Pow(e, n) => e.eval_ambient(a)?.pow(*n),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(c) => write!(f, "{c}"),
            Expr::Gen(g) => f.write_str(g.name()),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Pow(a, n) => write!(f, "({a})^{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> CliResult<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Nat(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else if "+-*^/()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(CliError::Syntax { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> CliResult<T> {
        Err(CliError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut acc = if self.eat('-') { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> CliResult<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek() {
            Some(Tok::Nat(n)) => {
                let Ok(e) = u32::try_from(n.clone()) else {
                    return self.err("exponent too large");
                };
                self.at += 1;
                Ok(Expr::Pow(Box::new(base), e))
            }
            Some(Tok::Sym('-')) => self.err("negative exponents are not allowed"),
            _ => self.err("expected a natural number exponent"),
        }
    }

    fn atom(&mut self) -> CliResult<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Nat(n)) => {
                self.at += 1;
                if !self.eat('/') {
                    return Ok(Expr::Lit(Rational::from_integer(n)));
                }
                match self.peek().cloned() {
                    Some(Tok::Nat(d)) if !d.is_zero() => {
                        self.at += 1;
                        Ok(Expr::Lit(Rational::new(n, d)))
                    }
                    Some(Tok::Nat(_)) => self.err("zero denominator"),
                    _ => self.err("expected a denominator"),
                }
            }
            Some(Tok::Ident(name)) => {
                let g = Generator::from_token(&name)
                    .ok_or_else(|| CliError::Syntax { pos, msg: format!("unknown generator {name:?}") })?;
                self.at += 1;
                Ok(Expr::Gen(g))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Nat(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::Sym(c) => format!("{c:?}"),
    }
}

pub fn parse(text: &str) -> CliResult<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use weyl_bundles::scalar_poly::{int, rat};

    fn gen(g: Generator) -> Box<Expr> {
        Box::new(Expr::Gen(g))
    }

    #[test]
    fn products_and_powers() {
        assert_eq!(parse("y*x").unwrap(), Expr::Mul(gen(Generator::Y), gen(Generator::X)));
        let e = parse("x^2*(1 - 3/2*z)").unwrap();
        let inner = Expr::Sub(Box::new(Expr::Lit(int(1))), Box::new(Expr::Mul(Box::new(Expr::Lit(rat(3, 2))), gen(Generator::Z))));
        assert_eq!(e, Expr::Mul(Box::new(Expr::Pow(gen(Generator::X), 2)), Box::new(inner)));
        assert_eq!(parse(" xp *zm^3 ").unwrap(), parse("xp*zm^3").unwrap());
    }

    #[test]
    fn leading_minus() {
        assert_eq!(parse("-z + 1").unwrap(), Expr::Add(Box::new(Expr::Neg(gen(Generator::Z))), Box::new(Expr::Lit(int(1)))));
        assert!(parse("(-1/2)").is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("x^-1") {
            Err(CliError::Syntax { pos: 2, msg }) => assert!(msg.contains("negative")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("x + w"), Err(CliError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x * (y"), Err(CliError::Syntax { pos: 6, .. })));
        assert!(matches!(parse("1/0"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("x y"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("x # y"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(CliError::Syntax { pos: 0, .. })));
        assert!(parse("--x").is_err());
    }

    #[test]
    fn families() {
        assert_eq!(parse("x*z").unwrap().family().unwrap(), Some(Family::Gwa));
        assert_eq!(parse("xp*zm").unwrap().family().unwrap(), Some(Family::Ambient));
        assert_eq!(parse("3/4").unwrap().family().unwrap(), None);
        assert!(parse("x*xp").unwrap().family().is_err());
    }
}
