//! Linear exponent expressions over a fixed symbol set with complex
//! rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Symbols that may appear in edge labels. The declaration order is the
/// printing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    S,
    X,
    Lam,
    Rho,
    G,
    Eps,
    One,
}

impl Symbol {
    pub const ALL: [Symbol; 7] = [Symbol::S, Symbol::X, Symbol::Lam, Symbol::Rho, Symbol::G, Symbol::Eps, Symbol::One];

    /// ASCII name used by the printer and accepted by the parser.
    pub fn name(self) -> &'static str {
        match self {
            Symbol::S => "s",
            Symbol::X => "x",
            Symbol::Lam => "lam",
            Symbol::Rho => "rho",
            Symbol::G => "g",
            Symbol::Eps => "eps",
            Symbol::One => "1",
        }
    }

    fn from_ident(id: &str) -> Option<Symbol> {
        Some(match id {
            "s" => Symbol::S,
            "x" => Symbol::X,
            "lam" | "lambda" | "λ" => Symbol::Lam,
            "rho" | "ρ" => Symbol::Rho,
            "g" => Symbol::G,
            "eps" | "epsilon" | "ε" => Symbol::Eps,
            _ => return None,
        })
    }
}

impl FromStr for Symbol {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        Symbol::from_ident(text.trim()).ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown symbol '{text}'") })
    }
}

/// Complex rational number `re + i im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coef {
    pub re: Rational64,
    pub im: Rational64,
}

fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn is_zero(r: &Rational64) -> bool {
    *r.numer() == 0
}

impl Coef {
    pub fn new(re: Rational64, im: Rational64) -> Self {
        Coef { re, im }
    }

    pub fn int(n: i64) -> Self {
        Coef::new(rat(n), rat(0))
    }

    pub fn zero() -> Self {
        Coef::int(0)
    }

    pub fn one() -> Self {
        Coef::int(1)
    }

    pub fn i() -> Self {
        Coef::new(rat(0), rat(1))
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.re) && is_zero(&self.im)
    }

    pub fn to_c64(self) -> C64 {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        C64::new(f(self.re), f(self.im))
    }

    fn checked_div(self, d: Coef) -> Option<Coef> {
        let n = d.re * d.re + d.im * d.im;
        if is_zero(&n) {
            return None;
        }
        Some(Coef::new((self.re * d.re + self.im * d.im) / n, (self.im * d.re - self.re * d.im) / n))
    }
}

impl Add for Coef {
    type Output = Coef;
    fn add(self, o: Coef) -> Coef {
        Coef::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Coef {
    type Output = Coef;
    fn sub(self, o: Coef) -> Coef {
        Coef::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        Coef::new(-self.re, -self.im)
    }
}

impl Mul for Coef {
    type Output = Coef;
    fn mul(self, o: Coef) -> Coef {
        Coef::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

fn fmt_rat(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `sum_k c_k sym_k`; zero coefficients are never stored, so derived
/// equality is coefficient-wise equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ExponentExpr {
    terms: BTreeMap<Symbol, Coef>,
}

impl ExponentExpr {
    pub fn zero() -> Self {
        ExponentExpr::default()
    }

    pub fn constant(c: Coef) -> Self {
        ExponentExpr::term(c, Symbol::One)
    }

    pub fn int(n: i64) -> Self {
        ExponentExpr::constant(Coef::int(n))
    }

    pub fn term(c: Coef, sym: Symbol) -> Self {
        let mut e = ExponentExpr::zero();
        e.add_term(sym, c);
        e
    }

    pub fn sym(sym: Symbol) -> Self {
        ExponentExpr::term(Coef::one(), sym)
    }

    fn add_term(&mut self, sym: Symbol, c: Coef) {
        let v = *self.terms.get(&sym).unwrap_or(&Coef::zero()) + c;
        if v.is_zero() {
            self.terms.remove(&sym);
        } else {
            self.terms.insert(sym, v);
        }
    }

    pub fn coef(&self, sym: Symbol) -> Coef {
        *self.terms.get(&sym).unwrap_or(&Coef::zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Symbol, Coef)> + '_ {
        self.terms.iter().map(|(&s, &c)| (s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if no symbol other than `1` appears.
    pub fn as_constant(&self) -> Option<Coef> {
        match self.terms.keys().all(|&s| s == Symbol::One) {
            true => Some(self.coef(Symbol::One)),
            false => None,
        }
    }

    pub fn scale(&self, c: Coef) -> Self {
        let mut out = ExponentExpr::zero();
        for (s, k) in self.terms() {
            out.add_term(s, k * c);
        }
        out
    }

    /// Replace `sym` by `by`.
    pub fn substitute(&self, sym: Symbol, by: &ExponentExpr) -> Self {
        let k = self.coef(sym);
        let mut out = self.clone();
        out.terms.remove(&sym);
        out + by.scale(k)
    }

    /// Numeric value under `assign`; `1` needs no entry.
    pub fn eval(&self, assign: &BTreeMap<Symbol, C64>) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (s, k) in self.terms() {
            let v = match s {
                Symbol::One => C64::new(1.0, 0.0),
                _ => *assign
                    .get(&s)
                    .ok_or_else(|| Error::InvalidParams(format!("no value assigned to symbol '{}'", s.name())))?,
            };
            acc += k.to_c64() * v;
        }
        Ok(acc)
    }
}

impl Add for ExponentExpr {
    type Output = ExponentExpr;
    fn add(mut self, o: ExponentExpr) -> ExponentExpr {
        for (s, k) in o.terms() {
            self.add_term(s, k);
        }
        self
    }
}

impl Add for &ExponentExpr {
    type Output = ExponentExpr;
    fn add(self, o: &ExponentExpr) -> ExponentExpr {
        self.clone() + o.clone()
    }
}

impl Sub for ExponentExpr {
    type Output = ExponentExpr;
    fn sub(self, o: ExponentExpr) -> ExponentExpr {
        self + (-o)
    }
}

impl Sub for &ExponentExpr {
    type Output = ExponentExpr;
    fn sub(self, o: &ExponentExpr) -> ExponentExpr {
        self.clone() - o.clone()
    }
}

impl Neg for ExponentExpr {
    type Output = ExponentExpr;
    fn neg(self) -> ExponentExpr {
        self.scale(-Coef::one())
    }
}

impl Neg for &ExponentExpr {
    type Output = ExponentExpr;
    fn neg(self) -> ExponentExpr {
        self.scale(-Coef::one())
    }
}

/// Coefficient text and whether it is negative, for one printed term.
fn coef_text(c: Coef, sym: Symbol) -> (bool, String) {
    let one = sym == Symbol::One;
    let name = sym.name();
    if is_zero(&c.im) {
        let neg = c.re < rat(0);
        let a = if neg { -c.re } else { c.re };
        let t = match (one, a == rat(1), a.is_integer()) {
            (true, _, _) => fmt_rat(a),
            (false, true, _) => name.to_string(),
            (false, false, true) => format!("{}{name}", a.numer()),
            (false, false, false) => format!("{}*{name}", fmt_rat(a)),
        };
        return (neg, t);
    }
    if is_zero(&c.re) {
        let neg = c.im < rat(0);
        let a = if neg { -c.im } else { c.im };
        let mag = if a == rat(1) { "i".to_string() } else if a.is_integer() { format!("{}i", a.numer()) } else { format!("{}*i", fmt_rat(a)) };
        let t = if one { mag } else { format!("{mag}*{name}") };
        return (neg, t);
    }
    let im_neg = c.im < rat(0);
    let ia = if im_neg { -c.im } else { c.im };
    let im_txt = if ia == rat(1) { "i".to_string() } else { format!("{}*i", fmt_rat(ia)) };
    let inner = format!("{} {} {}", fmt_rat(c.re), if im_neg { "-" } else { "+" }, im_txt);
    let t = if one { format!("({inner})") } else { format!("({inner})*{name}") };
    (false, t)
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms().enumerate() {
            let (neg, t) = coef_text(c, s);
            match (k, neg) {
                (0, true) => write!(f, "-{t}")?,
                (0, false) => write!(f, "{t}")?,
                (_, true) => write!(f, " - {t}")?,
                (_, false) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

impl From<ExponentExpr> for String {
    fn from(e: ExponentExpr) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for ExponentExpr {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        parse_exponent(&s)
    }
}

impl FromStr for ExponentExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_exponent(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        match c {
            _ if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' | '−' => out.push((start, Tok::Minus)),
            '*' | '·' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '(' => out.push((start, Tok::Open)),
            ')' => out.push((start, Tok::Close)),
            _ if c.is_ascii_digit() || c == '.' => {
                let mut int = String::new();
                let mut frac = String::new();
                let mut seen_dot = false;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    match (chars[k], seen_dot) {
                        ('.', true) => return Err(perr(k, "second decimal point")),
                        ('.', false) => seen_dot = true,
                        (d, false) => int.push(d),
                        (d, true) => frac.push(d),
                    }
                    k += 1;
                }
                if int.is_empty() && frac.is_empty() {
                    return Err(perr(start, "lone decimal point"));
                }
                if int.len() + frac.len() > 15 {
                    return Err(perr(start, "number has more than 15 digits"));
                }
                let digits: i64 = format!("{int}{frac}").parse().map_err(|_| perr(start, "bad number"))?;
                let den = 10i64.pow(frac.len() as u32);
                out.push((start, Tok::Num(Rational64::new(digits, den))));
                continue;
            }
            _ if c.is_alphabetic() => {
                let mut id = String::new();
                while k < chars.len() && chars[k].is_alphabetic() {
                    id.push(chars[k]);
                    k += 1;
                }
                out.push((start, Tok::Ident(id)));
                continue;
            }
            _ => return Err(perr(start, format!("unexpected character '{c}'"))),
        }
        k += 1;
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
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn expr(&mut self) -> Result<ExponentExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExponentExpr> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    let rhs = self.factor()?;
                    acc = multiply(acc, rhs, pos)?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let rhs = self.factor()?;
                    let d = rhs.as_constant().ok_or_else(|| perr(pos, "division by a non-constant"))?;
                    let inv = Coef::one().checked_div(d).ok_or_else(|| perr(pos, "division by zero"))?;
                    acc = acc.scale(inv);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Open) => {
                    let rhs = self.factor()?;
                    acc = multiply(acc, rhs, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExponentExpr> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| perr(pos, "expected a term"))?;
        self.at += 1;
        match tok {
            Tok::Num(r) => Ok(ExponentExpr::constant(Coef::new(r, rat(0)))),
            Tok::Ident(id) if id == "i" => Ok(ExponentExpr::constant(Coef::i())),
            Tok::Ident(id) => {
                Symbol::from_ident(&id).map(ExponentExpr::sym).ok_or_else(|| perr(pos, format!("unknown symbol '{id}'")))
            }
            Tok::Minus => Ok(-self.factor()?),
            Tok::Plus => self.factor(),
            Tok::Open => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Close) => {
                        self.at += 1;
                        Ok(e)
                    }
                    _ => Err(perr(self.pos(), "expected ')'")),
                }
            }
            Tok::Close | Tok::Star | Tok::Slash => Err(perr(pos, "expected a term")),
        }
    }
}

fn multiply(a: ExponentExpr, b: ExponentExpr, pos: usize) -> Result<ExponentExpr> {
    match (a.as_constant(), b.as_constant()) {
        (Some(c), _) => Ok(b.scale(c)),
        (_, Some(c)) => Ok(a.scale(c)),
        _ => Err(perr(pos, "product of two symbols is not linear")),
    }
}

/// Parse an edge label such as `"3s - g"`, `"2s + i*lam - g"` or
/// `"i(rho - lam) + eps"`. Positions in errors count characters.
pub fn parse_exponent(text: &str) -> Result<ExponentExpr> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(perr(0, "empty expression"));
    }
    let mut p = Parser { toks, at: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(perr(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Shorthand for [`parse_exponent`] on trusted literals.
pub fn ex(text: &str) -> ExponentExpr {
    parse_exponent(text).unwrap_or_else(|e| panic!("bad exponent literal {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn parses_edge_labels() {
        let e = parse_exponent("3s - g").unwrap();
        assert_eq!(e.coef(Symbol::S), Coef::int(3));
        assert_eq!(e.coef(Symbol::G), Coef::int(-1));
        assert_eq!(e.terms().count(), 2);
        let e = parse_exponent("2s + i*lam - g").unwrap();
        assert_eq!(e.coef(Symbol::Lam), Coef::i());
        assert_eq!(e.to_string(), "2s + i*lam - g");
        let e = parse_exponent("i(ρ − λ) + ε").unwrap();
        assert_eq!(e, parse_exponent("-i*lam + i*rho + eps").unwrap());
        assert_eq!(parse_exponent("2s + x - g").unwrap().to_string(), "2s + x - g");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_exponent(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_exponent("   "), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_exponent("2s + q"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_exponent("s*g"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_exponent("(s + 1"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_exponent("s / 0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_exponent("s +"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn decimals_and_fractions() {
        let e = parse_exponent("0.5s + 3/2*g - 0.25").unwrap();
        assert_eq!(e.coef(Symbol::S), Coef::new(r(1, 2), r(0, 1)));
        assert_eq!(e.coef(Symbol::G), Coef::new(r(3, 2), r(0, 1)));
        assert_eq!(e.coef(Symbol::One), Coef::new(r(-1, 4), r(0, 1)));
        assert_eq!(parse_exponent(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn algebra_is_coefficientwise() {
        let a = ex("s + i*lam");
        let b = ex("s - i*lam");
        assert_eq!(&a + &b, ex("2s"));
        assert!((&a - &a).is_zero());
        assert_eq!((&a + &b).to_string(), "2s");
        assert_eq!(ex("s - x").substitute(Symbol::X, &ex("i*lam")), ex("s - i*lam"));
        let mut assign = BTreeMap::new();
        assign.insert(Symbol::S, C64::new(1.0, 0.0));
        assign.insert(Symbol::Lam, C64::new(0.5, 0.0));
        assert_eq!(a.eval(&assign).unwrap(), C64::new(1.0, 0.5));
        assert!(ex("g").eval(&assign).is_err());
    }

    #[test]
    fn serde_uses_the_text_form() {
        let e = ex("2s + i*lam - g");
        let j = serde_json::to_string(&e).unwrap();
        assert_eq!(j, "\"2s + i*lam - g\"");
        let back: ExponentExpr = serde_json::from_str(&j).unwrap();
        assert_eq!(back, e);
    }

    fn arb_rat() -> impl Strategy<Value = Rational64> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational64::new(n, d))
    }

    fn arb_expr() -> impl Strategy<Value = ExponentExpr> {
        proptest::collection::vec((0usize..7, arb_rat(), arb_rat()), 0..6).prop_map(|ts| {
            let mut e = ExponentExpr::zero();
            for (k, re, im) in ts {
                e.add_term(Symbol::ALL[k], Coef::new(re, im));
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_exponent(&text).unwrap(), e, "{}", text);
        }
    }
}
