//! A small expression language for analytic functions on the disk.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' atom)*          -- exponent must fold to a constant
//! atom   := number | number 'i' | 'i' | 'z'
//!         | 'exp' '(' expr ')' | 'log' '(' expr ')' | 'sqrt' '(' expr ')'
//!         | 'pow' '(' expr ',' expr ')'
//!         | 'mobius' '(' expr ',' expr ',' expr ',' expr ')'
//!         | '(' expr ')'
//! ```
//!
//! `i` is the imaginary unit. `^` and `pow` require constant exponents so
//! that every expression denotes a single-valued analytic function away from
//! branch cuts; branch issues are reported at evaluation time.

use crate::error::{Error, Result};
use crate::jets::Jet;
use num_complex::Complex64;
use std::fmt;

/// Parsed expression tree denoting an analytic function of `z`.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticExpr {
    Const(Complex64),
    Var,
    Add(Box<AnalyticExpr>, Box<AnalyticExpr>),
    Sub(Box<AnalyticExpr>, Box<AnalyticExpr>),
    Mul(Box<AnalyticExpr>, Box<AnalyticExpr>),
    Div(Box<AnalyticExpr>, Box<AnalyticExpr>),
    Neg(Box<AnalyticExpr>),
    /// Base raised to a stored constant exponent.
    Pow(Box<AnalyticExpr>, Complex64),
    Exp(Box<AnalyticExpr>),
    Log(Box<AnalyticExpr>),
    Sqrt(Box<AnalyticExpr>),
    /// `outer(inner)`, built programmatically (no surface syntax).
    Compose(Box<AnalyticExpr>, Box<AnalyticExpr>),
}

impl AnalyticExpr {
    pub fn parse(text: &str) -> Result<AnalyticExpr> {
        Parser::new(text).parse_all()
    }

    pub fn constant(c: Complex64) -> AnalyticExpr {
        AnalyticExpr::Const(c)
    }

    pub fn var() -> AnalyticExpr {
        AnalyticExpr::Var
    }

    /// `self(inner)`.
    pub fn compose(self, inner: AnalyticExpr) -> AnalyticExpr {
        AnalyticExpr::Compose(Box::new(self), Box::new(inner))
    }

    /// Fold to a constant when the tree does not reference `z`.
    pub fn const_value(&self) -> Option<Complex64> {
        use AnalyticExpr::*;
        match self {
            Const(c) => Some(*c),
            Var => None,
            Add(a, b) => Some(a.const_value()? + b.const_value()?),
            Sub(a, b) => Some(a.const_value()? - b.const_value()?),
            Mul(a, b) => Some(a.const_value()? * b.const_value()?),
            Div(a, b) => Some(a.const_value()? / b.const_value()?),
            Neg(a) => Some(-a.const_value()?),
            Pow(a, e) => Some(a.const_value()?.powc(*e)),
            Exp(a) => Some(a.const_value()?.exp()),
            Log(a) => Some(a.const_value()?.ln()),
            Sqrt(a) => Some(a.const_value()?.sqrt()),
            Compose(f, g) => {
                let _ = g.const_value()?;
                f.const_value()
            }
        }
    }

    /// Jet of the denoted function at `z0` in the open disk.
    pub fn eval_jet(&self, z0: Complex64, order: usize) -> Result<Jet> {
        if z0.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "evaluation point {z0} lies outside the open unit disk"
            )));
        }
        self.eval_jet_at(z0, order)
    }

    /// Jet at an arbitrary point, without the disk check. Used for functions
    /// defined on other domains (e.g. the target domain of a conformal map).
    pub fn eval_jet_at(&self, z0: Complex64, order: usize) -> Result<Jet> {
        use AnalyticExpr::*;
        match self {
            Const(c) => Ok(Jet::constant(z0, *c, order)),
            Var => Ok(Jet::variable(z0, order)),
            Add(a, b) => Ok(a.eval_jet_at(z0, order)?.add(&b.eval_jet_at(z0, order)?)),
            Sub(a, b) => Ok(a.eval_jet_at(z0, order)?.sub(&b.eval_jet_at(z0, order)?)),
            Mul(a, b) => Ok(a.eval_jet_at(z0, order)?.mul(&b.eval_jet_at(z0, order)?)),
            Div(a, b) => a.eval_jet_at(z0, order)?.div(&b.eval_jet_at(z0, order)?),
            Neg(a) => Ok(a.eval_jet_at(z0, order)?.neg()),
            Pow(a, e) => a.eval_jet_at(z0, order)?.pow(*e),
            Exp(a) => Ok(a.eval_jet_at(z0, order)?.exp()),
            Log(a) => a.eval_jet_at(z0, order)?.log(),
            Sqrt(a) => a.eval_jet_at(z0, order)?.sqrt(),
            Compose(f, g) => {
                let inner = g.eval_jet_at(z0, order)?;
                let outer = f.eval_jet_at(inner.value(), order)?;
                Ok(inner.compose(&outer))
            }
        }
    }

    /// Scalar value at `z` (order-0 jet), with the disk check.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_jet(z, 0)?.value())
    }

    /// Scalar value at an arbitrary point.
    pub fn eval_at(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_jet_at(z, 0)?.value())
    }

    /// Taylor series at the origin to the given order.
    pub fn taylor_expand(&self, order: usize) -> Result<PowerSeries> {
        let jet = self.eval_jet(Complex64::new(0.0, 0.0), order)?;
        Ok(PowerSeries::new(jet.coeffs().to_vec()))
    }

    fn precedence(&self) -> u8 {
        use AnalyticExpr::*;
        match self {
            Add(..) | Sub(..) => 1,
            Mul(..) | Div(..) => 2,
            Neg(..) => 3,
            Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        let paren = prec < min_prec;
        if paren {
            write!(f, "(")?;
        }
        use AnalyticExpr::*;
        match self {
            Const(c) => write!(f, "{}", fmt_complex(*c))?,
            Var => write!(f, "z")?,
            Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "+")?;
                b.fmt_prec(f, 2)?;
            }
            Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "-")?;
                b.fmt_prec(f, 2)?;
            }
            Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Pow(a, e) => {
                write!(f, "pow(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ",{})", fmt_complex(*e))?;
            }
            Exp(a) => {
                write!(f, "exp(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Log(a) => {
                write!(f, "log(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Sqrt(a) => {
                write!(f, "sqrt(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Compose(outer, inner) => {
                // Printed as textual substitution; reparses to an equivalent
                // (flattened) tree.
                let inner_text = format!("({inner})");
                let outer_text = format!("{outer}");
                let substituted = outer_text.replace('z', &inner_text);
                write!(f, "{substituted}")?;
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for AnalyticExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        if c.re < 0.0 {
            format!("({})", fmt_f64(c.re))
        } else {
            fmt_f64(c.re)
        }
    } else if c.re == 0.0 {
        format!("({}*i)", fmt_f64(c.im))
    } else {
        format!("({}+{}*i)", fmt_f64(c.re), fmt_f64(c.im))
    }
}

fn fmt_f64(x: f64) -> String {
    // Shortest representation that round-trips through the parser.
    let s = format!("{x}");
    if s.contains('e') {
        format!("{x:.17}")
    } else {
        s
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn parse_all(mut self) -> Result<AnalyticExpr> {
        let e = self.parse_expr()?;
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(e)
    }

    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn parse_expr(&mut self) -> Result<AnalyticExpr> {
        let mut lhs = self.parse_term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.parse_term()?;
                lhs = AnalyticExpr::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'-') {
                let rhs = self.parse_term()?;
                lhs = AnalyticExpr::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_term(&mut self) -> Result<AnalyticExpr> {
        let mut lhs = self.parse_unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.parse_unary()?;
                lhs = AnalyticExpr::Mul(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'/') {
                let rhs = self.parse_unary()?;
                lhs = AnalyticExpr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<AnalyticExpr> {
        if self.eat(b'-') {
            let inner = self.parse_unary()?;
            Ok(AnalyticExpr::Neg(Box::new(inner)))
        } else {
            self.parse_power()
        }
    }

    fn parse_power(&mut self) -> Result<AnalyticExpr> {
        let mut base = self.parse_atom()?;
        while self.eat(b'^') {
            let expo = self.parse_atom()?;
            let expo = expo.const_value().ok_or(Error::NonConstantExponent)?;
            base = AnalyticExpr::Pow(Box::new(base), expo);
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<AnalyticExpr> {
        let b = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        if b == b'(' {
            self.pos += 1;
            let e = self.parse_expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if b.is_ascii_digit() || b == b'.' {
            return self.parse_number();
        }
        if b.is_ascii_alphabetic() {
            return self.parse_ident();
        }
        Err(self.err("expected a number, 'z', 'i', a function call or '('"))
    }

    fn parse_number(&mut self) -> Result<AnalyticExpr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // Exponent part, e.g. 1e-3.
        if self.pos < self.bytes.len() && (self.bytes[self.pos] | 0x20) == b'e' {
            let mut probe = self.pos + 1;
            if probe < self.bytes.len() && (self.bytes[probe] == b'+' || self.bytes[probe] == b'-')
            {
                probe += 1;
            }
            if probe < self.bytes.len() && self.bytes[probe].is_ascii_digit() {
                self.pos = probe;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value: f64 = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("malformed number '{text}'"),
        })?;
        // A trailing 'i' makes the literal imaginary (e.g. "2i" in "1+2i").
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'i' {
            let after = self.bytes.get(self.pos + 1).copied();
            if !after.map(|c| c.is_ascii_alphanumeric()).unwrap_or(false) {
                self.pos += 1;
                return Ok(AnalyticExpr::Const(Complex64::new(0.0, value)));
            }
        }
        Ok(AnalyticExpr::Const(Complex64::new(value, 0.0)))
    }

    fn parse_ident(&mut self) -> Result<AnalyticExpr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match name {
            "z" => Ok(AnalyticExpr::Var),
            "i" => Ok(AnalyticExpr::Const(Complex64::new(0.0, 1.0))),
            "exp" | "log" | "sqrt" => {
                self.expect(b'(')?;
                let arg = self.parse_expr()?;
                self.expect(b')')?;
                Ok(match name {
                    "exp" => AnalyticExpr::Exp(Box::new(arg)),
                    "log" => AnalyticExpr::Log(Box::new(arg)),
                    _ => AnalyticExpr::Sqrt(Box::new(arg)),
                })
            }
            "pow" => {
                self.expect(b'(')?;
                let base = self.parse_expr()?;
                self.expect(b',')?;
                let expo = self.parse_expr()?;
                self.expect(b')')?;
                let expo = expo.const_value().ok_or(Error::NonConstantExponent)?;
                Ok(AnalyticExpr::Pow(Box::new(base), expo))
            }
            "mobius" => {
                self.expect(b'(')?;
                let mut args = Vec::with_capacity(4);
                args.push(self.parse_expr()?);
                for _ in 0..3 {
                    self.expect(b',')?;
                    args.push(self.parse_expr()?);
                }
                self.expect(b')')?;
                let consts: Vec<Complex64> = args
                    .iter()
                    .map(|a| a.const_value().ok_or(Error::NonConstantExponent))
                    .collect::<Result<_>>()?;
                let (a, b, c, d) = (consts[0], consts[1], consts[2], consts[3]);
                let num = AnalyticExpr::Add(
                    Box::new(AnalyticExpr::Mul(
                        Box::new(AnalyticExpr::Const(a)),
                        Box::new(AnalyticExpr::Var),
                    )),
                    Box::new(AnalyticExpr::Const(b)),
                );
                let den = AnalyticExpr::Add(
                    Box::new(AnalyticExpr::Mul(
                        Box::new(AnalyticExpr::Const(c)),
                        Box::new(AnalyticExpr::Var),
                    )),
                    Box::new(AnalyticExpr::Const(d)),
                );
                Ok(AnalyticExpr::Div(Box::new(num), Box::new(den)))
            }
            _ => Err(Error::Syntax {
                offset: start,
                message: format!("unknown identifier '{name}'"),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Power series
// ---------------------------------------------------------------------------

/// Polynomial truncation of a power series centered at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Termwise antiderivative with the given constant term; order grows by one.
    pub fn antiderivative(&self, constant: Complex64) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / ((k + 1) as f64));
        }
        PowerSeries::new(coeffs)
    }

    /// Termwise formal derivative; order drops by one.
    pub fn differentiate(&self) -> PowerSeries {
        if self.coeffs.len() == 1 {
            return PowerSeries::new(vec![Complex64::new(0.0, 0.0)]);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k] * (k as f64))
            .collect();
        PowerSeries::new(coeffs)
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Jet of the truncated polynomial at an arbitrary point.
    pub fn eval_jet(&self, z0: Complex64, order: usize) -> Jet {
        let var = Jet::variable(z0, order);
        let mut acc = Jet::constant(z0, Complex64::new(0.0, 0.0), order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&var);
            let mut coeffs = acc.coeffs().to_vec();
            coeffs[0] += c;
            acc = Jet::new(z0, coeffs);
        }
        acc
    }

    /// Geometric tail bound `max|c_k| |z|^(M+1) / (1 - |z|)` for `|z| < 1`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        let max_c = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        max_c * r.powi(self.coeffs.len() as i32) / (1.0 - r)
    }

    /// Drop trailing coefficients below `1e-15` of the largest magnitude.
    pub fn trim(mut self) -> PowerSeries {
        let max_c = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let tol = 1e-15 * max_c;
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().norm() <= tol {
            self.coeffs.pop();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_pow_expression() {
        let e = AnalyticExpr::parse("pow((1+z)/(1-z), 0.5)").unwrap();
        match e {
            AnalyticExpr::Pow(base, expo) => {
                assert_eq!(expo, c(0.5, 0.0));
                assert!(matches!(*base, AnalyticExpr::Div(..)));
            }
            other => panic!("expected Pow, got {other:?}"),
        }
    }

    #[test]
    fn parse_mobius_like_quotient() {
        let e = AnalyticExpr::parse("z/(1+z)").unwrap();
        match e {
            AnalyticExpr::Div(num, den) => {
                assert_eq!(*num, AnalyticExpr::Var);
                assert!(matches!(*den, AnalyticExpr::Add(..)));
            }
            other => panic!("expected Div, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_carries_offset() {
        match AnalyticExpr::parse("2*") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn nonconstant_exponent_rejected() {
        assert!(matches!(
            AnalyticExpr::parse("z^z"),
            Err(Error::NonConstantExponent)
        ));
    }

    #[test]
    fn eval_jet_of_variable() {
        let e = AnalyticExpr::parse("z").unwrap();
        let j = e.eval_jet(c(0.3, 0.0), 1).unwrap();
        assert_eq!(j.coeffs(), &[c(0.3, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn eval_jet_binomial_sqrt() {
        // ((1+z)/(1-z))^(1/2) = 1 + z + z^2/2 + ...
        let e = AnalyticExpr::parse("pow((1+z)/(1-z),0.5)").unwrap();
        let j = e.eval_jet(c(0.0, 0.0), 2).unwrap();
        assert!((j.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((j.coeffs()[1] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((j.coeffs()[2] - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn eval_jet_log_series() {
        let e = AnalyticExpr::parse("log(1/(1-z))").unwrap();
        let j = e.eval_jet(c(0.0, 0.0), 3).unwrap();
        let expect = [0.0, 1.0, 0.5, 1.0 / 3.0];
        for k in 0..=3 {
            assert!((j.coeffs()[k] - c(expect[k], 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn eval_outside_disk_is_domain_error() {
        let e = AnalyticExpr::parse("z").unwrap();
        assert!(matches!(
            e.eval_jet(c(1.0, 0.5), 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn taylor_expand_catalog() {
        let geo = AnalyticExpr::parse("1/(1-z)").unwrap();
        let s = geo.taylor_expand(4).unwrap();
        for k in 0..=4 {
            assert!((s.coeffs()[k] - c(1.0, 0.0)).norm() < 1e-14);
        }

        let ex = AnalyticExpr::parse("exp(z)").unwrap();
        let s = ex.taylor_expand(2).unwrap();
        assert!((s.coeffs()[2] - c(0.5, 0.0)).norm() < 1e-15);

        let sq = AnalyticExpr::parse("z^2").unwrap();
        let s = sq.taylor_expand(5).unwrap();
        let expect = [0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        for k in 0..=5 {
            assert!((s.coeffs()[k] - c(expect[k], 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn antiderivative_examples() {
        let s = PowerSeries::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let a = s.antiderivative(c(0.0, 0.0));
        assert_eq!(
            a.coeffs(),
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(1.0 / 3.0, 0.0)]
        );

        let s = PowerSeries::new(vec![c(0.0, 0.0)]);
        let a = s.antiderivative(c(5.0, 0.0));
        assert_eq!(a.coeffs(), &[c(5.0, 0.0), c(0.0, 0.0)]);

        let two_z = AnalyticExpr::parse("2*z").unwrap();
        let a = two_z.taylor_expand(3).unwrap().antiderivative(c(0.0, 0.0));
        assert!((a.coeffs()[2] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn antiderivative_then_derivative_is_identity() {
        let s = PowerSeries::new(vec![c(3.0, 1.0), c(-2.0, 0.5), c(0.25, 0.0)]);
        let round = s.antiderivative(c(7.0, 0.0)).differentiate();
        assert_eq!(round.coeffs(), s.coeffs());
    }

    #[test]
    fn mobius_desugars() {
        let e = AnalyticExpr::parse("mobius(1,2,3,4)").unwrap();
        let v = e.eval(c(0.5, 0.0)).unwrap();
        let expect = (0.5 + 2.0) / (3.0 * 0.5 + 4.0);
        assert!((v - c(expect, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn imaginary_literals() {
        let e = AnalyticExpr::parse("1+2i").unwrap();
        assert_eq!(e.const_value().unwrap(), c(1.0, 2.0));
        let e = AnalyticExpr::parse("3*i*z").unwrap();
        assert_eq!(e.eval(c(0.5, 0.0)).unwrap(), c(0.0, 1.5));
    }
}
