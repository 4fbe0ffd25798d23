//! A small expression language for user-defined charts.
//!
//! ```text
//! program := form '[' expr (',' expr)* ']'
//! form    := raw6 | r41 | s41 | h41 | r3 | r31
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | ident | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | sinh | cosh | exp | sqrt
//! ```
//!
//! Identifiers are `u`, `v`, `pi` and named parameters. `#` starts a comment
//! that runs to the end of the line.
//!
//! The form selects how the component expressions become a light-cone lift:
//! `raw6` is taken verbatim, `r41`/`s41`/`h41` go through the space-form
//! embeddings, `r3`/`r31` through the lifts of surfaces in `ℝ³` and `ℝ³₁`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{embed_antidesitter, embed_desitter, embed_flat, lift_euclidean3, lift_minkowski3, Domain, SurfaceChart};
use crate::error::GeomError;
use crate::jet_calculus::{seed_point, Jet, JetVec6};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("unknown identifier {name:?} at line {line}, column {col}")]
    UnknownIdentifier { name: String, line: usize, col: usize },
    #[error("form {form} takes {expected} components, got {found}")]
    ArityMismatch { form: Form, expected: usize, found: usize },
    #[error("domain error: {0}")]
    Domain(String),
}

impl DslError {
    pub fn kind(&self) -> &'static str {
        match self {
            DslError::Parse { .. } => "ParseError",
            DslError::UnknownIdentifier { .. } => "UnknownIdentifier",
            DslError::ArityMismatch { .. } => "ArityMismatch",
            DslError::Domain(_) => "DomainError",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Raw6,
    R41,
    S41,
    H41,
    R3,
    R31,
}

impl Form {
    pub const ALL: [Form; 6] = [Form::Raw6, Form::R41, Form::S41, Form::H41, Form::R3, Form::R31];

    pub fn name(self) -> &'static str {
        match self {
            Form::Raw6 => "raw6",
            Form::R41 => "r41",
            Form::S41 => "s41",
            Form::H41 => "h41",
            Form::R3 => "r3",
            Form::R31 => "r31",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Form::Raw6 => 6,
            Form::R41 => 4,
            Form::S41 | Form::H41 => 5,
            Form::R3 | Form::R31 => 3,
        }
    }

    fn from_name(s: &str) -> Option<Form> {
        Form::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Sqrt,
}

impl Func {
    const ALL: [Func; 6] = [Func::Sin, Func::Cos, Func::Sinh, Func::Cosh, Func::Exp, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Position of an identifier in the source, kept for error messages.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

// Positions never take part in tree equality.
impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Ident(String, Pos),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DslProgram {
    pub form: Form,
    pub components: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().peekable(),
            src,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let next = self.chars.next();
        if let Some((_, c)) = next {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        next
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, DslError> {
        let mut out = Vec::new();
        loop {
            while let Some(&(_, c)) = self.chars.peek() {
                if c == '#' {
                    while let Some(&(_, c)) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                } else if c.is_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
            let pos = Pos {
                line: self.line,
                col: self.col,
            };
            let Some(&(start, c)) = self.chars.peek() else {
                out.push((Tok::End, pos));
                return Ok(out);
            };
            if c.is_ascii_digit() || c == '.' {
                let mut end = start;
                let mut prev = ' ';
                while let Some(&(i, c)) = self.chars.peek() {
                    let exp_sign = (c == '+' || c == '-') && (prev == 'e' || prev == 'E');
                    if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exp_sign {
                        end = i + c.len_utf8();
                        prev = c;
                        self.bump();
                    } else {
                        break;
                    }
                }
                let text = &self.src[start..end];
                let value: f64 = text.parse().map_err(|_| DslError::Parse {
                    line: pos.line,
                    col: pos.col,
                    message: format!("malformed number {text:?}"),
                })?;
                out.push((Tok::Num(value), pos));
            } else if c.is_alphabetic() || c == '_' {
                let mut end = start;
                while let Some(&(i, c)) = self.chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        end = i + c.len_utf8();
                        self.bump();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(self.src[start..end].to_string()), pos));
            } else if "+-*/^(),[]".contains(c) {
                self.bump();
                out.push((Tok::Sym(c), pos));
            } else {
                return Err(DslError::Parse {
                    line: pos.line,
                    col: pos.col,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn advance(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> DslError {
        let p = self.pos();
        DslError::Parse {
            line: p.line,
            col: p.col,
            message: message.into(),
        }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Sym(c) => format!("{c:?}"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        if *self.peek() == Tok::Sym(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}, found {}", Self::describe(self.peek()))))
        }
    }

    fn program(&mut self) -> Result<DslProgram, DslError> {
        let form = match self.advance() {
            (Tok::Ident(s), p) => Form::from_name(&s).ok_or(DslError::Parse {
                line: p.line,
                col: p.col,
                message: format!("unknown form {s:?} (expected raw6, r41, s41, h41, r3 or r31)"),
            })?,
            (t, p) => {
                return Err(DslError::Parse {
                    line: p.line,
                    col: p.col,
                    message: format!("expected a form name, found {}", Self::describe(&t)),
                })
            }
        };
        self.expect('[')?;
        let mut components = vec![self.expr()?];
        while *self.peek() == Tok::Sym(',') {
            self.advance();
            components.push(self.expr()?);
        }
        self.expect(']')?;
        if *self.peek() != Tok::End {
            return Err(self.error(format!("unexpected {} after the program", Self::describe(self.peek()))));
        }
        if components.len() != form.arity() {
            return Err(DslError::ArityMismatch {
                form,
                expected: form.arity(),
                found: components.len(),
            });
        }
        Ok(DslProgram { form, components })
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if *self.peek() == Tok::Sym('-') {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.advance();
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        match self.advance() {
            (Tok::Num(x), _) => Ok(Expr::Num(x)),
            (Tok::Sym('('), _) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            (Tok::Ident(name), pos) => {
                if *self.peek() == Tok::Sym('(') {
                    let func = Func::ALL
                        .into_iter()
                        .find(|f| f.name() == name)
                        .ok_or(DslError::UnknownIdentifier {
                            name: name.clone(),
                            line: pos.line,
                            col: pos.col,
                        })?;
                    self.advance();
                    let arg = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Call(func, Box::new(arg)))
                } else {
                    Ok(Expr::Ident(name, pos))
                }
            }
            (t, pos) => Err(DslError::Parse {
                line: pos.line,
                col: pos.col,
                message: format!("expected an expression, found {}", Self::describe(&t)),
            }),
        }
    }
}

/// Parses a program.
pub fn dsl_parse(source: &str) -> Result<DslProgram, DslError> {
    let toks = Lexer::new(source).tokens()?;
    Parser { toks, i: 0 }.program()
}

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => PREC_ADD,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => PREC_MUL,
        Expr::Neg(_) => PREC_NEG,
        Expr::Bin(BinOp::Pow, ..) => PREC_POW,
        _ => PREC_ATOM,
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Ident(name, _) => f.write_str(name),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_wrapped(f, e, prec(e) < PREC_NEG)
            }
            Expr::Bin(BinOp::Pow, base, exp) => {
                write_wrapped(f, base, prec(base) < PREC_ATOM)?;
                f.write_str("^")?;
                write_wrapped(f, exp, prec(exp) < PREC_NEG)
            }
            Expr::Bin(op, lhs, rhs) => {
                let p = prec(self);
                write_wrapped(f, lhs, prec(lhs) < p)?;
                write!(f, " {} ", op.symbol())?;
                // Same-precedence right operands need parentheses to keep the
                // left-associated tree shape.
                write_wrapped(f, rhs, prec(rhs) <= p)
            }
        }
    }
}

impl fmt::Display for DslProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.form)?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

fn domain_err(e: GeomError) -> DslError {
    DslError::Domain(e.to_string())
}

fn eval_expr(e: &Expr, params: &BTreeMap<String, f64>, u: &Jet, v: &Jet) -> Result<Jet, DslError> {
    let order = u.order().min(v.order());
    Ok(match e {
        Expr::Num(x) => Jet::real(*x, order),
        Expr::Ident(name, pos) => match name.as_str() {
            "u" => u.clone(),
            "v" => v.clone(),
            "pi" => Jet::real(std::f64::consts::PI, order),
            _ => match params.get(name) {
                Some(&x) => Jet::real(x, order),
                None => {
                    return Err(DslError::UnknownIdentifier {
                        name: name.clone(),
                        line: pos.line,
                        col: pos.col,
                    })
                }
            },
        },
        Expr::Neg(a) => -eval_expr(a, params, u, v)?,
        Expr::Call(func, a) => {
            let x = eval_expr(a, params, u, v)?;
            match func {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Exp => x.exp(),
                Func::Sqrt => x.sqrt().map_err(domain_err)?,
            }
        }
        Expr::Bin(op, a, b) => {
            let x = eval_expr(a, params, u, v)?;
            let y = eval_expr(b, params, u, v)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x.div(&y).map_err(domain_err)?,
                BinOp::Pow => x.pow_jet(&y).map_err(domain_err)?,
            }
        }
    })
}

impl DslProgram {
    /// Identifiers other than `u`, `v`, `pi` that the program refers to.
    pub fn free_parameters(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Ident(n, _) if !matches!(n.as_str(), "u" | "v" | "pi") => {
                    if !out.contains(n) {
                        out.push(n.clone());
                    }
                }
                Expr::Neg(a) | Expr::Call(_, a) => walk(a, out),
                Expr::Bin(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        for c in &self.components {
            walk(c, &mut out);
        }
        out
    }

    /// Evaluates the lift on coordinate jets.
    pub fn eval_jets(&self, params: &BTreeMap<String, f64>, u: &Jet, v: &Jet) -> Result<JetVec6, DslError> {
        let xs = self
            .components
            .iter()
            .map(|e| eval_expr(e, params, u, v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match self.form {
            Form::Raw6 => JetVec6(xs.try_into().unwrap()),
            Form::R41 => embed_flat(&xs.try_into().unwrap()),
            Form::S41 => embed_desitter(&xs.try_into().unwrap()).map_err(domain_err)?,
            Form::H41 => embed_antidesitter(&xs.try_into().unwrap()).map_err(domain_err)?,
            Form::R3 => lift_euclidean3(&xs.try_into().unwrap()),
            Form::R31 => lift_minkowski3(&xs.try_into().unwrap()),
        })
    }

    /// Evaluates the lift at `(u, v)` to the given jet order.
    pub fn eval(&self, params: &BTreeMap<String, f64>, u: f64, v: f64, order: usize) -> Result<JetVec6, DslError> {
        let (ju, jv) = seed_point(u, v, order);
        self.eval_jets(params, &ju, &jv)
    }

    /// Wraps the program as a chart. Unknown identifiers are reported here
    /// rather than at the first evaluation.
    pub fn into_chart(
        self,
        name: impl Into<String>,
        params: BTreeMap<String, f64>,
        domain: Domain,
        periodic_u: bool,
        periodic_v: bool,
    ) -> Result<SurfaceChart, DslError> {
        self.eval(&params, domain.u0, domain.v0, 0)
            .map(|_| ())
            .or_else(|e| match e {
                DslError::Domain(_) => Ok(()),
                e => Err(e),
            })?;
        let p = params.clone();
        Ok(SurfaceChart::new(name, domain, move |u, v| {
            self.eval_jets(&p, u, v).map_err(GeomError::from)
        })
        .with_params(params)
        .with_periodicity(periodic_u, periodic_v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::catalog;
    use proptest::prelude::*;

    #[test]
    fn parses_flat_program() {
        let p = dsl_parse("r41 [cos(u), sin(u), v, 0]").unwrap();
        assert_eq!(p.form, Form::R41);
        let y = p.eval(&BTreeMap::new(), 0.0, 0.0, 2).unwrap().value_re();
        let want = embed_flat(&[1.0, 0.0, 0.0, 0.0].map(|c| Jet::real(c, 0))).value_re();
        assert_eq!(y, want);
    }

    #[test]
    fn precedence_and_associativity() {
        let env = BTreeMap::new();
        let val = |s: &str| {
            let p = dsl_parse(&format!("raw6 [{s}, 0, 0, 0, 0, 0]")).unwrap();
            p.eval(&env, 0.0, 0.0, 0).unwrap().value_re().0[0]
        };
        assert_eq!(val("2 + 3 * 4"), 14.0);
        assert_eq!(val("2 ^ 3 ^ 2"), 512.0);
        assert_eq!(val("-2 ^ 2"), -4.0);
        assert_eq!(val("8 / 4 / 2"), 1.0);
        assert_eq!(val("2 ^ -1"), 0.5);
        assert_eq!(val("10 - 4 - 3"), 3.0);
        assert_eq!(val("1.5e2"), 150.0);
    }

    #[test]
    fn reports_positions() {
        let err = dsl_parse("r3 [u,\n  v +, 0]").unwrap_err();
        assert_eq!(
            err,
            DslError::Parse {
                line: 2,
                col: 6,
                message: "expected an expression, found ','".into()
            }
        );
        assert_eq!(err.kind(), "ParseError");
    }

    #[test]
    fn unknown_identifiers_and_arity() {
        let e = dsl_parse("r3 [tan(u), v, 0]").unwrap_err();
        assert!(matches!(e, DslError::UnknownIdentifier { ref name, .. } if name == "tan"));
        let e = dsl_parse("r3 [u, v]").unwrap_err();
        assert_eq!(
            e,
            DslError::ArityMismatch {
                form: Form::R3,
                expected: 3,
                found: 2
            }
        );
        let p = dsl_parse("r3 [u, v, w]").unwrap();
        let e = p.eval(&BTreeMap::new(), 0.0, 0.0, 1).unwrap_err();
        assert_eq!(e.kind(), "UnknownIdentifier");
    }

    #[test]
    fn domain_errors() {
        let p = dsl_parse("r3 [sqrt(u - 1), v, 0]").unwrap();
        let e = p.eval(&BTreeMap::new(), 0.0, 0.0, 2).unwrap_err();
        assert_eq!(e.kind(), "DomainError");
    }

    #[test]
    fn comments_are_skipped() {
        let src = "# catenoid\nr3 [cosh(u)*cos(v), # x\n cosh(u)*sin(v), u]\n";
        assert!(dsl_parse(src).is_ok());
    }

    #[test]
    fn catenoid_matches_catalog() {
        let p = dsl_parse("r3 [cosh(u)*cos(v), cosh(u)*sin(v), u]").unwrap();
        let cat = catalog::minimal_lift(catalog::MinimalKind::Catenoid);
        for (u, v) in [(0.1, 0.2), (-0.8, 4.0)] {
            let a = p.eval(&BTreeMap::new(), u, v, 4).unwrap();
            let b = cat.eval_at(u, v, 4).unwrap();
            assert!((&a - &b).max_abs() < 1e-13);
        }
    }

    #[test]
    fn order_agnostic() {
        let p = dsl_parse("r41 [u*cos(v), u*sin(v), exp(u)/2, sqrt(1+v^2)]").unwrap();
        let env = BTreeMap::new();
        let lo = p.eval(&env, 0.3, 0.4, 4).unwrap();
        let hi = p.eval(&env, 0.3, 0.4, 8).unwrap();
        assert!((&lo - &hi.truncate(4)).max_abs() < 1e-14);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..1000).prop_map(|n| Expr::Num(n as f64 / 8.0)),
            prop_oneof![Just("u"), Just("v"), Just("pi"), Just("a")]
                .prop_map(|s| Expr::Ident(s.to_string(), Pos::default())),
        ];
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (0usize..6, inner.clone()).prop_map(|(i, e)| Expr::Call(Func::ALL[i], Box::new(e))),
                (
                    prop_oneof![
                        Just(BinOp::Add),
                        Just(BinOp::Sub),
                        Just(BinOp::Mul),
                        Just(BinOp::Div),
                        Just(BinOp::Pow)
                    ],
                    inner.clone(),
                    inner
                )
                    .prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(es in prop::collection::vec(arb_expr(), 3)) {
            let prog = DslProgram { form: Form::R3, components: es };
            let text = prog.to_string();
            let back = dsl_parse(&text).unwrap();
            prop_assert_eq!(&back, &prog, "{}", text);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
