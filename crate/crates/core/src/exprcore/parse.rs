//! Expression grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= '-'? INT | '(' '-'? INT ')'
//! atom    := INT | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! `D(ei, f)` is the formal derivative of the symbol `f` along frame
//! direction `ei`. Other calls (`cot`, `tanh`, ...) and the constant `pi` are
//! only meaningful for numeric evaluation of an [`Ast`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::expr::{Expr, ExprError};
use super::symbol::{FrameIndex, Symbol, SymbolTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("function `{0}` has no exact symbolic form")]
    NotRational(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Int(BigInt),
    Ident(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
    Call(String, Vec<Ast>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^(),".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.at(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.eat(op) {
            Ok(())
        } else {
            self.err(format!("expected `{op}`"))
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return self.err("exponent must be an integer literal");
            };
            self.pos += 1;
            if paren {
                self.expect(')')?;
            }
            let Some(mut e) = n.to_i32() else {
                return self.err("exponent out of range");
            };
            if neg {
                e = -e;
            }
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Ast::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    Ok(Ast::Call(name, args))
                } else {
                    Ok(Ast::Ident(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a syntax tree without resolving identifiers.
pub fn parse_ast(text: &str) -> Result<Ast, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(ast)
}

/// Parses `text` into a canonical expression; every identifier must be
/// declared in `table`.
pub fn parse_expr(text: &str, table: &SymbolTable) -> Result<Expr, ParseError> {
    let ast = parse_ast(text)?;
    ast.to_expr(&|name| table.get(name).cloned())
}

/// Like [`parse_expr`], but declares unknown identifiers as geometric
/// functions.
pub fn parse_expr_declaring(text: &str, table: &mut SymbolTable) -> Result<Expr, ParseError> {
    let ast = parse_ast(text)?;
    let mut names = Vec::new();
    ast.identifiers(&mut names);
    for n in names {
        if FrameIndex::parse(&n).is_none() {
            table.get_or_declare(&n);
        }
    }
    ast.to_expr(&|name| table.get(name).cloned())
}

impl Ast {
    fn identifiers(&self, out: &mut Vec<String>) {
        match self {
            Ast::Int(_) => {}
            Ast::Ident(n) => out.push(n.clone()),
            Ast::Neg(a) | Ast::Pow(a, _) => a.identifiers(out),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
                a.identifiers(out);
                b.identifiers(out);
            }
            Ast::Call(name, args) => {
                if name != "D" {
                    out.push(name.clone());
                }
                args.iter().for_each(|a| a.identifiers(out));
            }
        }
    }

    pub fn to_expr(&self, resolve: &dyn Fn(&str) -> Option<Symbol>) -> Result<Expr, ParseError> {
        Ok(match self {
            Ast::Int(n) => Expr::from_rational(BigRational::from_integer(n.clone())),
            Ast::Ident(name) => {
                let s = resolve(name).ok_or_else(|| ParseError::UnknownIdentifier(name.clone()))?;
                Expr::symbol(&s)
            }
            Ast::Neg(a) => -a.to_expr(resolve)?,
            Ast::Add(a, b) => a.to_expr(resolve)? + b.to_expr(resolve)?,
            Ast::Sub(a, b) => a.to_expr(resolve)? - b.to_expr(resolve)?,
            Ast::Mul(a, b) => a.to_expr(resolve)? * b.to_expr(resolve)?,
            Ast::Div(a, b) => a.to_expr(resolve)?.checked_div(&b.to_expr(resolve)?)?,
            Ast::Pow(a, e) => a.to_expr(resolve)?.pow(*e)?,
            Ast::Call(name, args) if name == "D" => derivative_call(args, resolve)?,
            Ast::Call(name, _) => return Err(ParseError::NotRational(name.clone())),
        })
    }

    /// Numeric evaluation in double precision. Supports the elementary
    /// functions needed by curvature catalogs and the constant `pi`.
    pub fn eval(&self, vars: &BTreeMap<String, f64>) -> Result<f64, NumericAstError> {
        Ok(match self {
            Ast::Int(n) => n.to_f64().unwrap_or(f64::INFINITY),
            Ast::Ident(name) => match vars.get(name) {
                Some(v) => *v,
                None if name == "pi" => std::f64::consts::PI,
                None => return Err(NumericAstError::Unbound(name.clone())),
            },
            Ast::Neg(a) => -a.eval(vars)?,
            Ast::Add(a, b) => a.eval(vars)? + b.eval(vars)?,
            Ast::Sub(a, b) => a.eval(vars)? - b.eval(vars)?,
            Ast::Mul(a, b) => a.eval(vars)? * b.eval(vars)?,
            Ast::Div(a, b) => a.eval(vars)? / b.eval(vars)?,
            Ast::Pow(a, e) => a.eval(vars)?.powi(*e),
            Ast::Call(name, args) => {
                if args.len() != 1 {
                    return Err(NumericAstError::Arity(name.clone()));
                }
                let x = args[0].eval(vars)?;
                match name.as_str() {
                    "sin" => x.sin(),
                    "cos" => x.cos(),
                    "tan" => x.tan(),
                    "cot" => 1.0 / x.tan(),
                    "sinh" => x.sinh(),
                    "cosh" => x.cosh(),
                    "tanh" => x.tanh(),
                    "coth" => 1.0 / x.tanh(),
                    "sqrt" => x.sqrt(),
                    "exp" => x.exp(),
                    "ln" => x.ln(),
                    _ => return Err(NumericAstError::UnknownFunction(name.clone())),
                }
            }
        })
    }

    /// Free variable names, excluding `pi` and function names.
    pub fn free_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Ast::Int(_) => {}
            Ast::Ident(n) if n == "pi" => {}
            Ast::Ident(n) => out.push(n.clone()),
            Ast::Neg(a) | Ast::Pow(a, _) => a.collect_vars(out),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Ast::Call(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericAstError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("function `{0}` takes exactly one argument")]
    Arity(String),
}

fn derivative_call(args: &[Ast], resolve: &dyn Fn(&str) -> Option<Symbol>) -> Result<Expr, ParseError> {
    let bad = || ParseError::Syntax {
        pos: 0,
        msg: "D expects `D(e1|e2|e3, symbol)`".into(),
    };
    let [Ast::Ident(dir), target] = args else {
        return Err(bad());
    };
    let dir = FrameIndex::parse(dir).ok_or_else(bad)?;
    match target {
        Ast::Int(_) => Ok(Expr::zero()),
        Ast::Ident(name) => {
            let s = resolve(name).ok_or_else(|| ParseError::UnknownIdentifier(name.clone()))?;
            Ok(Symbol::derivative(dir, &s).map_or_else(Expr::zero, |d| Expr::symbol(&d)))
        }
        Ast::Call(inner, _) if inner == "D" => {
            let base = derivative_call_symbol(target, resolve)?;
            Ok(match base {
                Some(s) => Symbol::derivative(dir, &s).map_or_else(Expr::zero, |d| Expr::symbol(&d)),
                None => Expr::zero(),
            })
        }
        _ => Err(bad()),
    }
}

fn derivative_call_symbol(ast: &Ast, resolve: &dyn Fn(&str) -> Option<Symbol>) -> Result<Option<Symbol>, ParseError> {
    let e = ast.to_expr(resolve)?;
    if e.is_zero() {
        return Ok(None);
    }
    Ok(e.symbols().into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprcore::SymbolKind;

    fn table() -> SymbolTable {
        let mut t = SymbolTable::new();
        for n in ["a", "v", "x", "beta", "mu"] {
            t.declare(n, SymbolKind::GeometricFunction).unwrap();
        }
        t.declare("c", SymbolKind::Constant).unwrap();
        t
    }

    #[test]
    fn zero_literal() {
        assert_eq!(parse_expr("0", &table()).unwrap(), Expr::zero());
    }

    #[test]
    fn precedence() {
        let t = table();
        assert_eq!(parse_expr("-x^2", &t).unwrap(), -parse_expr("x*x", &t).unwrap());
        assert_eq!(parse_expr("2+3*4", &t).unwrap(), Expr::int(14));
        assert_eq!(parse_expr("x^-1*x", &t).unwrap(), Expr::one());
        assert_eq!(parse_expr("8/2/2", &t).unwrap(), Expr::int(2));
    }

    #[test]
    fn quotient_cancels() {
        let t = table();
        assert_eq!(parse_expr("(x^2-1)/(x-1)", &t).unwrap(), parse_expr("x+1", &t).unwrap());
    }

    #[test]
    fn commutativity_cancels() {
        let t = table();
        assert_eq!(parse_expr("beta*mu - mu*beta", &t).unwrap(), Expr::zero());
    }

    #[test]
    fn errors_carry_position() {
        let t = table();
        match parse_expr("x + * 2", &t) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_expr("x + q", &t), Err(ParseError::UnknownIdentifier("q".into())));
        assert!(matches!(
            parse_expr("x $ 2", &t),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_expr("(x", &t), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn formal_derivatives() {
        let t = table();
        let d = parse_expr("D(e3, beta)", &t).unwrap();
        assert_eq!(d.to_string(), "D(e3,beta)");
        assert_eq!(parse_expr("D(e1, c)", &t).unwrap(), Expr::zero());
        assert_eq!(parse_expr("D(e1, 7)", &t).unwrap(), Expr::zero());
        assert!(parse_expr("D(e4, beta)", &t).is_err());
    }

    #[test]
    fn printed_form_reparses() {
        let t = table();
        for src in [
            "2*a*v^2 + 5*c*v - 2*a*c",
            "(x^2+1)/(3*x-2)",
            "-x/4 + D(e2,mu)*beta",
            "0",
        ] {
            let e = parse_expr(src, &t).unwrap();
            assert_eq!(parse_expr(&e.to_string(), &t).unwrap(), e, "{src}");
        }
    }

    #[test]
    fn numeric_ast_functions() {
        let ast = parse_ast("2*cot(2*r)").unwrap();
        let mut vars = BTreeMap::new();
        vars.insert("r".to_string(), std::f64::consts::FRAC_PI_8);
        assert!((ast.eval(&vars).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(ast.free_variables(), vec!["r".to_string()]);
        assert!(matches!(
            parse_ast("cot(r)").unwrap().to_expr(&|_| None),
            Err(ParseError::NotRational(_))
        ));
    }
}
