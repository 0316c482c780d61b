use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly, PolyEvalError};
use super::symbol::{FrameIndex, Symbol};

/// Symbol → expression map for simultaneous substitution.
pub type Bindings = BTreeMap<Symbol, Expr>;

/// Symbol → value map for numeric evaluation.
pub type NumericBindings = BTreeMap<Symbol, f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("division by an identically zero expression")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("denominator evaluates to {value:e}, indistinguishable from zero")]
    NearZeroDenominator { value: f64 },
}

impl From<PolyEvalError> for EvalError {
    fn from(e: PolyEvalError) -> Self {
        match e {
            PolyEvalError::Unbound(s) => EvalError::Unbound(s),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Fraction {
    num: Poly,
    den: Poly,
}

/// An exact rational function over ℚ in canonical form.
///
/// The numerator and denominator are coprime, the denominator has leading
/// coefficient 1 in graded-lex order, and zero is `0/1`. Structural equality
/// is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr(Arc<Fraction>);

impl Expr {
    pub fn zero() -> Self {
        Expr::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Expr::from_poly(Poly::one())
    }

    pub fn int(n: i64) -> Self {
        Expr::from_poly(Poly::from_int(n))
    }

    /// `p/q`; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator in rational literal");
        Expr::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Expr::from_poly(Poly::constant(q))
    }

    pub fn symbol(sym: &Symbol) -> Self {
        Expr::from_poly(Poly::var(sym.clone()))
    }

    pub fn from_poly(p: Poly) -> Self {
        Expr(Arc::new(Fraction {
            num: p,
            den: Poly::one(),
        }))
    }

    /// Builds `num/den` and reduces it to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Expr::zero());
        }
        if let Some(d) = den.constant_value() {
            return Ok(Expr::from_poly(num.scale(&d.recip())));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient().recip();
        Ok(Expr(Arc::new(Fraction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })))
    }

    pub fn numerator(&self) -> &Poly {
        &self.0.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.0.den
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.den.is_constant() && self.0.num == Poly::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_polynomial() {
            self.0.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut s = self.0.num.symbols();
        s.extend(self.0.den.symbols());
        s
    }

    pub fn contains(&self, sym: &Symbol) -> bool {
        self.0.num.degree_in(sym) > 0 || self.0.den.degree_in(sym) > 0
    }

    pub fn has_formal_derivatives(&self) -> bool {
        self.symbols().iter().any(Symbol::is_formal_derivative)
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr, ExprError> {
        if other.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Expr::from_parts(self.0.num.mul(&other.0.den), self.0.den.mul(&other.0.num))
    }

    pub fn pow(&self, exp: i32) -> Result<Expr, ExprError> {
        if exp >= 0 {
            let e = exp as u32;
            Expr::from_parts(self.0.num.pow(e), self.0.den.pow(e))
        } else {
            let e = exp.unsigned_abs();
            Expr::from_parts(self.0.den.pow(e), self.0.num.pow(e))
        }
    }

    pub fn scale(&self, q: &BigRational) -> Expr {
        if q.is_zero() {
            return Expr::zero();
        }
        Expr(Arc::new(Fraction {
            num: self.0.num.scale(q),
            den: self.0.den.clone(),
        }))
    }

    /// Simultaneous substitution of symbols by expressions.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Expr, ExprError> {
        if bindings.is_empty() || self.symbols().iter().all(|s| !bindings.contains_key(s)) {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.0.num, bindings)?;
        let den = substitute_poly(&self.0.den, bindings)?;
        num.checked_div(&den)
    }

    /// Directional derivative along frame direction `dir`, producing
    /// formal-derivative symbols for every non-constant symbol.
    pub fn derive(&self, dir: FrameIndex) -> Expr {
        let dn = self.0.num.derive(dir);
        if self.0.den.is_constant() {
            return Expr::from_parts(dn, self.0.den.clone()).expect("nonzero denominator");
        }
        let dd = self.0.den.derive(dir);
        let num = dn.mul(&self.0.den).sub(&self.0.num.mul(&dd));
        Expr::from_parts(num, self.0.den.mul(&self.0.den)).expect("nonzero denominator")
    }

    pub fn eval(&self, bindings: &NumericBindings) -> Result<f64, EvalError> {
        self.eval_with(&|s| bindings.get(s).copied())
    }

    /// Evaluates with a lookup function; the denominator is rejected when it
    /// is zero relative to the magnitude of its terms.
    pub fn eval_with(&self, value: &dyn Fn(&Symbol) -> Option<f64>) -> Result<f64, EvalError> {
        let n = self.0.num.eval_f64(value)?;
        if self.0.den.is_constant() {
            return Ok(n);
        }
        let (d, scale) = self.0.den.eval_f64_scaled(value)?;
        if !d.is_finite() || d.abs() <= 64.0 * f64::EPSILON * scale {
            return Err(EvalError::NearZeroDenominator { value: d });
        }
        Ok(n / d)
    }

    /// Canonical text using display names, with a common monomial factor and
    /// an overall sign pulled out: `-λ*(c+λ*ν)`.
    pub fn pretty(&self) -> String {
        let num = pretty_poly(&self.0.num);
        if self.is_polynomial() {
            num
        } else {
            format!("({})/({})", num, poly_text(&self.0.den, true))
        }
    }
}

fn substitute_poly(p: &Poly, bindings: &Bindings) -> Result<Expr, ExprError> {
    let mut acc = Expr::zero();
    let mut cache: HashMap<(Symbol, u32), Expr> = HashMap::new();
    for (m, c) in p.terms() {
        let mut term = Expr::from_rational(c.clone());
        let mut kept = Monomial::one();
        for (s, e) in m.factors() {
            match bindings.get(s) {
                Some(v) => {
                    let key = (s.clone(), *e);
                    let pw = match cache.get(&key) {
                        Some(pw) => pw.clone(),
                        None => {
                            let pw = v.pow(*e as i32)?;
                            cache.insert(key, pw.clone());
                            pw
                        }
                    };
                    term = &term * &pw;
                }
                None => kept = kept.mul(&Monomial::var(s.clone(), *e)),
            }
        }
        if !kept.is_one() {
            term = &term * &Expr::from_poly(Poly::term(BigRational::one(), kept));
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn monomial_text(m: &Monomial, display: bool) -> String {
    m.factors()
        .iter()
        .map(|(s, e)| {
            let name = if display { s.display() } else { s.name() };
            if *e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn term_text(c: &BigRational, m: &Monomial, display: bool) -> String {
    if m.is_one() {
        return rational_text(c);
    }
    let mono = monomial_text(m, display);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{}", rational_text(c), mono)
    }
}

/// Terms in ascending graded-lex order, joined without spaces.
fn poly_text(p: &Poly, display: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let t = term_text(c, m, display);
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

fn pretty_poly(p: &Poly) -> String {
    if p.num_terms() < 2 {
        return poly_text(p, true);
    }
    let negate = p.all_coefficients_negative();
    let content = p.monomial_content();
    let mut rest = if negate { p.neg() } else { p.clone() };
    if !content.is_one() {
        rest = rest
            .div_exact(&Poly::term(BigRational::one(), content.clone()))
            .expect("monomial content divides");
    }
    let sign = if negate { "-" } else { "" };
    match (content.is_one(), negate) {
        (true, false) => poly_text(&rest, true),
        (true, true) => format!("-({})", poly_text(&rest, true)),
        (false, _) => format!("{sign}{}*({})", monomial_text(&content, true), poly_text(&rest, true)),
    }
}

impl fmt::Display for Expr {
    /// Canonical ASCII text that re-parses to the same expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            f.write_str(&poly_text(&self.0.num, false))
        } else {
            write!(
                f,
                "({})/({})",
                poly_text(&self.0.num, false),
                poly_text(&self.0.den, false)
            )
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<&Symbol> for Expr {
    fn from(s: &Symbol) -> Self {
        Expr::symbol(s)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &rhs.0);
        if a.den == b.den {
            if a.den.is_constant() {
                return Expr::from_poly(a.num.add(&b.num));
            }
            return Expr::from_parts(a.num.add(&b.num), a.den.clone()).expect("nonzero denominator");
        }
        Expr::from_parts(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den)).expect("nonzero denominator")
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        self + &(-rhs)
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero();
        }
        let (a, b) = (&self.0, &rhs.0);
        if a.den.is_constant() && b.den.is_constant() {
            return Expr::from_poly(a.num.mul(&b.num));
        }
        Expr::from_parts(a.num.mul(&b.num), a.den.mul(&b.den)).expect("nonzero denominator")
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr(Arc::new(Fraction {
            num: self.0.num.neg(),
            den: self.0.den.clone(),
        }))
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { (&self).$m(&rhs) }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr { (&self).$m(rhs) }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| &a + &b)
    }
}

/// Re-canonicalizes `e`. Expressions are canonical on construction, so this
/// is the identity on values built through the public API.
pub fn simplify(e: &Expr) -> Expr {
    Expr::from_parts(e.numerator().clone(), e.denominator().clone()).expect("canonical denominator is nonzero")
}

/// Whether `e` is positive for every real assignment of its symbols, judged
/// from its form: a positive constant plus nonnegative multiples of even
/// power products. Returns `false` when undecided.
pub fn is_manifestly_positive(e: &Expr) -> bool {
    if !e.is_polynomial() {
        return false;
    }
    let mut constant_positive = false;
    for (m, c) in e.numerator().terms() {
        if m.is_one() {
            constant_positive = c.is_positive();
            if !constant_positive {
                return false;
            }
        } else if c.is_negative() || m.factors().iter().any(|(_, exp)| exp % 2 == 1) {
            return false;
        }
    }
    constant_positive
}
