use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::expr::{is_manifestly_positive, EvalError, Expr, NumericBindings};
use super::poly::Poly;
use super::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("`{0}` does not occur in a nonzero expression: the equation is inconsistent")]
    Inconsistent(String),
    #[error("the equation is not polynomial in `{0}`")]
    NotPolynomial(String),
    #[error("degree {degree} in `{unknown}` exceeds 2")]
    DegreeTooHigh { unknown: String, degree: u32 },
}

/// A root `p + q·√Δ`, with `√Δ` kept as an opaque square-root of the
/// discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticRoot {
    pub rational_part: Expr,
    pub sqrt_coefficient: Expr,
    pub radicand: Expr,
}

impl QuadraticRoot {
    pub fn rational(e: Expr) -> Self {
        QuadraticRoot {
            rational_part: e,
            sqrt_coefficient: Expr::zero(),
            radicand: Expr::zero(),
        }
    }

    pub fn eval(&self, bindings: &NumericBindings) -> Result<f64, EvalError> {
        let p = self.rational_part.eval(bindings)?;
        if self.sqrt_coefficient.is_zero() {
            return Ok(p);
        }
        let q = self.sqrt_coefficient.eval(bindings)?;
        let d = self.radicand.eval(bindings)?;
        Ok(p + q * d.max(0.0).sqrt())
    }
}

impl fmt::Display for QuadraticRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_coefficient.is_zero() {
            write!(f, "{}", self.rational_part)
        } else {
            write!(
                f,
                "({})+({})*sqrt({})",
                self.rational_part, self.sqrt_coefficient, self.radicand
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Roots {
    /// `0 = 0`: every value solves the equation.
    Degenerate,
    One(QuadraticRoot),
    Two(QuadraticRoot, QuadraticRoot),
}

/// When real roots exist, i.e. the sign analysis of `discriminant ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solvability {
    Always,
    Never,
    /// `symbol² ≤ bound`.
    SquareBound {
        symbol: Symbol,
        bound: BigRational,
    },
    /// `condition ≥ 0`, undecided symbolically.
    Condition(Expr),
}

impl fmt::Display for Solvability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solvability::Always => f.write_str("always solvable"),
            Solvability::Never => f.write_str("never solvable"),
            Solvability::SquareBound { symbol, bound } => {
                write!(f, "{}^2 <= {}", symbol.display(), bound)
            }
            Solvability::Condition(e) => write!(f, "{} >= 0", e.pretty()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSolution {
    pub unknown: Symbol,
    /// Coefficients `[c0, c1, c2]` of the cleared equation.
    pub coefficients: [Expr; 3],
    pub degree: u32,
    pub discriminant: Expr,
    pub roots: Roots,
    pub solvability: Solvability,
}

impl QuadraticSolution {
    /// Substitutes `root` (with `√Δ` treated as a symbol `s`, `s² = Δ`) back into
    /// the equation, returning the parts free of and linear in `s`. Both are
    /// zero for a genuine root.
    pub fn back_substitute(&self, root: &QuadraticRoot) -> (Expr, Expr) {
        let [c0, c1, c2] = &self.coefficients;
        let p = &root.rational_part;
        let q = &root.sqrt_coefficient;
        let d = &root.radicand;
        let free = c2 * &(&(p * p) + &(&(q * q) * d)) + c1 * p + c0.clone();
        let linear = &(c2 * &(&Expr::int(2) * &(p * q))) + &(c1 * q);
        (free, linear)
    }

    pub fn roots_list(&self) -> Vec<&QuadraticRoot> {
        match &self.roots {
            Roots::Degenerate => vec![],
            Roots::One(r) => vec![r],
            Roots::Two(a, b) => vec![a, b],
        }
    }

    /// Real roots at a numeric point (empty when the discriminant is negative).
    pub fn numeric_roots(&self, bindings: &NumericBindings) -> Result<Vec<f64>, EvalError> {
        if self.degree == 2 && self.discriminant.eval(bindings)? < 0.0 {
            return Ok(vec![]);
        }
        self.roots_list().iter().map(|r| r.eval(bindings)).collect()
    }
}

/// Solves `e = 0` for `unknown`, where `e` is polynomial of degree ≤ 2 in
/// `unknown` (its denominator may involve other symbols).
pub fn solve_quadratic(e: &Expr, unknown: &Symbol) -> Result<QuadraticSolution, SolveError> {
    if e.denominator().degree_in(unknown) > 0 {
        return Err(SolveError::NotPolynomial(unknown.name().to_string()));
    }
    let degree = e.numerator().degree_in(unknown);
    if degree == 0 && !e.is_zero() {
        return Err(SolveError::Inconsistent(unknown.name().to_string()));
    }
    if degree > 2 {
        return Err(SolveError::DegreeTooHigh {
            unknown: unknown.name().to_string(),
            degree,
        });
    }
    let mut cs = e.numerator().coefficients_in(unknown);
    cs.resize(3, Poly::zero());
    let coefficients = [
        Expr::from_poly(cs[0].clone()),
        Expr::from_poly(cs[1].clone()),
        Expr::from_poly(cs[2].clone()),
    ];
    let [c0, c1, c2] = coefficients.clone();

    let (discriminant, roots) = match degree {
        0 => (Expr::zero(), Roots::Degenerate),
        1 => {
            let root = (-&c0).checked_div(&c1).expect("linear coefficient is nonzero");
            (Expr::zero(), Roots::One(QuadraticRoot::rational(root)))
        }
        _ => {
            let disc = &(&c1 * &c1) - &(&Expr::int(4) * &(&c2 * &c0));
            let two_a = &Expr::int(2) * &c2;
            let p = (-&c1).checked_div(&two_a).expect("leading coefficient is nonzero");
            if disc.is_zero() {
                (disc, Roots::One(QuadraticRoot::rational(p)))
            } else {
                let q = Expr::one().checked_div(&two_a).expect("leading coefficient is nonzero");
                let plus = QuadraticRoot {
                    rational_part: p.clone(),
                    sqrt_coefficient: q.clone(),
                    radicand: disc.clone(),
                };
                let minus = QuadraticRoot {
                    rational_part: p,
                    sqrt_coefficient: -q,
                    radicand: disc.clone(),
                };
                (disc, Roots::Two(plus, minus))
            }
        }
    };
    let solvability = if degree == 2 {
        classify_discriminant(&discriminant)
    } else {
        Solvability::Always
    };
    Ok(QuadraticSolution {
        unknown: unknown.clone(),
        coefficients,
        degree,
        discriminant,
        roots,
        solvability,
    })
}

/// Sign analysis of `Δ ≥ 0` for the shapes that arise here: constants,
/// manifestly positive or negative forms, and `k0 + k2·s²`.
pub fn classify_discriminant(disc: &Expr) -> Solvability {
    if let Some(q) = disc.as_rational() {
        return if q.is_negative() {
            Solvability::Never
        } else {
            Solvability::Always
        };
    }
    if is_manifestly_positive(disc) {
        return Solvability::Always;
    }
    if is_manifestly_positive(&-disc) {
        return Solvability::Never;
    }
    let syms = disc.symbols();
    if disc.is_polynomial() && syms.len() == 1 {
        let s = syms.into_iter().next().expect("one symbol");
        let cs = disc.numerator().coefficients_in(&s);
        if cs.len() == 3 && cs[1].is_zero() {
            let k0 = cs[0].constant_value().unwrap_or_else(BigRational::zero);
            let k2 = cs[2].constant_value().unwrap_or_else(BigRational::zero);
            if k2.is_negative() && k0.is_positive() {
                return Solvability::SquareBound {
                    symbol: s,
                    bound: -k0 / k2,
                };
            }
        }
    }
    Solvability::Condition(disc.clone())
}
