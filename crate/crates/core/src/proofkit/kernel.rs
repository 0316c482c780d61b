//! The algebraic kernel for scripted proof steps: declared hypotheses,
//! cancellation of declared-nonzero factors, and conclusions.

use std::fmt;

use crate::exprcore::{Expr, FrameIndex, Symbol};

#[derive(Debug, Clone, PartialEq)]
pub enum Hypothesis {
    NonZero(Expr),
    Zero(Expr),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NonZero(e) => write!(f, "{} ≠ 0", e.pretty()),
            Hypothesis::Zero(e) => write!(f, "{} = 0", e.pretty()),
        }
    }
}

/// Which of the parallel-condition projections `g((∇_X T)Y, Z)` a step reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Projection {
    pub x: FrameIndex,
    pub y: FrameIndex,
    pub onto: FrameIndex,
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g((∇_{} S*){}, {})", self.x, self.y, self.onto)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Conclusion {
    /// The symbol vanishes on the open set under consideration.
    Vanishes(Symbol),
    /// A relation recorded for later steps.
    Holds(Hypothesis),
    /// The equation is incompatible with the hypotheses.
    Contradiction(String),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Vanishes(s) => write!(f, "{} = 0", s.display()),
            Conclusion::Holds(h) => write!(f, "{h}"),
            Conclusion::Contradiction(msg) => write!(f, "contradiction: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofStep {
    pub label: String,
    pub projection: Option<Projection>,
    /// Sign applied to the raw projection: `E = 0` and `−E = 0` are the same
    /// equation, and the trace states it in the conventional orientation.
    pub orientation: i8,
    /// The projection before earlier conclusions were substituted.
    pub raw: Expr,
    pub equation: Expr,
    pub justification: String,
    /// Hypotheses in force when the step ran, earlier conclusions included.
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofStatus {
    Contradiction,
    Open,
}

impl fmt::Display for ProofStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofStatus::Contradiction => "contradiction",
            ProofStatus::Open => "open",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofTrace {
    pub name: String,
    pub steps: Vec<ProofStep>,
    /// Hypotheses in force at the end of the trace.
    pub hypotheses: Vec<Hypothesis>,
    pub status: ProofStatus,
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.name, self.status)?;
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "  {}. {}", i + 1, s.label)?;
            if let Some(p) = s.projection {
                write!(f, " — {p}")?;
                if s.orientation < 0 {
                    f.write_str(" (negated)")?;
                }
            }
            writeln!(f)?;
            writeln!(f, "     equation: {} = 0", s.equation.pretty())?;
            writeln!(f, "     by: {}", s.justification)?;
            writeln!(f, "     ⇒ {}", s.conclusion)?;
        }
        let hyps: Vec<String> = self.hypotheses.iter().map(ToString::to_string).collect();
        write!(f, "  hypotheses: {{{}}}", hyps.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProofError {
    #[error("step `{step}`: expected {expected}, obtained {obtained}")]
    Mismatch {
        step: String,
        expected: String,
        obtained: String,
    },
    #[error("step `{step}`: cannot cancel {factor}, which is not declared nonzero")]
    IllegalCancellation { step: String, factor: String },
    #[error("step `{step}`: {factor} does not divide {equation}")]
    NotAFactor {
        step: String,
        factor: String,
        equation: String,
    },
    #[error("step `{step}`: {remainder} = 0 does not determine a single vanishing symbol")]
    Inconclusive { step: String, remainder: String },
    #[error("no `{0}` family in the catalog")]
    FamilyMissing(String),
    #[error("{family} at r = {r}: λν + c = {value}, expected {expected}")]
    TypeB {
        family: String,
        r: f64,
        value: f64,
        expected: f64,
    },
    #[error("{0}")]
    Other(String),
}

/// Declared hypotheses; the only facts the kernel may use.
#[derive(Debug, Clone, Default)]
pub struct Hypotheses(pub Vec<Hypothesis>);

impl Hypotheses {
    pub fn nonzero(&self, e: &Expr) -> bool {
        if let Some(q) = e.as_rational() {
            return q != num_rational::BigRational::from_integer(0.into());
        }
        self.0
            .iter()
            .any(|h| matches!(h, Hypothesis::NonZero(x) if x == e || *x == -e))
    }

    pub fn push(&mut self, h: Hypothesis) {
        if !self.0.contains(&h) {
            self.0.push(h);
        }
    }

    pub fn remove(&mut self, h: &Hypothesis) {
        self.0.retain(|x| x != h);
    }
}

pub fn expect_equal(step: &str, expected: &Expr, obtained: &Expr) -> Result<(), ProofError> {
    if expected == obtained {
        Ok(())
    } else {
        Err(ProofError::Mismatch {
            step: step.to_string(),
            expected: expected.pretty(),
            obtained: obtained.pretty(),
        })
    }
}

/// Divides `eq` by each factor as often as it divides exactly. Every factor
/// must be declared nonzero.
pub fn cancel(step: &str, eq: &Expr, factors: &[Expr], hyps: &Hypotheses) -> Result<Expr, ProofError> {
    let mut rest = eq.clone();
    for f in factors {
        if !hyps.nonzero(f) {
            return Err(ProofError::IllegalCancellation {
                step: step.to_string(),
                factor: f.pretty(),
            });
        }
        let mut divided = false;
        loop {
            let q = rest.checked_div(f).expect("nonzero factor");
            if rest.is_zero() || !q.is_polynomial() || q == rest {
                break;
            }
            rest = q;
            divided = true;
        }
        if !divided {
            return Err(ProofError::NotAFactor {
                step: step.to_string(),
                factor: f.pretty(),
                equation: eq.pretty(),
            });
        }
    }
    Ok(rest)
}

/// Reads off what `remainder = 0` says: a nonzero constant is a
/// contradiction; `k·s^e` forces `s = 0`, itself a contradiction when `s` is
/// declared nonzero.
pub fn conclude(step: &str, remainder: &Expr, hyps: &Hypotheses) -> Result<Conclusion, ProofError> {
    let inconclusive = || ProofError::Inconclusive {
        step: step.to_string(),
        remainder: remainder.pretty(),
    };
    if remainder.is_zero() {
        return Err(inconclusive());
    }
    if remainder.is_constant() {
        return Ok(Conclusion::Contradiction(format!("{} = 0", remainder.pretty())));
    }
    let num = remainder.numerator();
    if !remainder.is_polynomial() || num.num_terms() != 1 {
        return Err(inconclusive());
    }
    let (mono, _) = num.leading().expect("nonzero");
    let [(sym, _)] = mono.factors() else {
        return Err(inconclusive());
    };
    if hyps.nonzero(&Expr::symbol(sym)) {
        let d = sym.display();
        return Ok(Conclusion::Contradiction(format!("{d} = 0 contradicts {d} ≠ 0")));
    }
    Ok(Conclusion::Vanishes(sym.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Expr {
        Expr::symbol(&Symbol::geometric(n))
    }

    #[test]
    fn cancellation_requires_declared_nonzero() {
        let (b, d) = (s("beta"), s("delta"));
        let eq = &(&b * &b) * &d;
        let hyps = Hypotheses(vec![Hypothesis::NonZero(b.clone())]);
        assert_eq!(cancel("t", &eq, std::slice::from_ref(&b), &hyps).unwrap(), d);
        assert!(matches!(
            cancel("t", &eq, std::slice::from_ref(&d), &hyps),
            Err(ProofError::IllegalCancellation { .. })
        ));
        assert!(matches!(
            cancel("t", &d, &[b], &hyps),
            Err(ProofError::NotAFactor { .. })
        ));
    }

    #[test]
    fn conclusions() {
        let (b, c) = (s("beta"), s("c"));
        let hyps = Hypotheses(vec![Hypothesis::NonZero(c.clone())]);
        assert_eq!(
            conclude("t", &b, &hyps).unwrap(),
            Conclusion::Vanishes(Symbol::geometric("beta"))
        );
        assert_eq!(
            conclude("t", &-&c, &hyps).unwrap(),
            Conclusion::Contradiction("c = 0 contradicts c ≠ 0".into())
        );
        assert!(matches!(
            conclude("t", &Expr::int(5), &hyps),
            Ok(Conclusion::Contradiction(_))
        ));
        assert!(matches!(
            conclude("t", &(&b + &c), &hyps),
            Err(ProofError::Inconclusive { .. })
        ));
        assert!(matches!(
            conclude("t", &(&b * &c), &hyps),
            Err(ProofError::Inconclusive { .. })
        ));
    }
}
