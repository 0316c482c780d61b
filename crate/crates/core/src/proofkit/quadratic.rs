//! What remains of the Hopf branch: `λ = −c/ν` in the Hopf relation gives a
//! quadratic in `ν` whose solvability depends on the sign of `c`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::exprcore::{parse_expr, solve_quadratic, Bindings, Expr, QuadraticSolution, Solvability};
use crate::framegeom::{build_hopf_context, c_symbol, names, FrameContext};
use crate::hopfcatalog::ModelSpace;

use super::kernel::{cancel, conclude, Conclusion, Hypotheses, Hypothesis, ProofError};

/// The double root on the boundary of the solvability region, where the
/// discriminant vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryRoot {
    pub alpha: BigRational,
    pub nu: BigRational,
    pub lambda: BigRational,
}

impl BoundaryRoot {
    /// With `λ = ν` the two non-Reeb principal curvatures coincide, so this
    /// point is not one with three distinct principal curvatures.
    pub fn is_umbilic_pair(&self) -> bool {
        self.nu == self.lambda
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticReport {
    pub space: ModelSpace,
    pub relation: Expr,
    /// The relation after `λ = −c/ν`.
    pub substituted: Expr,
    /// Its numerator, the denominator `ν` being nonzero.
    pub cleared: Expr,
    pub target: Expr,
    /// `cleared = factor · target`.
    pub factor: Expr,
    /// Discriminant in `ν` with `c` symbolic.
    pub discriminant: Expr,
    /// The quadratic at the space's value of `c`.
    pub solution: QuadraticSolution,
    pub alpha_zero_equation: Expr,
    pub alpha_zero_excluded: bool,
    pub boundary: Option<BoundaryRoot>,
}

impl QuadraticReport {
    pub fn solvability(&self) -> &Solvability {
        &self.solution.solvability
    }
}

impl fmt::Display for QuadraticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "quadratic analysis ({}, c = {})", self.space.name(), self.space.c())?;
        writeln!(f, "  Hopf relation: {} = 0", self.relation.pretty())?;
        writeln!(f, "  with λ = −c/ν: {} = 0", self.substituted.pretty())?;
        writeln!(
            f,
            "  cleared: {} = ({})·({})",
            self.cleared.pretty(),
            self.factor.pretty(),
            self.target.pretty()
        )?;
        writeln!(f, "  discriminant in ν: {}", self.discriminant.pretty())?;
        writeln!(
            f,
            "  at c = {}: {}",
            self.space.c(),
            self.solution.discriminant.pretty()
        )?;
        writeln!(f, "  solvability: {}", self.solution.solvability)?;
        write!(
            f,
            "  α = 0: {} = 0, {}",
            self.alpha_zero_equation.pretty(),
            if self.alpha_zero_excluded {
                "excluded"
            } else {
                "not excluded"
            }
        )?;
        if let Some(b) = &self.boundary {
            write!(
                f,
                "\n  boundary α = {}: double root ν = {}, λ = {}",
                b.alpha, b.nu, b.lambda
            )?;
            if b.is_umbilic_pair() {
                f.write_str(" (λ = ν)")?;
            }
        }
        Ok(())
    }
}

fn bind(ctx: &FrameContext, pairs: &[(&str, Expr)]) -> Bindings {
    pairs.iter().map(|(n, e)| (ctx.symbol(n).clone(), e.clone())).collect()
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

pub fn quadratic_analysis(space: ModelSpace) -> Result<QuadraticReport, ProofError> {
    let ctx = build_hopf_context(c_symbol());
    let p = |t: &str| parse_expr(t, &ctx.table).expect("well-formed proof expression");
    let other = |e: &dyn fmt::Display| ProofError::Other(e.to_string());
    let relation = p("lambda*nu - (alpha/2)*(lambda+nu) - c/4");
    let target = p("2*alpha*nu^2 + 5*c*nu - 2*alpha*c");

    let substituted = relation
        .substitute(&bind(&ctx, &[(names::LAMBDA, p("-c/nu"))]))
        .map_err(|e| other(&e))?;
    let cleared = Expr::from_poly(substituted.numerator().clone());
    let factor = cleared.checked_div(&target).map_err(|e| other(&e))?;
    if !factor.is_constant() || factor.is_zero() {
        return Err(ProofError::Mismatch {
            step: "proportionality".into(),
            expected: format!("a nonzero multiple of {}", target.pretty()),
            obtained: cleared.pretty(),
        });
    }

    let nu = ctx.symbol(names::NU).clone();
    let symbolic = solve_quadratic(&target, &nu).map_err(|e| other(&e))?;
    let c_value = Expr::int(space.c());
    let at_c = target
        .substitute(&bind(&ctx, &[(names::C, c_value.clone())]))
        .map_err(|e| other(&e))?;
    let solution = solve_quadratic(&at_c, &nu).map_err(|e| other(&e))?;

    // α = 0 leaves 5cν = 0, impossible as c ≠ 0 and ν ≠ 0 on this branch.
    let alpha_zero_equation = target
        .substitute(&bind(&ctx, &[(names::ALPHA, Expr::zero())]))
        .map_err(|e| other(&e))?;
    let hyps = Hypotheses(vec![
        Hypothesis::NonZero(ctx.sym(names::C)),
        Hypothesis::NonZero(ctx.sym(names::NU)),
    ]);
    let rest = cancel(
        "α = 0",
        &alpha_zero_equation,
        &[ctx.sym(names::C), ctx.sym(names::NU)],
        &hyps,
    )?;
    let alpha_zero_excluded = matches!(conclude("α = 0", &rest, &hyps)?, Conclusion::Contradiction(_));

    let boundary = match &solution.solvability {
        Solvability::SquareBound { bound, .. } => rational_sqrt(bound)
            .map(|alpha| -> Result<BoundaryRoot, ProofError> {
                let eq = at_c
                    .substitute(&bind(&ctx, &[(names::ALPHA, Expr::from_rational(alpha.clone()))]))
                    .map_err(|e| other(&e))?;
                let sol = solve_quadratic(&eq, &nu).map_err(|e| other(&e))?;
                let [root] = sol.roots_list()[..] else {
                    return Err(ProofError::Other("boundary is not a double root".into()));
                };
                let nu_v = root
                    .rational_part
                    .as_rational()
                    .ok_or_else(|| other(&"irrational root"))?;
                let lambda_v = BigRational::from_integer((-space.c()).into()) / &nu_v;
                Ok(BoundaryRoot {
                    alpha,
                    nu: nu_v,
                    lambda: lambda_v,
                })
            })
            .transpose()?,
        _ => None,
    };

    Ok(QuadraticReport {
        space,
        relation,
        substituted,
        cleared,
        target,
        factor,
        discriminant: symbolic.discriminant,
        solution,
        alpha_zero_equation,
        alpha_zero_excluded,
        boundary,
    })
}
