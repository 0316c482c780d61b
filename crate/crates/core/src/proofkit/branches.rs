//! The two frame branches: the non-Hopf chain ending in a contradiction and
//! the Hopf branch ending in the relation `c + λν = 0`.

use crate::conditions::{parallel_equations, ConditionReport, Direction};
use crate::exprcore::{Bindings, Expr, FrameIndex, Symbol};
use crate::framegeom::{build_hopf_context, build_nonhopf_context, c_symbol, names, star_ricci_closed, FrameContext};

use super::kernel::*;

use FrameIndex::{E1, E2, E3};

/// Binds `s` and its first frame derivatives to zero: a function vanishing on
/// an open set has vanishing derivatives there.
fn vanishing(b: &mut Bindings, s: &Symbol) {
    b.insert(s.clone(), Expr::zero());
    for dir in FrameIndex::ALL {
        if let Some(d) = Symbol::derivative(dir, s) {
            b.insert(d, Expr::zero());
        }
    }
}

fn projection(report: &ConditionReport, p: Projection) -> Expr {
    report
        .get(Direction::Along(p.x), p.y, p.onto)
        .expect("parallel report covers every projection")
        .clone()
}

/// One step reading a single projection of `(∇S*) = 0`: substitute what is
/// already known, orient, compare with `expected`, cancel `factors`, conclude.
#[allow(clippy::too_many_arguments)]
fn projection_step(
    label: &str,
    report: &ConditionReport,
    p: Projection,
    orientation: i8,
    known: &Bindings,
    expected: &Expr,
    factors: &[Expr],
    hyps: &Hypotheses,
    justification: &str,
) -> Result<ProofStep, ProofError> {
    let raw = projection(report, p);
    let mut equation = raw.substitute(known).map_err(|e| ProofError::Other(e.to_string()))?;
    if orientation < 0 {
        equation = -equation;
    }
    expect_equal(label, expected, &equation)?;
    let rest = cancel(label, &equation, factors, hyps)?;
    let conclusion = conclude(label, &rest, hyps)?;
    Ok(ProofStep {
        label: label.to_string(),
        projection: Some(p),
        orientation,
        raw,
        equation,
        justification: justification.to_string(),
        hypotheses: hyps.0.clone(),
        conclusion,
    })
}

fn parse(ctx: &FrameContext, text: &str) -> Expr {
    crate::exprcore::parse_expr(text, &ctx.table).expect("well-formed proof expression")
}

/// The non-Hopf chain in the frame `{U, φU, ξ}`. Each step reads one
/// projection of `(∇_X S*)Y = 0` in which the κ's and all derivative terms
/// drop out.
pub fn nonhopf_contradiction() -> Result<ProofTrace, ProofError> {
    let ctx = build_nonhopf_context(c_symbol());
    let report = parallel_equations(&ctx, &star_ricci_closed(&ctx));
    let (beta, c) = (ctx.sym(names::BETA), ctx.sym(names::C));
    let mut hyps = Hypotheses(vec![Hypothesis::NonZero(beta.clone()), Hypothesis::NonZero(c.clone())]);
    let mut known = Bindings::new();
    let mut steps = Vec::new();

    let mut record = |step: ProofStep, hyps: &mut Hypotheses, known: &mut Bindings| {
        if let Conclusion::Vanishes(s) = &step.conclusion {
            vanishing(known, s);
            hyps.push(Hypothesis::Zero(Expr::symbol(s)));
        }
        steps.push(step);
    };

    let s1 = projection_step(
        "ξ-component of (∇_ξ S*)ξ",
        &report,
        Projection { x: E3, y: E3, onto: E3 },
        1,
        &known,
        &parse(&ctx, "beta^2*delta"),
        std::slice::from_ref(&beta),
        &hyps,
        "S*ξ = βμU − βδφU and ∇_ξ ξ = βφU; cancel β ≠ 0",
    )?;
    record(s1, &mut hyps, &mut known);

    let s2 = projection_step(
        "ξ-component of (∇_φU S*)ξ",
        &report,
        Projection { x: E2, y: E3, onto: E3 },
        1,
        &known,
        &parse(&ctx, "beta*mu^2"),
        std::slice::from_ref(&beta),
        &hyps,
        "∇_φU U = κ₂φU + μξ with δ = 0; cancel β ≠ 0",
    )?;
    record(s2, &mut hyps, &mut known);

    let s3 = projection_step(
        "ξ-component of (∇_ξ S*)φU",
        &report,
        Projection { x: E3, y: E2, onto: E3 },
        1,
        &known,
        &parse(&ctx, "-c*beta"),
        &[beta],
        &hyps,
        "∇_ξ φU = −κ₃U − βξ with δ = μ = 0; cancel β ≠ 0",
    )?;
    let status = if matches!(s3.conclusion, Conclusion::Contradiction(_)) {
        ProofStatus::Contradiction
    } else {
        ProofStatus::Open
    };
    record(s3, &mut hyps, &mut known);

    Ok(ProofTrace {
        name: "non-Hopf branch".into(),
        steps,
        hypotheses: hyps.0,
        status,
    })
}

/// The Hopf branch in the frame `{W, φW, ξ}` with `AW = λW`, `AφW = νφW`.
pub fn hopf_branch() -> Result<ProofTrace, ProofError> {
    let ctx = build_hopf_context(c_symbol());
    let report = parallel_equations(&ctx, &star_ricci_closed(&ctx));
    let (lambda, nu, c) = (ctx.sym(names::LAMBDA), ctx.sym(names::NU), ctx.sym(names::C));
    let factor = &c + &(&lambda * &nu);
    let mut hyps = Hypotheses(vec![Hypothesis::NonZero(c.clone())]);
    let mut steps = Vec::new();
    let none = Bindings::new();

    // (i) Recorded as a relation; neither factor is known to be nonzero.
    let w = Projection { x: E1, y: E3, onto: E2 };
    let raw = projection(&report, w);
    let eq1 = -raw.clone();
    expect_equal("(i)", &(&lambda * &factor), &eq1)?;
    steps.push(ProofStep {
        label: "φW-component of (∇_W S*)ξ".into(),
        projection: Some(w),
        orientation: -1,
        raw,
        equation: eq1.clone(),
        justification: "S*ξ = 0 and S*W = (c + λν)W".into(),
        hypotheses: hyps.0.clone(),
        conclusion: Conclusion::Holds(Hypothesis::Zero(eq1.clone())),
    });

    // (ii) Case c + λν ≠ 0.
    let case = Hypothesis::NonZero(factor.clone());
    hyps.push(case.clone());
    let rest = cancel("(ii) λ", &eq1, std::slice::from_ref(&factor), &hyps)?;
    let lambda_zero = conclude("(ii) λ", &rest, &hyps)?;
    steps.push(ProofStep {
        label: "case c + λν ≠ 0".into(),
        projection: None,
        orientation: 1,
        raw: eq1.clone(),
        equation: eq1.clone(),
        justification: "cancel c + λν ≠ 0 in step 1".into(),
        hypotheses: hyps.0.clone(),
        conclusion: lambda_zero.clone(),
    });
    if let Conclusion::Vanishes(_) = lambda_zero {
        hyps.push(Hypothesis::Zero(lambda.clone()));
    }

    let s = projection_step(
        "W-component of (∇_φW S*)ξ",
        &report,
        Projection { x: E2, y: E3, onto: E1 },
        1,
        &none,
        &(&nu * &factor),
        std::slice::from_ref(&factor),
        &hyps,
        "S*φW = (c + λν)φW; cancel c + λν ≠ 0",
    )?;
    if let Conclusion::Vanishes(_) = s.conclusion {
        hyps.push(Hypothesis::Zero(nu.clone()));
    }
    steps.push(s);

    let relation = parse(&ctx, "lambda*nu - (alpha/2)*(lambda+nu) - c/4");
    let mut at_zero = Bindings::new();
    at_zero.insert(ctx.symbol(names::LAMBDA).clone(), Expr::zero());
    at_zero.insert(ctx.symbol(names::NU).clone(), Expr::zero());
    let residual = relation
        .substitute(&at_zero)
        .map_err(|e| ProofError::Other(e.to_string()))?;
    expect_equal("(ii) relation", &(&c * &Expr::ratio(-1, 4)), &residual)?;
    let verdict = conclude("(ii) relation", &residual, &hyps)?;
    if !matches!(verdict, Conclusion::Contradiction(_)) {
        return Err(ProofError::Other(format!("case c + λν ≠ 0 not refuted: {verdict}")));
    }
    steps.push(ProofStep {
        label: "Hopf relation at λ = ν = 0".into(),
        projection: None,
        orientation: 1,
        raw: relation,
        equation: residual,
        justification: "λν − (α/2)(λ + ν) − c/4 = 0".into(),
        hypotheses: hyps.0.clone(),
        conclusion: verdict,
    });

    // (iii) The case is refuted, so c + λν = 0, and then λν = −c ≠ 0.
    hyps.remove(&case);
    hyps.remove(&Hypothesis::Zero(lambda.clone()));
    hyps.remove(&Hypothesis::Zero(nu.clone()));
    let product = &factor - &c;
    if product != &lambda * &nu || !hyps.nonzero(&c) {
        return Err(ProofError::Other("λν = −c does not follow".into()));
    }
    let derived = [
        Hypothesis::Zero(factor.clone()),
        Hypothesis::NonZero(lambda.clone()),
        Hypothesis::NonZero(nu.clone()),
    ];
    for h in &derived {
        hyps.push(h.clone());
    }
    steps.push(ProofStep {
        label: "case c + λν = 0".into(),
        projection: None,
        orientation: 1,
        raw: factor.clone(),
        equation: factor.clone(),
        justification: "λν = −c and c ≠ 0".into(),
        hypotheses: hyps.0.clone(),
        conclusion: Conclusion::Holds(Hypothesis::NonZero(&lambda * &nu)),
    });

    Ok(ProofTrace {
        name: "Hopf branch".into(),
        steps,
        hypotheses: hyps.0,
        status: ProofStatus::Open,
    })
}
