use rayon::prelude::*;

use crate::conditions::{condition_equations, ConditionKind, ConditionReport, Direction};
use crate::exprcore::{Bindings, EvalError, Expr, FrameIndex, Symbol, SymbolKind};
use crate::framegeom::{build_hopf_context, names, ricci, star_ricci_closed};

use super::family::{uniform_grid, DomainError, HypersurfaceFamily, ModelSpace, PrincipalCurvatures};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvaluationError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A condition report on a numeric Hopf frame (`c = ±4`), prepared once and
/// evaluated at many principal-curvature triples.
///
/// The report is taken on `S*`, except for the Einstein condition, which is
/// a condition on the Ricci tensor; there the Einstein constant is set to
/// `tr S / 3`. Formal derivatives and the free connection coefficients
/// `ω_i` are bound to zero: the catalog families have constant principal
/// curvatures, and the `S*` reports do not involve `ω_i` at all.
#[derive(Debug, Clone)]
pub struct ConditionEvaluator {
    pub space: ModelSpace,
    pub kind: ConditionKind,
    pub report: ConditionReport,
}

impl ConditionEvaluator {
    pub fn new(space: ModelSpace, kind: &ConditionKind) -> Self {
        let ctx = build_hopf_context(Expr::int(space.c()));
        let report = match kind {
            ConditionKind::Einstein => {
                let s = ricci(&ctx);
                let mut b = Bindings::new();
                b.insert(ctx.symbol(names::EINSTEIN).clone(), &s.trace() * &Expr::ratio(1, 3));
                condition_equations(&ctx, &s, kind)
                    .named("S")
                    .substitute(&b)
                    .expect("constant substitution")
            }
            _ => condition_equations(&ctx, &star_ricci_closed(&ctx), kind).named("S*"),
        };
        ConditionEvaluator {
            space,
            kind: kind.clone(),
            report,
        }
    }

    pub fn residuals(&self, k: &PrincipalCurvatures) -> Result<Vec<f64>, EvalError> {
        self.report.eval_with(&|s: &Symbol| bind(s, k))
    }
}

fn bind(s: &Symbol, k: &PrincipalCurvatures) -> Option<f64> {
    match s.name() {
        names::ALPHA => Some(k.alpha),
        names::LAMBDA => Some(k.lambda),
        names::NU => Some(k.nu),
        names::OMEGA1 | names::OMEGA2 | names::OMEGA3 => Some(0.0),
        _ if matches!(s.kind(), SymbolKind::FormalDerivative { .. }) => Some(0.0),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericEntry {
    pub direction: Direction,
    pub y: FrameIndex,
    pub projection: FrameIndex,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericReport {
    pub family: String,
    pub r: f64,
    pub kind: ConditionKind,
    pub curvatures: PrincipalCurvatures,
    pub entries: Vec<NumericEntry>,
    pub max_abs: f64,
    /// `λν + c`, the quantity the type-B exclusion turns on.
    pub lambda_nu_plus_c: f64,
}

impl NumericReport {
    pub fn get(&self, direction: Direction, y: FrameIndex, projection: FrameIndex) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.direction == direction && e.y == y && e.projection == projection)
            .map(|e| e.value)
    }
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Evaluates `kind` on the family member of radius `r`.
pub fn evaluate_condition(
    family: &HypersurfaceFamily,
    r: f64,
    kind: &ConditionKind,
) -> Result<NumericReport, EvaluationError> {
    let ev = ConditionEvaluator::new(family.space, kind);
    evaluate_with(&ev, family, r)
}

pub fn evaluate_with(
    ev: &ConditionEvaluator,
    family: &HypersurfaceFamily,
    r: f64,
) -> Result<NumericReport, EvaluationError> {
    let k = family.curvatures(r)?;
    let values = ev.residuals(&k)?;
    let entries = ev
        .report
        .entries
        .iter()
        .zip(&values)
        .map(|(e, v)| NumericEntry {
            direction: e.direction,
            y: e.y,
            projection: e.projection,
            value: *v,
        })
        .collect();
    Ok(NumericReport {
        family: family.id.clone(),
        r,
        kind: ev.kind.clone(),
        curvatures: k,
        entries,
        max_abs: max_abs(&values),
        lambda_nu_plus_c: k.lambda * k.nu + family.c(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub r: f64,
    pub max_residual: f64,
    pub lambda_nu_plus_c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub family: String,
    pub kind: ConditionKind,
    pub rows: Vec<SweepRow>,
}

/// Evaluates `kind` on a uniform grid of `samples` radii from `r_min` to
/// `r_max`. The closed interval must lie inside the family's open domain.
/// Grid points are evaluated in parallel; rows come back in grid order.
pub fn sweep(
    family: &HypersurfaceFamily,
    r_min: f64,
    r_max: f64,
    samples: usize,
    kind: &ConditionKind,
) -> Result<SweepResult, EvaluationError> {
    if samples < 2 {
        return Err(DomainError::Samples(samples).into());
    }
    if !(r_min <= r_max && family.domain.contains(r_min) && family.domain.contains(r_max)) {
        return Err(DomainError::Interval {
            family: family.id.clone(),
            lo: r_min,
            hi: r_max,
            domain: family.domain,
        }
        .into());
    }
    let ev = ConditionEvaluator::new(family.space, kind);
    let rows = uniform_grid(r_min, r_max, samples)
        .into_par_iter()
        .map(|r| {
            let rep = evaluate_with(&ev, family, r)?;
            Ok(SweepRow {
                r,
                max_residual: rep.max_abs,
                lambda_nu_plus_c: rep.lambda_nu_plus_c,
            })
        })
        .collect::<Result<Vec<_>, EvaluationError>>()?;
    Ok(SweepResult {
        family: family.id.clone(),
        kind: kind.clone(),
        rows,
    })
}
