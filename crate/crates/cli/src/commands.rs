use std::collections::BTreeMap;

use hypersurf_core::conditions::{condition_equations, ConditionKind, ConditionReport};
use hypersurf_core::exprcore::{
    parse_ast, parse_expr, parse_expr_declaring, solve_quadratic, Bindings, Expr, ParseError, Symbol, SymbolTable,
};
use hypersurf_core::framegeom::{
    build_hopf_context, build_nonhopf_context, c_symbol, ricci, star_ricci_closed, FrameContext,
};
use hypersurf_core::hopfcatalog::{sweep, Catalog, EvaluationError, ModelSpace, Tolerances};
use hypersurf_core::proofkit::{
    hopf_branch, nonhopf_contradiction, quadratic_analysis, type_b_exclusion_in, ProofError, ProofStatus, ProofTrace,
    QuadraticReport, TypeBReport, VERIFIED,
};

use crate::report::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error(transparent)]
    Evaluation(#[from] EvaluationError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProveTarget {
    Nonhopf,
    Hopf,
    Quadratic,
    TypeB,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TensorArg {
    StarRicci,
    Ricci,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ContextArg {
    Nonhopf,
    Hopf,
}

fn trace_out(t: &ProofTrace) -> TraceOut {
    TraceOut {
        name: t.name.clone(),
        status: t.status.to_string(),
        steps: t
            .steps
            .iter()
            .map(|s| StepOut {
                label: s.label.clone(),
                projection: s.projection.map(|p| p.to_string()),
                orientation: s.orientation,
                raw: s.raw.pretty(),
                equation: s.equation.pretty(),
                justification: s.justification.clone(),
                hypotheses: s.hypotheses.iter().map(ToString::to_string).collect(),
                conclusion: s.conclusion.to_string(),
            })
            .collect(),
        hypotheses: t.hypotheses.iter().map(ToString::to_string).collect(),
    }
}

fn quadratic_out(q: &QuadraticReport) -> QuadraticOut {
    QuadraticOut {
        space: q.space.name().to_string(),
        c: q.space.c(),
        relation: q.relation.pretty(),
        substituted: q.substituted.pretty(),
        cleared: q.cleared.pretty(),
        factor: q.factor.pretty(),
        target: q.target.pretty(),
        discriminant: q.discriminant.pretty(),
        discriminant_at_c: q.solution.discriminant.pretty(),
        solvability: q.solvability().to_string(),
        alpha_zero_equation: q.alpha_zero_equation.pretty(),
        alpha_zero_excluded: q.alpha_zero_excluded,
        boundary: q.boundary.as_ref().map(|b| {
            format!(
                "on the boundary α = {} the root is double: ν = {}, λ = −c/ν = {}{}",
                b.alpha,
                b.nu,
                b.lambda,
                if b.is_umbilic_pair() {
                    "; here λ = ν, so the three principal curvatures are not distinct"
                } else {
                    ""
                }
            )
        }),
    }
}

fn type_b_out(t: &TypeBReport) -> TypeBOut {
    TypeBOut {
        space: t.space.name().to_string(),
        family: t.family.clone(),
        expected: t.expected,
        samples: t.rows.len(),
        min_abs: t.min_abs,
        max_deviation: t.max_deviation,
    }
}

fn spaces(space: Option<ModelSpace>) -> Vec<ModelSpace> {
    space.map_or_else(|| vec![ModelSpace::CP2, ModelSpace::CH2], |s| vec![s])
}

fn quadratic_ok(q: &QuadraticReport) -> bool {
    let expected = match q.space {
        ModelSpace::CP2 => "always solvable",
        ModelSpace::CH2 => "α^2 <= 25/4",
    };
    q.solvability().to_string() == expected && q.alpha_zero_excluded
}

/// Runs the requested stages. Any stage that fails to end where the
/// argument needs it to is reported as an error.
pub fn prove(
    target: ProveTarget,
    space: Option<ModelSpace>,
    catalog: &Catalog,
    samples: usize,
) -> Result<(Status, ProofPayload), CliError> {
    use ProveTarget::*;
    let mut payload = ProofPayload {
        traces: vec![],
        quadratic: vec![],
        type_b: vec![],
        verdict: String::new(),
    };
    let mut ok = true;
    if matches!(target, Nonhopf | All) {
        let t = nonhopf_contradiction()?;
        ok &= t.status == ProofStatus::Contradiction;
        payload.traces.push(trace_out(&t));
    }
    if matches!(target, Hopf | All) {
        payload.traces.push(trace_out(&hopf_branch()?));
    }
    if matches!(target, Quadratic | All) {
        for s in spaces(space) {
            let q = quadratic_analysis(s)?;
            ok &= quadratic_ok(&q);
            payload.quadratic.push(quadratic_out(&q));
        }
    }
    if matches!(target, TypeB | All) {
        for s in spaces(space) {
            payload
                .type_b
                .push(type_b_out(&type_b_exclusion_in(catalog, s, samples)?));
        }
    }
    if target == All && ok {
        payload.verdict = VERIFIED.to_string();
    }
    Ok((if ok { Status::Pass } else { Status::Fail }, payload))
}

fn context(arg: ContextArg) -> FrameContext {
    match arg {
        ContextArg::Nonhopf => build_nonhopf_context(c_symbol()),
        ContextArg::Hopf => build_hopf_context(c_symbol()),
    }
}

/// Parses `name=value` pairs against the context's symbols. The name may
/// also be a derivative such as `D(e1,beta)`.
fn assumptions(table: &SymbolTable, pairs: &[String]) -> Result<Bindings, CliError> {
    let mut b = Bindings::new();
    for pair in pairs {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value, got `{pair}`")))?;
        let lhs = parse_expr(name.trim(), table)?;
        let sym = single_symbol(&lhs).ok_or_else(|| CliError::Usage(format!("`{name}` is not a symbol")))?;
        b.insert(sym, parse_expr(value.trim(), table)?);
    }
    Ok(b)
}

fn single_symbol(e: &Expr) -> Option<Symbol> {
    let syms = e.symbols();
    let s = syms.into_iter().next()?;
    (*e == Expr::symbol(&s)).then_some(s)
}

pub fn check(
    tensor: TensorArg,
    condition: &str,
    ctx_arg: ContextArg,
    l: Option<&str>,
    pairs: &[String],
) -> Result<CheckPayload, CliError> {
    let ctx = context(ctx_arg);
    let l = match l {
        Some(text) => parse_expr(text, &ctx.table)?,
        None => ctx.sym(hypersurf_core::framegeom::names::L),
    };
    let kind = ConditionKind::parse(condition, l).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown condition `{condition}`; expected one of {}",
            ConditionKind::NAMES.join(", ")
        ))
    })?;
    let (t, name) = match tensor {
        TensorArg::StarRicci => (star_ricci_closed(&ctx), "S*"),
        TensorArg::Ricci => (ricci(&ctx), "S"),
    };
    let bindings = assumptions(&ctx.table, pairs)?;
    let report: ConditionReport = condition_equations(&ctx, &t, &kind)
        .named(name)
        .substitute(&bindings)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(CheckPayload {
        tensor: report.tensor.clone(),
        condition: kind.to_string(),
        context: format!("{ctx_arg:?}").to_lowercase(),
        assumptions: bindings
            .iter()
            .map(|(s, e)| format!("{} = {}", s.display(), e.pretty()))
            .collect(),
        equations: report
            .entries
            .iter()
            .map(|e| EquationOut {
                direction: e.direction.to_string(),
                y: e.y.to_string(),
                projection: e.projection.to_string(),
                equation: e.equation.pretty(),
            })
            .collect(),
    })
}

/// Radii `r_min..=r_max` sampled at `samples` evenly spaced points.
#[derive(Debug, Clone, Copy)]
pub struct RadiusRange {
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
}

pub fn run_sweep(
    catalog: &Catalog,
    family: &str,
    range: RadiusRange,
    condition: &str,
    l: Option<&str>,
    tol: Tolerances,
) -> Result<SweepPayload, CliError> {
    let fam = catalog
        .get(family)
        .ok_or_else(|| CliError::Usage(format!("no family `{family}` in the catalog")))?;
    let kind = ConditionKind::parse(condition, Expr::zero()).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown condition `{condition}`; expected one of {}",
            ConditionKind::NAMES.join(", ")
        ))
    })?;
    let kind = match (kind, l) {
        (ConditionKind::PseudoParallel(_), Some(text)) => {
            let v = parse_expr(text, &SymbolTable::new())?;
            if !v.is_constant() {
                return Err(CliError::Usage(format!(
                    "--l must be a rational constant for a sweep, got `{text}`"
                )));
            }
            ConditionKind::PseudoParallel(v)
        }
        (k, _) => k,
    };
    let result = sweep(fam, range.r_min, range.r_max, range.samples, &kind)?;
    Ok(SweepPayload {
        family: result.family,
        condition: result.kind.to_string(),
        witness_tol: tol.witness,
        rows: result
            .rows
            .iter()
            .map(|r| SweepRowOut {
                r: r.r,
                max_residual: r.max_residual,
                lambda_nu_plus_c: r.lambda_nu_plus_c,
                witness: r.max_residual > tol.witness,
            })
            .collect(),
    })
}

pub fn expr_eval(text: &str, pairs: &[String]) -> Result<ExprPayload, CliError> {
    let mut table = SymbolTable::new();
    let e = parse_expr_declaring(text, &mut table)?;
    let mut exact = Bindings::new();
    let mut numeric = BTreeMap::new();
    let mut all_exact = true;
    for pair in pairs {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value, got `{pair}`")))?;
        let (name, value) = (name.trim(), value.trim());
        let sym = table.get_or_declare(name);
        match parse_expr_declaring(value, &mut table) {
            Ok(v) => {
                exact.insert(sym, v);
            }
            Err(_) => all_exact = false,
        }
        let ast = parse_ast(value).ok();
        if let Some(x) = ast
            .and_then(|a| a.eval(&BTreeMap::new()).ok())
            .or_else(|| value.parse().ok())
        {
            numeric.insert(name.to_string(), x);
        }
    }
    let result = if all_exact {
        e.substitute(&exact)
            .map_err(|err| CliError::Usage(err.to_string()))?
            .to_string()
    } else {
        let v = parse_ast(text)?
            .eval(&numeric)
            .map_err(|err| CliError::Usage(err.to_string()))?;
        format!("{v}")
    };
    Ok(ExprPayload::Eval {
        input: text.to_string(),
        bindings: pairs.to_vec(),
        result,
    })
}

pub fn expr_solve(text: &str, unknown: &str) -> Result<ExprPayload, CliError> {
    let mut table = SymbolTable::new();
    let e = parse_expr_declaring(text, &mut table)?;
    let sym = table.get_or_declare(unknown);
    let sol = solve_quadratic(&e, &sym).map_err(|err| CliError::Usage(err.to_string()))?;
    Ok(ExprPayload::Solve {
        input: text.to_string(),
        unknown: unknown.to_string(),
        degree: sol.degree,
        coefficients: sol.coefficients.iter().map(ToString::to_string).collect(),
        discriminant: sol.discriminant.to_string(),
        roots: sol.roots_list().iter().map(ToString::to_string).collect(),
        solvability: sol.solvability.to_string(),
    })
}
