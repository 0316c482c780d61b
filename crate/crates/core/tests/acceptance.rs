//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them. Run with `--nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use hypersurf_core::conditions::*;
use hypersurf_core::exprcore::{parse_expr, Expr, FrameIndex, FrameIndex::*, Solvability};
use hypersurf_core::framegeom::*;
use hypersurf_core::hopfcatalog::*;
use hypersurf_core::proofkit::*;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

const NONHOPF_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_BUDGET: Duration = Duration::from_secs(5);
const HOPF_RELATION_TOL: f64 = 1e-9;
const TYPE_B_VALUE_TOL: f64 = 1e-9;
const WITNESS_FLOOR: f64 = 1e-6;
const SAMPLES: usize = 100;
const PROPERTY_CASES: usize = 1000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(ctx: &FrameContext, s: &str) -> Expr {
    parse_expr(s, &ctx.table).unwrap()
}

fn vf(ctx: &FrameContext, a: &str, b: &str, c: &str) -> VectorField {
    VectorField::new(p(ctx, a), p(ctx, b), p(ctx, c))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = nonhopf_contradiction().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let ctx = build_nonhopf_context(c_symbol());
    let want = ["beta^2*delta", "beta*mu^2", "-c*beta"].map(|s| p(&ctx, s));
    ensure(t.steps.len() == 3, || format!("{} steps", t.steps.len()))?;
    for (step, w) in t.steps.iter().zip(&want) {
        ensure(step.equation == *w, || {
            format!("{}: got {}, want {}", step.label, step.equation, w)
        })?;
    }
    ensure(t.status == ProofStatus::Contradiction, || {
        format!("status {}", t.status)
    })?;
    let final_hyps = &t.steps[2].hypotheses;
    for h in ["beta", "c"] {
        ensure(final_hyps.contains(&Hypothesis::NonZero(p(&ctx, h))), || {
            format!("{h} ≠ 0 not in force")
        })?;
    }
    ensure(elapsed < NONHOPF_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("β²δ, βμ², −cβ; {}; {elapsed:.2?}", t.steps[2].conclusion))
}

fn criterion_2() -> Outcome {
    let t = hopf_branch().map_err(|e| e.to_string())?;
    let ctx = build_hopf_context(c_symbol());
    let w = t
        .steps
        .iter()
        .find(|s| s.projection.is_some_and(|q| q.x == E1))
        .ok_or("no (W, ξ) step")?;
    let fw = t
        .steps
        .iter()
        .find(|s| s.projection.is_some_and(|q| q.x == E2))
        .ok_or("no (φW, ξ) step")?;
    ensure(w.equation == p(&ctx, "lambda*(c+lambda*nu)"), || {
        format!("(W, ξ): {}", w.equation)
    })?;
    ensure(w.raw == -&w.equation, || {
        "orientation does not match the raw projection".into()
    })?;
    ensure(fw.equation == p(&ctx, "nu*(c+lambda*nu)"), || {
        format!("(φW, ξ): {}", fw.equation)
    })?;
    let relation = t
        .steps
        .iter()
        .find(|s| s.label.contains("Hopf relation"))
        .ok_or("no relation step")?;
    ensure(relation.equation == p(&ctx, "-c/4"), || {
        format!("relation at λ = ν = 0: {}", relation.equation)
    })?;
    ensure(matches!(relation.conclusion, Conclusion::Contradiction(_)), || {
        "−c/4 not rejected".into()
    })?;
    Ok(format!(
        "{} (raw projection {}), {}, −c/4 ≠ 0",
        w.equation.pretty(),
        w.raw.pretty(),
        fw.equation.pretty()
    ))
}

fn criterion_3() -> Outcome {
    let ctx = build_hopf_context(c_symbol());
    let target = p(&ctx, "2*alpha*nu^2+5*c*nu-2*alpha*c");
    let mut factors = Vec::new();
    for space in [ModelSpace::CP2, ModelSpace::CH2] {
        let q = quadratic_analysis(space).map_err(|e| e.to_string())?;
        ensure(q.target == target, || format!("target {}", q.target))?;
        ensure(!q.factor.is_zero() && q.cleared == &q.factor * &target, || {
            format!("{} is not a multiple of the target", q.cleared)
        })?;
        ensure(q.discriminant == p(&ctx, "25*c^2+16*alpha^2*c"), || {
            format!("Δ = {}", q.discriminant)
        })?;
        ensure(q.alpha_zero_excluded, || {
            format!("α = 0 not excluded for {}", space.name())
        })?;
        factors.push(q.factor.pretty());
        match space {
            ModelSpace::CP2 => ensure(*q.solvability() == Solvability::Always, || q.solvability().to_string())?,
            ModelSpace::CH2 => ensure(q.solvability().to_string() == "α^2 <= 25/4", || {
                q.solvability().to_string()
            })?,
        }
    }
    Ok(format!(
        "cleared = ({})·(2αν²+5cν−2αc); Δ = 25c²+16α²c; c = 4 always, c = −4 α² ≤ 25/4, α = 0 excluded",
        factors[0]
    ))
}

fn criterion_4() -> Outcome {
    for ctx in [build_nonhopf_context(c_symbol()), build_hopf_context(c_symbol())] {
        ensure(star_ricci_trace(&ctx) == star_ricci_closed(&ctx), || {
            format!("{:?}: trace ≠ closed", ctx.kind)
        })?;
    }
    let ctx = build_nonhopf_context(c_symbol());
    let s = star_ricci_closed(&ctx);
    ensure(s.column(E3) == &vf(&ctx, "beta*mu", "-beta*delta", "0"), || {
        "S*ξ".into()
    })?;
    ensure(s.column(E1) == &vf(&ctx, "c+gamma*mu-delta^2", "0", "0"), || {
        "S*U".into()
    })?;
    let ctx = build_hopf_context(c_symbol());
    let s = star_ricci_closed(&ctx);
    ensure(s.column(E3).is_zero(), || "Hopf S*ξ".into())?;
    ensure(s.column(E1) == &vf(&ctx, "c+lambda*nu", "0", "0"), || "S*W".into())?;
    Ok("trace form = closed form in both frames; S*ξ, S*U, S*W as stated".into())
}

fn criterion_5(elapsed: &mut Duration) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for f in builtin_families() {
        for r in f.sample_radii(SAMPLES) {
            let res = f.hopf_residual_at(r).map_err(|e| e.to_string())?.abs();
            ensure(res < HOPF_RELATION_TOL, || format!("{} at r = {r}: {res:e}", f.id))?;
            worst = worst.max(res);
        }
    }
    *elapsed += start.elapsed();
    Ok(format!("6 families × {SAMPLES} radii, max residual {worst:.1e}"))
}

fn criterion_6(elapsed: &mut Duration) -> Outcome {
    let start = Instant::now();
    let catalog = Catalog::builtin();
    let mut lines = Vec::new();
    for (space, want) in [(ModelSpace::CP2, 3.0), (ModelSpace::CH2, -3.0)] {
        let f = catalog.type_b(space).ok_or("missing type-B family")?;
        let mut dev = 0.0_f64;
        for r in f.sample_radii(SAMPLES) {
            let k = f.curvatures(r).map_err(|e| e.to_string())?;
            let v = k.lambda * k.nu + f.c();
            ensure((v - want).abs() < TYPE_B_VALUE_TOL, || {
                format!("{} at r = {r}: λν + c = {v}", f.id)
            })?;
            dev = dev.max((v - want).abs());
        }
        lines.push(format!("{} ≡ {want} (dev {dev:.1e})", f.id));
    }
    *elapsed += start.elapsed();
    Ok(lines.join(", "))
}

fn criterion_7(elapsed: &mut Duration) -> Outcome {
    let start = Instant::now();
    let mut weakest = f64::INFINITY;
    for f in builtin_families() {
        let ev = ConditionEvaluator::new(f.space, &ConditionKind::Parallel);
        for r in f.sample_radii(SAMPLES) {
            let rep = evaluate_with(&ev, &f, r).map_err(|e| e.to_string())?;
            ensure(rep.max_abs > WITNESS_FLOOR, || {
                format!("{} at r = {r}: {:e}", f.id, rep.max_abs)
            })?;
            weakest = weakest.min(rep.max_abs);
        }
    }
    *elapsed += start.elapsed();
    ensure(*elapsed < SWEEP_BUDGET, || format!("sweeps took {elapsed:?}"))?;
    Ok(format!(
        "min over all samples of max |residual| = {weakest:.3}; sweeps {elapsed:.2?}"
    ))
}

fn criterion_8() -> Outcome {
    let contexts = [build_nonhopf_context(c_symbol()), build_hopf_context(c_symbol())];
    for ctx in &contexts {
        let kind = format!("{:?}", ctx.kind);
        let eta_xi = Tensor11::from_columns([VectorField::zero(), VectorField::zero(), VectorField::xi()]);
        ensure(ctx.phi.compose(&ctx.phi) == &eta_xi - &Tensor11::identity(), || {
            format!("{kind}: φ²")
        })?;
        ensure(ctx.connection.is_metric_compatible(), || {
            format!("{kind}: metric compatibility")
        })?;
        for x in FrameIndex::ALL {
            let want = ctx.phi.apply(&ctx.a.apply(&VectorField::basis(x)));
            ensure(ctx.connection.nabla(x, E3) == want, || {
                format!("{kind}: ∇_{x} ξ ≠ φA{x}")
            })?;
            ensure(
                covariant_derivative_t11(ctx, x, &Tensor11::identity()).is_zero(),
                || format!("{kind}: ∇Id"),
            )?;
            for y in FrameIndex::ALL {
                for z in FrameIndex::ALL {
                    let r = curvature_frame(ctx, x, y, z);
                    ensure(r == curvature_frame(ctx, y, x, z).scale(&Expr::int(-1)), || {
                        format!("{kind}: R({x},{y}) not skew in X, Y")
                    })?;
                    for v in FrameIndex::ALL {
                        ensure(*r.component(v) == -curvature_frame(ctx, x, y, v).component(z), || {
                            format!("{kind}: R({x},{y}) not skew-adjoint")
                        })?;
                    }
                }
            }
        }
        ensure(semi_parallel_equations(ctx, &Tensor11::identity()).is_zero(), || {
            format!("{kind}: R·Id")
        })?;
        let s = star_ricci_closed(ctx);
        let mut joined = d_parallel_equations(ctx, &s).entries;
        joined.extend(xi_parallel_equations(ctx, &s).entries);
        ensure(joined == parallel_equations(ctx, &s).entries, || {
            format!("{kind}: slices")
        })?;
        ensure(
            pseudo_parallel_equations(ctx, &s, &Expr::zero()).entries == semi_parallel_equations(ctx, &s).entries,
            || format!("{kind}: pseudo-parallel with L = 0"),
        )?;
    }
    Ok("φ², metric compatibility, ∇ξ = φA, Gauss symmetries, ∇Id = 0, R·Id = 0, slices, L = 0".into())
}

/// Runs `check` on `PROPERTY_CASES` values drawn from `strategy` with a
/// fixed seed.
fn sample<S: Strategy>(strategy: S, check: impl Fn(&S::Value) -> Result<(), String>) -> Result<(), String> {
    let mut runner = TestRunner::deterministic();
    for _ in 0..PROPERTY_CASES {
        let value = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        check(&value)?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    use common::*;
    sample((tree(), point()), |(t, p)| check_canonical_matches_direct(t, p))?;
    sample((tree(), tree(), point()), |(a, b, p)| check_homomorphism(a, b, p))?;
    sample(tree(), check_round_trip)?;
    sample((poly_tree(), poly_tree(), poly_tree(), point()), |(a, b, c, p)| {
        check_back_substitution(a, b, c, p)
    })?;
    Ok(format!(
        "{PROPERTY_CASES} cases each: evaluation at rel {EVAL_REL_TOL:e}, round trip, back-substitution < {BACKSUB_TOL:e}"
    ))
}

#[test]
fn acceptance_criteria() {
    let mut sweep_time = Duration::ZERO;
    let results: Vec<(&str, Outcome)> = vec![
        ("exact non-Hopf chain", criterion_1()),
        ("Hopf chain", criterion_2()),
        ("quadratic replication", criterion_3()),
        ("oracle equivalence of S*", criterion_4()),
        ("Hopf-relation oracle", criterion_5(&mut sweep_time)),
        ("type-B exclusion", criterion_6(&mut sweep_time)),
        ("non-existence witness", criterion_7(&mut sweep_time)),
        ("structural invariants", criterion_8()),
        ("exprcore properties", criterion_9()),
    ];
    let mut failed = Vec::new();
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
