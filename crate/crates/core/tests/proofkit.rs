use std::collections::BTreeSet;

use hypersurf_core::exprcore::{parse_expr, Expr, Solvability};
use hypersurf_core::framegeom::{build_hopf_context, build_nonhopf_context, c_symbol, names};
use hypersurf_core::hopfcatalog::{Catalog, ModelSpace};
use hypersurf_core::proofkit::*;
use num_rational::BigRational;

fn nonhopf_expr(text: &str) -> Expr {
    parse_expr(text, &build_nonhopf_context(c_symbol()).table).unwrap()
}

fn hopf_expr(text: &str) -> Expr {
    parse_expr(text, &build_hopf_context(c_symbol()).table).unwrap()
}

#[test]
fn nonhopf_chain_equations_and_verdict() {
    let t = nonhopf_contradiction().unwrap();
    let eqs: Vec<&Expr> = t.steps.iter().map(|s| &s.equation).collect();
    assert_eq!(
        eqs,
        [
            &nonhopf_expr("beta^2*delta"),
            &nonhopf_expr("beta*mu^2"),
            &nonhopf_expr("-c*beta")
        ]
    );
    assert_eq!(t.status, ProofStatus::Contradiction);
    assert_eq!(
        t.steps[2].conclusion,
        Conclusion::Contradiction("c = 0 contradicts c ≠ 0".into())
    );
    assert!(matches!(&t.steps[0].conclusion, Conclusion::Vanishes(s) if s.name() == names::DELTA));
    assert!(matches!(&t.steps[1].conclusion, Conclusion::Vanishes(s) if s.name() == names::MU));
}

#[test]
fn nonhopf_steps_are_free_of_kappas_and_derivatives() {
    let t = nonhopf_contradiction().unwrap();
    for s in &t.steps {
        let names: BTreeSet<String> = s.equation.symbols().iter().map(|x| x.name().to_string()).collect();
        assert!(names.iter().all(|n| !n.starts_with("kappa")), "{names:?}");
        assert!(!s.equation.has_formal_derivatives());
    }
    // The first step needs no substitution at all.
    assert_eq!(t.steps[0].raw, t.steps[0].equation);
}

#[test]
fn steps_carry_earlier_conclusions() {
    let t = nonhopf_contradiction().unwrap();
    let delta_zero = Hypothesis::Zero(nonhopf_expr("delta"));
    let mu_zero = Hypothesis::Zero(nonhopf_expr("mu"));
    assert!(!t.steps[0].hypotheses.contains(&delta_zero));
    assert!(t.steps[1].hypotheses.contains(&delta_zero));
    assert!(t.steps[2].hypotheses.contains(&delta_zero) && t.steps[2].hypotheses.contains(&mu_zero));
}

#[test]
fn hopf_branch_equations_and_hypotheses() {
    let t = hopf_branch().unwrap();
    assert_eq!(t.steps[0].equation, hopf_expr("lambda*(c+lambda*nu)"));
    assert_eq!(t.steps[0].orientation, -1);
    assert_eq!(t.steps[0].raw, hopf_expr("-lambda*(c+lambda*nu)"));
    let nu_step = t
        .steps
        .iter()
        .find(|s| s.equation == hopf_expr("nu*(c+lambda*nu)"))
        .unwrap();
    assert_eq!(nu_step.orientation, 1);
    let relation = t.steps.iter().find(|s| s.label.contains("Hopf relation")).unwrap();
    assert_eq!(relation.equation, hopf_expr("-c/4"));
    assert!(matches!(relation.conclusion, Conclusion::Contradiction(_)));
    let derived = [
        Hypothesis::Zero(hopf_expr("c+lambda*nu")),
        Hypothesis::NonZero(hopf_expr("lambda")),
        Hypothesis::NonZero(hopf_expr("nu")),
    ];
    for h in &derived {
        assert!(t.hypotheses.contains(h), "missing {h}");
    }
    assert!(!t.hypotheses.contains(&Hypothesis::NonZero(hopf_expr("c+lambda*nu"))));
    assert_eq!(t.status, ProofStatus::Open);
}

#[test]
fn quadratic_reports() {
    for space in [ModelSpace::CP2, ModelSpace::CH2] {
        let q = quadratic_analysis(space).unwrap();
        assert_eq!(q.target, hopf_expr("2*alpha*nu^2+5*c*nu-2*alpha*c"));
        assert_eq!(q.factor, Expr::ratio(-1, 4));
        assert_eq!(q.cleared, &q.factor * &q.target);
        assert_eq!(q.discriminant, hopf_expr("25*c^2+16*alpha^2*c"));
        assert_eq!(q.alpha_zero_equation, hopf_expr("5*c*nu"));
        assert!(q.alpha_zero_excluded);
    }
    let cp2 = quadratic_analysis(ModelSpace::CP2).unwrap();
    assert_eq!(cp2.solution.discriminant, hopf_expr("400+64*alpha^2"));
    assert_eq!(*cp2.solvability(), Solvability::Always);
    assert!(cp2.boundary.is_none());

    let ch2 = quadratic_analysis(ModelSpace::CH2).unwrap();
    assert_eq!(ch2.solvability().to_string(), "α^2 <= 25/4");
    let b = ch2.boundary.clone().unwrap();
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    assert_eq!(
        (b.alpha.clone(), b.nu.clone(), b.lambda.clone()),
        (q(5, 2), q(2, 1), q(2, 1))
    );
    assert!(b.is_umbilic_pair());
}

#[test]
fn quadratic_discriminant_oracle() {
    // b² − 4ac for a = 2α, b = 5c, c0 = −2αc.
    let q = quadratic_analysis(ModelSpace::CH2).unwrap();
    let oracle = hopf_expr("(5*c)^2 - 4*(2*alpha)*(-2*alpha*c)");
    assert_eq!(q.discriminant, oracle);
}

#[test]
fn type_b_values() {
    let cp2 = type_b_exclusion(ModelSpace::CP2).unwrap();
    assert_eq!(cp2.rows.len(), 100);
    assert!(cp2.rows.iter().all(|(_, v)| (v - 3.0).abs() < 1e-9));
    let ch2 = type_b_exclusion(ModelSpace::CH2).unwrap();
    assert!(ch2.rows.iter().all(|(_, v)| (v + 3.0).abs() < 1e-9));
    assert!(ch2.min_abs >= TYPE_B_MARGIN - TYPE_B_TOL);
}

#[test]
fn type_b_missing_family() {
    let text = Catalog::builtin_text().replace("id = \"cp2-b\"", "id = \"cp2-x\"");
    let cat = Catalog::parse(&text, 1e-9).unwrap();
    assert!(matches!(
        type_b_exclusion_in(&cat, ModelSpace::CP2, 10),
        Err(ProofError::FamilyMissing(_))
    ));
}

#[test]
fn main_theorem_verdict() {
    let r = verify_main_theorem(&Catalog::builtin()).unwrap();
    assert_eq!(r.status(), "Main Theorem verified at desk scale");
}

#[test]
fn traces_are_deterministic() {
    assert_eq!(
        nonhopf_contradiction().unwrap().to_string(),
        nonhopf_contradiction().unwrap().to_string()
    );
    assert_eq!(hopf_branch().unwrap().to_string(), hopf_branch().unwrap().to_string());
    let a = verify_main_theorem(&Catalog::builtin()).unwrap().to_string();
    let b = verify_main_theorem(&Catalog::builtin()).unwrap().to_string();
    assert_eq!(a, b);
}
