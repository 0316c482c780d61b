//! Random expression trees and the exprcore property checks, shared by the
//! property tests and the acceptance suite.
#![allow(dead_code)]

use hypersurf_core::exprcore::*;
use proptest::prelude::*;

/// Relative tolerance for floating-point agreement of exact expressions.
pub const EVAL_REL_TOL: f64 = 1e-12;
/// Bound on the residual of a numeric quadratic root, relative to the
/// magnitude of the terms.
pub const BACKSUB_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum Tree {
    Int(i64),
    Var(usize),
    Add(Box<Tree>, Box<Tree>),
    Sub(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    /// Division by `1 + d²`, which never vanishes on the reals.
    Div(Box<Tree>, Box<Tree>),
}

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn sym(i: usize) -> Symbol {
    Symbol::geometric(VARS[i])
}

pub fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![(-5i64..=5).prop_map(Tree::Int), (0usize..3).prop_map(Tree::Var)];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            2 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Add(a.into(), b.into())),
            2 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Sub(a.into(), b.into())),
            2 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Mul(a.into(), b.into())),
            1 => (inner.clone(), inner).prop_map(|(a, b)| Tree::Div(a.into(), b.into())),
        ]
    })
}

/// Polynomials in `x` alone, for quadratic coefficients.
pub fn poly_tree() -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![(-5i64..=5).prop_map(Tree::Int), Just(Tree::Var(0))];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Add(a.into(), b.into())),
            (inner.clone(), inner).prop_map(|(a, b)| Tree::Mul(a.into(), b.into())),
        ]
    })
}

pub fn point() -> impl Strategy<Value = [f64; 3]> {
    [0.5f64..2.0, 0.5f64..2.0, 0.5f64..2.0]
}

pub fn build(t: &Tree) -> Expr {
    match t {
        Tree::Int(n) => Expr::int(*n),
        Tree::Var(i) => Expr::symbol(&sym(*i)),
        Tree::Add(a, b) => build(a) + build(b),
        Tree::Sub(a, b) => build(a) - build(b),
        Tree::Mul(a, b) => build(a) * build(b),
        Tree::Div(a, b) => {
            let d = build(b);
            build(a).checked_div(&(Expr::one() + &d * &d)).unwrap()
        }
    }
}

/// Direct floating-point evaluation of the tree, with the sum of the
/// magnitudes met along the way as an error scale.
pub fn direct(t: &Tree, p: &[f64; 3]) -> (f64, f64) {
    match t {
        Tree::Int(n) => (*n as f64, (*n as f64).abs()),
        Tree::Var(i) => (p[*i], p[*i].abs()),
        Tree::Add(a, b) | Tree::Sub(a, b) => {
            let ((va, sa), (vb, sb)) = (direct(a, p), direct(b, p));
            let v = if matches!(t, Tree::Add(..)) { va + vb } else { va - vb };
            (v, sa + sb)
        }
        Tree::Mul(a, b) => {
            let ((va, sa), (vb, sb)) = (direct(a, p), direct(b, p));
            (va * vb, sa * sb)
        }
        Tree::Div(a, b) => {
            let ((va, sa), (vb, sb)) = (direct(a, p), direct(b, p));
            let d = 1.0 + vb * vb;
            (va / d, sa * (1.0 + sb * sb) / (d * d))
        }
    }
}

pub fn bindings(p: &[f64; 3]) -> NumericBindings {
    (0..3).map(|i| (sym(i), p[i])).collect()
}

fn close(got: f64, want: f64, scale: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * scale.max(1.0)
}

/// Error scale of evaluating the canonical form: the term magnitudes of
/// the numerator over the denominator.
fn canonical_scale(e: &Expr, nb: &NumericBindings) -> f64 {
    let look = |s: &Symbol| nb.get(s).copied();
    let (_, sn) = e.numerator().eval_f64_scaled(&look).unwrap();
    let (d, sd) = e.denominator().eval_f64_scaled(&look).unwrap();
    sn / d.abs() * (1.0 + sd / d.abs())
}

pub fn check_canonical_matches_direct(t: &Tree, p: &[f64; 3]) -> Result<(), String> {
    let e = build(t);
    let nb = bindings(p);
    let got = e.eval(&nb).map_err(|err| err.to_string())?;
    let (want, direct_scale) = direct(t, p);
    let scale = direct_scale.max(canonical_scale(&e, &nb));
    if close(got, want, scale, EVAL_REL_TOL) {
        Ok(())
    } else {
        Err(format!("{e} at {p:?}: canonical {got}, direct {want}"))
    }
}

pub fn check_homomorphism(a: &Tree, b: &Tree, p: &[f64; 3]) -> Result<(), String> {
    let (ea, eb) = (build(a), build(b));
    let nb = bindings(p);
    let ev = |e: &Expr| e.eval(&nb).map_err(|err| err.to_string());
    let (va, vb) = (ev(&ea)?, ev(&eb)?);
    let scale = canonical_scale(&ea, &nb).max(canonical_scale(&eb, &nb));
    let q = ea
        .checked_div(&(Expr::one() + &eb * &eb))
        .map_err(|err| err.to_string())?;
    let sum = &ea + &eb;
    let diff = &ea - &eb;
    let prod = &ea * &eb;
    let cases = [
        ("+", ev(&sum)?, va + vb, scale.max(canonical_scale(&sum, &nb))),
        ("-", ev(&diff)?, va - vb, scale.max(canonical_scale(&diff, &nb))),
        (
            "*",
            ev(&prod)?,
            va * vb,
            (scale * scale).max(canonical_scale(&prod, &nb)),
        ),
        ("/", ev(&q)?, va / (1.0 + vb * vb), scale.max(canonical_scale(&q, &nb))),
    ];
    for (op, got, want, s) in cases {
        if !close(got, want, s, EVAL_REL_TOL) {
            return Err(format!("({ea}) {op} ({eb}) at {p:?}: {got} vs {want}"));
        }
    }
    Ok(())
}

pub fn check_round_trip(t: &Tree) -> Result<(), String> {
    let e = build(t);
    let mut table = SymbolTable::new();
    for n in VARS {
        table.declare(n, SymbolKind::GeometricFunction).unwrap();
    }
    let back = parse_expr(&e.to_string(), &table).map_err(|err| err.to_string())?;
    if back == e {
        Ok(())
    } else {
        Err(format!("{e} reparsed as {back}"))
    }
}

/// Solves `a2 v² + a1 v + a0 = 0` and checks the roots symbolically and at `p`.
pub fn check_back_substitution(a2: &Tree, a1: &Tree, a0: &Tree, p: &[f64; 3]) -> Result<(), String> {
    let v = Symbol::geometric("v");
    let (a2, a1, a0) = (build(a2), build(a1), build(a0));
    if a2.is_zero() {
        return Ok(());
    }
    let vv = Expr::symbol(&v);
    let eq = &(&a2 * &(&vv * &vv)) + &(&(&a1 * &vv) + &a0);
    let sol = solve_quadratic(&eq, &v).map_err(|err| err.to_string())?;
    for r in sol.roots_list() {
        let (free, linear) = sol.back_substitute(r);
        if !free.is_zero() || !linear.is_zero() {
            return Err(format!("root {r} of {eq} leaves {free} + ({linear})·√Δ"));
        }
    }
    let mut nb = bindings(p);
    // A leading coefficient that vanishes at `p` makes the quadratic formula
    // meaningless there.
    if a2.eval(&nb).map_err(|err| err.to_string())?.abs() < 1e-9 {
        return Ok(());
    }
    for root in sol.numeric_roots(&nb).map_err(|err| err.to_string())? {
        nb.insert(v.clone(), root);
        let c: Vec<f64> = sol.coefficients.iter().map(|c| c.eval(&nb).unwrap()).collect();
        let scale = c[2].abs() * root * root + c[1].abs() * root.abs() + c[0].abs();
        let residual = eq.eval(&nb).map_err(|err| err.to_string())?;
        if residual.abs() > BACKSUB_TOL * scale.max(1.0) {
            return Err(format!("{eq} at v = {root}: residual {residual}"));
        }
    }
    Ok(())
}
