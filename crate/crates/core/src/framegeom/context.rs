use crate::exprcore::{Expr, FrameIndex, Symbol, SymbolKind, SymbolTable};

use super::tensor::{ConnectionTable, Tensor11, VectorField};

/// Names of the scalars used by the two frame contexts.
pub mod names {
    pub const ALPHA: &str = "alpha";
    pub const BETA: &str = "beta";
    pub const GAMMA: &str = "gamma";
    pub const DELTA: &str = "delta";
    pub const MU: &str = "mu";
    pub const KAPPA1: &str = "kappa1";
    pub const KAPPA2: &str = "kappa2";
    pub const KAPPA3: &str = "kappa3";
    pub const LAMBDA: &str = "lambda";
    pub const NU: &str = "nu";
    pub const OMEGA1: &str = "omega1";
    pub const OMEGA2: &str = "omega2";
    pub const OMEGA3: &str = "omega3";
    pub const C: &str = "c";
    pub const N: &str = "n";
    /// Einstein constant, kept apart from the principal curvature λ.
    pub const EINSTEIN: &str = "lambda_E";
    /// Pseudo-parallelism function.
    pub const L: &str = "L";
}

fn display_name(name: &str) -> &str {
    match name {
        names::ALPHA => "α",
        names::BETA => "β",
        names::GAMMA => "γ",
        names::DELTA => "δ",
        names::MU => "μ",
        names::KAPPA1 => "κ₁",
        names::KAPPA2 => "κ₂",
        names::KAPPA3 => "κ₃",
        names::LAMBDA => "λ",
        names::NU => "ν",
        names::OMEGA1 => "ω₁",
        names::OMEGA2 => "ω₂",
        names::OMEGA3 => "ω₃",
        names::EINSTEIN => "λ_E",
        other => other,
    }
}

fn declare(table: &mut SymbolTable, name: &str, kind: SymbolKind) -> Symbol {
    table
        .insert(Symbol::with_display(name, display_name(name), kind))
        .expect("frame symbol names are distinct")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameKind {
    /// `{U, φU, ξ}` on the open set where `Aξ = αξ + βU` with `β ≠ 0`.
    NonHopf,
    /// `{W, φW, ξ}` with `AW = λW`, `AφW = νφW`, `Aξ = αξ`.
    Hopf,
}

/// A point-local orthonormal frame `{e1, e2, e3 = ξ}` with its structure
/// tensor, shape operator and connection. Immutable once built.
#[derive(Debug, Clone)]
pub struct FrameContext {
    pub kind: FrameKind,
    pub table: SymbolTable,
    pub c: Expr,
    /// Complex dimension of the ambient space, fixed at 2.
    pub n: Expr,
    pub a: Tensor11,
    pub phi: Tensor11,
    pub connection: ConnectionTable,
}

impl FrameContext {
    /// The symbol `name` as an expression; panics if undeclared.
    pub fn sym(&self, name: &str) -> Expr {
        Expr::symbol(self.symbol(name))
    }

    pub fn symbol(&self, name: &str) -> &Symbol {
        self.table
            .get(name)
            .unwrap_or_else(|| panic!("symbol `{name}` is not declared in this frame context"))
    }

    /// `η(X) = g(X, ξ)`.
    pub fn eta(&self, x: &VectorField) -> Expr {
        x.component(FrameIndex::E3).clone()
    }

    /// Same frame and connection with a different shape operator. The
    /// relation `∇ξ = φA` then no longer holds, so this is only meaningful
    /// for the purely algebraic operations (curvature, Ricci, S*).
    pub fn with_shape_operator(&self, a: Tensor11) -> FrameContext {
        FrameContext { a, ..self.clone() }
    }
}

/// The structure tensor: `φe1 = e2`, `φe2 = −e1`, `φξ = 0`.
pub fn structure_tensor() -> Tensor11 {
    Tensor11::from_columns([
        VectorField::basis(FrameIndex::E2),
        VectorField::basis(FrameIndex::E1).scale(&Expr::int(-1)),
        VectorField::zero(),
    ])
}

fn base_table() -> SymbolTable {
    let mut t = SymbolTable::new();
    declare(&mut t, names::C, SymbolKind::Constant);
    declare(&mut t, names::N, SymbolKind::Constant);
    declare(&mut t, names::EINSTEIN, SymbolKind::Constant);
    declare(&mut t, names::L, SymbolKind::GeometricFunction);
    t
}

/// The symbolic holomorphic curvature `c`, a constant.
pub fn c_symbol() -> Expr {
    Expr::symbol(&Symbol::constant(names::C))
}

/// Non-Hopf frame `{U, φU, ξ}` with
///
/// ```text
/// AU = γU + δφU + βξ,  AφU = δU + μφU,  Aξ = βU + αξ
/// ∇_U U  = κ₁φU + δξ,   ∇_U φU  = −κ₁U − γξ,   ∇_U ξ  = −δU + γφU
/// ∇_φU U = κ₂φU + μξ,   ∇_φU φU = −κ₂U − δξ,   ∇_φU ξ = −μU + δφU
/// ∇_ξ U  = κ₃φU,        ∇_ξ φU  = −κ₃U − βξ,   ∇_ξ ξ  = βφU
/// ```
pub fn build_nonhopf_context(c: Expr) -> FrameContext {
    let mut t = base_table();
    let g = SymbolKind::GeometricFunction;
    let mut s = |n: &str| Expr::symbol(&declare(&mut t, n, g.clone()));
    let alpha = s(names::ALPHA);
    let beta = s(names::BETA);
    let gamma = s(names::GAMMA);
    let delta = s(names::DELTA);
    let mu = s(names::MU);
    let k1 = s(names::KAPPA1);
    let k2 = s(names::KAPPA2);
    let k3 = s(names::KAPPA3);
    let z = Expr::zero;

    let a = Tensor11::from_columns([
        VectorField::new(gamma.clone(), delta.clone(), beta.clone()),
        VectorField::new(delta.clone(), mu.clone(), z()),
        VectorField::new(beta.clone(), z(), alpha),
    ]);
    let connection = ConnectionTable::from_vectors([
        [
            VectorField::new(z(), k1.clone(), delta.clone()),
            VectorField::new(-&k1, z(), -&gamma),
            VectorField::new(-&delta, gamma.clone(), z()),
        ],
        [
            VectorField::new(z(), k2.clone(), mu.clone()),
            VectorField::new(-&k2, z(), -&delta),
            VectorField::new(-&mu, delta, z()),
        ],
        [
            VectorField::new(z(), k3.clone(), z()),
            VectorField::new(-&k3, z(), -&beta),
            VectorField::new(z(), beta, z()),
        ],
    ]);
    FrameContext {
        kind: FrameKind::NonHopf,
        table: t,
        c,
        n: Expr::int(2),
        a,
        phi: structure_tensor(),
        connection,
    }
}

/// Hopf frame `{W, φW, ξ}` at a point, with `A = diag(λ, ν, α)`.
///
/// Only `∇_Wξ = λφW`, `∇_φWξ = −νW`, `∇_ξξ = 0` are fixed; the remaining
/// coefficients `ω_i = g(∇_{e_i}W, φW)` are free symbols. `α`, `λ`, `ν` are
/// point values and carry no derivative symbols.
pub fn build_hopf_context(c: Expr) -> FrameContext {
    let mut t = base_table();
    let alpha = Expr::symbol(&declare(&mut t, names::ALPHA, SymbolKind::Constant));
    let lambda = Expr::symbol(&declare(&mut t, names::LAMBDA, SymbolKind::Constant));
    let nu = Expr::symbol(&declare(&mut t, names::NU, SymbolKind::Constant));
    let w1 = Expr::symbol(&declare(&mut t, names::OMEGA1, SymbolKind::GeometricFunction));
    let w2 = Expr::symbol(&declare(&mut t, names::OMEGA2, SymbolKind::GeometricFunction));
    let w3 = Expr::symbol(&declare(&mut t, names::OMEGA3, SymbolKind::GeometricFunction));
    let z = Expr::zero;

    let a = Tensor11::diagonal(lambda.clone(), nu.clone(), alpha);
    let connection = ConnectionTable::from_vectors([
        [
            VectorField::new(z(), w1.clone(), z()),
            VectorField::new(-&w1, z(), -&lambda),
            VectorField::new(z(), lambda, z()),
        ],
        [
            VectorField::new(z(), w2.clone(), nu.clone()),
            VectorField::new(-&w2, z(), z()),
            VectorField::new(-&nu, z(), z()),
        ],
        [
            VectorField::new(z(), w3.clone(), z()),
            VectorField::new(-&w3, z(), z()),
            VectorField::zero(),
        ],
    ]);
    FrameContext {
        kind: FrameKind::Hopf,
        table: t,
        c,
        n: Expr::int(2),
        a,
        phi: structure_tensor(),
        connection,
    }
}
