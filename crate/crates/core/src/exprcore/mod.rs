//! Exact scalar algebra: canonical rational functions over ℚ in named
//! symbols, with parsing, substitution, numeric evaluation and quadratic
//! solving.

mod expr;
mod parse;
mod poly;
mod quadratic;
mod symbol;

pub use expr::{is_manifestly_positive, simplify, Bindings, EvalError, Expr, ExprError, NumericBindings};
pub use parse::{parse_ast, parse_expr, parse_expr_declaring, Ast, NumericAstError, ParseError};
pub use poly::{Monomial, Poly};
pub use quadratic::{
    classify_discriminant, solve_quadratic, QuadraticRoot, QuadraticSolution, Roots, Solvability, SolveError,
};
pub use symbol::{DuplicateSymbol, FrameIndex, Symbol, SymbolKind, SymbolTable};

/// Simultaneous substitution; see [`Expr::substitute`].
pub fn substitute(e: &Expr, bindings: &Bindings) -> Result<Expr, ExprError> {
    e.substitute(bindings)
}

/// Double-precision value of `e`; see [`Expr::eval`].
pub fn eval_numeric(e: &Expr, bindings: &NumericBindings) -> Result<f64, EvalError> {
    e.eval(bindings)
}
