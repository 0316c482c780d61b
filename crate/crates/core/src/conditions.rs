//! Scalar component equations of parallelism-type conditions on a (1,1)
//! tensor field.
//!
//! Every report enumerates its projections lexicographically in its indices:
//! `(X, Y, proj)` for the derivative conditions, `(i, j, k, l)` with `i < j`
//! for the curvature conditions, and `(Y, proj)` for the Einstein condition.

use std::fmt;

use crate::exprcore::{Bindings, EvalError, Expr, ExprError, FrameIndex, Symbol};
use crate::framegeom::{covariant_derivative_t11, curvature, names, ricci, FrameContext, Tensor11, VectorField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionKind {
    Parallel,
    XiParallel,
    DParallel,
    SemiParallel,
    /// `R(X,Y)·T = L (X∧Y)·T` for the given function `L`.
    PseudoParallel(Expr),
    Einstein,
}

impl ConditionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConditionKind::Parallel => "parallel",
            ConditionKind::XiParallel => "xi-parallel",
            ConditionKind::DParallel => "d-parallel",
            ConditionKind::SemiParallel => "semi-parallel",
            ConditionKind::PseudoParallel(_) => "pseudo-parallel",
            ConditionKind::Einstein => "einstein",
        }
    }

    /// Parses a kind name; pseudo-parallelism takes `l`.
    pub fn parse(name: &str, l: Expr) -> Option<Self> {
        Some(match name {
            "parallel" => ConditionKind::Parallel,
            "xi-parallel" => ConditionKind::XiParallel,
            "d-parallel" => ConditionKind::DParallel,
            "semi-parallel" => ConditionKind::SemiParallel,
            "pseudo-parallel" => ConditionKind::PseudoParallel(l),
            "einstein" => ConditionKind::Einstein,
            _ => return None,
        })
    }

    pub const NAMES: [&'static str; 6] = [
        "parallel",
        "xi-parallel",
        "d-parallel",
        "semi-parallel",
        "pseudo-parallel",
        "einstein",
    ];
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which direction(s) a report entry differentiates or curves along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Along(FrameIndex),
    Plane(FrameIndex, FrameIndex),
    None,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Along(x) => write!(f, "{x}"),
            Direction::Plane(x, y) => write!(f, "{x}^{y}"),
            Direction::None => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionEntry {
    pub direction: Direction,
    pub y: FrameIndex,
    pub projection: FrameIndex,
    pub equation: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub kind: ConditionKind,
    pub tensor: String,
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    /// Sets the tensor name recorded in the metadata.
    pub fn named(mut self, tensor: impl Into<String>) -> Self {
        self.tensor = tensor.into();
        self
    }

    pub fn get(&self, direction: Direction, y: FrameIndex, projection: FrameIndex) -> Option<&Expr> {
        self.entries
            .iter()
            .find(|e| e.direction == direction && e.y == y && e.projection == projection)
            .map(|e| &e.equation)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every equation is identically zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.equation.is_zero())
    }

    pub fn has_formal_derivatives(&self) -> bool {
        self.entries.iter().any(|e| e.equation.has_formal_derivatives())
    }

    pub fn substitute(&self, b: &Bindings) -> Result<ConditionReport, ExprError> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(ConditionEntry {
                    equation: e.equation.substitute(b)?,
                    ..e.clone()
                })
            })
            .collect::<Result<_, ExprError>>()?;
        Ok(ConditionReport {
            entries,
            ..self.clone()
        })
    }

    /// Numeric values of every equation, in report order.
    pub fn eval_with(&self, value: &dyn Fn(&Symbol) -> Option<f64>) -> Result<Vec<f64>, EvalError> {
        self.entries.iter().map(|e| e.equation.eval_with(value)).collect()
    }
}

fn report(kind: ConditionKind, entries: Vec<ConditionEntry>) -> ConditionReport {
    ConditionReport {
        kind,
        tensor: "T".into(),
        entries,
    }
}

fn derivative_entries(ctx: &FrameContext, t: &Tensor11, dirs: &[FrameIndex]) -> Vec<ConditionEntry> {
    let mut out = Vec::with_capacity(dirs.len() * 9);
    for &x in dirs {
        let dt = covariant_derivative_t11(ctx, x, t);
        for y in FrameIndex::ALL {
            for k in FrameIndex::ALL {
                out.push(ConditionEntry {
                    direction: Direction::Along(x),
                    y,
                    projection: k,
                    equation: dt.entry(k, y).clone(),
                });
            }
        }
    }
    out
}

/// All 27 projections `g((∇_{e_i}T)e_j, e_k)`.
pub fn parallel_equations(ctx: &FrameContext, t: &Tensor11) -> ConditionReport {
    report(ConditionKind::Parallel, derivative_entries(ctx, t, &FrameIndex::ALL))
}

/// The 9 projections with `X = ξ`.
pub fn xi_parallel_equations(ctx: &FrameContext, t: &Tensor11) -> ConditionReport {
    report(ConditionKind::XiParallel, derivative_entries(ctx, t, &[FrameIndex::E3]))
}

/// The 18 projections with `X ∈ D = span{e1, e2}`.
pub fn d_parallel_equations(ctx: &FrameContext, t: &Tensor11) -> ConditionReport {
    report(
        ConditionKind::DParallel,
        derivative_entries(ctx, t, &[FrameIndex::E1, FrameIndex::E2]),
    )
}

/// `(X∧Y)Z = g(Y,Z)X − g(Z,X)Y`.
pub fn wedge(x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
    x.scale(&y.dot(z)) - y.scale(&z.dot(x))
}

/// Action of an endomorphism-valued derivation `B` on `T`: `B(TZ) − T(BZ)`.
fn derivation_action(b: impl Fn(&VectorField) -> VectorField, t: &Tensor11, z: &VectorField) -> VectorField {
    b(&t.apply(z)) - t.apply(&b(z))
}

/// `(R(e_i,e_j)·T)e_k − L·((e_i∧e_j)·T)e_k` projected on `e_l`; `L = None`
/// gives the semi-parallel equation.
pub fn curvature_action_entry(
    ctx: &FrameContext,
    t: &Tensor11,
    l: Option<&Expr>,
    i: FrameIndex,
    j: FrameIndex,
    k: FrameIndex,
    proj: FrameIndex,
) -> Expr {
    let (ei, ej, ek) = (VectorField::basis(i), VectorField::basis(j), VectorField::basis(k));
    let r_part = derivation_action(|z| curvature(ctx, &ei, &ej, z), t, &ek);
    let v = match l {
        Some(l) if !l.is_zero() => {
            let w_part = derivation_action(|z| wedge(&ei, &ej, z), t, &ek);
            r_part - w_part.scale(l)
        }
        _ => r_part,
    };
    v.component(proj).clone()
}

fn plane_pairs() -> impl Iterator<Item = (FrameIndex, FrameIndex)> {
    FrameIndex::ALL
        .into_iter()
        .flat_map(|i| FrameIndex::ALL.into_iter().filter(move |j| i < *j).map(move |j| (i, j)))
}

fn curvature_entries(ctx: &FrameContext, t: &Tensor11, l: Option<&Expr>) -> Vec<ConditionEntry> {
    let mut out = Vec::with_capacity(27);
    for (i, j) in plane_pairs() {
        for k in FrameIndex::ALL {
            for p in FrameIndex::ALL {
                out.push(ConditionEntry {
                    direction: Direction::Plane(i, j),
                    y: k,
                    projection: p,
                    equation: curvature_action_entry(ctx, t, l, i, j, k, p),
                });
            }
        }
    }
    out
}

/// `g((R(e_i,e_j)·T)e_k, e_l)` for `i < j`: 27 purely algebraic equations.
pub fn semi_parallel_equations(ctx: &FrameContext, t: &Tensor11) -> ConditionReport {
    report(ConditionKind::SemiParallel, curvature_entries(ctx, t, None))
}

/// `g((R(e_i,e_j)·T − L(e_i∧e_j)·T)e_k, e_l)` for `i < j`.
pub fn pseudo_parallel_equations(ctx: &FrameContext, t: &Tensor11, l: &Expr) -> ConditionReport {
    report(
        ConditionKind::PseudoParallel(l.clone()),
        curvature_entries(ctx, t, Some(l)),
    )
}

/// `g(T e_j, e_k) − λ_E δ_jk` for the Einstein constant `λ_E`.
pub fn einstein_equations_for(ctx: &FrameContext, t: &Tensor11) -> ConditionReport {
    let le = ctx.sym(names::EINSTEIN);
    let mut entries = Vec::with_capacity(9);
    for y in FrameIndex::ALL {
        for k in FrameIndex::ALL {
            let mut eq = t.entry(k, y).clone();
            if y == k {
                eq = &eq - &le;
            }
            entries.push(ConditionEntry {
                direction: Direction::None,
                y,
                projection: k,
                equation: eq,
            });
        }
    }
    report(ConditionKind::Einstein, entries)
}

/// The Einstein condition `S = λ_E g` on the Ricci tensor.
pub fn einstein_equations(ctx: &FrameContext) -> ConditionReport {
    einstein_equations_for(ctx, &ricci(ctx)).named("S")
}

/// Dispatches on `kind`.
pub fn condition_equations(ctx: &FrameContext, t: &Tensor11, kind: &ConditionKind) -> ConditionReport {
    match kind {
        ConditionKind::Parallel => parallel_equations(ctx, t),
        ConditionKind::XiParallel => xi_parallel_equations(ctx, t),
        ConditionKind::DParallel => d_parallel_equations(ctx, t),
        ConditionKind::SemiParallel => semi_parallel_equations(ctx, t),
        ConditionKind::PseudoParallel(l) => pseudo_parallel_equations(ctx, t, l),
        ConditionKind::Einstein => einstein_equations_for(ctx, t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framegeom::{build_hopf_context, build_nonhopf_context, c_symbol};

    #[test]
    fn report_sizes() {
        let ctx = build_nonhopf_context(c_symbol());
        let id = Tensor11::identity();
        assert_eq!(parallel_equations(&ctx, &id).len(), 27);
        assert_eq!(xi_parallel_equations(&ctx, &id).len(), 9);
        assert_eq!(d_parallel_equations(&ctx, &id).len(), 18);
        assert_eq!(semi_parallel_equations(&ctx, &id).len(), 27);
        assert_eq!(einstein_equations(&ctx).len(), 9);
    }

    #[test]
    fn wedge_example() {
        let e1 = VectorField::basis(FrameIndex::E1);
        let e2 = VectorField::basis(FrameIndex::E2);
        assert_eq!(
            wedge(&e1, &e2, &e1),
            VectorField::new(Expr::zero(), Expr::int(-1), Expr::zero())
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for n in ConditionKind::NAMES {
            assert_eq!(ConditionKind::parse(n, Expr::zero()).unwrap().name(), n);
        }
        assert!(ConditionKind::parse("nonsense", Expr::zero()).is_none());
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let ctx = build_hopf_context(c_symbol());
        let r = semi_parallel_equations(&ctx, &Tensor11::identity());
        let keys: Vec<_> = r.entries.iter().map(|e| (e.direction, e.y, e.projection)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
