use crate::exprcore::{Expr, FrameIndex};

use super::context::FrameContext;
use super::tensor::{Tensor11, VectorField};

/// `∇_X Y = Σ_j [ D(X, Y_j) e_j + Y_j ∇_X e_j ]`.
pub fn covariant_derivative_vf(ctx: &FrameContext, x: FrameIndex, y: &VectorField) -> VectorField {
    FrameIndex::ALL.iter().fold(VectorField::zero(), |acc, &j| {
        let yj = y.component(j);
        let mut out = &acc + &ctx.connection.nabla(x, j).scale(yj);
        out.0[j.idx()] = &out.0[j.idx()] + &yj.derive(x);
        out
    })
}

/// `(∇_X T)Y = ∇_X(TY) − T(∇_X Y)`, column by column.
pub fn covariant_derivative_t11(ctx: &FrameContext, x: FrameIndex, t: &Tensor11) -> Tensor11 {
    Tensor11::from_columns(FrameIndex::ALL.map(|j| {
        let lhs = covariant_derivative_vf(ctx, x, t.column(j));
        let rhs = t.apply(&ctx.connection.nabla(x, j));
        &lhs - &rhs
    }))
}

/// Gauss equation:
///
/// ```text
/// R(X,Y)Z = (c/4)[g(Y,Z)X − g(X,Z)Y + g(φY,Z)φX − g(φX,Z)φY − 2g(φX,Y)φZ]
///           + g(AY,Z)AX − g(AX,Z)AY
/// ```
pub fn curvature(ctx: &FrameContext, x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
    let phi = &ctx.phi;
    let (px, py, pz) = (phi.apply(x), phi.apply(y), phi.apply(z));
    let (ax, ay) = (ctx.a.apply(x), ctx.a.apply(y));
    let bracket = x.scale(&y.dot(z)) - y.scale(&x.dot(z)) + px.scale(&py.dot(z))
        - py.scale(&px.dot(z))
        - pz.scale(&(&Expr::int(2) * &px.dot(y)));
    let quarter_c = &ctx.c * &Expr::ratio(1, 4);
    bracket.scale(&quarter_c) + ax.scale(&ay.dot(z)) - ay.scale(&ax.dot(z))
}

pub fn curvature_frame(ctx: &FrameContext, x: FrameIndex, y: FrameIndex, z: FrameIndex) -> VectorField {
    curvature(
        ctx,
        &VectorField::basis(x),
        &VectorField::basis(y),
        &VectorField::basis(z),
    )
}

/// `g(S e_j, e_k) = Σ_i g(R(e_i, e_j) e_k, e_i)`.
pub fn ricci(ctx: &FrameContext) -> Tensor11 {
    Tensor11::from_fn(|k, j| {
        FrameIndex::ALL
            .iter()
            .map(|&i| curvature_frame(ctx, i, j, k).component(i).clone())
            .sum()
    })
}

/// `S* = −[(cn/2)φ² + (φA)²]` with `n = 2`.
pub fn star_ricci_closed(ctx: &FrameContext) -> Tensor11 {
    let phi2 = ctx.phi.compose(&ctx.phi);
    let phia = ctx.phi.compose(&ctx.a);
    let half_cn = &(&ctx.c * &ctx.n) * &Expr::ratio(1, 2);
    let sum = &phi2.scale(&half_cn) + &phia.compose(&phia);
    sum.scale(&Expr::int(-1))
}

/// `g(S* X, Y) = ½ trace{Z ↦ φ R(X, φY) Z}`.
///
/// The trace runs over the third slot of `R`, and `φ` acts after `R`:
/// `g(S* e_j, e_k) = ½ Σ_i g(φ R(e_j, φe_k) e_i, e_i)`. This is the
/// convention under which the contraction reproduces the closed form in
/// both frame contexts.
pub fn star_ricci_trace(ctx: &FrameContext) -> Tensor11 {
    let half = Expr::ratio(1, 2);
    Tensor11::from_fn(|k, j| {
        let ej = VectorField::basis(j);
        let phi_ek = ctx.phi.apply(&VectorField::basis(k));
        let tr: Expr = FrameIndex::ALL
            .iter()
            .map(|&i| {
                let r = curvature(ctx, &ej, &phi_ek, &VectorField::basis(i));
                ctx.phi.apply(&r).component(i).clone()
            })
            .sum();
        &half * &tr
    })
}

/// `(∇_X A)Y − (∇_Y A)X − (c/4)[η(X)φY − η(Y)φX − 2g(φX,Y)ξ]`.
///
/// Zero on an actual hypersurface; here its components are constraint
/// equations among the frame scalars and their formal derivatives.
pub fn codazzi_residual(ctx: &FrameContext, x: FrameIndex, y: FrameIndex) -> VectorField {
    let dax = covariant_derivative_t11(ctx, x, &ctx.a);
    let day = covariant_derivative_t11(ctx, y, &ctx.a);
    let (vx, vy) = (VectorField::basis(x), VectorField::basis(y));
    let lhs = dax.column(y) - day.column(x);
    let (px, py) = (ctx.phi.apply(&vx), ctx.phi.apply(&vy));
    let rhs =
        py.scale(&ctx.eta(&vx)) - px.scale(&ctx.eta(&vy)) - VectorField::xi().scale(&(&Expr::int(2) * &px.dot(&vy)));
    lhs - rhs.scale(&(&ctx.c * &Expr::ratio(1, 4)))
}
