//! Moving-frame calculus on the two frame contexts: covariant derivatives,
//! Gauss curvature, the Codazzi residual, and the Ricci and *-Ricci tensors.

mod calculus;
mod context;
mod tensor;

pub use crate::exprcore::FrameIndex;
pub use calculus::{
    codazzi_residual, covariant_derivative_t11, covariant_derivative_vf, curvature, curvature_frame, ricci,
    star_ricci_closed, star_ricci_trace,
};
pub use context::{
    build_hopf_context, build_nonhopf_context, c_symbol, names, structure_tensor, FrameContext, FrameKind,
};
pub use tensor::{ConnectionTable, Tensor11, VectorField};
