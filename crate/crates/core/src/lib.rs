//! Exact moving-frame calculus for three-dimensional real hypersurfaces in the
//! complex projective and hyperbolic planes, with checks of parallelism-type
//! conditions on the *-Ricci tensor.

pub mod conditions;
pub mod exprcore;
pub mod framegeom;
pub mod hopfcatalog;
pub mod proofkit;
