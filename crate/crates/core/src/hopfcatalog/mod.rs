//! Numeric one-parameter families of Hopf hypersurfaces in CP² and CH²,
//! the Hopf-relation oracle, and condition evaluation over radius sweeps.

mod evaluate;
mod family;

pub use evaluate::{
    evaluate_condition, evaluate_with, sweep, ConditionEvaluator, EvaluationError, NumericEntry, NumericReport,
    SweepResult, SweepRow,
};
pub use family::{
    builtin_families, hopf_relation_residual, uniform_grid, Catalog, CatalogError, DomainError, HypersurfaceFamily,
    ModelSpace, PrincipalCurvatures, RadiusDomain, Tolerances, CATALOG_FORMAT, CATALOG_VERSION, DEFAULT_ORACLE_TOL,
    DEFAULT_WITNESS_TOL, ORACLE_SAMPLES,
};
