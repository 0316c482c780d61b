//! Numerical exclusion of the type-B tubes: on them `λν + c` stays away from
//! zero, so `c + λν = 0` cannot hold.

use std::fmt;

use crate::hopfcatalog::{Catalog, ModelSpace, ORACLE_SAMPLES};

use super::kernel::ProofError;

/// Distance from zero that `λν + c` must keep on a type-B family.
pub const TYPE_B_MARGIN: f64 = 3.0;
/// Slack on [`TYPE_B_MARGIN`] and on the expected constant value.
pub const TYPE_B_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TypeBReport {
    pub space: ModelSpace,
    pub family: String,
    pub expected: f64,
    /// `(r, λν + c)` per sampled radius.
    pub rows: Vec<(f64, f64)>,
    pub min_abs: f64,
    pub max_deviation: f64,
}

impl fmt::Display for TypeBReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type-B exclusion ({}): λν + c = {:.1} at {} radii of {}, min |λν + c| = {:.12}, max deviation = {:.3e}",
            self.space.name(),
            self.expected,
            self.rows.len(),
            self.family,
            self.min_abs,
            self.max_deviation
        )
    }
}

/// [`type_b_exclusion_in`] on the builtin catalog with the default sample count.
pub fn type_b_exclusion(space: ModelSpace) -> Result<TypeBReport, ProofError> {
    type_b_exclusion_in(&Catalog::builtin(), space, ORACLE_SAMPLES)
}

pub fn type_b_exclusion_in(catalog: &Catalog, space: ModelSpace, samples: usize) -> Result<TypeBReport, ProofError> {
    let family = catalog
        .type_b(space)
        .ok_or_else(|| ProofError::FamilyMissing(format!("{}-b", space.name())))?;
    let expected = TYPE_B_MARGIN * (space.c() as f64).signum();
    let mut rows = Vec::with_capacity(samples);
    for r in family.sample_radii(samples) {
        let k = family.curvatures(r).map_err(|e| ProofError::Other(e.to_string()))?;
        let value = k.lambda * k.nu + family.c();
        if value.abs() < TYPE_B_MARGIN - TYPE_B_TOL || (value - expected).abs() > TYPE_B_TOL {
            return Err(ProofError::TypeB {
                family: family.id.clone(),
                r,
                value,
                expected,
            });
        }
        rows.push((r, value));
    }
    let min_abs = rows.iter().map(|(_, v)| v.abs()).fold(f64::INFINITY, f64::min);
    let max_deviation = rows.iter().map(|(_, v)| (v - expected).abs()).fold(0.0, f64::max);
    Ok(TypeBReport {
        space,
        family: family.id.clone(),
        expected,
        rows,
        min_abs,
        max_deviation,
    })
}
