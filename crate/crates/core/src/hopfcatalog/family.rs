use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::exprcore::{parse_ast, Ast, NumericAstError, ParseError};

/// Default tolerance for identities that must hold exactly in exact arithmetic.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-9;
/// Default threshold above which a residual counts as a nonzero witness.
pub const DEFAULT_WITNESS_TOL: f64 = 1e-6;
/// Radii checked per family when a catalog is loaded.
pub const ORACLE_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub oracle: f64,
    pub witness: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            oracle: DEFAULT_ORACLE_TOL,
            witness: DEFAULT_WITNESS_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelSpace {
    /// Complex projective plane, `c = 4`.
    CP2,
    /// Complex hyperbolic plane, `c = −4`.
    CH2,
}

impl ModelSpace {
    pub fn c(self) -> i64 {
        match self {
            ModelSpace::CP2 => 4,
            ModelSpace::CH2 => -4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelSpace::CP2 => "cp2",
            ModelSpace::CH2 => "ch2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cp2" => Some(ModelSpace::CP2),
            "ch2" => Some(ModelSpace::CH2),
            _ => None,
        }
    }
}

impl fmt::Display for ModelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Open interval of admissible radii; infinite ends allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusDomain {
    pub lower: f64,
    pub upper: f64,
}

impl RadiusDomain {
    pub fn contains(&self, r: f64) -> bool {
        r > self.lower && r < self.upper
    }

    /// A compact subinterval used for oracle sampling: 5% trimmed from each
    /// finite end; `[lower+0.05, lower+5]` for a half-line and `[0, 1]` for
    /// the whole line.
    pub fn sample_interval(&self) -> (f64, f64) {
        match (self.lower.is_finite(), self.upper.is_finite()) {
            (true, true) => {
                let w = self.upper - self.lower;
                (self.lower + 0.05 * w, self.upper - 0.05 * w)
            }
            (true, false) => (self.lower + 0.05, self.lower + 5.0),
            (false, true) => (self.upper - 5.0, self.upper - 0.05),
            (false, false) => (0.0, 1.0),
        }
    }
}

impl fmt::Display for RadiusDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

/// `n ≥ 1` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|k| {
                if k == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalCurvatures {
    pub alpha: f64,
    pub lambda: f64,
    pub nu: f64,
}

/// A one-parameter family of Hopf hypersurfaces with closed-form principal
/// curvatures `α(r)`, `λ(r)`, `ν(r)`.
#[derive(Debug, Clone)]
pub struct HypersurfaceFamily {
    pub id: String,
    pub space: ModelSpace,
    pub domain: RadiusDomain,
    pub description: String,
    pub alpha_src: String,
    pub lambda_src: String,
    pub nu_src: String,
    alpha: Ast,
    lambda: Ast,
    nu: Ast,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog is not valid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported catalog format `{format}` version {version}")]
    Version { format: String, version: u32 },
    #[error("family `{family}`: {field} `{text}`: {source}")]
    Expression {
        family: String,
        field: &'static str,
        text: String,
        source: ParseError,
    },
    #[error("family `{family}`: {field} may only use the variable r, found `{var}`")]
    ForeignVariable {
        family: String,
        field: &'static str,
        var: String,
    },
    #[error("family `{family}`: unknown model space `{space}`")]
    UnknownSpace { family: String, space: String },
    #[error("family `{family}`: empty or invalid domain ({lower}, {upper})")]
    Domain {
        family: String,
        lower: String,
        upper: String,
    },
    #[error("duplicate family id `{0}`")]
    DuplicateId(String),
    #[error("family `{family}` fails the Hopf relation at r = {r}: residual {residual:e}")]
    Oracle { family: String, r: f64, residual: f64 },
    #[error("family `{family}`: curvature is not finite at r = {r}")]
    NonFinite { family: String, r: f64 },
    #[error("family `{family}`: {source}")]
    Eval { family: String, source: NumericAstError },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DomainError {
    #[error("radius {r} lies outside the domain {domain} of `{family}`")]
    Outside {
        family: String,
        r: f64,
        domain: RadiusDomain,
    },
    #[error("interval [{lo}, {hi}] does not lie inside the domain {domain} of `{family}`")]
    Interval {
        family: String,
        lo: f64,
        hi: f64,
        domain: RadiusDomain,
    },
    #[error("a sweep needs at least 2 samples, got {0}")]
    Samples(usize),
}

/// `λν − (α/2)(λ+ν) − c/4`.
pub fn hopf_relation_residual(alpha: f64, lambda: f64, nu: f64, c: f64) -> f64 {
    lambda * nu - 0.5 * alpha * (lambda + nu) - 0.25 * c
}

impl HypersurfaceFamily {
    pub fn curvatures(&self, r: f64) -> Result<PrincipalCurvatures, DomainError> {
        if !self.domain.contains(r) {
            return Err(DomainError::Outside {
                family: self.id.clone(),
                r,
                domain: self.domain,
            });
        }
        Ok(self
            .curvatures_unchecked(r)
            .expect("catalog expressions validated at load"))
    }

    fn curvatures_unchecked(&self, r: f64) -> Result<PrincipalCurvatures, NumericAstError> {
        let mut vars = BTreeMap::new();
        vars.insert("r".to_string(), r);
        Ok(PrincipalCurvatures {
            alpha: self.alpha.eval(&vars)?,
            lambda: self.lambda.eval(&vars)?,
            nu: self.nu.eval(&vars)?,
        })
    }

    pub fn c(&self) -> f64 {
        self.space.c() as f64
    }

    pub fn hopf_residual_at(&self, r: f64) -> Result<f64, DomainError> {
        let k = self.curvatures(r)?;
        Ok(hopf_relation_residual(k.alpha, k.lambda, k.nu, self.c()))
    }

    /// `n` uniformly spaced radii over [`RadiusDomain::sample_interval`].
    pub fn sample_radii(&self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.domain.sample_interval();
        uniform_grid(lo, hi, n)
    }

    /// Checks finiteness and the Hopf relation on the sample grid.
    pub fn validate(&self, tol: f64) -> Result<(), CatalogError> {
        for r in self.sample_radii(ORACLE_SAMPLES) {
            let k = self.curvatures_unchecked(r).map_err(|source| CatalogError::Eval {
                family: self.id.clone(),
                source,
            })?;
            if !(k.alpha.is_finite() && k.lambda.is_finite() && k.nu.is_finite()) {
                return Err(CatalogError::NonFinite {
                    family: self.id.clone(),
                    r,
                });
            }
            let residual = hopf_relation_residual(k.alpha, k.lambda, k.nu, self.c());
            if residual.abs() >= tol {
                return Err(CatalogError::Oracle {
                    family: self.id.clone(),
                    r,
                    residual,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    format: String,
    version: u32,
    #[serde(default)]
    family: Vec<RawFamily>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    id: String,
    space: String,
    domain: [String; 2],
    alpha: String,
    lambda: String,
    nu: String,
    #[serde(default)]
    description: String,
}

pub const CATALOG_FORMAT: &str = "hypersurf-catalog";
pub const CATALOG_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("../../data/catalog.toml");

#[derive(Debug, Clone)]
pub struct Catalog {
    pub version: u32,
    pub families: Vec<HypersurfaceFamily>,
}

fn parse_bound(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "+inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        other => parse_ast(other).ok()?.eval(&BTreeMap::new()).ok(),
    }
}

fn parse_curvature(family: &str, field: &'static str, text: &str) -> Result<Ast, CatalogError> {
    let ast = parse_ast(text).map_err(|source| CatalogError::Expression {
        family: family.to_string(),
        field,
        text: text.to_string(),
        source,
    })?;
    if let Some(var) = ast.free_variables().into_iter().find(|v| v != "r") {
        return Err(CatalogError::ForeignVariable {
            family: family.to_string(),
            field,
            var,
        });
    }
    Ok(ast)
}

impl Catalog {
    /// The shipped catalog, already validated.
    /// The source text of the builtin catalog.
    pub fn builtin_text() -> &'static str {
        BUILTIN
    }

    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN, DEFAULT_ORACLE_TOL).expect("builtin catalog passes the Hopf-relation oracle")
    }

    pub fn load(path: &Path, oracle_tol: f64) -> Result<Catalog, CatalogError> {
        Catalog::parse(&std::fs::read_to_string(path)?, oracle_tol)
    }

    /// Parses and validates a catalog; any family failing the oracle
    /// rejects the whole file.
    pub fn parse(text: &str, oracle_tol: f64) -> Result<Catalog, CatalogError> {
        let raw: RawCatalog = toml::from_str(text)?;
        if raw.format != CATALOG_FORMAT || raw.version != CATALOG_VERSION {
            return Err(CatalogError::Version {
                format: raw.format,
                version: raw.version,
            });
        }
        let mut seen = BTreeSet::new();
        let mut families = Vec::with_capacity(raw.family.len());
        for f in raw.family {
            if !seen.insert(f.id.clone()) {
                return Err(CatalogError::DuplicateId(f.id));
            }
            let space = ModelSpace::parse(&f.space).ok_or_else(|| CatalogError::UnknownSpace {
                family: f.id.clone(),
                space: f.space.clone(),
            })?;
            let bad_domain = || CatalogError::Domain {
                family: f.id.clone(),
                lower: f.domain[0].clone(),
                upper: f.domain[1].clone(),
            };
            let lower = parse_bound(&f.domain[0]).ok_or_else(bad_domain)?;
            let upper = parse_bound(&f.domain[1]).ok_or_else(bad_domain)?;
            if lower.is_nan() || upper.is_nan() || lower >= upper {
                return Err(bad_domain());
            }
            let family = HypersurfaceFamily {
                alpha: parse_curvature(&f.id, "alpha", &f.alpha)?,
                lambda: parse_curvature(&f.id, "lambda", &f.lambda)?,
                nu: parse_curvature(&f.id, "nu", &f.nu)?,
                id: f.id,
                space,
                domain: RadiusDomain { lower, upper },
                description: f.description,
                alpha_src: f.alpha,
                lambda_src: f.lambda,
                nu_src: f.nu,
            };
            family.validate(oracle_tol)?;
            families.push(family);
        }
        Ok(Catalog {
            version: raw.version,
            families,
        })
    }

    pub fn get(&self, id: &str) -> Option<&HypersurfaceFamily> {
        self.families.iter().find(|f| f.id == id)
    }

    /// The type-B family of `space`, if the catalog has one.
    pub fn type_b(&self, space: ModelSpace) -> Option<&HypersurfaceFamily> {
        self.get(match space {
            ModelSpace::CP2 => "cp2-b",
            ModelSpace::CH2 => "ch2-b",
        })
    }
}

/// The six shipped families.
pub fn builtin_families() -> Vec<HypersurfaceFamily> {
    Catalog::builtin().families
}
