//! The report envelope shared by every command, in a machine-readable form
//! and a plain-text rendering of the same payload.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const REPORT_FORMAT: &str = "hypersurf-report";
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub artifact_version: String,
    pub catalog_version: u32,
    pub command: Vec<String>,
    pub status: Status,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Proof(ProofPayload),
    Check(CheckPayload),
    Sweep(SweepPayload),
    Expr(ExprPayload),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofPayload {
    pub traces: Vec<TraceOut>,
    pub quadratic: Vec<QuadraticOut>,
    pub type_b: Vec<TypeBOut>,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceOut {
    pub name: String,
    pub status: String,
    pub steps: Vec<StepOut>,
    pub hypotheses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOut {
    pub label: String,
    pub projection: Option<String>,
    pub orientation: i8,
    pub raw: String,
    pub equation: String,
    pub justification: String,
    pub hypotheses: Vec<String>,
    pub conclusion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticOut {
    pub space: String,
    pub c: i64,
    pub relation: String,
    pub substituted: String,
    pub cleared: String,
    pub factor: String,
    pub target: String,
    pub discriminant: String,
    pub discriminant_at_c: String,
    pub solvability: String,
    pub alpha_zero_equation: String,
    pub alpha_zero_excluded: bool,
    pub boundary: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeBOut {
    pub space: String,
    pub family: String,
    pub expected: f64,
    pub samples: usize,
    pub min_abs: f64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckPayload {
    pub tensor: String,
    pub condition: String,
    pub context: String,
    pub assumptions: Vec<String>,
    pub equations: Vec<EquationOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationOut {
    pub direction: String,
    pub y: String,
    pub projection: String,
    pub equation: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPayload {
    pub family: String,
    pub condition: String,
    pub witness_tol: f64,
    pub rows: Vec<SweepRowOut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRowOut {
    pub r: f64,
    pub max_residual: f64,
    pub lambda_nu_plus_c: f64,
    pub witness: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum ExprPayload {
    Eval {
        input: String,
        bindings: Vec<String>,
        result: String,
    },
    Solve {
        input: String,
        unknown: String,
        degree: u32,
        coefficients: Vec<String>,
        discriminant: String,
        roots: Vec<String>,
        solvability: String,
    },
}

impl Report {
    pub fn new(command: Vec<String>, catalog_version: u32, status: Status, payload: Payload) -> Self {
        Report {
            format: REPORT_FORMAT.to_string(),
            artifact_version: ARTIFACT_VERSION.to_string(),
            catalog_version,
            command,
            status,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    #[cfg(test)]
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Proof(p) => render_proof(&mut out, p),
            Payload::Check(c) => render_check(&mut out, c),
            Payload::Sweep(s) => render_sweep(&mut out, s),
            Payload::Expr(e) => render_expr(&mut out, e),
        }
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(out, "status: {status}");
        out
    }
}

fn render_proof(out: &mut String, p: &ProofPayload) {
    for t in &p.traces {
        let _ = writeln!(out, "{} [{}]", t.name, t.status);
        for (i, s) in t.steps.iter().enumerate() {
            let _ = write!(out, "  {}. {}", i + 1, s.label);
            if let Some(proj) = &s.projection {
                let _ = write!(out, " — {proj}");
                if s.orientation < 0 {
                    out.push_str(" (negated)");
                }
            }
            out.push('\n');
            let _ = writeln!(out, "     equation: {} = 0", s.equation);
            let _ = writeln!(out, "     by: {}", s.justification);
            let _ = writeln!(out, "     ⇒ {}", s.conclusion);
        }
        let _ = writeln!(out, "  hypotheses: {{{}}}", t.hypotheses.join(", "));
    }
    for q in &p.quadratic {
        let _ = writeln!(out, "quadratic analysis ({}, c = {})", q.space, q.c);
        let _ = writeln!(out, "  Hopf relation: {} = 0", q.relation);
        let _ = writeln!(out, "  with λ = −c/ν: {} = 0", q.substituted);
        let _ = writeln!(out, "  cleared: {} = ({})·({})", q.cleared, q.factor, q.target);
        let _ = writeln!(out, "  discriminant in ν: {}", q.discriminant);
        let _ = writeln!(out, "  at c = {}: {}", q.c, q.discriminant_at_c);
        let _ = writeln!(out, "  solvability: {}", q.solvability);
        let _ = writeln!(
            out,
            "  α = 0: {} = 0, {}",
            q.alpha_zero_equation,
            if q.alpha_zero_excluded {
                "excluded"
            } else {
                "not excluded"
            }
        );
        if let Some(b) = &q.boundary {
            let _ = writeln!(out, "  note: {b}");
        }
    }
    for t in &p.type_b {
        let _ = writeln!(
            out,
            "type-B exclusion ({}): λν + c = {:.1} at {} radii of {}, min |λν + c| = {:.12}, max deviation = {:.3e}",
            t.space, t.expected, t.samples, t.family, t.min_abs, t.max_deviation
        );
    }
    if !p.verdict.is_empty() {
        let _ = writeln!(out, "{}", p.verdict);
    }
}

fn render_check(out: &mut String, c: &CheckPayload) {
    let _ = writeln!(
        out,
        "{} condition on {} ({} frame), {} equations",
        c.condition,
        c.tensor,
        c.context,
        c.equations.len()
    );
    if !c.assumptions.is_empty() {
        let _ = writeln!(out, "assuming {}", c.assumptions.join(", "));
    }
    for e in &c.equations {
        let _ = writeln!(out, "  [{} {} {}] {} = 0", e.direction, e.y, e.projection, e.equation);
    }
}

fn render_sweep(out: &mut String, s: &SweepPayload) {
    let _ = writeln!(out, "{} condition on {}", s.condition, s.family);
    let _ = writeln!(
        out,
        "{:>20} {:>24} {:>24} {:>8}",
        "r", "max residual", "λν + c", "witness"
    );
    for row in &s.rows {
        let _ = writeln!(
            out,
            "{:>20.12} {:>24.12e} {:>24.12} {:>8}",
            row.r,
            row.max_residual,
            row.lambda_nu_plus_c,
            if row.witness { "yes" } else { "no" }
        );
    }
}

fn render_expr(out: &mut String, e: &ExprPayload) {
    match e {
        ExprPayload::Eval { result, .. } => {
            let _ = writeln!(out, "{result}");
        }
        ExprPayload::Solve {
            unknown,
            degree,
            coefficients,
            discriminant,
            roots,
            solvability,
            ..
        } => {
            let _ = writeln!(out, "unknown: {unknown} (degree {degree})");
            let _ = writeln!(out, "coefficients: [{}]", coefficients.join(", "));
            let _ = writeln!(out, "discriminant: {discriminant}");
            for r in roots {
                let _ = writeln!(out, "root: {r}");
            }
            let _ = writeln!(out, "solvability: {solvability}");
        }
    }
}
