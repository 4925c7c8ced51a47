//! Machine-readable (JSON) and human-readable (text table) reports.
//!
//! Every JSON report is a single object carrying `"schema_version": 1`, the
//! command, the input path and the tolerances used. Non-finite numbers (an
//! upper bound that was not computed, the log of a zero norm) are `null`.

use std::fmt::Write as _;

use jsr2_core::jsr::{Evidence, NormSample};
use jsr2_core::symmetrizer::{InfeasibilityReason, Outcome};
use jsr2_core::{
    BudgetExceeded, InfoFlags, JsrReport, Mat2, PatternReport, StabilityVerdict, SymmetrizationResult, Tol,
};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct TolOut {
    rtol: f64,
    atol: f64,
}

type Rows = [[f64; 2]; 2];

#[derive(Serialize)]
pub struct PatternOut {
    holds: bool,
    base_b: f64,
    base_c: f64,
    base_member: Option<usize>,
    ratios: Vec<f64>,
    sign_class: &'static str,
    all_diagonal: bool,
}

impl From<&PatternReport> for PatternOut {
    fn from(p: &PatternReport) -> Self {
        Self {
            holds: p.holds,
            base_b: p.base_b,
            base_c: p.base_c,
            base_member: p.base_member,
            ratios: p.ratios.clone(),
            sign_class: p.sign_class.as_str(),
            all_diagonal: p.all_diagonal,
        }
    }
}

#[derive(Serialize)]
pub struct SubspaceOut {
    dim: usize,
    /// Orthonormal basis in `(s1, s2, s3)` for `S = [[s1, s2], [s2, s3]]`.
    basis: Vec<[f64; 3]>,
    singular_values: [f64; 3],
}

#[derive(Serialize)]
pub struct CertificateOut {
    reason: &'static str,
    best_min_eigenvalue: Option<f64>,
    text: String,
}

#[derive(Serialize)]
pub struct SymmetrizeOut {
    feasible: bool,
    q: Option<Rows>,
    s: Option<Rows>,
    conjugated: Option<Vec<Rows>>,
    /// `diag(√|c|, √|b|)` when the proportional pattern holds with `bc > 0`.
    diagonal_q: Option<Rows>,
    subspace: SubspaceOut,
    certificate: Option<CertificateOut>,
}

impl SymmetrizeOut {
    pub fn new(result: &SymmetrizationResult, diagonal_q: Option<Mat2>) -> Self {
        let sub = &result.subspace;
        let subspace = SubspaceOut { dim: sub.dim(), basis: sub.basis.clone(), singular_values: sub.singular_values };
        match &result.outcome {
            Outcome::Feasible { q, s, conjugated } => Self {
                feasible: true,
                q: Some(q.rows()),
                s: Some(s.rows()),
                conjugated: Some(conjugated.iter().map(Mat2::rows).collect()),
                diagonal_q: diagonal_q.map(|m| m.rows()),
                subspace,
                certificate: None,
            },
            Outcome::Infeasible(cert) => Self {
                feasible: false,
                q: None,
                s: None,
                conjugated: None,
                diagonal_q: diagonal_q.map(|m| m.rows()),
                certificate: Some(CertificateOut {
                    reason: cert.reason.as_str(),
                    best_min_eigenvalue: cert.best_min_eigenvalue,
                    text: certificate_text(&subspace, cert.reason, cert.best_min_eigenvalue),
                }),
                subspace,
            },
        }
    }
}

fn certificate_text(sub: &SubspaceOut, reason: InfeasibilityReason, best: Option<f64>) -> String {
    let mut t = String::from("no positive-definite S = [[s1, s2], [s2, s3]] solves S·A_k = A_kᵀ·S for every member: ");
    match reason {
        InfeasibilityReason::TrivialSubspace => t.push_str("the only symmetric solution is S = 0"),
        _ => {
            let span: Vec<String> =
                sub.basis.iter().map(|v| format!("({}, {}, {})", num(v[0]), num(v[1]), num(v[2]))).collect();
            let _ = write!(t, "the solutions form a {}-dimensional space spanned by {}", sub.dim, span.join(", "));
            let what = if reason == InfeasibilityReason::Marginal {
                "its best element is only semidefinite"
            } else {
                "every nonzero element is indefinite"
            };
            let _ = write!(t, "; {what}");
            if let Some(l) = best {
                let _ = write!(t, " (largest min eigenvalue over unit elements {})", num(l));
            }
        }
    }
    t
}

#[derive(Serialize)]
pub struct JsrOut {
    lower: f64,
    upper: f64,
    witness: Vec<usize>,
    depth: usize,
    method: &'static str,
    exact: bool,
}

impl From<&JsrReport> for JsrOut {
    fn from(r: &JsrReport) -> Self {
        Self {
            lower: r.lower,
            upper: r.upper,
            witness: r.witness.clone(),
            depth: r.depth,
            method: r.method.as_str(),
            exact: r.exact,
        }
    }
}

#[derive(Serialize)]
pub struct BudgetOut {
    requested_depth: usize,
    completed_depth: usize,
    budget: u64,
    best_so_far: f64,
    witness: Vec<usize>,
}

impl From<&BudgetExceeded> for BudgetOut {
    fn from(b: &BudgetExceeded) -> Self {
        Self {
            requested_depth: b.requested_depth,
            completed_depth: b.completed_depth,
            budget: b.budget,
            best_so_far: b.best_so_far,
            witness: b.witness.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct StabilityOut {
    verdict: &'static str,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radii: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper_depth: Option<usize>,
}

impl From<&StabilityVerdict> for StabilityOut {
    fn from(v: &StabilityVerdict) -> Self {
        let verdict = v.verdict.as_str();
        match &v.reason {
            Evidence::FastPath { method, rho, radii } => Self {
                verdict,
                method: method.as_str(),
                rho: Some(*rho),
                radii: Some(radii.clone()),
                lower: None,
                upper: None,
                witness: None,
                lower_depth: None,
                upper_depth: None,
            },
            Evidence::Bounds { lower, upper, witness, lower_depth, upper_depth } => Self {
                verdict,
                method: "enumeration",
                rho: None,
                radii: None,
                lower: Some(*lower),
                upper: Some(*upper),
                witness: Some(witness.clone()),
                lower_depth: Some(*lower_depth),
                upper_depth: Some(*upper_depth),
            },
        }
    }
}

#[derive(Serialize)]
pub struct SampleOut {
    step: usize,
    block: String,
    log10_norm: f64,
}

impl From<&NormSample> for SampleOut {
    fn from(s: &NormSample) -> Self {
        Self { step: s.step, block: format!("{}:{}", s.member, s.repeat), log10_norm: s.log10_norm }
    }
}

#[derive(Serialize)]
pub struct FlagsOut {
    transpose_closed: bool,
    rank_one_members: Vec<usize>,
}

impl From<&InfoFlags> for FlagsOut {
    fn from(f: &InfoFlags) -> Self {
        Self { transpose_closed: f.transpose_closed, rank_one_members: f.rank_one_members.clone() }
    }
}

/// Command-specific part of a report.
#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Pattern(PatternOut),
    Symmetrization(SymmetrizeOut),
    Jsr(JsrOut),
    BudgetExceeded(BudgetOut),
    Stability(StabilityOut),
    Trajectory(Vec<SampleOut>),
    Flags(FlagsOut),
}

#[derive(Serialize)]
pub struct Report {
    schema_version: u32,
    command: &'static str,
    input: String,
    tol: TolOut,
    #[serde(flatten)]
    body: Body,
}

impl Report {
    pub fn new(command: &'static str, input: String, tol: &Tol, body: Body) -> Self {
        Self { schema_version: SCHEMA_VERSION, command, input, tol: TolOut { rtol: tol.rtol, atol: tol.atol }, body }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// A two-column table, or CSV for trajectories.
    pub fn to_text(&self) -> String {
        if let Body::Trajectory(samples) = &self.body {
            return trajectory_csv(samples);
        }
        let mut t = Table::default();
        t.row("command", self.command);
        t.row("input", &self.input);
        t.row("rtol", num(self.tol.rtol));
        t.row("atol", num(self.tol.atol));
        match &self.body {
            Body::Pattern(p) => {
                t.row("holds", p.holds);
                t.row("base", format!("({}, {})", num(p.base_b), num(p.base_c)));
                t.row("base_member", opt(p.base_member));
                t.row("ratios", list(&p.ratios));
                t.row("sign_class", p.sign_class);
                t.row("all_diagonal", p.all_diagonal);
            }
            Body::Symmetrization(s) => {
                t.row("feasible", s.feasible);
                t.row("subspace_dim", s.subspace.dim);
                if let Some(q) = &s.q {
                    t.row("q", mat(q));
                }
                if let Some(m) = &s.s {
                    t.row("s", mat(m));
                }
                for (k, m) in s.conjugated.iter().flatten().enumerate() {
                    t.row(&format!("conjugated[{k}]"), mat(m));
                }
                if let Some(q) = &s.diagonal_q {
                    t.row("diagonal_q", mat(q));
                }
                if let Some(c) = &s.certificate {
                    t.row("reason", c.reason);
                    t.row("certificate", &c.text);
                }
            }
            Body::Jsr(j) => {
                t.row("method", j.method);
                t.row("exact", j.exact);
                t.row("lower", num(j.lower));
                t.row("upper", num(j.upper));
                t.row("witness", list(&j.witness));
                t.row("depth", j.depth);
            }
            Body::BudgetExceeded(b) => {
                t.row("status", "budget exceeded");
                t.row("requested_depth", b.requested_depth);
                t.row("completed_depth", b.completed_depth);
                t.row("budget", b.budget);
                t.row("best_so_far", num(b.best_so_far));
                t.row("witness", list(&b.witness));
            }
            Body::Stability(s) => {
                t.row("verdict", s.verdict);
                t.row("method", s.method);
                if let Some(rho) = s.rho {
                    t.row("rho", num(rho));
                }
                if let Some(r) = &s.radii {
                    t.row("radii", list(r));
                }
                if let (Some(lo), Some(hi)) = (s.lower, s.upper) {
                    t.row("lower", num(lo));
                    t.row("upper", num(hi));
                }
                if let Some(w) = &s.witness {
                    t.row("witness", list(w));
                }
                if let (Some(ld), Some(ud)) = (s.lower_depth, s.upper_depth) {
                    t.row("lower_depth", ld);
                    t.row("upper_depth", ud);
                }
            }
            Body::Flags(f) => {
                t.row("transpose_closed", f.transpose_closed);
                t.row("rank_one_members", list(&f.rank_one_members));
            }
            Body::Trajectory(_) => unreachable!(),
        }
        t.finish()
    }
}

pub fn trajectory_csv(samples: &[SampleOut]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for s in samples {
        w.serialize(CsvRow { step: s.step, block: &s.block, log10_norm: num(s.log10_norm) }).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

#[derive(Serialize)]
struct CsvRow<'a> {
    step: usize,
    block: &'a str,
    log10_norm: String,
}

#[derive(Default)]
struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    fn row(&mut self, key: &str, value: impl ToString) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    fn finish(self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 2;
        let mut out = String::new();
        for (k, v) in self.rows {
            let _ = writeln!(out, "{k:<width$}{v}");
        }
        out
    }
}

/// Shortest round-trip decimal, in exponent form outside `[1e-4, 1e16)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x < 0.0 {
            "-inf".into()
        } else {
            "inf".into()
        }
    } else if a == 0.0 || (1e-4..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn list<T: Cell>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(Cell::cell).collect();
    format!("[{}]", parts.join(", "))
}

fn mat(m: &Rows) -> String {
    format!("[[{}, {}], [{}, {}]]", num(m[0][0]), num(m[0][1]), num(m[1][0]), num(m[1][1]))
}

trait Cell {
    fn cell(&self) -> String;
}

impl Cell for f64 {
    fn cell(&self) -> String {
        num(*self)
    }
}

impl Cell for usize {
    fn cell(&self) -> String {
        self.to_string()
    }
}
