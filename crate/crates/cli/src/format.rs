//! JSON problem files, machine-readable reduction output and CSV tables.
//!
//! Every rational is written as a string, `"p"` or `"p/q"`.

use std::fmt;
use std::io::{self, Write};

use opreduce_core::canonical::{Orientation, RankOneSpec};
use opreduce_core::linalg::{parse_rational, rat};
use opreduce_core::oracle::PolyExpFunction;
use opreduce_core::reduction::{
    CouplingEquation, Family, ForcingExpr, ForcingTerm, PartialEquation, PartialSystem,
    ReducedEquation, Var,
};
use opreduce_core::{Mat, Poly, Rational};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cauchy::{CauchyProblem, SolveReport, SystemMatrix};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C"; keep only the message.
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(pos) => full[..pos].to_string(),
            None => full,
        };
        InputError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn invalid(msg: impl Into<String>) -> InputError {
    InputError::Invalid(msg.into())
}

/// A rational that (de)serializes as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

struct QVisitor;

impl de::Visitor<'_> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational string \"p\" or \"p/q\"")
    }

    // Failing inside the visitor keeps serde_json's position on the string.
    fn visit_str<E: de::Error>(self, text: &str) -> Result<Q, E> {
        parse_rational(text)
            .map(Q)
            .map_err(|e| E::custom(format!("bad rational {text:?}: {e}")))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_str(QVisitor)
    }
}

fn unwrap_all(v: Vec<Q>) -> Vec<Rational> {
    v.into_iter().map(|q| q.0).collect()
}

fn wrap_all(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Hat,
    Check,
    Dense,
}

/// `b` for `hat` / `check`, `entries` (row-major) for `dense`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub kind: MatrixKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<Q>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingTermFile {
    /// Ascending coefficients in `t`.
    pub poly: Vec<Q>,
    #[serde(default = "zero_rate")]
    pub rate: Q,
}

fn zero_rate() -> Q {
    Q(rat(0))
}

/// The problem file. Only `n` and `matrix` are needed for `reduce`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub matrix: MatrixFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forcing: Option<Vec<Vec<ForcingTermFile>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<Q>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn system(&self) -> Result<SystemMatrix, InputError> {
        let n = self.n;
        let m = &self.matrix;
        let spec = |o| {
            let b =
                m.b.as_ref()
                    .ok_or_else(|| invalid("matrix.b is required for hat and check matrices"))?;
            if b.len() != n {
                return Err(invalid(format!(
                    "matrix.b: expected {n} entries, found {}",
                    b.len()
                )));
            }
            RankOneSpec::new(unwrap_all(b.clone()), o)
                .map(SystemMatrix::RankOne)
                .map_err(|e| invalid(format!("matrix.b: {e}")))
        };
        match m.kind {
            MatrixKind::Hat => spec(Orientation::Hat),
            MatrixKind::Check => spec(Orientation::Check),
            MatrixKind::Dense => {
                let entries = m
                    .entries
                    .as_ref()
                    .ok_or_else(|| invalid("matrix.entries is required for dense matrices"))?;
                if n == 0 {
                    return Err(invalid("n must be at least 1"));
                }
                if entries.len() != n || entries.iter().any(|r| r.len() != n) {
                    return Err(invalid(format!("matrix.entries: expected a {n}x{n} array")));
                }
                let rows = entries.iter().map(|r| unwrap_all(r.clone())).collect();
                Ok(SystemMatrix::Dense(
                    Mat::from_rows(rows).map_err(|e| invalid(e.to_string()))?,
                ))
            }
        }
    }

    /// Missing `forcing` means a homogeneous system.
    pub fn forcing(&self) -> Vec<PolyExpFunction> {
        match &self.forcing {
            None => vec![PolyExpFunction::zero(); self.n],
            Some(rows) => rows
                .iter()
                .map(|terms| {
                    PolyExpFunction::new(terms.iter().map(|t| {
                        (
                            Poly::from_coeffs(unwrap_all(t.poly.clone())),
                            t.rate.0.clone(),
                        )
                    }))
                })
                .collect(),
        }
    }

    pub fn cauchy(&self) -> Result<CauchyProblem, InputError> {
        let need = |field: &Option<Q>, name: &str| {
            field
                .as_ref()
                .map(|q| q.0.clone())
                .ok_or_else(|| invalid(format!("missing field `{name}`")))
        };
        let c = self.c.clone().ok_or_else(|| invalid("missing field `c`"))?;
        CauchyProblem::new(
            self.system()?,
            self.forcing(),
            need(&self.t0, "t0")?,
            unwrap_all(c),
            need(&self.horizon, "horizon")?,
            need(&self.step, "step")?,
        )
        .map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: Q,
    pub order: usize,
    /// One-based forcing index.
    pub phi: usize,
}

fn term_records(e: &ForcingExpr) -> Vec<TermRecord> {
    e.terms()
        .iter()
        .map(|t| TermRecord {
            coeff: Q(t.coeff.clone()),
            order: t.order,
            phi: t.forcing + 1,
        })
        .collect()
}

fn expr_from_records(records: &[TermRecord]) -> Result<ForcingExpr, InputError> {
    let mut terms = Vec::with_capacity(records.len());
    for r in records {
        if r.phi == 0 {
            return Err(invalid("forcing indices are one-based"));
        }
        terms.push(ForcingTerm {
            coeff: r.coeff.0.clone(),
            order: r.order,
            forcing: r.phi - 1,
        });
    }
    Ok(ForcingExpr::new(terms))
}

fn var_name(v: Var) -> String {
    v.to_string()
}

pub fn parse_var(text: &str) -> Result<Var, InputError> {
    let bad = || invalid(format!("bad variable {text:?}"));
    let mut chars = text.chars();
    let family = match chars.next() {
        Some('x') => Family::X,
        Some('y') => Family::Y,
        Some('z') => Family::Z,
        _ => return Err(bad()),
    };
    let index: usize = chars.as_str().parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    Ok(Var {
        family,
        index: index - 1,
    })
}

/// `lhs(A)(target) = rhs`, lhs coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationRecord {
    pub target: String,
    pub lhs: Vec<Q>,
    pub rhs: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl EquationRecord {
    pub fn from_equation(eq: &ReducedEquation) -> Self {
        EquationRecord {
            target: var_name(eq.target()),
            lhs: wrap_all(eq.lhs().coeffs()),
            rhs: term_records(eq.rhs()),
            text: Some(eq.to_string()),
        }
    }

    pub fn to_equation(&self) -> Result<ReducedEquation, InputError> {
        ReducedEquation::new(
            Poly::from_coeffs(unwrap_all(self.lhs.clone())),
            parse_var(&self.target)?,
            expr_from_records(&self.rhs)?,
        )
        .map_err(|e| invalid(format!("equation for {}: {e}", self.target)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingRecord {
    pub target: String,
    pub source: String,
    pub operator: Vec<Q>,
    pub forcing: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl CouplingRecord {
    pub fn from_coupling(c: &CouplingEquation) -> Self {
        CouplingRecord {
            target: var_name(c.target),
            source: var_name(c.source),
            operator: wrap_all(c.operator.coeffs()),
            forcing: term_records(&c.forcing),
            text: Some(c.to_string()),
        }
    }

    pub fn to_coupling(&self) -> Result<CouplingEquation, InputError> {
        Ok(CouplingEquation {
            target: parse_var(&self.target)?,
            source: parse_var(&self.source)?,
            operator: Poly::from_coeffs(unwrap_all(self.operator.clone())),
            forcing: expr_from_records(&self.forcing)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PartialRecord {
    Reduced(EquationRecord),
    Coupling(CouplingRecord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRecord {
    pub canonical: Vec<Vec<Q>>,
    pub transition: Vec<Vec<Q>>,
    pub transition_inverse: Vec<Vec<Q>>,
}

fn mat_record(m: &Mat) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| wrap_all(m.row(i))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReduceMode {
    Total,
    Jordan,
    Rational,
}

impl fmt::Display for ReduceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReduceMode::Total => "total",
            ReduceMode::Jordan => "jordan",
            ReduceMode::Rational => "rational",
        })
    }
}

/// Machine-readable output of `reduce`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceOutput {
    pub mode: ReduceMode,
    pub n: usize,
    pub equations: Vec<PartialRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisRecord>,
}

impl ReduceOutput {
    pub fn total(eqs: &[ReducedEquation]) -> Self {
        ReduceOutput {
            mode: ReduceMode::Total,
            n: eqs.len(),
            equations: eqs
                .iter()
                .map(|e| PartialRecord::Reduced(EquationRecord::from_equation(e)))
                .collect(),
            basis: None,
        }
    }

    pub fn partial(mode: ReduceMode, sys: &PartialSystem) -> Self {
        let dec = &sys.basis_change.decomposition;
        ReduceOutput {
            mode,
            n: sys.len(),
            equations: sys
                .equations
                .iter()
                .map(|e| match e {
                    PartialEquation::Reduced(r) => {
                        PartialRecord::Reduced(EquationRecord::from_equation(r))
                    }
                    PartialEquation::Coupling(c) => {
                        PartialRecord::Coupling(CouplingRecord::from_coupling(c))
                    }
                })
                .collect(),
            basis: Some(BasisRecord {
                canonical: mat_record(dec.canonical()),
                transition: mat_record(dec.transition()),
                transition_inverse: mat_record(dec.transition_inverse()),
            }),
        }
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Equations as library values, in output order.
    pub fn to_equations(&self) -> Result<Vec<PartialEquation>, InputError> {
        self.equations
            .iter()
            .map(|r| match r {
                PartialRecord::Reduced(e) => e.to_equation().map(PartialEquation::Reduced),
                PartialRecord::Coupling(c) => c.to_coupling().map(PartialEquation::Coupling),
            })
            .collect()
    }

    /// Just the higher-order equations.
    pub fn reduced_equations(&self) -> Result<Vec<ReducedEquation>, InputError> {
        Ok(self
            .to_equations()?
            .into_iter()
            .filter_map(|e| match e {
                PartialEquation::Reduced(r) => Some(r),
                PartialEquation::Coupling(_) => None,
            })
            .collect())
    }
}

/// Header `t,x1_coupled,x1_decoupled,…`, one row per grid point and a
/// trailing `# max_abs_deviation=<v>` comment.
pub fn write_csv(report: &SolveReport, mut w: impl Write) -> io::Result<()> {
    let n = report.coupled.values.first().map_or(0, Vec::len);
    let mut header = String::from("t");
    for i in 1..=n {
        header.push_str(&format!(",x{i}_coupled,x{i}_decoupled"));
    }
    writeln!(w, "{header}")?;
    for (k, t) in report.coupled.times.iter().enumerate() {
        write!(w, "{t}")?;
        for i in 0..n {
            write!(
                w,
                ",{},{}",
                report.coupled.values[k][i], report.decoupled.values[k][i]
            )?;
        }
        writeln!(w)?;
    }
    writeln!(w, "# max_abs_deviation={}", report.max_abs_deviation)
}

#[derive(Debug, Serialize)]
struct SolveJson<'a> {
    t: &'a [f64],
    coupled: &'a [Vec<f64>],
    decoupled: &'a [Vec<f64>],
    max_abs_deviation: f64,
    tol: f64,
    within_tol: bool,
}

pub fn write_solve_json(report: &SolveReport, tol: f64, mut w: impl Write) -> io::Result<()> {
    let doc = SolveJson {
        t: &report.coupled.times,
        coupled: &report.coupled.values,
        decoupled: &report.decoupled.values,
        max_abs_deviation: report.max_abs_deviation,
        tol,
        within_tol: report.max_abs_deviation <= tol,
    };
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)
}
