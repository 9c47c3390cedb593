use num_complex::Complex64;
use serde::Serialize;

use super::periodic::{PeriodVerdict, SupportKind};
use super::time::ExactTime;
use crate::walk::SearchResult;

/// Why a transfer property fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    ZeroInSupport,
    UnequalNu2,
    NonSurdSupport,
    /// Only two copies of a vertex can be strongly cospectral.
    NoStrongCospectrality,
    /// An integer relation among the support eigenvalues has odd parity.
    OddRelation,
    /// The support eigenvalues cannot be brought into the required phases.
    PhaseMismatch,
}

impl Obstruction {
    pub fn as_str(self) -> &'static str {
        match self {
            Obstruction::ZeroInSupport => "zero-in-support",
            Obstruction::UnequalNu2 => "unequal-nu2",
            Obstruction::NonSurdSupport => "non-surd-support",
            Obstruction::NoStrongCospectrality => "no-strong-cospectrality",
            Obstruction::OddRelation => "odd-relation",
            Obstruction::PhaseMismatch => "phase-mismatch",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    /// Open case of the path-graph conjecture; no counterexample is known.
    ConjecturedNo,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::ConjecturedNo => "conjectured-no",
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Phase {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Phase {
    fn from(z: Complex64) -> Phase {
        Phase { re: z.re, im: z.im }
    }
}

impl Phase {
    pub fn minus_one() -> Phase {
        Phase { re: -1.0, im: 0.0 }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PstVerdict {
    pub occurs: bool,
    pub time: Option<f64>,
    pub exact_time: Option<ExactTime>,
    /// The phase factor `gamma` with `U(time)_{a,b} = gamma`.
    pub phase: Option<Phase>,
    pub obstruction: Option<Obstruction>,
}

impl PstVerdict {
    pub fn blocked(obstruction: Obstruction) -> PstVerdict {
        PstVerdict {
            occurs: false,
            time: None,
            exact_time: None,
            phase: None,
            obstruction: Some(obstruction),
        }
    }

    pub fn at(time: f64, exact: Option<ExactTime>, phase: Phase) -> PstVerdict {
        PstVerdict {
            occurs: true,
            time: Some(time),
            exact_time: exact,
            phase: Some(phase),
            obstruction: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessTerm {
    pub coefficient: i64,
    pub label: String,
    pub eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    /// Lattice method, or `closed-form` for predictions.
    pub method: String,
    /// The closed-form rule that produced a prediction.
    pub rule: Option<String>,
    /// Relation lattice basis over the support, in support order.
    pub basis: Vec<Vec<i64>>,
    pub parity_even: Option<bool>,
    pub witness: Option<Vec<i64>>,
    pub witness_terms: Vec<WitnessTerm>,
    pub residual: Option<f64>,
}

impl Certificate {
    pub fn closed_form(rule: impl Into<String>) -> Certificate {
        Certificate {
            method: "closed-form".into(),
            rule: Some(rule.into()),
            basis: Vec::new(),
            parity_even: None,
            witness: None,
            witness_terms: Vec::new(),
            residual: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PgstVerdict {
    pub occurs: bool,
    pub verdict: Verdict,
    /// PGST without periodicity; absent for conjectured cases.
    pub proper: Option<bool>,
    pub obstruction: Option<Obstruction>,
    pub certificate: Option<Certificate>,
    pub heuristic: bool,
    pub numeric_evidence: Option<SearchResult>,
}

impl PgstVerdict {
    pub fn blocked(obstruction: Obstruction) -> PgstVerdict {
        PgstVerdict {
            occurs: false,
            verdict: Verdict::No,
            proper: Some(false),
            obstruction: Some(obstruction),
            certificate: None,
            heuristic: false,
            numeric_evidence: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicSection {
    pub occurs: bool,
    pub period: Option<f64>,
    pub exact_period: Option<ExactTime>,
    pub kind: SupportKind,
    pub method: String,
}

impl From<&PeriodVerdict> for PeriodicSection {
    fn from(v: &PeriodVerdict) -> PeriodicSection {
        PeriodicSection {
            occurs: v.periodic,
            period: v.minimal_period,
            exact_period: v.exact_period,
            kind: v.kind,
            method: v.method.as_str().into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyCheck {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl ConsistencyCheck {
    pub fn new(check: &str, passed: bool, detail: impl Into<String>) -> ConsistencyCheck {
        ConsistencyCheck {
            check: check.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalysisMode {
    /// Copies `(0,u)`, `(1,u)` of a base vertex in a blow-up.
    Twin,
    /// An arbitrary vertex pair of the whole graph.
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportSource {
    Spectral,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVertex {
    pub index: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    pub graph: String,
    pub mode: AnalysisMode,
    pub source: ReportSource,
    /// Number of copies in twin mode.
    pub copies: Option<usize>,
    /// Base vertex label in twin mode.
    pub vertex: Option<String>,
    pub pair: [PairVertex; 2],
    pub strong_cospectral: bool,
    pub periodic: PeriodicSection,
    pub pst: PstVerdict,
    pub pgst: PgstVerdict,
    pub consistency: Vec<ConsistencyCheck>,
}

impl TransferReport {
    pub fn consistent(&self) -> bool {
        self.consistency.iter().all(|c| c.passed)
    }

    /// Failing consistency checks.
    pub fn failures(&self) -> Vec<&ConsistencyCheck> {
        self.consistency.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks that follow from the verdicts alone.
pub(crate) fn logical_checks(r: &TransferReport) -> Vec<ConsistencyCheck> {
    let mut out = vec![
        ConsistencyCheck::new(
            "pst-implies-pgst",
            !r.pst.occurs || r.pgst.occurs,
            format!("pst {} / pgst {}", r.pst.occurs, r.pgst.verdict.as_str()),
        ),
        ConsistencyCheck::new(
            "pgst-implies-sc",
            !r.pgst.occurs || r.strong_cospectral,
            format!("pgst {} / strongly cospectral {}", r.pgst.verdict.as_str(), r.strong_cospectral),
        ),
        ConsistencyCheck::new(
            "proper-implies-not-periodic",
            r.pgst.proper != Some(true) || !r.periodic.occurs,
            format!("proper {:?} / periodic {}", r.pgst.proper, r.periodic.occurs),
        ),
    ];
    if let (true, Some(t), Some(p)) = (r.pst.occurs, r.pst.time, r.periodic.period) {
        // PST at t makes the pair periodic at 2t, so 2t is a multiple of the
        // minimal period
        let k = 2.0 * t / p;
        out.push(ConsistencyCheck::new(
            "pst-periodic-at-double",
            r.periodic.occurs && (k - k.round()).abs() <= 1e-9 * k.max(1.0) && k.round() >= 1.0,
            format!("2t / period = {k}"),
        ));
    }
    out
}
