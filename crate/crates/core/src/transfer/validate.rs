//! Predictor against decider against simulation.

use serde::Serialize;

use super::decide::{analyze_pair, analyze_twins, AnalysisOptions, Subject, FIDELITY_TOLERANCE};
use super::predict::predict;
use super::report::*;
use super::target::Target;
use crate::error::{Error, Result};
use crate::expr::GraphExpr;
use crate::walk::{pair_fidelity, pair_amplitude};

/// Largest whole graph that is simulated directly.
pub const SIMULATION_LIMIT: usize = 400;

/// Spectral report for a target.
pub fn analyze(target: &Target, opts: &AnalysisOptions) -> Result<TransferReport> {
    let subject = |e: &GraphExpr| -> Result<Subject> {
        let s = Subject::from_expr(e)?;
        Ok(match opts.support_threshold {
            Some(t) => s.with_support_threshold(t),
            None => s,
        })
    };
    match target {
        Target::Twin { base, u, copies } => analyze_twins(&subject(base)?, *u, *copies, opts),
        _ => {
            let (a, b) = target.pair_indices()?;
            analyze_pair(&subject(&target.graph_expr())?, a, b, opts)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementRow {
    pub property: String,
    pub predictor: Option<String>,
    pub decider: Option<String>,
    pub simulation: Option<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub graph: String,
    pub pair: [PairVertex; 2],
    pub catalogued: bool,
    /// Why the predictor declined, when it did.
    pub predictor_note: Option<String>,
    pub agree: bool,
    pub matrix: Vec<AgreementRow>,
    pub prediction: Option<TransferReport>,
    pub decision: TransferReport,
}

impl ValidationReport {
    pub fn discrepancies(&self) -> Vec<&AgreementRow> {
        self.matrix.iter().filter(|r| !r.agree).collect()
    }
}

fn pgst_class(v: Verdict) -> bool {
    // conjectured-no is compared as no
    v.is_yes()
}

fn time_text(v: &PstVerdict) -> String {
    match (v.occurs, v.exact_time, v.time) {
        (false, _, _) => format!("no ({})", v.obstruction.map_or("none", |o| o.as_str())),
        (true, Some(e), _) => format!("yes at {e}"),
        (true, None, Some(t)) => format!("yes at {t}"),
        _ => "yes".into(),
    }
}

fn same_time(a: &PstVerdict, b: &PstVerdict) -> bool {
    match (a.exact_time, b.exact_time) {
        (Some(x), Some(y)) => x == y,
        _ => match (a.time, b.time) {
            (Some(x), Some(y)) => (x - y).abs() <= 1e-9 * x.abs().max(1.0),
            (None, None) => true,
            _ => false,
        },
    }
}

fn same_period(a: &PeriodicSection, b: &PeriodicSection) -> bool {
    a.occurs == b.occurs
        && match (a.exact_period, b.exact_period) {
            (Some(x), Some(y)) => x == y,
            _ => match (a.period, b.period) {
                (Some(x), Some(y)) => (x - y).abs() <= 1e-9 * x.abs().max(1.0),
                (x, y) => x.is_none() == y.is_none(),
            },
        }
}

fn period_text(p: &PeriodicSection) -> String {
    match (p.occurs, p.exact_period, p.period) {
        (false, ..) => "no".into(),
        (true, Some(e), _) => format!("yes, period {e}"),
        (true, None, Some(t)) => format!("yes, period {t}"),
        (true, None, None) => "yes, constant".into(),
    }
}

/// Runs the predictor (when catalogued), the spectral decider and a direct
/// simulation on the whole graph, and tabulates where they agree.
///
/// Disagreement is reported in the result, not raised as an error.
pub fn cross_validate(target: &Target, opts: &AnalysisOptions) -> Result<ValidationReport> {
    let decision = analyze(target, opts)?;
    let (prediction, note) = match predict(target) {
        Ok(r) => (Some(r), None),
        Err(Error::Unsupported(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    let (a, b) = target.pair_indices()?;
    let whole = target.graph_expr().build()?;
    let sim = if whole.n_vertices() <= SIMULATION_LIMIT {
        Some(crate::decompose(&whole)?)
    } else {
        None
    };

    let mut rows = Vec::new();
    let p = prediction.as_ref();
    rows.push(AgreementRow {
        property: "strong-cospectrality".into(),
        predictor: p.map(|p| p.strong_cospectral.to_string()),
        decider: Some(decision.strong_cospectral.to_string()),
        simulation: None,
        agree: p.is_none_or(|p| p.strong_cospectral == decision.strong_cospectral),
    });
    rows.push(AgreementRow {
        property: "pst".into(),
        predictor: p.map(|p| time_text(&p.pst)),
        decider: Some(time_text(&decision.pst)),
        simulation: None,
        agree: p.is_none_or(|p| p.pst.occurs == decision.pst.occurs && same_time(&p.pst, &decision.pst)),
    });
    rows.push(AgreementRow {
        property: "pgst".into(),
        predictor: p.map(|p| p.pgst.verdict.as_str().to_string()),
        decider: Some(decision.pgst.verdict.as_str().to_string()),
        simulation: None,
        agree: p.is_none_or(|p| pgst_class(p.pgst.verdict) == pgst_class(decision.pgst.verdict)),
    });
    rows.push(AgreementRow {
        property: "proper-pgst".into(),
        predictor: p.map(|p| format!("{:?}", p.pgst.proper)),
        decider: Some(format!("{:?}", decision.pgst.proper)),
        simulation: None,
        agree: p.is_none_or(|p| p.pgst.proper.is_none() || p.pgst.proper == decision.pgst.proper),
    });
    rows.push(AgreementRow {
        property: "periodic".into(),
        predictor: p.map(|p| period_text(&p.periodic)),
        decider: Some(period_text(&decision.periodic)),
        simulation: None,
        agree: p.is_none_or(|p| same_period(&p.periodic, &decision.periodic)),
    });

    if let Some(dec) = &sim {
        let mut times: Vec<(&str, f64)> = Vec::new();
        if let Some(t) = p.and_then(|p| p.pst.time) {
            times.push(("predictor", t));
        }
        if let Some(t) = decision.pst.time {
            times.push(("decider", t));
        }
        for (who, t) in times {
            let f = pair_fidelity(dec, a, b, t)?;
            rows.push(AgreementRow {
                property: format!("pst-simulated ({who})"),
                predictor: None,
                decider: None,
                simulation: Some(format!("fidelity {f} at t = {t}")),
                agree: f >= 1.0 - FIDELITY_TOLERANCE,
            });
        }
        let mut periods: Vec<(&str, f64)> = Vec::new();
        if let Some(t) = p.and_then(|p| p.periodic.period) {
            periods.push(("predictor", t));
        }
        if let Some(t) = decision.periodic.period {
            periods.push(("decider", t));
        }
        for (who, t) in periods {
            let r = pair_amplitude(dec, a, a, t)?.norm();
            rows.push(AgreementRow {
                property: format!("periodic-simulated ({who})"),
                predictor: None,
                decider: None,
                simulation: Some(format!("|U(t)_(a,a)| = {r} at t = {t}")),
                agree: r >= 1.0 - FIDELITY_TOLERANCE,
            });
        }
    }
    let failed: Vec<&str> = decision.failures().iter().map(|c| c.check.as_str()).collect();
    rows.push(AgreementRow {
        property: "decider-consistency".into(),
        predictor: None,
        decider: Some(if failed.is_empty() { "all checks pass".into() } else { failed.join(", ") }),
        simulation: None,
        agree: failed.is_empty(),
    });

    Ok(ValidationReport {
        graph: decision.graph.clone(),
        pair: decision.pair.clone(),
        catalogued: prediction.is_some(),
        predictor_note: note,
        agree: rows.iter().all(|r| r.agree),
        matrix: rows,
        prediction,
        decision,
    })
}
