//! Spectral deciders. Twin copies in a blow-up are decided from the base
//! graph's decomposition; arbitrary pairs are decided from the whole graph.

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use super::cospectral::{blowup_sc, strong_cospectrality};
use super::periodic::{periodicity, phase_alignment, PeriodContext, PeriodMethod, PeriodVerdict};
use super::report::*;
use super::time::ExactTime;
use crate::error::{param, Result};
use crate::expr::GraphExpr;
use crate::graph::{blow_up, Family, Graph};
use crate::lattice::{
    integer_kernel, parity_check, relation_basis, IntegerMatrix, LatticeOptions, RelationLattice, TaggedValue,
};
use crate::spectral::{decompose, nu2, recognize, support, SpectralDecomposition};
use crate::walk::{max_fidelity_search, max_twin_fidelity_search, PairTerms, SearchOptions, TwinTerms};

/// Fidelity bound for simulated confirmations.
pub const FIDELITY_TOLERANCE: f64 = 1e-9;
/// Distance from the predicted phase factor.
pub const PHASE_TOLERANCE: f64 = 1e-6;

/// A graph together with its decomposition and, when known, its expression.
#[derive(Clone, Debug)]
pub struct Subject {
    expr: Option<GraphExpr>,
    graph: Graph,
    dec: SpectralDecomposition,
}

impl Subject {
    pub fn new(graph: Graph) -> Result<Subject> {
        let dec = decompose(&graph)?;
        Ok(Subject { expr: None, graph, dec })
    }

    pub fn from_expr(expr: &GraphExpr) -> Result<Subject> {
        let graph = expr.build()?;
        let dec = decompose(&graph)?;
        Ok(Subject {
            expr: Some(expr.clone()),
            graph,
            dec,
        })
    }

    /// Replaces the support threshold of the decomposition.
    pub fn with_support_threshold(mut self, threshold: f64) -> Subject {
        self.dec = self.dec.with_support_threshold(threshold);
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.dec
    }

    pub fn expr(&self) -> Option<&GraphExpr> {
        self.expr.as_ref()
    }

    pub fn describe(&self) -> String {
        match &self.expr {
            Some(e) => e.to_string(),
            None => format!("graph({} vertices, {} edges)", self.graph.n_vertices(), self.graph.n_edges()),
        }
    }

    fn family(&self) -> Option<Family> {
        match self.expr {
            Some(GraphExpr::Family(f)) => Some(f),
            _ => None,
        }
    }

    /// Display label of eigenvalue `j`: `θ_{j+1}` for paths, `λ_{j+1}` otherwise.
    pub fn eigenvalue_label(&self, j: usize) -> String {
        match self.family() {
            Some(Family::Path(_)) => format!("θ{}", j + 1),
            _ => format!("λ{}", j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisOptions {
    /// When set, PGST verdicts carry a fidelity search as advisory evidence.
    pub evidence: Option<SearchOptions>,
    pub lattice: LatticeOptions,
    /// Largest blow-up, in vertices, that is decomposed for the cross-checks.
    pub cross_check_limit: usize,
    /// Overrides the support threshold of the subject's decomposition.
    pub support_threshold: Option<f64>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            evidence: None,
            lattice: LatticeOptions::default(),
            cross_check_limit: 200,
            support_threshold: None,
        }
    }
}

/// Support values of `u` tagged with their recognized algebraic forms.
pub fn form_support(dec: &SpectralDecomposition, u: usize) -> Result<Vec<TaggedValue>> {
    Ok(support(dec, u)?
        .values()
        .into_iter()
        .map(|x| TaggedValue::form(x, recognize(x, &Default::default())))
        .collect())
}

/// Support values of `u` tagged for the relation lattice: path and cycle
/// eigenvalues by their cyclotomic index, everything else by form.
pub fn lattice_support(subject: &Subject, u: usize) -> Result<Vec<TaggedValue>> {
    let sup = support(&subject.dec, u)?;
    let tagged: Option<Vec<TaggedValue>> = match subject.family() {
        Some(Family::Path(n)) => Some(
            sup.members
                .iter()
                .map(|m| TaggedValue::cyclotomic(2 * (n as u64 + 1), m.index as u64 + 1))
                .collect(),
        ),
        Some(Family::Cycle(n)) => Some(
            sup.members
                .iter()
                .map(|m| TaggedValue::cyclotomic(n as u64, m.index as u64))
                .collect(),
        ),
        _ => None,
    };
    if let Some(t) = tagged {
        let tol = 1e-9 * subject.dec.spectral_radius().max(1.0);
        if t.iter().zip(&sup.members).all(|(t, m)| (t.value - m.value).abs() <= tol) {
            return Ok(t);
        }
    }
    form_support(&subject.dec, u)
}

/// PST between `(0,u)` and `(1,u)` in the `n`-fold blow-up.
pub fn pst(dec: &SpectralDecomposition, u: usize, n: usize) -> Result<PstVerdict> {
    if n < 2 {
        return param("twin analysis needs n ≥ 2 copies");
    }
    let sup = support(dec, u)?;
    if n != 2 {
        return Ok(PstVerdict::blocked(Obstruction::NoStrongCospectrality));
    }
    if sup.contains_zero {
        return Ok(PstVerdict::blocked(Obstruction::ZeroInSupport));
    }
    let surds: Option<Vec<(i64, u64)>> = sup
        .values()
        .iter()
        .map(|&x| recognize(x, &Default::default()).as_surd())
        .collect();
    let Some(surds) = surds else {
        return Ok(PstVerdict::blocked(Obstruction::NonSurdSupport));
    };
    let delta = surds[0].1;
    if surds.iter().any(|s| s.1 != delta) {
        return Ok(PstVerdict::blocked(Obstruction::NonSurdSupport));
    }
    let a = nu2(surds[0].0)?;
    for &(b, _) in &surds {
        if nu2(b)? != a {
            return Ok(PstVerdict::blocked(Obstruction::UnequalNu2));
        }
    }
    let g = surds.iter().fold(0i64, |g, s| g.gcd(&s.0));
    let time = ExactTime::new(Rational64::new(1, 2 * g), delta);
    Ok(PstVerdict::at(time.value(), Some(time), Phase::minus_one()))
}

fn member(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for row in basis {
        let Some(p) = row.iter().position(|&x| x != 0) else { continue };
        if v[..p].iter().any(|&x| x != 0) {
            return false;
        }
        let piv = row[p] as i128;
        if v[p] % piv != 0 {
            return false;
        }
        let q = v[p] / piv;
        for (x, &r) in v.iter_mut().zip(row) {
            *x -= q * r as i128;
        }
    }
    v.iter().all(|&x| x == 0)
}

const WITNESS_MAX_SUPPORT: usize = 4;
const WITNESS_MAX_COEFFICIENT: i64 = 2;
const WITNESS_BUDGET: usize = 400_000;

fn combinations(k: usize, s: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = s;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < k - s + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Relation of smallest support satisfying `pred`, among vectors with at most
/// four nonzero entries of magnitude at most 2. Supports are scanned in
/// lexicographic order; the first nonzero coefficient is positive.
fn minimal_relation(basis: &[Vec<i64>], k: usize, pred: impl Fn(&[i64]) -> bool) -> Option<Vec<i64>> {
    let mags: Vec<i64> = (1..=WITNESS_MAX_COEFFICIENT).flat_map(|c| [c, -c]).collect();
    let mut budget = WITNESS_BUDGET;
    let mut found = None;
    for s in 1..=WITNESS_MAX_SUPPORT.min(k) {
        let hit = combinations(k, s, |pos| {
            let total = WITNESS_MAX_COEFFICIENT as usize * mags.len().pow(s as u32 - 1);
            if budget < total {
                return true;
            }
            budget -= total;
            let mut coeffs = vec![0usize; s];
            loop {
                let mut v = vec![0i64; k];
                v[pos[0]] = 1 + coeffs[0] as i64;
                for i in 1..s {
                    v[pos[i]] = mags[coeffs[i]];
                }
                if pred(&v) && member(basis, &v) {
                    found = Some(v);
                    return true;
                }
                let mut i = s;
                loop {
                    if i == 0 {
                        return false;
                    }
                    i -= 1;
                    let limit = if i == 0 { WITNESS_MAX_COEFFICIENT as usize } else { mags.len() };
                    coeffs[i] += 1;
                    if coeffs[i] < limit {
                        break;
                    }
                    coeffs[i] = 0;
                }
            }
        });
        if hit {
            break;
        }
    }
    found
}

fn witness_terms(subject: &Subject, u: usize, w: &[i64]) -> Result<Vec<WitnessTerm>> {
    let sup = support(&subject.dec, u)?;
    Ok(w.iter()
        .zip(&sup.members)
        .filter(|(c, _)| **c != 0)
        .map(|(&c, m)| WitnessTerm {
            coefficient: c,
            label: subject.eigenvalue_label(m.index),
            eigenvalue: m.value,
        })
        .collect())
}

fn lattice_certificate(lat: &RelationLattice, parity_even: bool, witness: Option<Vec<i64>>, terms: Vec<WitnessTerm>) -> Certificate {
    Certificate {
        method: lat.method.as_str().into(),
        rule: None,
        basis: lat.basis.clone(),
        parity_even: Some(parity_even),
        witness,
        witness_terms: terms,
        residual: Some(lat.residual),
    }
}

/// PGST between `(0,u)` and `(1,u)` in the `n`-fold blow-up, from the
/// relation lattice over `sigma_u`: PGST holds iff 0 is outside the support
/// and every relation has an even coefficient sum.
pub fn pgst(
    subject: &Subject,
    u: usize,
    n: usize,
    lattice: &RelationLattice,
    periodic: bool,
) -> Result<PgstVerdict> {
    if n < 2 {
        return param("twin analysis needs n ≥ 2 copies");
    }
    let sup = support(&subject.dec, u)?;
    if lattice.values.len() != sup.members.len() {
        return param("relation lattice does not match the support");
    }
    if n != 2 {
        return Ok(PgstVerdict::blocked(Obstruction::NoStrongCospectrality));
    }
    if sup.contains_zero {
        return Ok(PgstVerdict::blocked(Obstruction::ZeroInSupport));
    }
    let parity = parity_check(lattice);
    let (witness, terms) = if parity.even {
        (None, Vec::new())
    } else {
        let odd = |m: &[i64]| m.iter().sum::<i64>().rem_euclid(2) == 1;
        let w = minimal_relation(&lattice.basis, lattice.values.len(), odd).or(parity.witness);
        let terms = match &w {
            Some(w) => witness_terms(subject, u, w)?,
            None => Vec::new(),
        };
        (w, terms)
    };
    let occurs = parity.even;
    Ok(PgstVerdict {
        occurs,
        verdict: if occurs { Verdict::Yes } else { Verdict::No },
        proper: Some(occurs && !periodic),
        obstruction: (!occurs).then_some(Obstruction::OddRelation),
        certificate: Some(lattice_certificate(lattice, parity.even, witness, terms)),
        heuristic: lattice.heuristic,
        numeric_evidence: None,
    })
}

fn pair_vertex(g: &Graph, index: usize) -> PairVertex {
    PairVertex {
        index,
        label: g.label(index).to_string(),
    }
}

fn check_vertex(g: &Graph, u: usize) -> Result<()> {
    if u >= g.n_vertices() {
        return param(format!("vertex {u} out of range for {} vertices", g.n_vertices()));
    }
    Ok(())
}

/// Periodicity of `u` in the subject graph, or of its copies in a blow-up.
pub fn vertex_periodicity(subject: &Subject, u: usize, context: PeriodContext) -> Result<PeriodVerdict> {
    check_vertex(&subject.graph, u)?;
    periodicity(&form_support(&subject.dec, u)?, context)
}

/// Full report for the twin pair `(0,u)`, `(1,u)` of the `n`-fold blow-up.
pub fn analyze_twins(subject: &Subject, u: usize, n: usize, opts: &AnalysisOptions) -> Result<TransferReport> {
    check_vertex(&subject.graph, u)?;
    if n < 2 {
        return param("twin analysis needs n ≥ 2 copies");
    }
    let dec = &subject.dec;
    let m = subject.graph.n_vertices();
    let forms = form_support(dec, u)?;
    let period = periodicity(&forms, PeriodContext::Blowup(n))?;
    let sc = blowup_sc(dec, n, u)?;
    let pst_v = pst(dec, u, n)?;
    let lattice = relation_basis(&lattice_support(subject, u)?, &opts.lattice)?;
    let mut pgst_v = pgst(subject, u, n, &lattice, period.periodic)?;
    if let (true, Some(search)) = (pgst_v.occurs, &opts.evidence) {
        pgst_v.numeric_evidence = Some(max_twin_fidelity_search(dec, n, u, search)?);
    }
    let label = subject.graph.label(u);
    let mut report = TransferReport {
        graph: format!("blowup({n},{})", subject.describe()),
        mode: AnalysisMode::Twin,
        source: ReportSource::Spectral,
        copies: Some(n),
        vertex: Some(label.to_string()),
        pair: [
            PairVertex { index: u, label: format!("(0,{label})") },
            PairVertex { index: m + u, label: format!("(1,{label})") },
        ],
        strong_cospectral: sc,
        periodic: PeriodicSection::from(&period),
        pst: pst_v,
        pgst: pgst_v,
        consistency: Vec::new(),
    };
    let mut checks = logical_checks(&report);
    let terms = TwinTerms::new(dec, n, u)?;
    if let (true, Some(t)) = (report.pst.occurs, report.pst.time) {
        let f = terms.fidelity(t);
        checks.push(ConsistencyCheck::new(
            "pst-simulated",
            f >= 1.0 - FIDELITY_TOLERANCE,
            format!("fidelity {f} at t = {t}"),
        ));
        let z = terms.amplitude(t);
        let gamma = report.pst.phase.map(Phase::to_complex).unwrap_or_default();
        checks.push(ConsistencyCheck::new(
            "pst-phase",
            (z - gamma).norm() <= PHASE_TOLERANCE,
            format!("amplitude {z} against phase {gamma}"),
        ));
    }
    if let (true, Some(p)) = (report.periodic.occurs, report.periodic.period) {
        let r = terms.return_amplitude(p).norm();
        checks.push(ConsistencyCheck::new(
            "periodic-simulated",
            r >= 1.0 - FIDELITY_TOLERANCE,
            format!("|U(period)_(u,u)| = {r}"),
        ));
    }
    if n * m <= opts.cross_check_limit {
        let big = Subject::new(blow_up(&subject.graph, n)?)?;
        let direct = strong_cospectrality(&big.dec, u, m + u)?.strongly_cospectral;
        checks.push(ConsistencyCheck::new(
            "sc-matches-blowup",
            direct == sc,
            format!("shortcut {sc}, direct on the blow-up {direct}"),
        ));
        let exact = forms.iter().all(|v| matches!(&v.tag, crate::lattice::ValueTag::Form(f) if f.is_recognized()));
        if exact {
            let pair = analyze_pair_inner(&big, u, m + u, opts, false)?;
            let same_time = match (report.pst.exact_time, pair.pst.exact_time) {
                (Some(a), Some(b)) => a == b,
                (None, None) => true,
                _ => false,
            };
            let agree =
                pair.pst.occurs == report.pst.occurs && same_time && pair.pgst.occurs == report.pgst.occurs;
            checks.push(ConsistencyCheck::new(
                "pair-route-agrees",
                agree,
                format!(
                    "pair route: pst {} at {:?}, pgst {}",
                    pair.pst.occurs,
                    pair.pst.exact_time.map(|t| t.to_string()),
                    pair.pgst.verdict.as_str()
                ),
            ));
        }
    }
    report.consistency = checks;
    Ok(report)
}

/// Full report for an arbitrary pair `a`, `b` of the subject graph.
pub fn analyze_pair(subject: &Subject, a: usize, b: usize, opts: &AnalysisOptions) -> Result<TransferReport> {
    analyze_pair_inner(subject, a, b, opts, true)
}

/// Sublattice of relations with coefficient sum zero.
fn sum_zero_sublattice(basis: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let sums: Vec<i64> = basis.iter().map(|r| r.iter().sum()).collect();
    let kernel = integer_kernel(&IntegerMatrix::from_i64(sums.len(), &[sums])?);
    let combos = crate::lattice::hnf::to_i64_rows(&kernel)?;
    Ok(combos
        .iter()
        .map(|c| {
            let mut v = vec![0i64; basis[0].len()];
            for (ci, row) in c.iter().zip(basis) {
                for (x, r) in v.iter_mut().zip(row) {
                    *x += ci * r;
                }
            }
            v
        })
        .collect())
}

fn analyze_pair_inner(
    subject: &Subject,
    a: usize,
    b: usize,
    opts: &AnalysisOptions,
    with_checks: bool,
) -> Result<TransferReport> {
    check_vertex(&subject.graph, a)?;
    check_vertex(&subject.graph, b)?;
    let dec = &subject.dec;
    let sc = strong_cospectrality(dec, a, b)?;
    let forms = form_support(dec, a)?;
    let period = periodicity(&forms, PeriodContext::BaseGraph)?;
    let sup = support(dec, a)?;

    let (pst_v, pgst_v) = if let Some(signs) = &sc.signs {
        let flips: Vec<bool> = signs.iter().map(|&s| s != signs[0]).collect();
        let al = phase_alignment(&forms, &flips)?;
        let pst_v = match (al.aligned, al.time) {
            (true, Some(t)) => {
                let gamma = num_complex::Complex64::from_polar(signs[0] as f64, -sup.members[0].value * t);
                PstVerdict::at(t, al.exact, Phase::from(gamma))
            }
            _ => PstVerdict::blocked(Obstruction::PhaseMismatch),
        };
        let lattice = relation_basis(&lattice_support(subject, a)?, &opts.lattice)?;
        let sub = sum_zero_sublattice(&lattice.basis)?;
        let flipped_odd = |m: &[i64]| m.iter().zip(&flips).filter(|(_, &f)| f).map(|(x, _)| x).sum::<i64>().rem_euclid(2) == 1;
        let even = sub.iter().all(|m| !flipped_odd(m));
        let (witness, terms) = if even {
            (None, Vec::new())
        } else {
            let pred = |m: &[i64]| m.iter().sum::<i64>() == 0 && flipped_odd(m);
            let w = minimal_relation(&lattice.basis, lattice.values.len(), pred)
                .or_else(|| sub.iter().find(|m| flipped_odd(m)).cloned());
            let terms = match &w {
                Some(w) => witness_terms(subject, a, w)?,
                None => Vec::new(),
            };
            (w, terms)
        };
        let mut pgst_v = PgstVerdict {
            occurs: even,
            verdict: if even { Verdict::Yes } else { Verdict::No },
            proper: Some(even && !period.periodic),
            obstruction: (!even).then_some(Obstruction::OddRelation),
            certificate: Some(lattice_certificate(&lattice, even, witness, terms)),
            heuristic: lattice.heuristic || al.method == PeriodMethod::NumericRatio,
            numeric_evidence: None,
        };
        if let (true, Some(search)) = (even, &opts.evidence) {
            pgst_v.numeric_evidence = Some(max_fidelity_search(dec, a, b, search)?);
        }
        (pst_v, pgst_v)
    } else {
        (
            PstVerdict::blocked(Obstruction::NoStrongCospectrality),
            PgstVerdict::blocked(Obstruction::NoStrongCospectrality),
        )
    };

    let mut report = TransferReport {
        graph: subject.describe(),
        mode: AnalysisMode::Pair,
        source: ReportSource::Spectral,
        copies: None,
        vertex: None,
        pair: [pair_vertex(&subject.graph, a), pair_vertex(&subject.graph, b)],
        strong_cospectral: sc.strongly_cospectral,
        periodic: PeriodicSection::from(&period),
        pst: pst_v,
        pgst: pgst_v,
        consistency: Vec::new(),
    };
    if !with_checks {
        return Ok(report);
    }
    let mut checks = logical_checks(&report);
    if let (true, Some(t)) = (report.pst.occurs, report.pst.time) {
        let z = PairTerms::new(dec, a, b)?.amplitude(t);
        checks.push(ConsistencyCheck::new(
            "pst-simulated",
            z.norm_sqr() >= 1.0 - FIDELITY_TOLERANCE,
            format!("fidelity {} at t = {t}", z.norm_sqr()),
        ));
        let gamma = report.pst.phase.map(Phase::to_complex).unwrap_or_default();
        checks.push(ConsistencyCheck::new(
            "pst-phase",
            (z - gamma).norm() <= PHASE_TOLERANCE,
            format!("amplitude {z} against phase {gamma}"),
        ));
    }
    if let (true, Some(p)) = (report.periodic.occurs, report.periodic.period) {
        let r = PairTerms::new(dec, a, a)?.amplitude(p).norm();
        checks.push(ConsistencyCheck::new(
            "periodic-simulated",
            r >= 1.0 - FIDELITY_TOLERANCE,
            format!("|U(period)_(a,a)| = {r}"),
        ));
    }
    report.consistency = checks;
    Ok(report)
}
