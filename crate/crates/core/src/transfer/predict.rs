//! Closed-form verdicts for the catalogued families. Nothing here touches an
//! eigensolver; graphs are built only to read labels and regularity.

use num_integer::Integer;
use num_rational::Rational64;

use super::report::*;
use super::target::Target;
use super::time::ExactTime;
use crate::error::{Error, Result};
use crate::expr::GraphExpr;
use crate::graph::{Family, Graph};
use crate::spectral::algebraic::{exact_sqrt, squarefree_decompose};
use crate::spectral::nu2;
use crate::transfer::periodic::SupportKind;

/// Periodicity of the copies of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Period {
    Never,
    /// Support is a single eigenvalue.
    Always,
    At(ExactTime),
}

/// Closed form for the copies of one base vertex, assuming two copies for
/// the transfer part.
#[derive(Clone, Debug)]
struct TwinForm {
    zero_in_support: bool,
    /// Meaningful only when 0 is outside the support.
    pst: std::result::Result<ExactTime, Obstruction>,
    pgst: Verdict,
    rule: String,
    period: Period,
}

/// `2 pi / (n g sqrt(delta))`: copies of a vertex whose support (with 0
/// joined) consists of multiples `b_j sqrt(delta)` with `gcd(b_j) = g`.
fn surd_period(n: usize, delta: u64, g: i64) -> Period {
    Period::At(ExactTime::new(Rational64::new(2, n as i64 * g), delta))
}

fn unsupported(what: impl std::fmt::Display) -> Error {
    Error::Unsupported(format!("{what}"))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

fn complete(m: usize, n: usize) -> TwinForm {
    if m == 1 {
        return TwinForm {
            zero_in_support: true,
            pst: Err(Obstruction::ZeroInSupport),
            pgst: Verdict::No,
            rule: "complete(1): support {0}".into(),
            period: Period::Always,
        };
    }
    let even = m % 2 == 0;
    TwinForm {
        zero_in_support: false,
        pst: if even { Ok(ExactTime::pi_over(2)) } else { Err(Obstruction::UnequalNu2) },
        pgst: if even { Verdict::Yes } else { Verdict::No },
        rule: format!("complete(m): PST at pi/2 iff m even (m = {m}); odd m has the relation (m-1) - (m-1) with odd sum"),
        period: surd_period(n, 1, 1),
    }
}

fn cycle(c: usize, n: usize) -> TwinForm {
    let zero = c % 4 == 0;
    let pst = if zero {
        Err(Obstruction::ZeroInSupport)
    } else if c == 3 || c == 6 {
        Err(Obstruction::UnequalNu2)
    } else {
        Err(Obstruction::NonSurdSupport)
    };
    let period = match c {
        3 | 6 => surd_period(n, 1, 1),
        4 => surd_period(n, 1, 2),
        _ => Period::Never,
    };
    TwinForm {
        zero_in_support: zero,
        pst,
        pgst: Verdict::No,
        rule: "cycle(n): no PGST for any n ≥ 3; 0 in every support when 4 | n".into(),
        period,
    }
}

fn path(p: usize, u: usize, n: usize) -> TwinForm {
    let label = u + 1;
    let zero = p % 2 == 1 && label % 2 == 1;
    let pst = if zero {
        Err(Obstruction::ZeroInSupport)
    } else if p == 2 {
        Ok(ExactTime::pi_over(2))
    } else if p == 3 {
        Ok(ExactTime::new(Rational64::new(1, 2), 2))
    } else {
        Err(Obstruction::NonSurdSupport)
    };
    let (mut t, mut r) = (0u32, p as u64 + 1);
    while r % 2 == 0 {
        r /= 2;
        t += 1;
    }
    let (pgst, rule) = if r == 1 {
        (Verdict::Yes, format!("path: n + 1 = 2^{t}"))
    } else if !is_prime(r) {
        (Verdict::No, format!("path: n + 1 = 2^{t} * {r} with {r} composite"))
    } else if t <= 1 {
        (Verdict::Yes, format!("path: n + 1 = 2^{t} * {r} with {r} prime"))
    } else if label % (1usize << (t - 1)) != 0 {
        (
            Verdict::No,
            format!("path: n + 1 = 2^{t} * {r}, vertex not a multiple of 2^{}", t - 1),
        )
    } else if p == 11 && label % 4 != 0 {
        (Verdict::No, "path(11), vertex 2, 6 or 10: relation θ5 - θ9 + θ11 = 0".into())
    } else if p == 11 {
        // 12 | 9u drops θ3, θ6, θ9; the positive support values 1, sqrt(3),
        // (sqrt(6) ± sqrt(2))/2 are independent over Q
        (Verdict::Yes, "path(11), vertex 4 or 8: only relations θj + θ(12-j) = 0".into())
    } else {
        (
            Verdict::ConjecturedNo,
            format!("path: n + 1 = 2^{t} * {r}, vertex a multiple of 2^{}; open case", t - 1),
        )
    };
    let period = match (p, label) {
        (1, _) => Period::Always,
        (2, _) => surd_period(n, 1, 1),
        (3, _) => surd_period(n, 2, 1),
        (5, 3) => surd_period(n, 3, 1),
        _ => Period::Never,
    };
    TwinForm {
        zero_in_support: zero,
        pst,
        pgst,
        rule,
        period,
    }
}

fn double_star(k: usize, l: usize, u: usize, n: usize) -> TwinForm {
    let zero = (u >= 2 && u < 2 + k && k >= 2) || (u >= 2 + k && l >= 2);
    let s = (k + l + 1) as i64;
    let d = s * s - 4 * (k * l) as i64;
    let (pst, pgst, rule, period) = match (exact_sqrt(d), exact_sqrt((k * l) as i64)) {
        (Some(root), Some(_)) => {
            // alpha^2, beta^2 are integers with a common square-free part
            let a2 = ((s + root) / 2) as u64;
            let b2 = ((s - root) / 2) as u64;
            let (delta, a) = squarefree_decompose(a2);
            let (_, b) = squarefree_decompose(b2);
            let g = (a as i64).gcd(&(b as i64));
            let odd = (a as i64 / g) % 2 == 1 && (b as i64 / g) % 2 == 1;
            let pst = if odd {
                Ok(ExactTime::new(Rational64::new(1, 2 * g), delta))
            } else {
                Err(Obstruction::UnequalNu2)
            };
            let rule = format!("double_star: alpha / beta = {}/{} rational", a as i64 / g, b as i64 / g);
            (pst, if odd { Verdict::Yes } else { Verdict::No }, rule, surd_period(n, delta, g))
        }
        (Some(_), None) => (
            Err(Obstruction::NonSurdSupport),
            Verdict::Yes,
            "double_star: k*l not a square, alpha / beta irrational".to_string(),
            Period::Never,
        ),
        (None, _) => (
            Err(Obstruction::NonSurdSupport),
            Verdict::Yes,
            "double_star: (k+l+1)^2 - 4kl not a square, alpha / beta irrational".to_string(),
            Period::Never,
        ),
    };
    TwinForm {
        zero_in_support: zero,
        pst: if zero { Err(Obstruction::ZeroInSupport) } else { pst },
        pgst,
        rule,
        period,
    }
}

fn subdivided_star(m: usize, u: usize, n: usize) -> TwinForm {
    let root = exact_sqrt(m as i64 + 1);
    let (delta, c) = squarefree_decompose(m as u64 + 1);
    if u == 0 {
        return TwinForm {
            zero_in_support: true,
            pst: Err(Obstruction::ZeroInSupport),
            pgst: Verdict::No,
            rule: "subdivided_star: centre support {0, ±sqrt(m+1)}".into(),
            period: surd_period(n, delta, c as i64),
        };
    }
    if u > m {
        let period = match (m, root) {
            (1, _) => surd_period(n, 2, 1),
            (_, Some(_)) => surd_period(n, 1, 1),
            _ => Period::Never,
        };
        return TwinForm {
            zero_in_support: true,
            pst: Err(Obstruction::ZeroInSupport),
            pgst: Verdict::No,
            rule: "subdivided_star: leaf support contains 0".into(),
            period,
        };
    }
    if m == 1 {
        return TwinForm {
            zero_in_support: false,
            pst: Ok(ExactTime::new(Rational64::new(1, 2), 2)),
            pgst: Verdict::Yes,
            rule: "subdivided_star(1) is path(3); middle vertex".into(),
            period: surd_period(n, 2, 1),
        };
    }
    match root {
        Some(r) if r % 2 == 1 => TwinForm {
            zero_in_support: false,
            pst: Ok(ExactTime::pi_over(2)),
            pgst: Verdict::Yes,
            rule: format!("subdivided_star: sqrt(m+1) = {r} odd"),
            period: surd_period(n, 1, 1),
        },
        Some(r) => TwinForm {
            zero_in_support: false,
            pst: Err(Obstruction::UnequalNu2),
            pgst: Verdict::No,
            rule: format!("subdivided_star: sqrt(m+1) = {r} even"),
            period: surd_period(n, 1, 1),
        },
        None => TwinForm {
            zero_in_support: false,
            pst: Err(Obstruction::NonSurdSupport),
            pgst: Verdict::Yes,
            rule: "subdivided_star: m+1 not a square".into(),
            period: Period::Never,
        },
    }
}

/// Apex of a cone over a `k`-regular graph on `m` vertices.
fn cone_apex(k: usize, m: usize, n: usize) -> TwinForm {
    let (k, m) = (k as i64, m as i64);
    if k == 0 {
        return TwinForm {
            zero_in_support: false,
            pst: Ok(ExactTime::new(Rational64::new(1, 2), m as u64)),
            pgst: Verdict::Yes,
            rule: format!("cone over {m} isolated vertices: PST at pi/(2 sqrt(m))"),
            period: Period::At(ExactTime::new(Rational64::new(2, n as i64), m as u64)),
        };
    }
    let d = k * k + 4 * m;
    match exact_sqrt(d) {
        Some(root) => {
            let s = root - k;
            let (lp, lm) = ((k + root) / 2, (k - root) / 2);
            let g = lp.gcd(&lm);
            let ok = nu2(2 * k).unwrap() > nu2(s).unwrap();
            TwinForm {
                zero_in_support: false,
                pst: if ok {
                    Ok(ExactTime::pi_over((2 * k).gcd(&s)))
                } else {
                    Err(Obstruction::UnequalNu2)
                },
                pgst: if ok { Verdict::Yes } else { Verdict::No },
                rule: format!("cone: k^2 + 4m = {root}^2, s = {s}, PST iff nu2(2k) > nu2(s)"),
                period: surd_period(n, 1, g),
            }
        }
        None => TwinForm {
            zero_in_support: false,
            pst: Err(Obstruction::NonSurdSupport),
            pgst: Verdict::Yes,
            rule: "cone: k^2 + 4m not a square".into(),
            period: Period::Never,
        },
    }
}

fn hypercube(d: usize, n: usize) -> TwinForm {
    let odd = d % 2 == 1;
    TwinForm {
        zero_in_support: !odd,
        pst: if odd { Ok(ExactTime::pi_over(2)) } else { Err(Obstruction::ZeroInSupport) },
        pgst: if odd { Verdict::Yes } else { Verdict::No },
        rule: "hypercube(d): odd integer eigenvalues iff d odd".into(),
        period: surd_period(n, 1, if odd { 1 } else { 2 }),
    }
}

fn twin_form(base: &GraphExpr, g: &Graph, u: usize, n: usize) -> Result<TwinForm> {
    let apex_only = |k: usize, m: usize| {
        if u == g.n_vertices() - 1 {
            Ok(cone_apex(k, m, n))
        } else {
            Err(unsupported(format!("only the apex of {base} is catalogued")))
        }
    };
    match base {
        GraphExpr::Family(f) => match *f {
            Family::Complete(m) => Ok(complete(m, n)),
            Family::Cycle(c) => Ok(cycle(c, n)),
            Family::Path(p) => Ok(path(p, u, n)),
            Family::DoubleStar(k, l) => Ok(double_star(k, l, u, n)),
            Family::SubdividedStar(m) => Ok(subdivided_star(m, u, n)),
            Family::Star(m) => apex_only(0, m),
            Family::Hypercube(d) => Ok(hypercube(d, n)),
            Family::Empty(_) => Ok(TwinForm {
                zero_in_support: true,
                pst: Err(Obstruction::ZeroInSupport),
                pgst: Verdict::No,
                rule: "empty graph: support {0}".into(),
                period: Period::Always,
            }),
            Family::CompleteBipartite(..) => Err(unsupported(format!("{base} is not catalogued"))),
        },
        GraphExpr::Cone(inner) => {
            let h = inner.build()?;
            match h.regular_degree() {
                Some(k) => apex_only(k, h.n_vertices()),
                None => Err(unsupported(format!("cone over the non-regular graph {inner}"))),
            }
        }
        _ => Err(unsupported(format!("{base} is not catalogued"))),
    }
}

/// Support of `u` as multiples `b_j sqrt(delta)`, for the vertices whose twin
/// copies admit PST.
fn pst_support(base: &GraphExpr, g: &Graph, u: usize) -> Option<(Vec<i64>, u64)> {
    let pm = |b: i64| vec![b, -b];
    match base {
        GraphExpr::Family(f) => match *f {
            Family::Complete(m) => Some((vec![m as i64 - 1, -1], 1)),
            Family::Path(2) => Some((pm(1), 1)),
            Family::Path(3) if u == 1 => Some((pm(1), 2)),
            Family::DoubleStar(k, l) if u < 2 => {
                let s = (k + l + 1) as i64;
                let root = exact_sqrt(s * s - 4 * (k * l) as i64)?;
                let (delta, a) = squarefree_decompose(((s + root) / 2) as u64);
                let (_, b) = squarefree_decompose(((s - root) / 2) as u64);
                Some((vec![a as i64, b as i64, -(b as i64), -(a as i64)], delta))
            }
            Family::SubdividedStar(1) if u == 1 => Some((pm(1), 2)),
            Family::SubdividedStar(m) if u >= 1 && u <= m => {
                let r = exact_sqrt(m as i64 + 1)?;
                Some((vec![r, 1, -1, -r], 1))
            }
            Family::Star(m) if u == m => Some((pm(1), m as u64)),
            Family::Hypercube(d) => Some(((0..=d as i64).map(|i| d as i64 - 2 * i).collect(), 1)),
            _ => None,
        },
        GraphExpr::Cone(inner) if u == g.n_vertices() - 1 => {
            let h = inner.build().ok()?;
            let (k, m) = (h.regular_degree()? as i64, h.n_vertices() as i64);
            if k == 0 {
                return Some((pm(1), m as u64));
            }
            let d = exact_sqrt(k * k + 4 * m)?;
            Some((vec![(k + d) / 2, (k - d) / 2], 1))
        }
        _ => None,
    }
}

fn period_section(p: Period) -> PeriodicSection {
    let (occurs, exact) = match p {
        Period::Never => (false, None),
        Period::Always => (true, None),
        Period::At(t) => (true, Some(t)),
    };
    PeriodicSection {
        occurs,
        period: exact.map(|t| t.value()),
        exact_period: exact,
        kind: match exact {
            Some(t) if t.delta == 1 => SupportKind::IntegerSupport,
            Some(t) => SupportKind::SurdSupport { delta: t.delta },
            None if occurs => SupportKind::IntegerSupport,
            None => SupportKind::None,
        },
        method: "closed-form".into(),
    }
}

fn pgst_section(verdict: Verdict, rule: String, obstruction: Option<Obstruction>, periodic: bool) -> PgstVerdict {
    let occurs = verdict.is_yes();
    PgstVerdict {
        occurs,
        verdict,
        proper: (verdict != Verdict::ConjecturedNo).then_some(occurs && !periodic),
        obstruction,
        certificate: Some(Certificate::closed_form(rule)),
        heuristic: false,
        numeric_evidence: None,
    }
}

fn twin_report(base: &GraphExpr, u: usize, n: usize) -> Result<TransferReport> {
    let g = base.build()?;
    if u >= g.n_vertices() {
        return Err(Error::Parameter(format!("vertex {u} out of range for {} vertices", g.n_vertices())));
    }
    let form = twin_form(base, &g, u, n)?;
    let periodic = period_section(form.period);
    let sc = n == 2 && !form.zero_in_support;
    let (pst, pgst) = if n != 2 {
        (
            PstVerdict::blocked(Obstruction::NoStrongCospectrality),
            pgst_section(Verdict::No, form.rule, Some(Obstruction::NoStrongCospectrality), periodic.occurs),
        )
    } else if form.zero_in_support {
        (
            PstVerdict::blocked(Obstruction::ZeroInSupport),
            pgst_section(Verdict::No, form.rule, Some(Obstruction::ZeroInSupport), periodic.occurs),
        )
    } else {
        let pst = match form.pst {
            Ok(t) => PstVerdict::at(t.value(), Some(t), Phase::minus_one()),
            Err(o) => PstVerdict::blocked(o),
        };
        let obstruction = (form.pgst == Verdict::No).then_some(Obstruction::OddRelation);
        (pst, pgst_section(form.pgst, form.rule, obstruction, periodic.occurs))
    };
    let label = g.label(u);
    let mut report = TransferReport {
        graph: format!("blowup({n},{base})"),
        mode: AnalysisMode::Twin,
        source: ReportSource::ClosedForm,
        copies: Some(n),
        vertex: Some(label.to_string()),
        pair: [
            PairVertex { index: u, label: format!("(0,{label})") },
            PairVertex { index: g.n_vertices() + u, label: format!("(1,{label})") },
        ],
        strong_cospectral: sc,
        periodic,
        pst,
        pgst,
        consistency: Vec::new(),
    };
    report.consistency = logical_checks(&report);
    Ok(report)
}

/// A PST pair of a factor: the minimal PST time, the period of the first
/// vertex, and the support phases `mu * time / pi`.
struct FactorPair {
    time: ExactTime,
    period: ExactTime,
    phases: Vec<Rational64>,
}

fn halves(values: impl Iterator<Item = i64>) -> Vec<Rational64> {
    values.map(|v| Rational64::new(v, 2)).collect()
}

/// PST data between the first and last vertices of a catalogued second factor.
fn factor_pair(x: &GraphExpr) -> Result<FactorPair> {
    match x {
        GraphExpr::Family(Family::Path(2)) => Ok(FactorPair {
            time: ExactTime::pi_over(2),
            period: ExactTime::pi_over(1),
            phases: halves([1, -1].into_iter()),
        }),
        GraphExpr::Family(Family::Path(3)) => Ok(FactorPair {
            time: ExactTime::new(Rational64::from_integer(1), 2),
            period: ExactTime::new(Rational64::from_integer(2), 2),
            phases: [1, 0, -1].into_iter().map(Rational64::from_integer).collect(),
        }),
        GraphExpr::Family(Family::Hypercube(d)) => Ok(FactorPair {
            time: ExactTime::pi_over(2),
            period: ExactTime::pi_over(1),
            phases: halves((0..=*d as i64).map(|i| *d as i64 - 2 * i)),
        }),
        GraphExpr::Cartesian(a, b) => {
            let (fa, fb) = (factor_pair(a)?, factor_pair(b)?);
            let (p, q) = odd_ratio(&fa.time, &fb.time)
                .ok_or_else(|| unsupported(format!("{x} has no PST between its first and last vertices")))?;
            let period = common_multiple(&fa.period, &fb.period)
                .ok_or_else(|| unsupported(format!("the first vertex of {x} is not periodic")))?;
            // time = q * t_a = p * t_b
            let (q, p) = (Rational64::from_integer(q), Rational64::from_integer(p));
            let mut phases: Vec<Rational64> =
                fa.phases.iter().flat_map(|&u| fb.phases.iter().map(move |&v| q * u + p * v)).collect();
            phases.sort();
            phases.dedup();
            Ok(FactorPair { time: fa.time.scale(q), period, phases })
        }
        _ => Err(unsupported(format!("{x} is not a catalogued product factor"))),
    }
}

/// `a / b = p / q` in lowest terms with `p` and `q` odd.
fn odd_ratio(a: &ExactTime, b: &ExactTime) -> Option<(i64, i64)> {
    let r = a.ratio(b)?;
    let (p, q) = (*r.numer(), *r.denom());
    (p % 2 != 0 && q % 2 != 0).then_some((p, q))
}

fn common_multiple(a: &ExactTime, b: &ExactTime) -> Option<ExactTime> {
    let r = a.ratio(b)?;
    Some(a.scale(Rational64::from_integer(*r.denom())))
}

/// Whether the product pair is strongly cospectral, given PST in both factors
/// with `tau_g / tau_x = ratio`: every coincidence `lambda + mu = lambda' + mu'`
/// must carry the same eigenvector sign on both sides.
fn product_sc(g: &[Rational64], x: &[Rational64], ratio: Option<Rational64>) -> bool {
    let Some(r) = ratio else { return true };
    let (p, q) = (Rational64::from_integer(*r.numer()), Rational64::from_integer(*r.denom()));
    let odd = |v: Rational64| v.is_integer() && v.to_integer().rem_euclid(2) == 1;
    // lambda - lambda' in units pi / tau_g against mu' - mu in units pi / tau_x
    !g.iter().any(|&a| {
        g.iter().any(|&b| {
            a != b && x.iter().any(|&c| x.iter().any(|&d| (a - b) * q == (d - c) * p && odd((a - b) + (d - c))))
        })
    })
}

fn product_report(factor: &GraphExpr, other: &GraphExpr, u: usize) -> Result<TransferReport> {
    let twin = twin_report(factor, u, 2)?;
    let no_pst = || unsupported(format!("copies of vertex {u} in blowup(2,{factor}) have no PST"));
    let tau_g = twin.pst.exact_time.ok_or_else(no_pst)?;
    let period_g = twin
        .periodic
        .exact_period
        .ok_or_else(|| unsupported("twin copies without a finite period"))?;
    let (coeffs, delta) = pst_support(factor, &factor.build()?, u).ok_or_else(no_pst)?;
    let (delta, c) = squarefree_decompose(delta);
    debug_assert_eq!(delta, tau_g.delta);
    let mut phases_g: Vec<Rational64> =
        coeffs.iter().map(|&b| Rational64::from_integer(2 * b * c as i64) * tau_g.coeff).collect();
    phases_g.push(Rational64::from_integer(0));
    let x = factor_pair(other)?;
    let expr = GraphExpr::cartesian(GraphExpr::blowup(2, factor.clone()), other.clone());
    let whole = expr.build()?;
    let (a, b) = Target::Product { factor: factor.clone(), other: other.clone(), u }.pair_indices()?;

    let period = common_multiple(&period_g, &x.period);
    let periodic = period_section(period.map_or(Period::Never, Period::At));
    let ratio = tau_g.ratio(&x.time);
    let sc = product_sc(&phases_g, &x.phases, ratio);
    let ratio_text = ratio.map_or("irrational".to_string(), |r| format!("{}/{}", r.numer(), r.denom()));
    let (pst, pgst) = if !sc {
        let rule = format!("product: tau_G / tau_X = {ratio_text}; eigenvalue sums collide with opposite signs");
        (
            PstVerdict::blocked(Obstruction::NoStrongCospectrality),
            pgst_section(Verdict::No, rule, Some(Obstruction::NoStrongCospectrality), periodic.occurs),
        )
    } else if let Some((_, q)) = odd_ratio(&tau_g, &x.time) {
        let t = tau_g.scale(Rational64::from_integer(q));
        let mut pst = PstVerdict::at(t.value(), Some(t), Phase::minus_one());
        // the phase combines both factors' phases; simulation reports it
        pst.phase = None;
        let rule = format!("product: tau_G / tau_X = {ratio_text}, both odd");
        (pst, pgst_section(Verdict::Yes, rule, None, periodic.occurs))
    } else if ratio.is_some() {
        let rule = format!("product: tau_G / tau_X = {ratio_text}, not both odd");
        (
            PstVerdict::blocked(Obstruction::PhaseMismatch),
            pgst_section(Verdict::No, rule, Some(Obstruction::PhaseMismatch), periodic.occurs),
        )
    } else {
        let rule = "product: tau_G / tau_X irrational".to_string();
        (
            PstVerdict::blocked(Obstruction::PhaseMismatch),
            pgst_section(Verdict::Yes, rule, None, periodic.occurs),
        )
    };
    let mut report = TransferReport {
        graph: expr.to_string(),
        mode: AnalysisMode::Pair,
        source: ReportSource::ClosedForm,
        copies: None,
        vertex: None,
        pair: [
            PairVertex { index: a, label: whole.label(a).to_string() },
            PairVertex { index: b, label: whole.label(b).to_string() },
        ],
        strong_cospectral: sc,
        periodic,
        pst,
        pgst,
        consistency: Vec::new(),
    };
    report.consistency = logical_checks(&report);
    Ok(report)
}

/// Closed-form report for a target in the catalogue.
pub fn predict(target: &Target) -> Result<TransferReport> {
    match target {
        Target::Twin { base, u, copies } => twin_report(base, *u, *copies),
        Target::Product { factor, other, u } => product_report(factor, other, *u),
        Target::Pair { expr, .. } => Err(unsupported(format!(
            "closed forms cover twin copies and catalogued products, not arbitrary pairs of {expr}"
        ))),
    }
}
