//! Phase alignment of support eigenvalues: periodicity, and the same question
//! with prescribed sign flips, which is perfect state transfer between a
//! strongly cospectral pair.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::time::ExactTime;
use crate::error::{param, Result};
use crate::lattice::{TaggedValue, ValueTag};
use crate::spectral::algebraic::{recognize_rational, squarefree_decompose};

/// Largest denominator accepted for a difference ratio on the numeric route.
pub const RATIO_DENOMINATOR_BOUND: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodContext {
    BaseGraph,
    /// Copies of a base vertex in the `n`-fold blow-up; the support is
    /// `n * sigma_u` together with 0.
    Blowup(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodMethod {
    Exact,
    NumericRatio,
}

impl PeriodMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            PeriodMethod::Exact => "exact",
            PeriodMethod::NumericRatio => "numeric-ratio",
        }
    }
}

/// Arithmetic type of the phase frequency `2 pi / period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SupportKind {
    IntegerSupport,
    SurdSupport { delta: u64 },
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodVerdict {
    pub periodic: bool,
    /// Absent for a periodic vertex whose support is a single eigenvalue:
    /// then `|U(t)_{u,u}| = 1` for every `t`.
    pub minimal_period: Option<f64>,
    pub exact_period: Option<ExactTime>,
    pub kind: SupportKind,
    pub method: PeriodMethod,
}

/// Smallest `t > 0` with `exp(-i (lambda_j - lambda_0) t) = (-1)^flip_j` for
/// every `j`, when one exists.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Alignment {
    pub aligned: bool,
    pub time: Option<f64>,
    pub exact: Option<ExactTime>,
    pub kind: SupportKind,
    pub method: PeriodMethod,
}

type Coords = BTreeMap<u64, Rational64>;

#[derive(Clone, Debug)]
struct Value {
    x: f64,
    coords: Option<Coords>,
}

fn coords_of(tag: &ValueTag) -> Option<Coords> {
    let ValueTag::Form(f) = tag else { return None };
    let c = f.coords()?;
    let mut m = Coords::new();
    if !c.rational.is_zero() {
        m.insert(1, c.rational);
    }
    if !c.irrational.is_zero() {
        *m.entry(c.delta).or_default() += c.irrational;
    }
    Some(m)
}

fn sub(a: &Coords, b: &Coords) -> Coords {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_default() -= *v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `a = q * b` for a rational `q`.
fn proportion(a: &Coords, b: &Coords) -> Option<Rational64> {
    let (k, bv) = b.iter().next()?;
    let q = a.get(k).copied().unwrap_or_default() / *bv;
    let keys = a.keys().chain(b.keys());
    for k in keys {
        let av = a.get(k).copied().unwrap_or_default();
        let bv = b.get(k).copied().unwrap_or_default();
        if av != q * bv {
            return None;
        }
    }
    Some(q)
}

fn kind_of_square(w2: Rational64) -> SupportKind {
    if !w2.is_positive() {
        return SupportKind::None;
    }
    let (delta, _) = squarefree_decompose((*w2.numer() as u64) * (*w2.denom() as u64));
    if delta == 1 {
        SupportKind::IntegerSupport
    } else {
        SupportKind::SurdSupport { delta }
    }
}

fn not_aligned(method: PeriodMethod) -> Alignment {
    Alignment {
        aligned: false,
        time: None,
        exact: None,
        kind: SupportKind::None,
        method,
    }
}

/// Given the ratios `q_j = D_j / D_ref` of the differences, decides alignment
/// and returns `(k, L, g)` with time `k pi L / (g |D_ref|)`.
fn ratio_alignment(ratios: &[Rational64], flips: &[bool]) -> Option<(i64, i64, i64)> {
    let l = ratios.iter().fold(1i64, |l, q| l.lcm(q.denom()));
    let p: Vec<i64> = ratios.iter().map(|q| (q * Rational64::from_integer(l)).to_integer()).collect();
    let g = p.iter().fold(0i64, |g, x| g.gcd(x));
    if !flips.iter().any(|&f| f) {
        return Some((2, l, g));
    }
    // odd multiples only; parity of p_j / g must match each flip
    p.iter()
        .zip(flips)
        .all(|(pj, &f)| ((pj / g).rem_euclid(2) == 1) == f)
        .then_some((1, l, g))
}

fn align_values(values: &[Value], flips: &[bool]) -> Result<Alignment> {
    if values.is_empty() || values.len() != flips.len() {
        return param("alignment needs one flip flag per support value");
    }
    if flips[0] {
        return param("the first support value is the phase reference and cannot be flipped");
    }
    let exact = values.iter().all(|v| v.coords.is_some());
    let method = if exact { PeriodMethod::Exact } else { PeriodMethod::NumericRatio };
    if values.len() == 1 {
        let kind = match &values[0].coords {
            Some(c) if c.len() <= 1 => match c.keys().next() {
                None | Some(1) => SupportKind::IntegerSupport,
                Some(&delta) => SupportKind::SurdSupport { delta },
            },
            _ => SupportKind::None,
        };
        return Ok(Alignment {
            aligned: true,
            time: None,
            exact: None,
            kind,
            method,
        });
    }
    let diffs: Vec<f64> = values[1..].iter().map(|v| v.x - values[0].x).collect();
    let r = (0..diffs.len())
        .max_by(|&a, &b| diffs[a].abs().total_cmp(&diffs[b].abs()).then(b.cmp(&a)))
        .unwrap();
    let d_ref = diffs[r].abs();
    let pi = std::f64::consts::PI;

    if exact {
        let base = values[0].coords.as_ref().unwrap();
        let dc: Vec<Coords> = values[1..].iter().map(|v| sub(v.coords.as_ref().unwrap(), base)).collect();
        let mut ratios = Vec::with_capacity(dc.len());
        for d in &dc {
            match proportion(d, &dc[r]) {
                Some(q) => ratios.push(q),
                None => return Ok(not_aligned(method)),
            }
        }
        let Some((k, l, g)) = ratio_alignment(&ratios, &flips[1..]) else {
            return Ok(not_aligned(method));
        };
        let time = k as f64 * pi * l as f64 / (g as f64 * d_ref);
        let (exact, kind) = if dc[r].len() == 1 {
            let (&delta, &c) = dc[r].iter().next().unwrap();
            let coeff = Rational64::new(k * l, g) / c.abs();
            let w2 = (Rational64::new(g, l) * c).pow(2) * Rational64::from_integer(delta as i64);
            (Some(ExactTime::new(coeff, delta)), kind_of_square(w2))
        } else {
            (None, SupportKind::None)
        };
        return Ok(Alignment {
            aligned: true,
            time: Some(time),
            exact,
            kind,
            method,
        });
    }

    let mut ratios = Vec::with_capacity(diffs.len());
    for d in &diffs {
        match recognize_rational(d / diffs[r], RATIO_DENOMINATOR_BOUND) {
            Some((p, q)) => ratios.push(Rational64::new(p, q)),
            None => return Ok(not_aligned(method)),
        }
    }
    let Some((k, l, g)) = ratio_alignment(&ratios, &flips[1..]) else {
        return Ok(not_aligned(method));
    };
    let omega = g as f64 * d_ref / l as f64;
    let kind = recognize_rational(omega * omega, RATIO_DENOMINATOR_BOUND)
        .map(|(p, q)| kind_of_square(Rational64::new(p, q)))
        .unwrap_or(SupportKind::None);
    Ok(Alignment {
        aligned: true,
        time: Some(k as f64 * pi / omega),
        exact: None,
        kind,
        method,
    })
}

fn to_values(values: &[TaggedValue]) -> Vec<Value> {
    values
        .iter()
        .map(|v| Value {
            x: v.value,
            coords: coords_of(&v.tag),
        })
        .collect()
}

/// Phase alignment over tagged support values. Values tagged with a
/// recognized algebraic form are handled exactly; any other value sends the
/// whole computation to the numeric-ratio route.
pub fn phase_alignment(values: &[TaggedValue], flips: &[bool]) -> Result<Alignment> {
    align_values(&to_values(values), flips)
}

pub fn periodicity(support: &[TaggedValue], context: PeriodContext) -> Result<PeriodVerdict> {
    if support.is_empty() {
        return param("periodicity needs a nonempty support");
    }
    let mut values = to_values(support);
    if let PeriodContext::Blowup(n) = context {
        if n < 2 {
            return param("blow-up context needs n ≥ 2");
        }
        let nq = Rational64::from_integer(n as i64);
        for v in &mut values {
            v.x *= n as f64;
            if let Some(c) = &mut v.coords {
                for x in c.values_mut() {
                    *x *= nq;
                }
            }
        }
        // zero joins the support of every copy
        if !values.iter().any(|v| v.x.abs() <= 1e-9 * (n as f64)) {
            values.push(Value {
                x: 0.0,
                coords: Some(Coords::new()),
            });
        }
    }
    let a = align_values(&values, &vec![false; values.len()])?;
    Ok(PeriodVerdict {
        periodic: a.aligned,
        minimal_period: a.time,
        exact_period: a.exact,
        kind: a.kind,
        method: a.method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::AlgebraicForm;
    use std::f64::consts::PI;

    fn surd(b: i64, delta: u64) -> TaggedValue {
        let f = if delta == 1 { AlgebraicForm::integer(b) } else { AlgebraicForm::Surd { b, delta } };
        TaggedValue::form(f.value(), f)
    }

    #[test]
    fn p5_middle() {
        let s = [surd(1, 3), surd(0, 1), surd(-1, 3)];
        let v = periodicity(&s, PeriodContext::BaseGraph).unwrap();
        assert!(v.periodic);
        assert!((v.minimal_period.unwrap() - 2.0 * PI / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(v.exact_period.unwrap().to_string(), "2*pi/sqrt(3)");
        assert_eq!(v.kind, SupportKind::SurdSupport { delta: 3 });
        let v = periodicity(&s, PeriodContext::Blowup(3)).unwrap();
        assert_eq!(v.exact_period.unwrap().to_string(), "2*pi/(3*sqrt(3))");
    }

    #[test]
    fn complete_graph_blowup() {
        // K4: {3, -1}; in the 2-fold blow-up {6, -2, 0}
        let s = [surd(3, 1), surd(-1, 1)];
        let v = periodicity(&s, PeriodContext::Blowup(2)).unwrap();
        assert_eq!(v.exact_period.unwrap().to_string(), "pi");
        assert_eq!(v.kind, SupportKind::IntegerSupport);
        assert_eq!(v.method, PeriodMethod::Exact);
    }

    #[test]
    fn mixed_surds_are_not_periodic() {
        let s = [surd(1, 2), surd(1, 3)];
        // any two eigenvalues align
        let two = periodicity(&s, PeriodContext::BaseGraph).unwrap();
        assert!(two.periodic && two.exact_period.is_none());
        let three = [surd(1, 2), surd(1, 3), surd(0, 1)];
        assert!(!periodicity(&three, PeriodContext::BaseGraph).unwrap().periodic);
        assert!(!periodicity(&s, PeriodContext::Blowup(2)).unwrap().periodic);
        assert!(periodicity(&s[..1], PeriodContext::Blowup(2)).unwrap().periodic);
        assert!(periodicity(&s[..1], PeriodContext::BaseGraph).unwrap().minimal_period.is_none());
    }

    #[test]
    fn numeric_route() {
        let s: Vec<TaggedValue> = [2.0, 0.0, -2.0].iter().map(|&x| TaggedValue::untagged(x)).collect();
        let v = periodicity(&s, PeriodContext::BaseGraph).unwrap();
        assert_eq!(v.method, PeriodMethod::NumericRatio);
        assert!((v.minimal_period.unwrap() - PI).abs() < 1e-12);
        assert_eq!(v.kind, SupportKind::IntegerSupport);
        let c7: Vec<TaggedValue> = (0..4).map(|k| TaggedValue::untagged(2.0 * (2.0 * PI * k as f64 / 7.0).cos())).collect();
        assert!(!periodicity(&c7, PeriodContext::BaseGraph).unwrap().periodic);
    }

    #[test]
    fn sign_flips() {
        // twin pair of the 2-fold blow-up of K2: {2, -2, 0}, 0 flipped
        let s = [surd(2, 1), surd(-2, 1), surd(0, 1)];
        let a = phase_alignment(&s, &[false, false, true]).unwrap();
        assert_eq!(a.exact.unwrap().to_string(), "pi/2");
        // K3 blow-up {4, -2, 0}: 4 - 0 and -2 - 0 have different 2-adic orders
        let s = [surd(4, 1), surd(-2, 1), surd(0, 1)];
        assert!(!phase_alignment(&s, &[false, false, true]).unwrap().aligned);
        assert!(phase_alignment(&s, &[true, false, false]).is_err());
    }
}
