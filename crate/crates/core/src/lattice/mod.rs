//! Integer relations `sum_j m_j lambda_j = 0` among support eigenvalues.
//!
//! Values with known structure are handled exactly: quadratic irrationals by
//! their coordinates over `{1, sqrt(D1), sqrt(D2), ...}`, path and cycle
//! eigenvalues `zeta^j + zeta^-j` by their power-basis coordinates in a
//! cyclotomic field. Anything else goes through LLL and is labelled
//! heuristic.

pub mod cyclotomic;
pub mod hnf;
pub mod lll;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::spectral::AlgebraicForm;

pub use hnf::{integer_kernel, IntegerMatrix};

/// What is known about a value entering a relation search.
#[derive(Clone, Debug, PartialEq)]
pub enum ValueTag {
    Form(AlgebraicForm),
    /// `zeta_N^index + zeta_N^-index` for a primitive `N`-th root of unity.
    Cyclotomic { modulus: u64, index: u64 },
    Untagged,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaggedValue {
    pub value: f64,
    pub tag: ValueTag,
}

impl TaggedValue {
    pub fn untagged(value: f64) -> TaggedValue {
        TaggedValue { value, tag: ValueTag::Untagged }
    }

    pub fn form(value: f64, form: AlgebraicForm) -> TaggedValue {
        TaggedValue { value, tag: ValueTag::Form(form) }
    }

    pub fn cyclotomic(modulus: u64, index: u64) -> TaggedValue {
        let value = 2.0 * (2.0 * std::f64::consts::PI * index as f64 / modulus as f64).cos();
        TaggedValue { value, tag: ValueTag::Cyclotomic { modulus, index } }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeMethod {
    ExactSurd,
    ExactCyclotomic,
    Numeric,
}

impl LatticeMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeMethod::ExactSurd => "exact-surd",
            LatticeMethod::ExactCyclotomic => "exact-cyclotomic",
            LatticeMethod::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeOptions {
    /// Integer scale applied to the values before reduction.
    pub scale: f64,
    /// Upper bound on candidate coefficients; the effective bound also shrinks
    /// with the number of values so that chance near-relations at double
    /// precision are not accepted.
    pub max_coefficient: f64,
    pub verify_tolerance: f64,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            scale: 1e12,
            max_coefficient: 1e6,
            verify_tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationLattice {
    pub values: Vec<f64>,
    /// Hermite-normal-form basis; rows are primitive.
    pub basis: Vec<Vec<i64>>,
    pub method: LatticeMethod,
    /// Max `|sum_j m_j lambda_j|` over the basis.
    pub residual: f64,
    pub heuristic: bool,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        m.len() == self.values.len()
            && hnf::in_lattice(&hnf::from_i64_rows(&self.basis), &hnf::from_i64_rows(&[m.to_vec()])[0])
    }
}

fn residual(values: &[f64], m: &[i64]) -> f64 {
    values.iter().zip(m).map(|(x, &c)| x * c as f64).sum::<f64>().abs()
}

pub fn verify_relation(values: &[f64], coeffs: &[i64], tol: f64) -> Result<bool> {
    if values.len() != coeffs.len() {
        return param(format!("{} values but {} coefficients", values.len(), coeffs.len()));
    }
    Ok(residual(values, coeffs) <= tol)
}

pub fn relation_basis(values: &[TaggedValue], opts: &LatticeOptions) -> Result<RelationLattice> {
    if values.is_empty() {
        return param("relation search needs at least one value");
    }
    if let Some(v) = values.iter().find(|v| !v.value.is_finite()) {
        return param(format!("non-finite value {}", v.value));
    }
    let floats: Vec<f64> = values.iter().map(|v| v.value).collect();
    let all_cyclotomic = values.iter().all(|v| matches!(v.tag, ValueTag::Cyclotomic { .. }));
    let all_forms = values
        .iter()
        .all(|v| matches!(&v.tag, ValueTag::Form(f) if f.is_recognized()));
    let (basis, method) = if all_cyclotomic {
        (cyclotomic_relations(values)?, LatticeMethod::ExactCyclotomic)
    } else if all_forms {
        (surd_relations(values)?, LatticeMethod::ExactSurd)
    } else {
        (numeric_relations(&floats, opts)?, LatticeMethod::Numeric)
    };
    let basis = hnf::to_i64_rows(&basis)?;
    let residual = basis.iter().map(|m| residual(&floats, m)).fold(0.0, f64::max);
    Ok(RelationLattice {
        values: floats,
        basis,
        method,
        residual,
        heuristic: method == LatticeMethod::Numeric,
    })
}

/// Rows of rational coordinates, each scaled by the lcm of its denominators.
fn clear_denominators(rows: Vec<Vec<num_rational::Rational64>>) -> Vec<Vec<BigInt>> {
    rows.into_iter()
        .map(|row| {
            let l = row.iter().fold(1i64, |l, x| l.lcm(x.denom()));
            row.iter().map(|x| BigInt::from(x.numer() * (l / x.denom()))).collect()
        })
        .collect()
}

fn surd_relations(values: &[TaggedValue]) -> Result<Vec<Vec<BigInt>>> {
    let coords: Vec<_> = values
        .iter()
        .map(|v| match &v.tag {
            ValueTag::Form(f) => f.coords().ok_or_else(|| Error::Numeric("unrecognized form".into())),
            _ => unreachable!(),
        })
        .collect::<Result<_>>()?;
    let mut rows: BTreeMap<u64, Vec<num_rational::Rational64>> = BTreeMap::new();
    let k = values.len();
    rows.insert(1, vec![Zero::zero(); k]);
    for (j, c) in coords.iter().enumerate() {
        rows.get_mut(&1).unwrap()[j] += c.rational;
        if !c.irrational.is_zero() && c.delta > 1 {
            rows.entry(c.delta).or_insert_with(|| vec![Zero::zero(); k])[j] += c.irrational;
        }
    }
    let rows = clear_denominators(rows.into_values().collect());
    Ok(integer_kernel(&IntegerMatrix::new(k, rows)?))
}

fn cyclotomic_relations(values: &[TaggedValue]) -> Result<Vec<Vec<BigInt>>> {
    let tags: Vec<(u64, u64)> = values
        .iter()
        .map(|v| match v.tag {
            ValueTag::Cyclotomic { modulus, index } => (modulus, index),
            _ => unreachable!(),
        })
        .collect();
    if let Some(&(m, _)) = tags.iter().find(|t| t.0 == 0) {
        return param(format!("cyclotomic modulus {m} must be positive"));
    }
    let l = tags.iter().fold(1u64, |l, t| l.lcm(&t.0));
    let phi = cyclotomic::cyclotomic_polynomial(l)?;
    let k = values.len();
    let cols: Vec<Vec<i64>> = tags
        .iter()
        .map(|&(m, j)| cyclotomic::cosine_coordinates(l, j * (l / m), &phi))
        .collect();
    let width = phi.len() - 1;
    let rows: Vec<Vec<BigInt>> = (0..width)
        .map(|r| cols.iter().map(|c| BigInt::from(c[r])).collect())
        .collect();
    Ok(integer_kernel(&IntegerMatrix::new(k, rows)?))
}

/// Effective coefficient bound for `k` values at double precision.
pub fn effective_max_coefficient(k: usize, opts: &LatticeOptions) -> f64 {
    opts.max_coefficient.min(10f64.powf(10.0 / k.max(1) as f64)).max(1.0)
}

fn numeric_relations(values: &[f64], opts: &LatticeOptions) -> Result<Vec<Vec<BigInt>>> {
    let k = values.len();
    let radius = values.iter().fold(0f64, |m, x| m.max(x.abs()));
    let bound = effective_max_coefficient(k, opts);
    let rows: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut r: Vec<BigInt> = (0..k).map(|j| BigInt::from((i == j) as i64)).collect();
            let scaled = (values[i] * opts.scale).round();
            r.push(BigInt::from(scaled as i128));
            r
        })
        .collect();
    let reduced = lll::lll_reduce(&rows, 99, 100)?;
    let accepted: Vec<Vec<BigInt>> = reduced
        .into_iter()
        .map(|mut r| {
            r.truncate(k);
            r
        })
        .filter(|m| {
            let Some(c) = m.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>() else {
                return false;
            };
            let l1: f64 = c.iter().map(|x| x.unsigned_abs() as f64).sum();
            let max = c.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as f64;
            let tol = opts.verify_tolerance.min(1e-13 * radius.max(1.0) * l1);
            l1 > 0.0 && max <= bound && residual(values, &c) <= tol
        })
        .collect();
    // The relation module of real numbers is saturated, so the candidates
    // stand for the full lattice of their rational span.
    let orth = integer_kernel(&IntegerMatrix::new(k, accepted)?);
    Ok(integer_kernel(&IntegerMatrix::new(k, orth)?))
}

/// Outcome of the coefficient-sum parity test over a relation lattice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityCheck {
    /// Every relation has an even coefficient sum.
    pub even: bool,
    /// A relation with odd coefficient sum, of small support, when one exists.
    pub witness: Option<Vec<i64>>,
    pub heuristic: bool,
}

/// Coefficient-sum parity is linear mod 2, so checking the basis decides it
/// for every relation.
pub fn parity_check(lat: &RelationLattice) -> ParityCheck {
    let odd = |m: &[i64]| m.iter().sum::<i64>().rem_euclid(2) == 1;
    let mut candidates: Vec<Vec<i64>> = lat.basis.clone();
    for (i, a) in lat.basis.iter().enumerate() {
        for b in &lat.basis[i + 1..] {
            candidates.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            candidates.push(a.iter().zip(b).map(|(x, y)| x - y).collect());
        }
    }
    let key = |m: &Vec<i64>| {
        (
            m.iter().filter(|&&x| x != 0).count(),
            m.iter().map(|x| x.unsigned_abs()).sum::<u64>(),
        )
    };
    let witness = candidates
        .into_iter()
        .filter(|m| odd(m))
        .map(|m| {
            let first = m.iter().find(|&&x| x != 0).copied().unwrap_or(1);
            if first < 0 {
                m.iter().map(|x| -x).collect()
            } else {
                m
            }
        })
        .min_by(|a, b| key(a).cmp(&key(b)).then_with(|| b.cmp(a)));
    ParityCheck {
        even: witness.is_none(),
        witness,
        heuristic: lat.heuristic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::recognize;

    fn forms(values: &[f64]) -> Vec<TaggedValue> {
        values
            .iter()
            .map(|&x| TaggedValue::form(x, recognize(x, &Default::default())))
            .collect()
    }

    #[test]
    fn surd_examples() {
        let lat = relation_basis(&forms(&[2.0, -1.0]), &Default::default()).unwrap();
        assert_eq!(lat.basis, vec![vec![1, 2]]);
        assert_eq!(lat.method, LatticeMethod::ExactSurd);
        let r5 = 5f64.sqrt();
        let lat = relation_basis(&forms(&[r5, -r5, 1.0]), &Default::default()).unwrap();
        assert_eq!(lat.basis, vec![vec![1, 1, 0]]);
        assert!(parity_check(&lat).even);
        let phi = (1.0 + r5) / 2.0;
        let lat = relation_basis(&forms(&[phi, 1.0 - phi, 1.0]), &Default::default()).unwrap();
        assert_eq!(lat.basis, vec![vec![1, 1, -1]]);
        assert_eq!(parity_check(&lat).witness, Some(vec![1, 1, -1]));
    }

    #[test]
    fn cyclotomic_p11_relation() {
        let support: Vec<TaggedValue> = (1..=11).filter(|&j| j != 6).map(|j| TaggedValue::cyclotomic(24, j)).collect();
        let lat = relation_basis(&support, &Default::default()).unwrap();
        assert_eq!(lat.method, LatticeMethod::ExactCyclotomic);
        assert_eq!(lat.rank(), 6);
        assert!(lat.residual <= 1e-12);
        let mut m = vec![0i64; 10];
        // positions of theta_5, theta_9, theta_11 after dropping theta_6
        m[4] = 1;
        m[7] = -1;
        m[9] = 1;
        assert!(lat.contains(&m));
        assert!(!parity_check(&lat).even);
    }

    #[test]
    fn numeric_matches_exact() {
        let r2 = 2f64.sqrt();
        let r3 = 3f64.sqrt();
        let vals = [r2 + r3, r2, -r3, 1.0];
        let tagged: Vec<TaggedValue> = vals.iter().map(|&x| TaggedValue::untagged(x)).collect();
        let lat = relation_basis(&tagged, &Default::default()).unwrap();
        assert_eq!(lat.method, LatticeMethod::Numeric);
        assert!(lat.heuristic);
        assert_eq!(lat.basis, vec![vec![1, -1, 1, 0]]);
    }

    #[test]
    fn verify() {
        assert!(verify_relation(&[1.0, -1.0], &[1, 1], 1e-12).unwrap());
        assert!(!verify_relation(&[2f64.sqrt(), 1.0], &[1, -1], 1e-12).unwrap());
        assert!(verify_relation(&[1.0], &[1, 1], 1e-12).is_err());
    }

    #[test]
    fn parity_of_given_bases() {
        let lat = |basis: Vec<Vec<i64>>| RelationLattice {
            values: vec![],
            basis,
            method: LatticeMethod::ExactSurd,
            residual: 0.0,
            heuristic: false,
        };
        assert!(parity_check(&lat(vec![vec![1, 1, 0]])).even);
        assert!(!parity_check(&lat(vec![vec![1, -1, 1]])).even);
        assert!(parity_check(&lat(vec![])).even);
    }
}
