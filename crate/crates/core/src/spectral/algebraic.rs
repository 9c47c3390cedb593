//! Exact recognition of eigenvalues as rationals, surds `b*sqrt(D)` and
//! quadratic integers `(a + b*sqrt(D))/2`, plus the small number theory the
//! deciders need.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Exact classification of a real number.
///
/// Conventions: `den > 0` and `gcd(num, den) = 1`; `delta > 1` is square-free
/// for the irrational kinds; `b` is nonzero and may be negative. A value that
/// can be written as `b*sqrt(delta)` with integer `b` is always a `Surd`, never
/// a `Quadratic` with `a = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraicForm {
    Rational { num: i64, den: i64 },
    Surd { b: i64, delta: u64 },
    /// `(a + b*sqrt(delta)) / 2`
    Quadratic { a: i64, b: i64, delta: u64 },
    Unrecognized,
}

/// `r + s*sqrt(delta)` with rational coordinates; `delta = 1` means `s = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticCoords {
    pub rational: Rational64,
    pub irrational: Rational64,
    pub delta: u64,
}

impl AlgebraicForm {
    pub fn integer(n: i64) -> AlgebraicForm {
        AlgebraicForm::Rational { num: n, den: 1 }
    }

    pub fn value(&self) -> f64 {
        match *self {
            AlgebraicForm::Rational { num, den } => num as f64 / den as f64,
            AlgebraicForm::Surd { b, delta } => b as f64 * (delta as f64).sqrt(),
            AlgebraicForm::Quadratic { a, b, delta } => {
                (a as f64 + b as f64 * (delta as f64).sqrt()) / 2.0
            }
            AlgebraicForm::Unrecognized => f64::NAN,
        }
    }

    pub fn is_recognized(&self) -> bool {
        !matches!(self, AlgebraicForm::Unrecognized)
    }

    /// `Some((b, delta))` when the value is an integer multiple of a square
    /// root of a square-free integer; integers use `delta = 1`.
    pub fn as_surd(&self) -> Option<(i64, u64)> {
        match *self {
            AlgebraicForm::Rational { num, den: 1 } => Some((num, 1)),
            AlgebraicForm::Surd { b, delta } => Some((b, delta)),
            _ => None,
        }
    }

    pub fn coords(&self) -> Option<QuadraticCoords> {
        let zero = Rational64::from_integer(0);
        match *self {
            AlgebraicForm::Rational { num, den } => Some(QuadraticCoords {
                rational: Rational64::new(num, den),
                irrational: zero,
                delta: 1,
            }),
            AlgebraicForm::Surd { b, delta } => Some(QuadraticCoords {
                rational: zero,
                irrational: Rational64::from_integer(b),
                delta,
            }),
            AlgebraicForm::Quadratic { a, b, delta } => Some(QuadraticCoords {
                rational: Rational64::new(a, 2),
                irrational: Rational64::new(b, 2),
                delta,
            }),
            AlgebraicForm::Unrecognized => None,
        }
    }

    /// Short human-readable rendering, e.g. `2*sqrt(2)` or `(1+sqrt(5))/2`.
    pub fn render(&self) -> String {
        let root = |b: i64, d: u64| match b {
            1 => format!("sqrt({d})"),
            -1 => format!("-sqrt({d})"),
            _ => format!("{b}*sqrt({d})"),
        };
        match *self {
            AlgebraicForm::Rational { num, den: 1 } => num.to_string(),
            AlgebraicForm::Rational { num, den } => format!("{num}/{den}"),
            AlgebraicForm::Surd { b, delta } => root(b, delta),
            AlgebraicForm::Quadratic { a, b, delta } => {
                let r = root(b.abs(), delta);
                let sign = if b < 0 { '-' } else { '+' };
                format!("({a}{sign}{r})/2")
            }
            AlgebraicForm::Unrecognized => "?".into(),
        }
    }
}

/// Bounds used by [`recognize`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecognitionOptions {
    /// Largest denominator tried for rationals.
    pub q_max: i64,
    /// `|x^2 - N|` bound for the surd step.
    pub square_tolerance: f64,
    /// Bound on the coefficients of the monic quadratic `x^2 + c1 x + c0`.
    pub quadratic_bound: i64,
}

impl Default for RecognitionOptions {
    fn default() -> Self {
        RecognitionOptions {
            q_max: 10_000,
            square_tolerance: 1e-6,
            quadratic_bound: 10_000,
        }
    }
}

// A float eigenvalue of a small integer matrix is accurate to a few ulps of
// the spectral radius; these bounds sit well above that noise.
const RATIONAL_TOLERANCE: f64 = 1e-9;
// Rejects convergents that are merely good approximations of an irrational:
// for a genuine rational the next partial quotient is astronomically large.
const RATIONAL_GAP: f64 = 1e-4;
const QUADRATIC_TOLERANCE: f64 = 1e-11;

/// Classifies `x`, trying rational, then surd, then quadratic.
pub fn recognize(x: f64, opts: &RecognitionOptions) -> AlgebraicForm {
    if !x.is_finite() {
        return AlgebraicForm::Unrecognized;
    }
    if let Some((num, den)) = recognize_rational(x, opts.q_max) {
        return AlgebraicForm::Rational { num, den };
    }
    if let Some(f) = recognize_surd(x, opts.square_tolerance) {
        return f;
    }
    recognize_quadratic(x, opts.quadratic_bound).unwrap_or(AlgebraicForm::Unrecognized)
}

/// Continued-fraction search for `num/den` with `den <= q_max`.
pub fn recognize_rational(x: f64, q_max: i64) -> Option<(i64, i64)> {
    let tol = RATIONAL_TOLERANCE * x.abs().max(1.0);
    // convergents h/k of the continued fraction of x
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let (h, k) = (ai * h1 + h0, ai * k1 + k0);
        if k > q_max as i128 {
            return None;
        }
        let err = (x - h as f64 / k as f64).abs();
        // below the noise floor of x a small error proves nothing
        let noisy = err.max(64.0 * f64::EPSILON * x.abs());
        if err <= tol && (k as f64).powi(2) * noisy <= RATIONAL_GAP {
            return Some((i64::try_from(h).ok()?, k as i64));
        }
        let frac = r - a;
        if frac <= 0.0 {
            return None;
        }
        r = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h, k1, k);
    }
    None
}

fn recognize_surd(x: f64, tol: f64) -> Option<AlgebraicForm> {
    let sq = x * x;
    let n = sq.round();
    if n < 1.0 || n > 1e15 || (sq - n).abs() > tol {
        return None;
    }
    let (delta, c) = squarefree_decompose(n as u64);
    if delta == 1 {
        return None;
    }
    let b = if x < 0.0 { -(c as i64) } else { c as i64 };
    let form = AlgebraicForm::Surd { b, delta };
    ((form.value() - x).abs() <= tol).then_some(form)
}

fn recognize_quadratic(x: f64, bound: i64) -> Option<AlgebraicForm> {
    let candidates = std::iter::once(0).chain((1..=bound).flat_map(|c| [c, -c]));
    for c1 in candidates {
        let t = x * x + c1 as f64 * x;
        let c0 = -t.round();
        if c0.abs() > bound as f64 {
            continue;
        }
        let scale = (2.0 * x + c1 as f64).abs().max(1.0);
        if (t + c0).abs() > QUADRATIC_TOLERANCE * scale {
            continue;
        }
        let disc = c1 * c1 - 4 * c0 as i64;
        if disc <= 0 {
            continue;
        }
        let (delta, b) = squarefree_decompose(disc as u64);
        if delta == 1 {
            continue;
        }
        let a = -c1;
        let root = b as f64 * (delta as f64).sqrt();
        let plus = (a as f64 + root) / 2.0;
        let minus = (a as f64 - root) / 2.0;
        let b = if (plus - x).abs() <= (minus - x).abs() { b as i64 } else { -(b as i64) };
        return Some(canonical_quadratic(a, b, delta));
    }
    None
}

fn canonical_quadratic(a: i64, b: i64, delta: u64) -> AlgebraicForm {
    if a == 0 && b % 2 == 0 {
        AlgebraicForm::Surd { b: b / 2, delta }
    } else {
        AlgebraicForm::Quadratic { a, b, delta }
    }
}

/// Writes `n = c^2 * delta` with `delta` square-free; returns `(delta, c)`.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    assert!(n > 0, "square-free part of 0 is undefined");
    let (mut rest, mut delta, mut c) = (n, 1u64, 1u64);
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        c *= p.pow(e / 2);
        if e % 2 == 1 {
            delta *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (delta * rest, c)
}

pub fn is_perfect_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
    }
}

/// Exact integer square root of a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|&s| s >= 0 && s * s == n)
}

/// 2-adic valuation: the largest `e` with `2^e | b`.
pub fn nu2(b: i64) -> Result<u32> {
    if b == 0 {
        return param("ν₂ is undefined for 0");
    }
    Ok(b.trailing_zeros())
}

/// Greatest common divisor of a list of rationals: the largest rational `g`
/// such that every entry is an integer multiple of `g`. Zeros are ignored.
pub fn rational_gcd(values: &[Rational64]) -> Option<Rational64> {
    let nonzero: Vec<&Rational64> = values.iter().filter(|v| **v != Rational64::from_integer(0)).collect();
    if nonzero.is_empty() {
        return None;
    }
    let num = nonzero.iter().fold(0i64, |g, v| g.gcd(v.numer()));
    let den = nonzero.iter().fold(1i64, |l, v| l.lcm(v.denom()));
    Some(Rational64::new(num, den))
}
