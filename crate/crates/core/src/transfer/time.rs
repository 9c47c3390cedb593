use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::spectral::algebraic::squarefree_decompose;

/// A time `coeff * pi / sqrt(delta)` with `delta` square-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactTime {
    pub coeff: Rational64,
    pub delta: u64,
}

impl ExactTime {
    /// `coeff * pi / sqrt(radicand)`; the radicand is reduced to its
    /// square-free part.
    pub fn new(coeff: Rational64, radicand: u64) -> ExactTime {
        assert!(radicand > 0 && coeff.is_positive(), "exact times are positive");
        let (delta, c) = squarefree_decompose(radicand);
        ExactTime {
            coeff: coeff / Rational64::from_integer(c as i64),
            delta,
        }
    }

    pub fn pi_over(den: i64) -> ExactTime {
        ExactTime::new(Rational64::new(1, den), 1)
    }

    pub fn value(&self) -> f64 {
        let c = *self.coeff.numer() as f64 / *self.coeff.denom() as f64;
        c * std::f64::consts::PI / (self.delta as f64).sqrt()
    }

    pub fn scale(&self, k: Rational64) -> ExactTime {
        ExactTime {
            coeff: self.coeff * k,
            delta: self.delta,
        }
    }

    /// `self / other` when it is rational.
    pub fn ratio(&self, other: &ExactTime) -> Option<Rational64> {
        (self.delta == other.delta && !other.coeff.is_zero()).then(|| self.coeff / other.coeff)
    }
}

impl fmt::Display for ExactTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = (*self.coeff.numer(), *self.coeff.denom());
        let top = if p == 1 { "pi".to_string() } else { format!("{p}*pi") };
        let root = format!("sqrt({})", self.delta);
        match (q, self.delta) {
            (1, 1) => write!(f, "{top}"),
            (_, 1) => write!(f, "{top}/{q}"),
            (1, _) => write!(f, "{top}/{root}"),
            _ => write!(f, "{top}/({q}*{root})"),
        }
    }
}

impl Serialize for ExactTime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
