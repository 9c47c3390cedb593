use serde::Serialize;

use crate::error::{param, Result};
use crate::spectral::{support, SpectralDecomposition};

/// Vector comparison tolerance for `E e_u = +-E e_v`.
pub const COSPECTRAL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CospectralVerdict {
    pub strongly_cospectral: bool,
    /// `+1` or `-1` per eigenvalue of the common support, in support order.
    pub signs: Option<Vec<i8>>,
    /// Eigenvalue index at which the comparison fails.
    pub failure_witness: Option<usize>,
}

pub fn strong_cospectrality(dec: &SpectralDecomposition, u: usize, v: usize) -> Result<CospectralVerdict> {
    if u == v {
        return param("strong cospectrality needs two distinct vertices");
    }
    let su = support(dec, u)?.indices();
    let sv = support(dec, v)?.indices();
    let mut signs = Vec::with_capacity(su.len());
    let mut union: Vec<usize> = su.iter().chain(&sv).copied().collect();
    union.sort_unstable();
    union.dedup();
    for j in union {
        let e = dec.idempotent(j);
        let (cu, cv) = (e.column(u), e.column(v));
        let sign = if (cu - cv).norm() <= COSPECTRAL_TOLERANCE && su.contains(&j) && sv.contains(&j) {
            1
        } else if (cu + cv).norm() <= COSPECTRAL_TOLERANCE && su.contains(&j) && sv.contains(&j) {
            -1
        } else {
            return Ok(CospectralVerdict {
                strongly_cospectral: false,
                signs: None,
                failure_witness: Some(j),
            });
        };
        signs.push(sign);
    }
    Ok(CospectralVerdict {
        strongly_cospectral: true,
        signs: Some(signs),
        failure_witness: None,
    })
}

/// Copies of `u` in the `n`-fold blow-up are strongly cospectral exactly when
/// `n = 2` and 0 is outside the support of `u`.
pub fn blowup_sc(dec: &SpectralDecomposition, n: usize, u: usize) -> Result<bool> {
    if n < 1 {
        return param("blow-up needs n ≥ 1");
    }
    Ok(n == 2 && !support(dec, u)?.contains_zero)
}
