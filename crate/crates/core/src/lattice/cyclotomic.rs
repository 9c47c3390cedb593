//! Integer coordinates of `zeta^j + zeta^-j` in the power basis of the
//! cyclotomic field `Q(zeta_N)`.

use crate::error::{param, Result};

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Exact division of `num` by the monic polynomial `den` (ascending
/// coefficients). Panics on a nonzero remainder, which would be a bug here.
fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (k, &d) in den.iter().enumerate() {
            rem[i + k] -= c * d;
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    quot
}

/// `Phi_n(x)` in ascending coefficient order, from `x^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<i64>> {
    if n == 0 {
        return param("cyclotomic order must be positive");
    }
    if n > 10_000 {
        return param(format!("cyclotomic order {n} too large"));
    }
    let divs = divisors(n);
    let mut table: Vec<Vec<i64>> = Vec::with_capacity(divs.len());
    for (i, &d) in divs.iter().enumerate() {
        let mut p = vec![0i64; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        for (k, &e) in divs[..i].iter().enumerate() {
            if d % e == 0 {
                p = divide_exact(&p, &table[k]);
            }
        }
        table.push(p);
    }
    Ok(table.pop().unwrap())
}

pub fn euler_phi(n: u64) -> u64 {
    let (mut m, mut phi, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Reduces `sum_e c_e x^e` modulo the monic `modulus`.
pub fn reduce(poly: &[i64], modulus: &[i64]) -> Vec<i64> {
    let deg = modulus.len() - 1;
    let mut r = poly.to_vec();
    for i in (deg..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            for (k, &m) in modulus.iter().enumerate() {
                r[i - deg + k] -= c * m;
            }
        }
    }
    r.resize(deg, 0);
    r
}

/// Power-basis coordinates of `zeta_N^j + zeta_N^-j`, of length `phi(N)`.
pub fn cosine_coordinates(modulus_n: u64, j: u64, phi_n: &[i64]) -> Vec<i64> {
    let n = modulus_n as usize;
    let mut poly = vec![0i64; n.max(1)];
    poly[j as usize % n] += 1;
    poly[(n - j as usize % n) % n] += 1;
    reduce(&poly, phi_n)
}
