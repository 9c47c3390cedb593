//! Integral LLL reduction with exact Gram-Schmidt data (`d_i`, `lambda_ij`),
//! after Cohen, "A Course in Computational Algebraic Number Theory", 2.6.7.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<BigInt>()
}

/// Nearest integer to `a / b` for `b > 0`, ties rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

struct State {
    b: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl State {
    // 1-based indices throughout, d[0] = 1.
    fn red(&mut self, k: usize, l: usize) {
        let two_lam: BigInt = &self.lam[k][l] * 2;
        if two_lam.abs() <= self.d[l] {
            return;
        }
        let q = round_div(&self.lam[k][l], &self.d[l]);
        let bl = self.b[l].clone();
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lam[k][l] -= &q * &self.d[l];
        for i in 1..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, k_max: usize) {
        self.b.swap(k, k - 1);
        for j in 1..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let big = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=k_max {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&big * &t + &lam * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = big;
    }
}

/// LLL-reduces linearly independent integer rows with parameter
/// `delta = delta_num / delta_den`.
pub fn lll_reduce(rows: &[Vec<BigInt>], delta_num: i64, delta_den: i64) -> Result<Vec<Vec<BigInt>>> {
    let n = rows.len();
    if n <= 1 {
        return Ok(rows.to_vec());
    }
    let mut s = State {
        b: std::iter::once(Vec::new()).chain(rows.iter().cloned()).collect(),
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n + 1]; n + 1],
    };
    s.d[0] = BigInt::from(1);
    s.d[1] = dot(&s.b[1], &s.b[1]);
    if s.d[1].is_zero() {
        return Err(Error::Numeric("LLL input rows are linearly dependent".into()));
    }
    let (p, q) = (BigInt::from(delta_num), BigInt::from(delta_den));
    let (mut k, mut k_max) = (2usize, 1usize);
    while k <= n {
        if k > k_max {
            k_max = k;
            for j in 1..=k {
                let mut u = dot(&s.b[k], &s.b[j]);
                for i in 1..j {
                    u = (&s.d[i] * &u - &s.lam[k][i] * &s.lam[j][i]) / &s.d[i - 1];
                }
                if j < k {
                    s.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::Numeric("LLL input rows are linearly dependent".into()));
                    }
                    s.d[k] = u;
                }
            }
        }
        loop {
            s.red(k, k - 1);
            let lhs = &q * &s.d[k] * &s.d[k - 2];
            let rhs = &p * &s.d[k - 1] * &s.d[k - 1] - &q * &s.lam[k][k - 1] * &s.lam[k][k - 1];
            if lhs < rhs {
                s.swap(k, k_max);
                k = (k - 1).max(2);
            } else {
                break;
            }
        }
        for l in (1..k - 1).rev() {
            s.red(k, l);
        }
        k += 1;
    }
    s.b.remove(0);
    Ok(s.b)
}
