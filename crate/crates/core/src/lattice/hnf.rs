//! Exact integer row reduction: Hermite normal form, integer kernels and
//! lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{param, Error, Result};

/// Dense matrix of arbitrary-precision integers, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<IntegerMatrix> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return param(format!("row of length {} in a matrix with {cols} columns", r.len()));
        }
        Ok(IntegerMatrix { cols, rows })
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Result<IntegerMatrix> {
        IntegerMatrix::new(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }
}

fn sub_multiple(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Brings `rows` to echelon form on the columns `0..limit` with unimodular row
/// operations and returns the pivot columns. Rows past the last pivot are zero
/// on those columns.
fn echelon(rows: &mut [Vec<BigInt>], limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..limit {
        if top == rows.len() {
            break;
        }
        loop {
            let best = (top..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[top][c]);
                let (head, tail) = rows.split_at_mut(r);
                sub_multiple(&mut tail[0], &q, &head[top]);
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][c].is_zero() {
            if rows[top][c].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -&*x;
                }
            }
            for r in 0..top {
                let q = rows[r][c].div_floor(&rows[top][c]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(top);
                    sub_multiple(&mut head[r], &q, &tail[0]);
                }
            }
            pivots.push(c);
            top += 1;
        }
    }
    pivots
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: positive
/// pivots, entries above a pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut work = rows.to_vec();
    let pivots = echelon(&mut work, width);
    work.truncate(pivots.len());
    work
}

/// A lattice basis of `{x in Z^k : M x = 0}` in Hermite normal form.
pub fn integer_kernel(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let (r, k) = (m.nrows(), m.ncols());
    let mut aug: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..r).map(|j| m.rows[j][i].clone()).collect();
            row.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let rank = echelon(&mut aug, r).len();
    let kernel: Vec<Vec<BigInt>> = aug.drain(rank..).map(|row| row[r..].to_vec()).collect();
    hermite_normal_form(&kernel)
}

/// Whether `v` lies in the lattice with Hermite-normal-form basis `hnf`.
pub fn in_lattice(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for row in hnf {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if v[..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = v[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        sub_multiple(&mut v, &q, row);
    }
    v.iter().all(Zero::is_zero)
}

pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    hermite_normal_form(rows).len()
}

pub fn to_i64_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::Numeric(format!("relation coefficient {x} exceeds 64 bits")))
                })
                .collect()
        })
        .collect()
}

pub fn from_i64_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}
