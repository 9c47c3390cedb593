//! Continuous-time walk `U(t) = exp(-itA) = sum_j exp(-i lambda_j t) E_j`.
//!
//! Pair amplitudes are evaluated from scalar sums over the spectral
//! decomposition, so time searches never form a matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{param, Result};
use crate::spectral::SpectralDecomposition;

pub fn transition_matrix(dec: &SpectralDecomposition, t: f64) -> DMatrix<Complex64> {
    let n = dec.n_vertices();
    let mut u = DMatrix::<Complex64>::zeros(n, n);
    for (lambda, e) in dec.eigenvalues().iter().zip(dec.idempotents()) {
        let phase = Complex64::from_polar(1.0, -lambda * t);
        u.zip_apply(e, |a, b| *a += phase * b);
    }
    u
}

/// `||U U* - I||_max`
pub fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
    let n = u.nrows();
    let p = u * u.adjoint() - DMatrix::<Complex64>::identity(n, n);
    p.iter().fold(0f64, |m, z| m.max(z.norm()))
}

/// The spectral terms `(lambda_j, (E_j)_{u,v})` that contribute to `U(t)_{u,v}`.
#[derive(Clone, Debug)]
pub struct PairTerms {
    terms: Vec<(f64, f64)>,
}

impl PairTerms {
    pub fn new(dec: &SpectralDecomposition, u: usize, v: usize) -> Result<PairTerms> {
        let n = dec.n_vertices();
        if u >= n || v >= n {
            return param(format!("vertex pair ({u}, {v}) out of range for {n} vertices"));
        }
        let terms = dec
            .eigenvalues()
            .iter()
            .zip(dec.idempotents())
            .map(|(&l, e)| (l, e[(u, v)]))
            .filter(|&(_, w)| w != 0.0)
            .collect();
        Ok(PairTerms { terms })
    }

    pub fn amplitude(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(l, w)| Complex64::from_polar(w, -l * t))
            .sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr()
    }
}

pub fn pair_amplitude(dec: &SpectralDecomposition, u: usize, v: usize, t: f64) -> Result<Complex64> {
    Ok(PairTerms::new(dec, u, v)?.amplitude(t))
}

pub fn pair_fidelity(dec: &SpectralDecomposition, u: usize, v: usize, t: f64) -> Result<f64> {
    Ok(PairTerms::new(dec, u, v)?.fidelity(t))
}

/// Amplitude between two copies of `u` in the `n`-fold blow-up, from the base
/// graph's decomposition: `(1/n) sum_j (exp(-i n lambda_j t) - 1) (E_j)_{u,u}`.
#[derive(Clone, Debug)]
pub struct TwinTerms {
    n: f64,
    terms: Vec<(f64, f64)>,
}

impl TwinTerms {
    pub fn new(dec: &SpectralDecomposition, n: usize, u: usize) -> Result<TwinTerms> {
        if n < 2 {
            return param("twin amplitude needs n ≥ 2 copies");
        }
        let mut terms = PairTerms::new(dec, u, u)?.terms;
        for term in &mut terms {
            term.0 *= n as f64;
        }
        Ok(TwinTerms { n: n as f64, terms })
    }

    pub fn amplitude(&self, t: f64) -> Complex64 {
        let s: Complex64 = self
            .terms
            .iter()
            .map(|&(l, w)| (Complex64::from_polar(1.0, -l * t) - 1.0) * w)
            .sum();
        s / self.n
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr()
    }

    /// `U_n(t)_{(c,u),(c,u)}`, which exceeds the twin amplitude by exactly 1.
    pub fn return_amplitude(&self, t: f64) -> Complex64 {
        self.amplitude(t) + 1.0
    }
}

pub fn blowup_twin_amplitude(dec: &SpectralDecomposition, n: usize, u: usize, t: f64) -> Result<Complex64> {
    Ok(TwinTerms::new(dec, n, u)?.amplitude(t))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchOptions {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
    pub depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            start: 0.0,
            end: 1e4,
            steps: 1_000_000,
            depth: 40,
        }
    }
}

impl SearchOptions {
    pub fn window(start: f64, end: f64) -> SearchOptions {
        SearchOptions {
            start,
            end,
            ..SearchOptions::default()
        }
    }

    pub fn with_steps(mut self, steps: usize) -> SearchOptions {
        self.steps = steps;
        self
    }

    fn check(&self) -> Result<()> {
        if !(self.start.is_finite() && self.end.is_finite()) || self.end < self.start || self.start < 0.0 {
            return param(format!("bad search window [{}, {}]", self.start, self.end));
        }
        if self.steps < 2 {
            return param("search needs steps ≥ 2");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_time: f64,
    pub best_fidelity: f64,
    pub grid_steps: usize,
    pub refine_depth: usize,
}

const CANDIDATES: usize = 16;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn grid_values<F: Fn(f64) -> f64 + Sync>(f: &F, opts: &SearchOptions) -> Vec<f64> {
    let h = (opts.end - opts.start) / (opts.steps - 1) as f64;
    let at = |k: usize| f(opts.start + k as f64 * h);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..opts.steps).into_par_iter().map(at).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..opts.steps).map(at).collect()
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, depth: usize) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..depth {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Grid scan followed by golden-section refinement around the best local
/// maxima of the grid. The result is independent of evaluation order.
pub fn maximize<F: Fn(f64) -> f64 + Sync>(f: F, opts: &SearchOptions) -> Result<SearchResult> {
    opts.check()?;
    if opts.end == opts.start {
        return Ok(SearchResult {
            best_time: opts.start,
            best_fidelity: f(opts.start),
            grid_steps: opts.steps,
            refine_depth: opts.depth,
        });
    }
    let values = grid_values(&f, opts);
    let h = (opts.end - opts.start) / (opts.steps - 1) as f64;
    let last = values.len() - 1;
    let mut peaks: Vec<usize> = (0..values.len())
        .filter(|&k| (k == 0 || values[k] >= values[k - 1]) && (k == last || values[k] >= values[k + 1]))
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(CANDIDATES);

    let mut best = (opts.start + peaks[0] as f64 * h, values[peaks[0]]);
    for &k in &peaks {
        let t = opts.start + k as f64 * h;
        let lo = (t - h).max(opts.start);
        let hi = (t + h).min(opts.end);
        let (tr, fr) = golden_max(&f, lo, hi, opts.depth);
        if fr > best.1 || (fr == best.1 && tr < best.0) {
            best = (tr, fr);
        }
    }
    Ok(SearchResult {
        best_time: best.0,
        best_fidelity: f(best.0),
        grid_steps: opts.steps,
        refine_depth: opts.depth,
    })
}

pub fn max_fidelity_search(
    dec: &SpectralDecomposition,
    u: usize,
    v: usize,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let terms = PairTerms::new(dec, u, v)?;
    maximize(|t| terms.fidelity(t), opts)
}

/// Search over the twin pair `(0,u), (1,u)` of the `n`-fold blow-up using only
/// the base decomposition.
pub fn max_twin_fidelity_search(
    dec: &SpectralDecomposition,
    n: usize,
    u: usize,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let terms = TwinTerms::new(dec, n, u)?;
    maximize(|t| terms.fidelity(t), opts)
}

pub fn fidelity_trace(
    dec: &SpectralDecomposition,
    u: usize,
    v: usize,
    start: f64,
    end: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    SearchOptions { start, end, steps, depth: 0 }.check()?;
    let terms = PairTerms::new(dec, u, v)?;
    let h = (end - start) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            let t = if k == steps - 1 { end } else { start + k as f64 * h };
            (t, terms.fidelity(t))
        })
        .collect())
}

/// Fixed 17-significant-digit positional rendering.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { format!("{:.16}", 0.0) } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    // log10 can land one off near powers of ten
    let exp = if x.abs() >= 10f64.powi(exp + 1) { exp + 1 } else { exp };
    let decimals = (16 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn trace_csv(trace: &[(f64, f64)]) -> String {
    let mut out = String::from("t,fidelity\n");
    for &(t, f) in trace {
        out.push_str(&format_sig17(t));
        out.push(',');
        out.push_str(&format_sig17(f));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blow_up, Family};
    use crate::spectral::decompose;
    use std::f64::consts::PI;

    #[test]
    fn identity_at_zero() {
        let d = decompose(&Family::Path(5).build().unwrap()).unwrap();
        let u = transition_matrix(&d, 0.0);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((u[(i, j)] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn k2_transfers_at_quarter_period() {
        let d = decompose(&Family::Path(2).build().unwrap()).unwrap();
        assert!((transition_matrix(&d, PI / 2.0)[(0, 1)].norm() - 1.0).abs() < 1e-12);
        assert!((pair_fidelity(&d, 0, 1, PI / 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn twin_amplitude_of_k4() {
        let k4 = Family::Complete(4).build().unwrap();
        let d = decompose(&k4).unwrap();
        let a = blowup_twin_amplitude(&d, 2, 0, PI / 2.0).unwrap();
        assert!((a - Complex64::new(-1.0, 0.0)).norm() < 1e-10, "{a}");
        assert_eq!(blowup_twin_amplitude(&d, 2, 0, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        let big = decompose(&blow_up(&k4, 2).unwrap()).unwrap();
        assert!((pair_amplitude(&big, 0, 4, PI / 2.0).unwrap() - a).norm() < 1e-10);
    }

    #[test]
    fn search_finds_known_peak() {
        let d = decompose(&Family::Path(2).build().unwrap()).unwrap();
        let r = max_fidelity_search(&d, 0, 1, &SearchOptions::window(0.0, 3.0).with_steps(31)).unwrap();
        assert!((r.best_time - PI / 2.0).abs() < 1e-6);
        assert!(r.best_fidelity > 1.0 - 1e-12);
        let r = max_fidelity_search(&d, 0, 1, &SearchOptions::window(0.0, 0.0)).unwrap();
        assert_eq!((r.best_time, r.best_fidelity), (0.0, 0.0));
        assert!(max_fidelity_search(&d, 0, 1, &SearchOptions::window(0.0, 1.0).with_steps(1)).is_err());
    }

    #[test]
    fn trace_shape_and_csv() {
        let d = decompose(&Family::Path(3).build().unwrap()).unwrap();
        let tr = fidelity_trace(&d, 1, 1, 0.0, 2.0, 5).unwrap();
        assert_eq!(tr.len(), 5);
        assert_eq!(tr[0].0, 0.0);
        assert!((tr[0].1 - 1.0).abs() < 1e-12);
        assert_eq!(tr[4].0, 2.0);
        let csv = trace_csv(&[(0.0, 1.0), (0.5, 0.125)]);
        assert_eq!(csv, "t,fidelity\n0.0000000000000000,1.0000000000000000\n0.50000000000000000,0.12500000000000000\n");
    }

    #[test]
    fn sig17_rendering() {
        assert_eq!(format_sig17(PI / 2.0), "1.5707963267948966");
        assert_eq!(format_sig17(0.25), "0.25000000000000000");
        assert_eq!(format_sig17(1000.0), "1000.0000000000000");
        assert_eq!(format_sig17(-12.5), "-12.500000000000000");
    }
}
