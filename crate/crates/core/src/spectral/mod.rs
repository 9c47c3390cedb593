//! Spectral decomposition of adjacency matrices into distinct eigenvalues and
//! orthogonal idempotents, eigenvalue supports, and the blow-up spectrum
//! identity check.
//!
//! Distinct eigenvalues are stored in descending order; the position of an
//! eigenvalue in that list is its identifier everywhere downstream.

pub mod algebraic;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{blow_up, Graph};

pub use algebraic::{nu2, recognize, AlgebraicForm, RecognitionOptions};

/// Default support threshold on `||E_j e_u||`.
pub const SUPPORT_THRESHOLD: f64 = 1e-8;
const GROUPING_TOLERANCE: f64 = 1e-8;

/// `A = sum_j lambda_j E_j` with `lambda_1 > ... > lambda_d`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    idempotents: Vec<DMatrix<f64>>,
    grouping_tolerance: f64,
    support_threshold: f64,
}

/// Max-norm residuals of the projector identities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecompositionResiduals {
    /// `||sum_j E_j - I||_max`
    pub completeness: f64,
    /// `max_{j,k} ||E_j E_k - delta_jk E_j||_max`
    pub orthogonality: f64,
    /// `||sum_j lambda_j E_j - A||_max`
    pub reconstruction: f64,
}

pub fn decompose(g: &Graph) -> Result<SpectralDecomposition> {
    decompose_matrix(&g.adjacency_matrix())
}

/// Decomposes a real symmetric matrix.
pub fn decompose_matrix(a: &DMatrix<f64>) -> Result<SpectralDecomposition> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::Parameter("need a nonempty square matrix".into()));
    }
    let max_iter = 1000 * n.max(10);
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, max_iter).ok_or_else(|| {
        Error::Numeric(format!(
            "symmetric eigensolver did not converge within {max_iter} iterations (n = {n})"
        ))
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let radius = eig.eigenvalues.iter().fold(0f64, |m, x| m.max(x.abs()));
    let tol = GROUPING_TOLERANCE * radius.max(1.0);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        let join = groups
            .last()
            .map(|g| eig.eigenvalues[*g.last().unwrap()] - eig.eigenvalues[i] <= tol)
            .unwrap_or(false);
        if join {
            groups.last_mut().unwrap().push(i);
        } else {
            groups.push(vec![i]);
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut multiplicities = Vec::with_capacity(groups.len());
    let mut idempotents = Vec::with_capacity(groups.len());
    for group in &groups {
        let mean = group.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / group.len() as f64;
        let mut e = DMatrix::zeros(n, n);
        for &i in group {
            let v = eig.eigenvectors.column(i);
            e += &v * v.transpose();
        }
        eigenvalues.push(mean);
        multiplicities.push(group.len());
        idempotents.push(e);
    }
    let dec = SpectralDecomposition {
        eigenvalues,
        multiplicities,
        idempotents,
        grouping_tolerance: tol,
        support_threshold: SUPPORT_THRESHOLD,
    };
    let residual = dec.reconstruction_residual(a);
    if residual > 1e-8 * radius.max(1.0) {
        return Err(Error::Numeric(format!(
            "decomposition residual ||sum lambda_j E_j - A||_max = {residual:e} exceeds tolerance"
        )));
    }
    Ok(dec)
}

impl SpectralDecomposition {
    pub fn n_vertices(&self) -> usize {
        self.idempotents[0].nrows()
    }

    /// Number of distinct eigenvalues.
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn idempotent(&self, j: usize) -> &DMatrix<f64> {
        &self.idempotents[j]
    }

    pub fn idempotents(&self) -> &[DMatrix<f64>] {
        &self.idempotents
    }

    pub fn grouping_tolerance(&self) -> f64 {
        self.grouping_tolerance
    }

    pub fn support_threshold(&self) -> f64 {
        self.support_threshold
    }

    pub fn with_support_threshold(mut self, threshold: f64) -> Self {
        self.support_threshold = threshold;
        self
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0f64, |m, x| m.max(x.abs()))
    }

    /// Index of the eigenvalue 0, if 0 is an eigenvalue.
    pub fn zero_index(&self) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|x| x.abs() <= self.grouping_tolerance)
    }

    /// All eigenvalues repeated by multiplicity, descending.
    pub fn eigenvalue_multiset(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&x, &m)| std::iter::repeat(x).take(m))
            .collect()
    }

    /// `||E_j e_u||`, computed from the column rather than the diagonal so that
    /// numerically vanishing columns stay at round-off level.
    pub fn column_norm(&self, j: usize, u: usize) -> f64 {
        self.idempotents[j].column(u).norm()
    }

    pub fn residuals(&self, a: &DMatrix<f64>) -> DecompositionResiduals {
        let n = self.n_vertices();
        let mut sum = DMatrix::<f64>::zeros(n, n);
        for e in &self.idempotents {
            sum += e;
        }
        let completeness = (sum - DMatrix::<f64>::identity(n, n)).amax();
        let mut orthogonality = 0f64;
        for (j, ej) in self.idempotents.iter().enumerate() {
            for (k, ek) in self.idempotents.iter().enumerate() {
                let mut p = ej * ek;
                if j == k {
                    p -= ej;
                }
                orthogonality = orthogonality.max(p.amax());
            }
        }
        DecompositionResiduals {
            completeness,
            orthogonality,
            reconstruction: self.reconstruction_residual(a),
        }
    }

    fn reconstruction_residual(&self, a: &DMatrix<f64>) -> f64 {
        let mut sum = -a.clone();
        for (x, e) in self.eigenvalues.iter().zip(&self.idempotents) {
            sum += e * *x;
        }
        sum.amax()
    }
}

/// One member of an eigenvalue support.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupportMember {
    /// Index into the decomposition's eigenvalue list.
    pub index: usize,
    pub value: f64,
    /// `(E_j)_{u,u} = ||E_j e_u||^2`
    pub mass: f64,
}

/// The eigenvalues `lambda` with `E_lambda e_u != 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenvalueSupport {
    pub vertex: usize,
    pub members: Vec<SupportMember>,
    pub contains_zero: bool,
}

impl EigenvalueSupport {
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.index).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.value).collect()
    }
}

pub fn support(dec: &SpectralDecomposition, u: usize) -> Result<EigenvalueSupport> {
    if u >= dec.n_vertices() {
        return Err(Error::Parameter(format!(
            "vertex {u} out of range for {} vertices",
            dec.n_vertices()
        )));
    }
    let zero = dec.zero_index();
    let members: Vec<SupportMember> = (0..dec.len())
        .filter(|&j| dec.column_norm(j, u) > dec.support_threshold)
        .map(|j| SupportMember {
            index: j,
            value: dec.eigenvalues[j],
            mass: dec.idempotents[j][(u, u)],
        })
        .collect();
    let contains_zero = zero.is_some_and(|z| members.iter().any(|m| m.index == z));
    Ok(EigenvalueSupport {
        vertex: u,
        members,
        contains_zero,
    })
}

/// One row of a printed spectrum or support.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenvalueEntry {
    pub index: usize,
    pub value: f64,
    /// Recognized closed form.
    pub form: Option<String>,
    pub multiplicity: usize,
    /// `(E_j)_{u,u}` for support rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
}

fn entry(dec: &SpectralDecomposition, j: usize, mass: Option<f64>) -> EigenvalueEntry {
    let x = dec.eigenvalues[j];
    let form = recognize(x, &RecognitionOptions::default());
    EigenvalueEntry {
        index: j,
        value: x,
        form: form.is_recognized().then(|| form.render()),
        multiplicity: dec.multiplicities[j],
        mass,
    }
}

/// Distinct eigenvalues with multiplicities and recognized forms.
pub fn spectrum_table(dec: &SpectralDecomposition) -> Vec<EigenvalueEntry> {
    (0..dec.len()).map(|j| entry(dec, j, None)).collect()
}

/// Support of `u` with recognized forms and masses.
pub fn support_table(dec: &SpectralDecomposition, u: usize) -> Result<Vec<EigenvalueEntry>> {
    Ok(support(dec, u)?
        .members
        .iter()
        .map(|m| entry(dec, m.index, Some(m.mass)))
        .collect())
}

/// Deviations between the two sides of `sigma(n.G) = n*sigma(G) + {0}` and
/// `sigma_(j,v)(n.G) = n*sigma_v(G) + {0}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlowupSpectrumReport {
    pub copies: usize,
    /// Max distance between the sorted eigenvalue multisets.
    pub spectrum_deviation: f64,
    /// Max distance between matched support values over all blow-up vertices;
    /// infinite when the support sizes differ.
    pub support_deviation: f64,
}

impl BlowupSpectrumReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.spectrum_deviation <= tol && self.support_deviation <= tol
    }
}

pub fn blowup_spectrum_check(g: &Graph, n: usize) -> Result<BlowupSpectrumReport> {
    if n < 2 {
        return Err(Error::Parameter("blow-up spectrum check needs n ≥ 2".into()));
    }
    let base = decompose(g)?;
    let big = decompose(&blow_up(g, n)?)?;
    let m = g.n_vertices();

    let mut predicted: Vec<f64> = base.eigenvalue_multiset().iter().map(|x| n as f64 * x).collect();
    predicted.extend(std::iter::repeat(0.0).take((n - 1) * m));
    predicted.sort_by(|a, b| b.total_cmp(a));
    let actual = big.eigenvalue_multiset();
    let spectrum_deviation = if predicted.len() == actual.len() {
        predicted.iter().zip(&actual).map(|(p, a)| (p - a).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };

    let mut support_deviation = 0f64;
    for v in 0..m {
        let mut want: Vec<f64> = support(&base, v)?.values().iter().map(|x| n as f64 * x).collect();
        if !want.iter().any(|x| x.abs() <= big.grouping_tolerance()) {
            want.push(0.0);
        }
        want.sort_by(|a, b| b.total_cmp(a));
        for c in 0..n {
            let got = support(&big, c * m + v)?.values();
            if got.len() != want.len() {
                support_deviation = f64::INFINITY;
                continue;
            }
            for (w, g) in want.iter().zip(&got) {
                support_deviation = support_deviation.max((w - g).abs());
            }
        }
    }
    Ok(BlowupSpectrumReport {
        copies: n,
        spectrum_deviation,
        support_deviation,
    })
}
