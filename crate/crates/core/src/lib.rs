//! Continuous-time quantum walks on blow-up graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] builds labelled simple graphs (named families, blow-ups, cones,
//!   Cartesian products) and answers twin queries.
//! * [`expr`] is the small graph-expression language shared by the CLI and the
//!   browser demo.
//! * [`spectral`] computes eigenvalues, spectral idempotents, eigenvalue
//!   supports and exact algebraic forms of eigenvalues.
//! * [`walk`] evaluates `U(t) = exp(-itA)`, pair fidelities and time searches.
//! * [`lattice`] finds integer relations among support eigenvalues, exactly when
//!   the eigenvalues have known structure and by lattice reduction otherwise.
//! * [`transfer`] decides strong cospectrality, periodicity, perfect and pretty
//!   good state transfer, and holds the closed-form family predictor.

pub mod error;
pub mod expr;
pub mod graph;
pub mod lattice;
pub mod spectral;
pub mod transfer;
pub mod walk;

pub use error::{Error, Result};
pub use expr::GraphExpr;
pub use graph::{Family, Graph};
pub use spectral::{decompose, SpectralDecomposition};
