//! Strong cospectrality, periodicity, perfect and pretty good state transfer
//! between twin copies in blow-ups, closed-form predictions for the catalogued
//! families, and cross-validation of the two against simulation.

pub mod cospectral;
pub mod decide;
pub mod periodic;
pub mod predict;
pub mod report;
pub mod target;
pub mod time;
pub mod validate;

pub use cospectral::{blowup_sc, strong_cospectrality, CospectralVerdict};
pub use periodic::{periodicity, phase_alignment, PeriodContext, PeriodMethod, PeriodVerdict, SupportKind};
pub use time::ExactTime;
pub use decide::{analyze_pair, analyze_twins, pgst, pst, vertex_periodicity, AnalysisOptions, Subject};
pub use report::*;
pub use predict::predict;
pub use validate::{analyze, cross_validate, AgreementRow, ValidationReport};
pub use target::{resolve_in, resolve_target, resolve_vertex, Target};
