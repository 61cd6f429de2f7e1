//! Shock-tube setup, run orchestration and error analysis.

mod config;
mod convergence;
mod norms;
mod run;
mod setup;

pub use config::{RunConfig, DEFAULT_WALL_LAYERS};
pub use convergence::{convergence_study, fit_order, ConvergenceStudy, DEFAULT_SIZES};
pub use norms::{detect_contact, error_norms, plateau_deviation, smooth_mask, FieldErrors, Norms};
pub use run::{run, ConservedSample, RunReport, MASK_BUFFER_SPACINGS};
pub use setup::{setup_sod, side_counts};
