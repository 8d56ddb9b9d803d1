//! Operator-side quantities: representation sums, truncated application,
//! window checks, probes and divergence certificates.

mod apply;
mod certificates;
mod function;
mod probe;
mod sums;

pub use apply::{apply_kernel, apply_operator, exhaustive_values, weighted_norm_estimate, NormReport, Window};
pub use certificates::{
    indefinite_log_family, jacobi_family, lp_sharpness_family, pell_log_counterexample,
    square_disc_zero_line, CertificateTerm, DivergenceCertificate, Growth,
};
pub use function::{FamilyTag, Kernel, LpExponent, SparseFunction};
pub use probe::{bound_constant_probe, ProbeReport};
pub use sums::{
    definite_m_bound, lemma_window, lemma_window_check, orbit_points, rep_weight_scan,
    rep_weight_sum, rep_weight_sum_beyond, LemmaCheckReport, LemmaChecker, SumMethod, SumReport,
    DEFAULT_TOL,
};
