//! Certified lower bounds for the families that blow up.
//!
//! cargo run --release --example divergence_certificates

use quadlab::operator::{
    indefinite_log_family, jacobi_family, lp_sharpness_family, pell_log_counterexample,
    square_disc_zero_line, DivergenceCertificate,
};
use quadlab::QuadForm;

fn show(c: &DivergenceCertificate) {
    println!(
        "{:<15} J = {:<5} lower bound {:<10.6} predicted {:?} ({})  increasing: {}",
        c.family,
        c.index,
        c.partial_sum_lower_bound,
        c.predicted_growth.value,
        c.predicted_growth.description,
        c.is_strictly_increasing()
    );
}

fn main() -> quadlab::Result<()> {
    show(&square_disc_zero_line(&QuadForm::new(1, 3, 2), 1.0, 1000)?);
    show(&jacobi_family(1, 1000)?);
    show(&pell_log_counterexample(100)?);
    show(&indefinite_log_family(1, 12)?);
    show(&lp_sharpness_family(2.0, 10_000)?);
    Ok(())
}
