//! Apply the truncated operator to a sparse function and compare norms.
//!
//! cargo run --example operator_apply

use num_bigint::BigInt;
use quadlab::operator::{apply_operator, weighted_norm_estimate, LpExponent, SparseFunction, Window};
use quadlab::QuadForm;

fn main() -> quadlab::Result<()> {
    let q = QuadForm::new(1, 0, 1);
    let mut f = SparseFunction::delta(25, 1.0);
    f.insert(BigInt::from(13), 0.5);

    for (n, v) in apply_operator(&q, &f, 1.0, Window::new(-5, 5)?, 10)? {
        if v != 0.0 {
            println!("I f({n:>2}) = {v}");
        }
    }

    for p in [LpExponent::Finite(1.0), LpExponent::Finite(2.0), LpExponent::Infinity] {
        let r = weighted_norm_estimate(&q, &f, 1.0, p, Window::new(-10, 10)?, 10)?;
        println!(
            "p = {p}: window {}  exhaustive {:?}  identity {:?}",
            r.window_norm, r.exhaustive_norm, r.identity_value
        );
    }
    Ok(())
}
