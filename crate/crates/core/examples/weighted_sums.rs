//! S_λ(k) = Σ |m|^(-λ) over the representations of k: exact for definite
//! forms, orbit walk with a certified tail for indefinite ones.
//!
//! cargo run --release --example weighted_sums

use num_bigint::BigInt;
use quadlab::operator::{bound_constant_probe, lemma_window_check, rep_weight_scan, rep_weight_sum, DEFAULT_TOL};
use quadlab::QuadForm;

fn main() -> quadlab::Result<()> {
    let pell = QuadForm::new(1, 0, -2);
    for k in [1, 2, 7, 14, 17] {
        let k = BigInt::from(k);
        let orbit = rep_weight_sum(&pell, &k, 1.0, DEFAULT_TOL)?;
        let scan = rep_weight_scan(&pell, &k, 1.0, 100_000)?;
        println!(
            "k = {k:>2}: orbit {:.15} (tail {:.1e}, walked to |m| {})  scan {:.15}",
            orbit.value, orbit.tail_bound, orbit.truncation, scan.value
        );
    }

    let circle = QuadForm::new(1, 0, 1);
    let s = rep_weight_sum(&circle, &BigInt::from(25), 1.0, DEFAULT_TOL)?;
    println!("\n{circle} at 25: {} ({})", s.value, s.method.tag());

    let w = lemma_window_check(&QuadForm::new(3, 1, -5), &BigInt::from(-9_999))?;
    println!("window |m| <= {} holds {} solutions", w.window, w.count);

    let probe = bound_constant_probe(&circle, 1.0, 1_000)?;
    println!("sup over |k| <= 1000: {} at k = {}", probe.sup, probe.argmax);
    Ok(())
}
