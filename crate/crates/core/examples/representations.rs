//! Enumerate representations of k, check them against a brute-force scan and
//! list their congruence classes.
//!
//! cargo run --example representations [a b c k]

use num_bigint::BigInt;
use quadlab::representations::{brute_force_reps, enumerate_reps_bounded, n_bound, rep_classes};
use quadlab::QuadForm;

fn main() -> quadlab::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (q, k) = match args[..] {
        [a, b, c, k] => (QuadForm::new(a, b, c), BigInt::from(k)),
        _ => (QuadForm::new(1, 0, -2), BigInt::from(7)),
    };
    let max_m = 200;

    let reps = enumerate_reps_bounded(&q, &k, max_m)?;
    println!("{q} = {k} with 1 <= |m| <= {max_m}: {} solutions", reps.len());
    for r in reps.iter().take(8) {
        println!("  ({}, {})  gcd {}", r.m, r.n, r.g);
    }

    // the oracle also sees m = 0, so drop it before comparing
    let nmax = n_bound(&q, &k, max_m).try_into().unwrap_or(u64::MAX).min(100_000);
    let oracle: Vec<_> = brute_force_reps(&q, &k, max_m, nmax)
        .into_iter()
        .filter(|r| r.m != BigInt::from(0))
        .collect();
    println!("brute force agrees: {}", oracle == reps);

    println!("\ncongruence classes:");
    for cls in rep_classes(&q, &k)? {
        let w = cls.witness.map(|w| w.to_string()).unwrap_or_else(|| "empty".into());
        println!("  g = {}  u = {}  witness {w}", cls.g, cls.base.u);
    }
    Ok(())
}
