//! Square-root counts Γ_t(s) and the congruence u^2 = D (mod 4|k|).
//!
//! cargo run --example gamma_congruence

use num_bigint::BigInt;
use quadlab::representations::{gamma, solve_congruence, stratified_congruence_count};

fn main() -> quadlab::Result<()> {
    let b = BigInt::from;
    for (t, s) in [(8, 7), (8, 17), (8, 119), (0, 49), (-4, 25), (5, 12)] {
        println!("Gamma_{t}({s}) = {}", gamma(&b(t), &b(s))?);
    }

    println!();
    for sol in solve_congruence(&b(-4), &b(65))? {
        println!("u = {:>3}  companion form {}", sol.u, sol.form());
    }

    // with the gcd strata the count grows like the square of the exponent
    println!();
    for j in 0..4u32 {
        let k = BigInt::from(119).pow(2 * j + 1);
        println!("k = 119^{}: {} solutions", 2 * j + 1, stratified_congruence_count(&b(8), &k)?);
    }
    Ok(())
}
