//! Fundamental solutions of t^2 - D u^2 = 4 and the automorphs they generate.
//!
//! cargo run --example pell_automorphs [D ...]

use num_bigint::BigInt;
use quadlab::pell::{automorph_group, pell4_fundamental};
use quadlab::{AutomorphGroup, QuadForm};

fn main() -> quadlab::Result<()> {
    let mut deltas: Vec<BigInt> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if deltas.is_empty() {
        deltas = [5, 8, 13, 32, 61, 409].map(BigInt::from).to_vec();
    }
    for d in &deltas {
        let sol = pell4_fundamental(d)?;
        let proof = sol.verify_minimal()?;
        println!("D = {d}: T = {}, U = {}  ({proof:?})", sol.t, sol.u);
    }

    let q = QuadForm::new(1, 0, -2);
    if let AutomorphGroup::InfiniteCyclic { generator } = automorph_group(&q)? {
        println!("\nautomorphs of {q}, generator {generator}");
        for j in -2..=2 {
            let m = generator.pow(j);
            println!("  A^{j:<2} = {m}  fixes the form: {}", q.apply_transform(&m) == q);
        }
    }
    let circle = QuadForm::new(1, 0, 1);
    println!("\n{circle} has {:?} automorphs", automorph_group(&circle)?.finite_size());
    Ok(())
}
