//! Empirical suprema of `S_λ(k)` over `1 <= |k| <= K`.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::sums::{rep_weight_sum, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::forms::{FormClass, QuadForm};

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub form: QuadForm,
    pub lambda: f64,
    pub max_k: u64,
    pub sup: f64,
    pub argmax: i64,
    /// Tail bound of the sum at the argmax.
    pub tail_bound: f64,
}

/// Orders candidates by value, then by smaller `|k|`, then positive `k`.
fn better(a: (f64, i64, f64), b: (f64, i64, f64)) -> (f64, i64, f64) {
    let key = |x: &(f64, i64, f64)| (x.1.unsigned_abs(), x.1 < 0);
    match a.0.partial_cmp(&b.0) {
        Some(std::cmp::Ordering::Greater) => a,
        Some(std::cmp::Ordering::Less) => b,
        _ => {
            if key(&a) <= key(&b) {
                a
            } else {
                b
            }
        }
    }
}

/// The largest `S_λ(k)` over `1 <= |k| <= K` and the `k` attaining it.
/// Workers evaluate `k` independently; the reduction is order independent.
pub fn bound_constant_probe(q: &QuadForm, lambda: f64, max_k: u64) -> Result<ProbeReport> {
    if let FormClass::SquareDiscriminant { .. } = q.classify() {
        return Err(Error::unsupported(q, "probes need a nonsquare discriminant"));
    }
    if max_k == 0 {
        return Err(Error::domain("K must be at least 1"));
    }
    let k_max = i64::try_from(max_k).map_err(|_| Error::domain("K is too large"))?;
    let best = (1..=k_max)
        .into_par_iter()
        .flat_map_iter(|k| [k, -k])
        .map(|k| {
            rep_weight_sum(q, &BigInt::from(k), lambda, DEFAULT_TOL).map(|r| (r.value, k, r.tail_bound))
        })
        .try_reduce(|| (f64::NEG_INFINITY, i64::MAX, 0.0), |a, b| Ok(better(a, b)))?;
    Ok(ProbeReport {
        form: q.clone(),
        lambda,
        max_k,
        sup: best.0,
        argmax: best.1,
        tail_bound: best.2,
    })
}
