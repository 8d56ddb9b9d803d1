//! Truncated application `I_λ f(n) = Σ_{1 <= |m| <= M} f(q(m, n)) |m|^(-λ)`
//! and window norms of the result.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::function::{Kernel, LpExponent, SparseFunction};
use super::sums::{definite_m_bound, rep_weight_sum, DEFAULT_TOL};
use crate::arith::{inverse_power, CompensatedSum};
use crate::error::{Error, Result};
use crate::forms::{FormClass, QuadForm};
use crate::representations::{enumerate_reps_bounded, m_order, order_key};

/// Inclusive range of `n` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!("empty window {lo}:{hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn single(n: i64) -> Self {
        Window { lo: n, hi: n }
    }
}

/// Evaluates `q(m, n)` in machine words when the coefficients allow it.
struct Evaluator {
    small: Option<[i128; 3]>,
    q: QuadForm,
}

impl Evaluator {
    fn new(q: &QuadForm) -> Self {
        let limit = BigInt::from(1u64 << 40);
        let small = if [&q.a, &q.b, &q.c].iter().all(|x| x.abs() < limit) {
            q.to_i128()
        } else {
            None
        };
        Evaluator { small, q: q.clone() }
    }

    fn lookup(&self, f: &SparseFunction, m: i64, n: i64) -> f64 {
        match self.small {
            // |m|, |n| < 2^42 keeps every product below 2^126
            Some([a, b, c]) if m.unsigned_abs() < 1 << 42 && n.unsigned_abs() < 1 << 42 => {
                let (m, n) = (m as i128, n as i128);
                f.get_i128(a * m * m + b * m * n + c * n * n)
            }
            _ => f.get(&self.q.eval(&BigInt::from(m), &BigInt::from(n))),
        }
    }
}

/// `I f(n)` for every `n` in the window with the kernel `w`, summed in the
/// order `m = 1, -1, 2, -2, ...`.
pub fn apply_kernel(
    q: &QuadForm,
    f: &SparseFunction,
    kernel: Kernel,
    window: Window,
    max_m: u64,
) -> Result<Vec<(i64, f64)>> {
    if max_m == 0 {
        return Err(Error::domain("max-m must be at least 1"));
    }
    let eval = Evaluator::new(q);
    let weights: Vec<f64> = m_order(max_m).map(|m| kernel.weight_i64(m)).collect();
    Ok((window.lo..=window.hi)
        .into_par_iter()
        .map(|n| {
            let mut s = CompensatedSum::new();
            if !f.is_empty() {
                for (m, w) in m_order(max_m).zip(&weights) {
                    let v = eval.lookup(f, m, n);
                    if v != 0.0 {
                        s.add(v * w);
                    }
                }
            }
            (n, s.value())
        })
        .collect())
}

/// [`apply_kernel`] with the power kernel `|m|^(-λ)`.
pub fn apply_operator(
    q: &QuadForm,
    f: &SparseFunction,
    lambda: f64,
    window: Window,
    max_m: u64,
) -> Result<Vec<(i64, f64)>> {
    apply_kernel(q, f, Kernel::power(lambda)?, window, max_m)
}

fn lp_norm(values: impl Iterator<Item = f64>, p: LpExponent) -> f64 {
    match p {
        LpExponent::Infinity => values.fold(0.0, |m, v| m.max(v.abs())),
        LpExponent::Finite(p) => {
            let s: CompensatedSum = values.map(|v| v.abs().powf(p)).collect();
            s.value().powf(1.0 / p)
        }
    }
}

/// Window norm of `I_λ f` with the quantities it can be compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub form: QuadForm,
    pub lambda: f64,
    pub p: LpExponent,
    pub window: Window,
    pub max_m: u64,
    /// Norm of `I_λ f` over the window with `|m| <= M`.
    pub window_norm: f64,
    /// Norm over all of `Z` with no truncation in `m`; definite forms only.
    pub exhaustive_norm: Option<f64>,
    /// `Σ_k |f(k)| S_λ(k)` when `p = 1`, `f >= 0` and the discriminant is
    /// nonsquare; equals `||I_λ f||_1` because the sets `A_k` partition the
    /// lattice points with `m != 0`.
    pub identity_value: Option<f64>,
    /// Tail bound carried by `identity_value`.
    pub identity_tail_bound: Option<f64>,
}

/// `l^p` norm of `I_λ f` over the window, plus the exact comparison values
/// where they exist.
pub fn weighted_norm_estimate(
    q: &QuadForm,
    f: &SparseFunction,
    lambda: f64,
    p: LpExponent,
    window: Window,
    max_m: u64,
) -> Result<NormReport> {
    let values = apply_operator(q, f, lambda, window, max_m)?;
    let window_norm = lp_norm(values.iter().map(|(_, v)| *v), p);
    let class = q.classify();
    let exhaustive_norm = if class.is_definite() {
        Some(lp_norm(exhaustive_values(q, f, lambda)?.into_values(), p))
    } else {
        None
    };
    let nonsquare = !matches!(class, FormClass::SquareDiscriminant { .. });
    let (identity_value, identity_tail_bound) =
        if p == LpExponent::Finite(1.0) && f.is_nonnegative() && nonsquare {
            let mut s = CompensatedSum::new();
            let mut tail = 0.0;
            for (k, v) in f.iter() {
                let r = rep_weight_sum(q, k, lambda, DEFAULT_TOL)?;
                s.add(v * r.value);
                tail += v * r.tail_bound;
            }
            (Some(s.value()), Some(tail))
        } else {
            (None, None)
        };
    Ok(NormReport {
        form: q.clone(),
        lambda,
        p,
        window,
        max_m,
        window_norm,
        exhaustive_norm,
        identity_value,
        identity_tail_bound,
    })
}

/// `I_λ f(n)` for every `n` where it can be nonzero, for a definite form:
/// each support point has finitely many representations.
pub fn exhaustive_values(q: &QuadForm, f: &SparseFunction, lambda: f64) -> Result<BTreeMap<i64, f64>> {
    if !q.classify().is_definite() {
        return Err(Error::unsupported(q, "exhaustive application needs a definite form"));
    }
    let mut by_n: BTreeMap<i64, Vec<((BigInt, bool, BigInt), f64)>> = BTreeMap::new();
    for (k, v) in f.iter() {
        let bound = definite_m_bound(q, k);
        let Some(max_m) = bound.to_u64() else {
            return Err(Error::domain(format!("support point {k} is too large to enumerate")));
        };
        if max_m == 0 {
            continue;
        }
        for rep in enumerate_reps_bounded(q, k, max_m)? {
            let n = rep
                .n
                .to_i64()
                .ok_or_else(|| Error::domain("n outside the machine range"))?;
            let key = order_key(&rep.m, &rep.n);
            by_n.entry(n).or_default().push((key, v * inverse_power(&rep.m, lambda)));
        }
    }
    Ok(by_n
        .into_iter()
        .map(|(n, mut terms)| {
            // same order as the truncated application: by m, then n
            terms.sort_by(|x, y| x.0.cmp(&y.0));
            let s: CompensatedSum = terms.into_iter().map(|(_, t)| t).collect();
            (n, s.value())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c)
    }

    #[test]
    fn delta_25_examples() {
        let f = SparseFunction::delta(25, 1.0);
        let v = apply_operator(&q(1, 0, 1), &f, 1.0, Window::single(0), 10).unwrap();
        assert!((v[0].1 - 0.4).abs() < 1e-15);
        let v = apply_operator(&q(1, 0, 1), &f, 1.0, Window::single(3), 10).unwrap();
        assert!((v[0].1 - 0.5).abs() < 1e-15);
        let zero = SparseFunction::new();
        let v = apply_operator(&q(1, 0, 1), &zero, 1.0, Window::new(-3, 3).unwrap(), 10).unwrap();
        assert!(v.iter().all(|(_, x)| *x == 0.0));
    }

    #[test]
    fn p1_identity_for_delta_25() {
        let f = SparseFunction::delta(25, 1.0);
        let r = weighted_norm_estimate(
            &q(1, 0, 1),
            &f,
            1.0,
            LpExponent::Finite(1.0),
            Window::new(-5, 5).unwrap(),
            10,
        )
        .unwrap();
        for v in [r.window_norm, r.exhaustive_norm.unwrap(), r.identity_value.unwrap()] {
            assert!((v - 41.0 / 15.0).abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn pell_delta_partial_sums_increase() {
        let f = SparseFunction::delta(4, 1.0);
        let mut last = 0.0;
        for m in [2, 6, 34, 198, 1154] {
            let r = weighted_norm_estimate(
                &q(1, 0, -8),
                &f,
                1.0,
                LpExponent::Finite(1.0),
                Window::new(-500, 500).unwrap(),
                m,
            )
            .unwrap();
            assert!(r.window_norm > last);
            last = r.window_norm;
            assert!(r.window_norm <= r.identity_value.unwrap());
        }
    }

    #[test]
    fn exhaustive_matches_wide_window() {
        let mut f = SparseFunction::delta(25, 1.0);
        f.insert(BigInt::from(13), -0.5);
        f.insert(BigInt::from(50), 2.0);
        let form = q(2, 1, 3);
        let all = exhaustive_values(&form, &f, 0.7).unwrap();
        let wide = apply_operator(&form, &f, 0.7, Window::new(-20, 20).unwrap(), 20).unwrap();
        for (n, v) in wide {
            let e = all.get(&n).copied().unwrap_or(0.0);
            assert!((v - e).abs() < 1e-14, "n={n}");
        }
    }
}
