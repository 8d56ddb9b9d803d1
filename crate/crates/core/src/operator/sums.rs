//! The sums `S_λ(k) = Σ_{(m,n) ∈ A_k} |m|^(-λ)` over the representations of
//! `k` with `m != 0`, and the small-window lemma checks.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt_u128, inverse_power, isqrt, signum, CompensatedSum};
use crate::error::{Error, Result};
use crate::forms::{FormClass, QuadForm, UnimodularTransform};
use crate::pell::AutomorphGroup;
use crate::representations::{
    decompose, enumerate_reps_bounded, order_key, solve_for_n, ClassDecomposition, Representation,
};

/// How a [`SumReport`] value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    /// Every term of a finite set.
    ExactFinite,
    /// Automorph orbits walked outward with a certified geometric tail.
    OrbitTail,
    /// Terms with `|m| <= M` only.
    TruncatedScan,
}

impl SumMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            SumMethod::ExactFinite => "ExactFinite",
            SumMethod::OrbitTail => "OrbitTail",
            SumMethod::TruncatedScan => "TruncatedScan",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumReport {
    pub form: QuadForm,
    pub k: BigInt,
    pub lambda: f64,
    pub value: f64,
    pub method: SumMethod,
    /// Largest `|m|` that entered the sum.
    pub truncation: BigInt,
    /// The true sum lies in `[value, value + tail_bound]`; infinite when no
    /// bound is available.
    pub tail_bound: f64,
}

/// Default relative tolerance of the orbit walks.
pub const DEFAULT_TOL: f64 = 1e-12;

const ORBIT_STEP_LIMIT: usize = 100_000;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("lambda must be positive, got {lambda}")))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("tol must be positive, got {tol}")))
    }
}

/// Every representation of a definite form has `|m|` at most this.
pub fn definite_m_bound(q: &QuadForm, k: &BigInt) -> BigInt {
    // 4ck = (2cn + bm)^2 + |Δ| m^2
    let disc = q.discriminant().abs();
    isqrt(&(BigInt::from(4) * q.c.abs() * k.abs() / disc))
}

fn report(q: &QuadForm, k: &BigInt, lambda: f64, method: SumMethod) -> SumReport {
    SumReport {
        form: q.clone(),
        k: k.clone(),
        lambda,
        value: 0.0,
        method,
        truncation: BigInt::zero(),
        tail_bound: 0.0,
    }
}

/// `S_λ(k)` for a form with nonsquare discriminant: exact for definite
/// forms, an orbit walk with tail bound below `tol * value` otherwise.
pub fn rep_weight_sum(q: &QuadForm, k: &BigInt, lambda: f64, tol: f64) -> Result<SumReport> {
    rep_weight_sum_beyond(q, k, lambda, &BigInt::zero(), tol)
}

/// The part of `S_λ(k)` from representations with `|m| > M`.
pub fn rep_weight_sum_beyond(
    q: &QuadForm,
    k: &BigInt,
    lambda: f64,
    min_m: &BigInt,
    tol: f64,
) -> Result<SumReport> {
    check_lambda(lambda)?;
    check_tol(tol)?;
    let class = q.classify();
    if let FormClass::SquareDiscriminant { .. } = class {
        return Err(Error::unsupported(
            q,
            "the sum can diverge along the zero lines of a square discriminant",
        ));
    }
    if class.is_definite() {
        let mut r = report(q, k, lambda, SumMethod::ExactFinite);
        let bound = definite_m_bound(q, k);
        if k.is_zero() || &bound <= min_m {
            return Ok(r);
        }
        let max_m = bound.to_u64().ok_or_else(|| Error::domain("k is too large to enumerate"))?;
        let mut s = CompensatedSum::new();
        for rep in enumerate_reps_bounded(q, k, max_m)? {
            if &rep.m.abs() > min_m {
                s.add(inverse_power(&rep.m, lambda));
                r.truncation = r.truncation.max(rep.m.abs());
            }
        }
        r.value = s.value();
        return Ok(r);
    }
    let mut r = report(q, k, lambda, SumMethod::OrbitTail);
    if k.is_zero() {
        // only the origin represents 0
        return Ok(r);
    }
    let Some(dec) = decompose(q, k)? else {
        return Ok(r);
    };
    let walker = OrbitWalker::new(&dec)?;
    let ratio = walker.rho.powf(-lambda);
    let mut total = CompensatedSum::new();
    let mut tail_total = 0.0;
    let mut class_sum = CompensatedSum::new();
    let mut current = usize::MAX;
    let mut max_m = BigInt::zero();
    walker.walk(|p| {
        if p.class != current {
            class_sum = CompensatedSum::new();
            current = p.class;
        }
        let abs_m = p.m.abs();
        if p.m.is_zero() {
            return false;
        }
        let term = 2.0 * inverse_power(p.m, lambda);
        if &abs_m > min_m {
            class_sum.add(term);
            total.add(term);
            if abs_m > max_m {
                max_m = abs_m;
            }
        }
        if p.certified {
            // every later |m| grows by at least rho
            let tail = term * ratio / (1.0 - ratio);
            if class_sum.value() > 0.0 && tail <= tol * class_sum.value() {
                tail_total += tail;
                return true;
            }
        }
        false
    })?;
    r.value = total.value();
    r.tail_bound = tail_total;
    r.truncation = max_m;
    Ok(r)
}

/// `Σ |m|^(-λ)` over the representations with `1 <= |m| <= M`, in the fixed
/// order `m = 1, -1, 2, -2, ...`. The tail bound is the exact or certified
/// remainder when the discriminant is nonsquare and infinite otherwise.
pub fn rep_weight_scan(q: &QuadForm, k: &BigInt, lambda: f64, max_m: u64) -> Result<SumReport> {
    check_lambda(lambda)?;
    let mut r = report(q, k, lambda, SumMethod::TruncatedScan);
    let reps = enumerate_reps_bounded(q, k, max_m)?;
    let s: CompensatedSum = reps.iter().map(|p| inverse_power(&p.m, lambda)).collect();
    r.value = s.value();
    r.truncation = BigInt::from(max_m);
    r.tail_bound = match q.classify() {
        FormClass::SquareDiscriminant { .. } => f64::INFINITY,
        _ => {
            let rest = rep_weight_sum_beyond(q, k, lambda, &BigInt::from(max_m), DEFAULT_TOL)?;
            rest.value + rest.tail_bound
        }
    };
    Ok(r)
}

/// The representations in `A_k` with `|m| <= M` read off the automorph
/// orbits, in enumeration order. Indefinite nonsquare forms only.
pub fn orbit_points(q: &QuadForm, k: &BigInt, max_m: &BigInt) -> Result<Vec<Representation>> {
    if q.classify() != FormClass::IndefiniteNonsquare {
        return Err(Error::unsupported(q, "orbit walks need an indefinite nonsquare form"));
    }
    let mut out = Vec::new();
    if k.is_zero() {
        return Ok(out);
    }
    let Some(dec) = decompose(q, k)? else {
        return Ok(out);
    };
    OrbitWalker::new(&dec)?.walk(|p| {
        let abs_m = p.m.abs();
        if !p.m.is_zero() && &abs_m <= max_m {
            for s in [1, -1] {
                out.push(Representation::new(p.m * s, p.n * s, k.clone()));
            }
        }
        p.certified && &abs_m > max_m
    })?;
    out.sort_by(|x, y| order_key(&x.m, &x.n).cmp(&order_key(&y.m, &y.n)));
    Ok(out)
}

struct OrbitPoint<'a> {
    class: usize,
    m: &'a BigInt,
    n: &'a BigInt,
    /// From here on `|m|` grows by a factor of at least `rho` per step.
    certified: bool,
}

/// Walks `A^j w` for `j = 0, 1, ...` and then `j = -1, -2, ...` for every
/// nonempty class, reporting one point per pair `±A^j w`.
struct OrbitWalker<'a> {
    dec: &'a ClassDecomposition,
    forward: UnimodularTransform,
    backward: UnimodularTransform,
    rho: f64,
}

impl<'a> OrbitWalker<'a> {
    fn new(dec: &'a ClassDecomposition) -> Result<Self> {
        let AutomorphGroup::InfiniteCyclic { generator } = &dec.automorphs else {
            return Err(Error::Invariant("orbit walk on a finite automorph group".into()));
        };
        let t = generator.trace().abs();
        let (forward, backward) = if generator.trace().is_positive() {
            (generator.clone(), generator.inverse())
        } else {
            (-generator, (-generator).inverse())
        };
        // The generator is ((t - bu)/2, -cu; au, (t + bu)/2) with u > 0 for
        // a pell solution; the sign of u decides which direction grows.
        let u = if dec.form.a.is_zero() {
            -(forward.beta() / &dec.form.c)
        } else {
            forward.gamma() / &dec.form.a
        };
        let (forward, backward) = if u.is_positive() {
            (forward, backward)
        } else {
            (backward, forward)
        };
        let rho = t.to_f64().unwrap_or(f64::INFINITY) / 2.0;
        if rho.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Invariant(format!("automorph trace {t} gives no growth")));
        }
        Ok(OrbitWalker {
            dec,
            forward,
            backward,
            rho,
        })
    }

    /// In `x = m`, `y = bm + 2cn` the generator acts as
    /// `(T/2, -U/2; -ΔU/2, T/2)`, so forward steps grow `|x|` by `T/2` once
    /// `xy < 0` and backward steps once `xy > 0`.
    fn certified(&self, x: &BigInt, n: &BigInt, forward: bool) -> bool {
        let f = &self.dec.form;
        let y: BigInt = &f.b * x + &f.c * n * 2;
        let prod = signum(x) * signum(&y);
        if forward {
            prod < 0
        } else {
            prod > 0
        }
    }

    fn walk(&self, mut visit: impl FnMut(OrbitPoint<'_>) -> bool) -> Result<()> {
        for (idx, cls) in self.dec.classes.iter().enumerate() {
            let Some(w) = cls.orbit_anchor.as_ref().or(cls.witness.as_ref()) else {
                continue;
            };
            let start = (w.alpha().clone(), w.gamma().clone());
            for forward in [true, false] {
                let step = if forward { &self.forward } else { &self.backward };
                let mut v = if forward {
                    start.clone()
                } else {
                    step.apply_to_vector(&start.0, &start.1)
                };
                let mut done = false;
                for _ in 0..ORBIT_STEP_LIMIT {
                    let m = &cls.g * &v.0;
                    let n = &cls.g * &v.1;
                    let certified = self.certified(&v.0, &v.1, forward);
                    if visit(OrbitPoint {
                        class: idx,
                        m: &m,
                        n: &n,
                        certified,
                    }) {
                        done = true;
                        break;
                    }
                    v = step.apply_to_vector(&v.0, &v.1);
                }
                if !done {
                    return Err(Error::Invariant(format!(
                        "orbit walk for class {idx} did not settle in {ORBIT_STEP_LIMIT} steps"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Count of solutions of `q(m, n) = k` in the window `|m| <= W`, where `W`
/// is the largest integer with `W^4 Δ^2 <= |k|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheckReport {
    pub form: QuadForm,
    pub k: BigInt,
    pub window: BigInt,
    pub count: u64,
    pub pass: bool,
}

/// Largest `x >= 0` with `x^4 Δ^2 <= |k|`.
pub fn lemma_window(disc: &BigInt, k: &BigInt) -> BigInt {
    let d2 = disc * disc;
    (k.abs() / d2).nth_root(4)
}

fn check_lemma_form(q: &QuadForm) -> Result<()> {
    match q.classify() {
        FormClass::SquareDiscriminant { .. } => Err(Error::unsupported(
            q,
            "the small-window lemmas need a nonsquare discriminant",
        )),
        _ => Ok(()),
    }
}

/// Counts lattice solutions in the small window, `m = 0` included.
pub fn lemma_window_check(q: &QuadForm, k: &BigInt) -> Result<LemmaCheckReport> {
    check_lemma_form(q)?;
    let window = lemma_window(&q.discriminant(), k);
    let count = match (LemmaChecker::new(q), k.to_i64()) {
        (Ok(fast), Some(small)) => fast.count(small).1,
        _ => {
            let w = window
                .to_i64()
                .ok_or_else(|| Error::domain("window too large to scan"))?;
            (-w..=w)
                .map(|m| solve_for_n(q, k, &BigInt::from(m)).len() as u64)
                .sum()
        }
    };
    Ok(LemmaCheckReport {
        form: q.clone(),
        k: k.clone(),
        window,
        count,
        pass: count <= 4,
    })
}

/// Machine-word lemma checks for sweeps over many `k` with one form.
#[derive(Debug, Clone)]
pub struct LemmaChecker {
    b: i128,
    c: i128,
    disc: i128,
}

impl LemmaChecker {
    /// Requires a nonsquare discriminant and coefficients below `2^20`.
    pub fn new(q: &QuadForm) -> Result<Self> {
        check_lemma_form(q)?;
        let limit = BigInt::from(1 << 20);
        if [&q.a, &q.b, &q.c].iter().any(|x| x.abs() >= limit) {
            return Err(Error::domain("coefficients too large for the word-size checker"));
        }
        let [a, b, c] = q.to_i128().expect("small coefficients");
        Ok(LemmaChecker {
            b,
            c,
            disc: b * b - 4 * a * c,
        })
    }

    /// `(W, count)` for one value `k`.
    pub fn count(&self, k: i64) -> (u64, u64) {
        let k = k as i128;
        let d2 = (self.disc * self.disc) as u128;
        let w = ((k.unsigned_abs() / d2).sqrt()).sqrt() as i128;
        let mut count = 0;
        for m in -w..=w {
            count += self.solutions_at(m, k);
        }
        (w as u64, count)
    }

    fn solutions_at(&self, m: i128, k: i128) -> u64 {
        // c n^2 + b m n + (a m^2 - k) = 0 with c != 0 for nonsquare Δ
        let d = self.disc * m * m + 4 * self.c * k;
        if d < 0 {
            return 0;
        }
        let Some(s) = exact_sqrt_u128(d as u128) else {
            return 0;
        };
        let s = s as i128;
        let two_c = 2 * self.c;
        let bm = self.b * m;
        let hits = [-bm - s, -bm + s]
            .iter()
            .filter(|num| *num % two_c == 0)
            .count() as u64;
        if s == 0 {
            hits.min(1)
        } else {
            hits
        }
    }
}
