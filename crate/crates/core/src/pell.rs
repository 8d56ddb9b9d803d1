//! The equation `t^2 - Δ u^2 = 4` and the automorph groups it produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, exact_sqrt_u128, is_square};
use crate::error::{Error, Result};
use crate::forms::{FormClass, QuadForm, UnimodularTransform};

/// Scan limit for the direct minimality check.
pub const DIRECT_SCAN_LIMIT: u64 = 1_000_000;

/// Least positive solution `(T, U)` of `t^2 - Δ u^2 = 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellFundamental {
    pub t: BigInt,
    pub u: BigInt,
    pub delta: BigInt,
}

/// How minimality of a Pell solution was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalityProof {
    /// Every `u` in `1..U` was tested and none gives a square `Δu^2 + 4`.
    DirectScan { checked: u64 },
    /// `T` is not `V_k(t)` for any smaller solution `t` and any `k` in
    /// `2..=max_k`, where `V_k` is the Lucas sequence of the solution.
    PowerRootCertificate { max_k: u32 },
}

/// Fundamental solution of `x^2 - D y^2 = 1` from the continued fraction
/// of `sqrt(D)`.
pub fn pell1_fundamental(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if !d.is_positive() || is_square(d) {
        return Err(Error::domain(format!(
            "x^2 - {d} y^2 = 1 needs a positive nonsquare D"
        )));
    }
    let a0 = d.sqrt();
    let (mut m, mut den, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    // convergents p_{-1}/q_{-1} = 1/0, p_0/q_0 = a0/1
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        if &p * &p - d * &q * &q == BigInt::one() {
            return Ok((p, q));
        }
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Least positive solution of `t^2 - Δ u^2 = 4` for nonsquare `Δ >= 5`.
pub fn pell4_fundamental(delta: &BigInt) -> Result<PellFundamental> {
    if delta < &BigInt::from(5) || is_square(delta) {
        return Err(Error::domain(format!(
            "t^2 - {delta} u^2 = 4 needs a nonsquare discriminant >= 5"
        )));
    }
    let (t, u) = match delta.mod_floor(&BigInt::from(4)).to_u8() {
        Some(0) => {
            let (x, y) = pell1_fundamental(&(delta / 4))?;
            (x * 2, y)
        }
        Some(1) => principal_cycle_solution(delta)?,
        _ => {
            // t and u are both even here
            let (x, y) = pell1_fundamental(delta)?;
            (x * 2, y * 2)
        }
    };
    Ok(PellFundamental {
        t,
        u,
        delta: delta.clone(),
    })
}

/// Reads `(T, U)` off the automorph obtained by walking once around the
/// cycle of the principal form `(1, 1, (1 - Δ)/4)`.
fn principal_cycle_solution(delta: &BigInt) -> Result<(BigInt, BigInt)> {
    let principal = QuadForm::new(1, 1, (BigInt::one() - delta) / 4);
    let (reduced, _) = principal.reduce()?;
    let cycle = reduced.cycle()?;
    // The cycle of a reduced form starts at the form itself with the
    // identity; walking one step past the end returns to it.
    let last = cycle.last().expect("cycle is nonempty");
    let disc = delta.clone();
    let r = crate::arith::isqrt(&disc);
    let (_, closing) = crate::forms::rho(&last.form, &disc, &r);
    let auto = &last.witness * &closing;
    if reduced.apply_transform(&auto) != reduced {
        return Err(Error::Invariant(format!(
            "cycle product {auto} does not fix {reduced}"
        )));
    }
    let t = auto.trace().abs();
    let u = (auto.gamma() / &reduced.a).abs();
    Ok((t, u))
}

impl PellFundamental {
    /// Checks the equation and minimality; direct scan when `U` is at most
    /// [`DIRECT_SCAN_LIMIT`], the power-root certificate otherwise.
    pub fn verify_minimal(&self) -> Result<MinimalityProof> {
        let (t, u, d) = (&self.t, &self.u, &self.delta);
        if t * t - d * u * u != BigInt::from(4) || !u.is_positive() || !t.is_positive() {
            return Err(Error::Invariant(format!(
                "({t}, {u}) does not solve t^2 - {d} u^2 = 4"
            )));
        }
        if let (Some(small_u), Some(small_d)) = (u.to_u64(), d.to_u64()) {
            if small_u <= DIRECT_SCAN_LIMIT {
                return direct_scan(small_d, small_u);
            }
        }
        self.power_root_certificate()
    }

    fn power_root_certificate(&self) -> Result<MinimalityProof> {
        let (big_t, d) = (&self.t, &self.delta);
        let four = BigInt::from(4);
        let mut k = 2u32;
        // V_k(3) is the smallest value V_k can take over admissible t
        while lucas_v(&BigInt::from(3), k) <= *big_t {
            let r = big_t.nth_root(k);
            for cand in [r.clone(), &r + 1] {
                if cand < BigInt::from(3) || lucas_v(&cand, k) != *big_t {
                    continue;
                }
                let rest = &cand * &cand - &four;
                if rest.is_multiple_of(d) && exact_sqrt(&(rest / d)).is_some() {
                    return Err(Error::Invariant(format!(
                        "T = {big_t} is the {k}-th power of the smaller solution t = {cand}"
                    )));
                }
            }
            k += 1;
        }
        Ok(MinimalityProof::PowerRootCertificate { max_k: k - 1 })
    }
}

fn direct_scan(d: u64, big_u: u64) -> Result<MinimalityProof> {
    for u in 1..big_u {
        let v = d as u128 * u as u128 * u as u128 + 4;
        if exact_sqrt_u128(v).is_some() {
            return Err(Error::Invariant(format!(
                "smaller solution u = {u} of t^2 - {d} u^2 = 4 exists"
            )));
        }
    }
    Ok(MinimalityProof::DirectScan { checked: big_u - 1 })
}

/// `V_k(t)` with `V_0 = 2`, `V_1 = t`, `V_{k+1} = t V_k - V_{k-1}`.
fn lucas_v(t: &BigInt, k: u32) -> BigInt {
    let (mut prev, mut cur) = (BigInt::from(2), t.clone());
    for _ in 1..k {
        let next = t * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The automorph `[(t - bu)/2, -cu; au, (t + bu)/2]` of `q` attached to a
/// solution of `t^2 - Δ u^2 = 4`.
pub fn automorph_from_pell(q: &QuadForm, t: &BigInt, u: &BigInt) -> Result<UnimodularTransform> {
    let disc = q.discriminant();
    if t * t - &disc * u * u != BigInt::from(4) {
        return Err(Error::domain(format!(
            "({t}, {u}) does not solve t^2 - ({disc}) u^2 = 4"
        )));
    }
    let bu = &q.b * u;
    let alpha = (t - &bu) / 2;
    let delta = (t + &bu) / 2;
    UnimodularTransform::new(alpha, -&q.c * u, &q.a * u, delta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomorphGroup {
    Finite(Vec<UnimodularTransform>),
    /// All automorphs are `±generator^j`.
    InfiniteCyclic { generator: UnimodularTransform },
}

impl AutomorphGroup {
    /// The element `sign * generator^power` of an infinite group, or entry
    /// `power` of a finite list (sign applied on top).
    pub fn element(&self, sign: i32, power: i64) -> Option<UnimodularTransform> {
        let base = match self {
            AutomorphGroup::InfiniteCyclic { generator } => generator.pow(power),
            AutomorphGroup::Finite(list) => list.get(usize::try_from(power).ok()?)?.clone(),
        };
        Some(if sign < 0 { -base } else { base })
    }

    pub fn finite_size(&self) -> Option<usize> {
        match self {
            AutomorphGroup::Finite(list) => Some(list.len()),
            AutomorphGroup::InfiniteCyclic { .. } => None,
        }
    }
}

/// Automorph group of a primitive form with nonsquare discriminant.
pub fn automorph_group(q: &QuadForm) -> Result<AutomorphGroup> {
    if !q.is_primitive() {
        return Err(Error::domain(format!(
            "form {q} is not primitive; use automorphs_nonprimitive"
        )));
    }
    let disc = q.discriminant();
    match q.classify() {
        FormClass::SquareDiscriminant { .. } => Err(Error::unsupported(
            q,
            "square discriminant forms have no finite Pell structure",
        )),
        FormClass::IndefiniteNonsquare => {
            let fund = pell4_fundamental(&disc)?;
            Ok(AutomorphGroup::InfiniteCyclic {
                generator: automorph_from_pell(q, &fund.t, &fund.u)?,
            })
        }
        _ => {
            let abs = -&disc;
            let mut sols: Vec<(i64, i64)> = vec![(2, 0), (-2, 0)];
            if abs == BigInt::from(3) {
                sols.extend([(1, 1), (1, -1), (-1, 1), (-1, -1)]);
            } else if abs == BigInt::from(4) {
                sols.extend([(0, 1), (0, -1)]);
            }
            sols.into_iter()
                .map(|(t, u)| automorph_from_pell(q, &BigInt::from(t), &BigInt::from(u)))
                .collect::<Result<Vec<_>>>()
                .map(AutomorphGroup::Finite)
        }
    }
}

/// Automorphs of any nonzero form: those of its primitive part.
pub fn automorphs_nonprimitive(q: &QuadForm) -> Result<AutomorphGroup> {
    let (p, _) = q.primitive_part()?;
    automorph_group(&p)
}

/// The Pell solution `(t, u)` carried by an automorph of `q`.
pub fn solution_of_automorph(q: &QuadForm, m: &UnimodularTransform) -> (BigInt, BigInt) {
    let t = m.trace();
    let u = if !q.a.is_zero() {
        m.gamma() / &q.a
    } else {
        -(m.beta() / &q.c)
    };
    (t, u)
}
