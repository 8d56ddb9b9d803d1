//! `Γ_t(s) = #{u in [0, 2s) : u^2 = t (mod 4s)}` and the solutions of
//! `u^2 = Δ (mod 4|k|)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    bigint_str, count_sqrt_mod_prime_power, crt_combine, factorize, sqrt_mod_prime_power,
    Factorization,
};
use crate::error::{Error, Result};

/// One solution `u` of `u^2 = Δ (mod 4|k|)` with `0 <= u < 2|k|`, and the
/// companion coefficient `v = (u^2 - Δ) / 4k`; the form `(k, u, v)` has
/// discriminant `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CongruenceSolution {
    #[serde(with = "bigint_str")]
    pub k: BigInt,
    #[serde(with = "bigint_str")]
    pub u: BigInt,
    #[serde(with = "bigint_str")]
    pub v: BigInt,
}

impl CongruenceSolution {
    pub fn form(&self) -> crate::forms::QuadForm {
        crate::forms::QuadForm::new(self.k.clone(), self.u.clone(), self.v.clone())
    }
}

fn residue_mod4(t: &BigInt) -> u8 {
    t.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0)
}

/// `Γ_t(p^a)` for a prime `p` and `a >= 1`.
pub fn gamma_prime_power(t: &BigInt, p: &BigInt, a: u32) -> BigInt {
    if residue_mod4(t) >= 2 {
        return BigInt::zero();
    }
    if *p == BigInt::from(2) {
        count_sqrt_mod_prime_power(t, p, a + 2) / 2
    } else {
        count_sqrt_mod_prime_power(t, p, a)
    }
}

/// `Γ_t(s)` for `s >= 1`, multiplicatively over the factorization of `s`.
pub fn gamma(t: &BigInt, s: &BigInt) -> Result<BigInt> {
    if !s.is_positive() {
        return Err(Error::domain(format!("Gamma_t(s) needs s >= 1, got {s}")));
    }
    Ok(gamma_factored(t, &factorize(s)))
}

pub(crate) fn gamma_factored(t: &BigInt, f: &Factorization) -> BigInt {
    if residue_mod4(t) >= 2 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for (p, a) in f.pairs() {
        acc *= gamma_prime_power(t, p, *a);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// All solutions of `u^2 = Δ (mod 4|k|)` with `0 <= u < 2|k|`, ascending.
/// Empty when `Δ = 2, 3 (mod 4)`.
pub fn solve_congruence(delta: &BigInt, k: &BigInt) -> Result<Vec<CongruenceSolution>> {
    if k.is_zero() {
        return Err(Error::domain("the congruence needs k != 0"));
    }
    Ok(solve_factored(delta, k, &factorize(k)))
}

pub(crate) fn solve_factored(delta: &BigInt, k: &BigInt, f: &Factorization) -> Vec<CongruenceSolution> {
    if residue_mod4(delta) >= 2 {
        return Vec::new();
    }
    let two = BigInt::from(2);
    let a0 = f.exponent(&two);
    let mut modulus = BigInt::one() << (a0 + 2);
    let mut roots = sqrt_mod_prime_power(delta, &two, a0 + 2);
    for (p, a) in f.pairs() {
        if *p == two || roots.is_empty() {
            continue;
        }
        let r = sqrt_mod_prime_power(delta, p, *a);
        let pa = p.pow(*a);
        roots = crt_combine(&roots, &modulus, &r, &pa);
        modulus *= pa;
    }
    let abs_k = k.abs();
    let half = &abs_k * 2;
    let four_k = k * 4;
    roots
        .into_iter()
        .filter(|u| *u < half)
        .map(|u| {
            let v = (&u * &u - delta) / &four_k;
            CongruenceSolution {
                k: k.clone(),
                u,
                v,
            }
        })
        .collect()
}

/// `Σ_{g^2 | k} Γ_Δ(|k| / g^2)`: the number of congruence solutions over
/// all gcd strata.
pub fn stratified_congruence_count(delta: &BigInt, k: &BigInt) -> Result<BigInt> {
    if k.is_zero() {
        return Err(Error::domain("the congruence needs k != 0"));
    }
    Ok(factorize(k)
        .square_divisors()
        .iter()
        .map(|(_, rest)| gamma_factored(delta, rest))
        .sum())
}
