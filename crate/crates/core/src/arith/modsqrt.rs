//! Square roots modulo primes and prime powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{mod_inverse, valuation};

/// A square root of `a` modulo the odd prime `p` (Tonelli-Shanks), or
/// `None` when `a` is a nonresidue.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    let half = &pm1 >> 1u32;
    if a.modpow(&half, p) != one {
        return None;
    }
    if (p % 4u32) == BigInt::from(3) {
        return Some(a.modpow(&((p + &one) >> 2u32), p));
    }
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigInt::from(2);
    while z.modpow(&half, p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1u32), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        r = (r * &b) % p;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        m = i;
    }
    Some(r)
}

/// Roots of `x^2 = t` modulo `2^f` for odd `t`.
fn unit_roots_mod_2pow(t: &BigInt, f: u32) -> Vec<BigInt> {
    let m = BigInt::one() << f;
    let t = t.mod_floor(&m);
    match f {
        0 => vec![BigInt::zero()],
        1 => vec![BigInt::one()],
        2 => {
            if (&t % 4u32).is_one() {
                vec![BigInt::one(), BigInt::from(3)]
            } else {
                vec![]
            }
        }
        _ => {
            if !(&t % 8u32).is_one() {
                return vec![];
            }
            let mut r = BigInt::one();
            for i in 3..f {
                let mi = BigInt::one() << (i + 1);
                if (&r * &r - &t).mod_floor(&mi) != BigInt::zero() {
                    r += BigInt::one() << (i - 1);
                }
            }
            let half = BigInt::one() << (f - 1);
            let mut v = vec![
                r.clone(),
                (&m - &r).mod_floor(&m),
                (&r + &half).mod_floor(&m),
                (&m - &r + &half).mod_floor(&m),
            ];
            v.sort();
            v.dedup();
            v
        }
    }
}

/// Roots of `x^2 = t` modulo `p^f` for `t` prime to the odd prime `p`.
fn unit_roots_mod_odd(t: &BigInt, p: &BigInt, f: u32) -> Vec<BigInt> {
    let Some(mut r) = sqrt_mod_prime(t, p) else {
        return vec![];
    };
    let mut pk = p.clone();
    for _ in 1..f {
        pk *= p;
        // Newton step: r <- r - (r^2 - t) / (2r) mod p^k
        let inv = mod_inverse(&(&r * 2u32), &pk).expect("2r is a unit");
        r = (&r - (&r * &r - t) * inv).mod_floor(&pk);
    }
    let m = p.pow(f);
    let mut v = vec![r.mod_floor(&m), (-&r).mod_floor(&m)];
    v.sort();
    v.dedup();
    v
}

/// Every `x` in `[0, p^e)` with `x^2 = t (mod p^e)`, ascending.
///
/// The result can have `p^(e/2)` entries when `p^e` divides `t`.
pub fn sqrt_mod_prime_power(t: &BigInt, p: &BigInt, e: u32) -> Vec<BigInt> {
    if e == 0 {
        return vec![BigInt::zero()];
    }
    let m = p.pow(e);
    let t = t.mod_floor(&m);
    if t.is_zero() {
        let step = p.pow(e.div_ceil(2));
        let count = p.pow(e / 2);
        let mut out = Vec::new();
        let mut j = BigInt::zero();
        while j < count {
            out.push(&j * &step);
            j += 1;
        }
        return out;
    }
    let v = valuation(&t, p);
    if v % 2 == 1 {
        return vec![];
    }
    let w = v / 2;
    let unit = &t / p.pow(v);
    let f = e - v;
    let base = if *p == BigInt::from(2) {
        unit_roots_mod_2pow(&unit, f)
    } else {
        unit_roots_mod_odd(&unit, p, f)
    };
    // x = p^w y with y determined mod p^(e-2w), free mod p^(e-w)
    let pf = p.pow(f);
    let pw = p.pow(w);
    let mut out = Vec::new();
    for y in &base {
        let mut j = BigInt::zero();
        while j < pw {
            out.push(&pw * (y + &j * &pf));
            j += 1;
        }
    }
    out.sort();
    out
}

/// Number of roots of `x^2 = t` modulo `p^e`, without listing them.
pub fn count_sqrt_mod_prime_power(t: &BigInt, p: &BigInt, e: u32) -> BigInt {
    if e == 0 {
        return BigInt::one();
    }
    let m = p.pow(e);
    let t = t.mod_floor(&m);
    if t.is_zero() {
        return p.pow(e / 2);
    }
    let v = valuation(&t, p);
    if v % 2 == 1 {
        return BigInt::zero();
    }
    let w = v / 2;
    let unit = &t / p.pow(v);
    let f = e - v;
    let base: u32 = if *p == BigInt::from(2) {
        match f {
            1 => 1,
            2 => {
                if (&unit % 4u32).is_one() {
                    2
                } else {
                    0
                }
            }
            _ => {
                if (&unit % 8u32).is_one() {
                    4
                } else {
                    0
                }
            }
        }
    } else {
        let half = (p - 1u32) >> 1u32;
        if unit.mod_floor(p).modpow(&half, p).is_one() {
            2
        } else {
            0
        }
    };
    BigInt::from(base) * p.pow(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(t: i64, m: i64) -> Vec<BigInt> {
        (0..m)
            .filter(|x| (x * x - t).rem_euclid(m) == 0)
            .map(BigInt::from)
            .collect()
    }

    #[test]
    fn matches_brute_force_small_prime_powers() {
        for &p in &[2i64, 3, 5, 7, 13] {
            let mut m = 1;
            for e in 1..=7u32 {
                m *= p;
                if m > 5000 {
                    break;
                }
                for t in -30..(m + 30) {
                    let got = sqrt_mod_prime_power(&BigInt::from(t), &BigInt::from(p), e);
                    assert_eq!(got, brute(t, m), "t={t} p={p} e={e}");
                    assert_eq!(
                        count_sqrt_mod_prime_power(&BigInt::from(t), &BigInt::from(p), e),
                        BigInt::from(got.len()),
                        "count t={t} p={p} e={e}"
                    );
                }
            }
        }
    }

    #[test]
    fn tonelli_shanks_on_p_1_mod_8() {
        let p = BigInt::from(1_000_000_009u64); // 1 mod 8
        for a in 1..200 {
            let a = BigInt::from(a);
            if let Some(r) = sqrt_mod_prime(&a, &p) {
                assert_eq!((&r * &r).mod_floor(&p), a);
            }
        }
        let p = BigInt::from(17);
        assert!(sqrt_mod_prime(&BigInt::from(3), &p).is_none());
    }
}
