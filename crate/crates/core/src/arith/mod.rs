//! Exact integer helpers shared by every other module.

mod factor;
mod modsqrt;
mod sum;

pub use factor::{divisor_count, factorize, is_probable_prime, Factorization};
pub use modsqrt::{count_sqrt_mod_prime_power, sqrt_mod_prime, sqrt_mod_prime_power};
pub use sum::CompensatedSum;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Floor of the square root of a nonnegative integer.
///
/// Panics on negative input.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

/// `Some(r)` with `r*r == n` when `n` is a perfect square, else `None`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    // Squares are 0, 1, 4, 9 mod 16; cheap rejection before the root.
    let low = (n & BigInt::from(15u8)).to_u8().unwrap_or(0);
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Integer square root for the `u128` fast paths.
pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    if !matches!(n & 15, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Natural logarithm of `|n|`, accurate to double precision for any size.
pub fn ln_abs(n: &BigInt) -> f64 {
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 1000 {
        return mag.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_f64().unwrap_or(0.0);
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// `|m|^(-lambda)` for a nonzero big integer.
pub fn inverse_power(m: &BigInt, lambda: f64) -> f64 {
    if let Some(v) = m.magnitude().to_u64() {
        if v < (1u64 << 53) {
            return (v as f64).powf(-lambda);
        }
    }
    (-lambda * ln_abs(m)).exp()
}

/// `gcd(|a|, |b|)`, with `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Floor division for signed operands.
pub fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Nonnegative residue of `a` modulo `|m|`.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(&m.abs())
}

/// Inverse of `a` modulo `m` (`m > 1`), if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Chinese remainder combination of residue lists for coprime moduli.
///
/// Returns every residue modulo `m1 * m2` congruent to some `r1` mod `m1`
/// and some `r2` mod `m2`, sorted ascending.
pub fn crt_combine(r1: &[BigInt], m1: &BigInt, r2: &[BigInt], m2: &BigInt) -> Vec<BigInt> {
    let modulus = m1 * m2;
    if m1.is_one() {
        return sorted(r2.to_vec());
    }
    if m2.is_one() {
        return sorted(r1.to_vec());
    }
    let inv = mod_inverse(m1, m2).expect("crt moduli must be coprime");
    let mut out = Vec::with_capacity(r1.len() * r2.len());
    for a in r1 {
        for b in r2 {
            // x = a + m1 * ((b - a) * inv mod m2)
            let t = ((b - a) * &inv).mod_floor(m2);
            out.push((a + m1 * t).mod_floor(&modulus));
        }
    }
    sorted(out)
}

fn sorted(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v.dedup();
    v
}

/// Sign of a big integer as `-1`, `0` or `1`.
pub fn signum(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Harmonic number `H_n` summed exactly in compensated precision.
pub fn harmonic(n: u64) -> f64 {
    let mut s = CompensatedSum::new();
    for j in 1..=n {
        s.add(1.0 / j as f64);
    }
    s.value()
}

/// Serde adapter storing big integers as decimal strings.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn exact_sqrt_small_values() {
        for n in 0i64..2000 {
            let r = (n as f64).sqrt().round() as i64;
            let expected = (r * r == n).then(|| big(r));
            assert_eq!(exact_sqrt(&big(n)), expected, "n={n}");
        }
        assert_eq!(exact_sqrt(&big(-4)), None);
    }

    #[test]
    fn exact_sqrt_large_square() {
        let r: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(exact_sqrt(&(&r * &r)), Some(r.clone()));
        assert_eq!(exact_sqrt(&(&r * &r + 1)), None);
    }

    #[test]
    fn ln_abs_matches_f64_and_scales() {
        assert!((ln_abs(&big(65)) - 65f64.ln()).abs() < 1e-15);
        let k = BigInt::from(65).pow(1000);
        let expected = 1000.0 * 65f64.ln();
        assert!((ln_abs(&k) - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn crt_combines_roots() {
        // x^2 = 8 mod 4 -> {0, 2}; mod 7 -> {1, 6}
        let r = crt_combine(&[big(0), big(2)], &big(4), &[big(1), big(6)], &big(7));
        assert_eq!(r, vec![big(6), big(8), big(20), big(22)]);
        for x in &r {
            assert_eq!((x * x - 8i32).mod_floor(&big(28)), BigInt::zero());
        }
    }

    #[test]
    fn valuation_counts_factors() {
        assert_eq!(valuation(&big(8), &big(2)), 3);
        assert_eq!(valuation(&big(-63), &big(3)), 2);
        assert_eq!(valuation(&big(7), &big(2)), 0);
    }
}
