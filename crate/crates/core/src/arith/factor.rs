//! Trial division to 10^6, then Brent's variant of Pollard rho.
//!
//! Values below 2^64 run entirely on machine words.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 1_000_000;

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn from_pairs(mut factors: Vec<(BigInt, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort();
        // merge repeated primes
        let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Factorization { factors: merged }
    }

    pub fn pairs(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn value(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn divisor_count(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (_, e)| acc * BigInt::from(e + 1))
    }

    /// Exponent of `p`, zero when absent.
    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// Every `g >= 1` with `g^2` dividing the factored number, ascending,
    /// each paired with the factorization of `n / g^2`.
    pub fn square_divisors(&self) -> Vec<(BigInt, Factorization)> {
        let mut out = vec![(BigInt::one(), Vec::new())];
        for (p, e) in &self.factors {
            let mut next = Vec::new();
            for (g, rest) in &out {
                let mut pg = g.clone();
                for i in 0..=(e / 2) {
                    let mut r: Vec<(BigInt, u32)> = rest.clone();
                    r.push((p.clone(), e - 2 * i));
                    next.push((pg.clone(), r));
                    pg *= p;
                }
            }
            out = next;
        }
        let mut res: Vec<(BigInt, Factorization)> = out
            .into_iter()
            .map(|(g, r)| (g, Factorization::from_pairs(r)))
            .collect();
        res.sort_by(|x, y| x.0.cmp(&y.0));
        res
    }
}

/// Factor `|n|`; `n` must be nonzero. `factorize(1)` is empty.
pub fn factorize(n: &BigInt) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        let pairs = factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
        return Factorization::from_pairs(pairs);
    }
    let mut rest = n;
    let mut pairs = Vec::new();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            pairs.push((pb, e));
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            pairs.extend(factor_u64(small).into_iter().map(|(p, e)| (BigInt::from(p), e)));
            continue;
        }
        if is_probable_prime(&m) {
            pairs.push((m, 1));
            continue;
        }
        let d = brent_big(&m);
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    Factorization::from_pairs(pairs)
}

/// Number of positive divisors of `s >= 1`.
pub fn divisor_count(s: &BigInt) -> BigInt {
    factorize(s).divisor_count()
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i as u32))
            .collect()
    })
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            out.push((m, 1));
            continue;
        }
        let d = brent_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort();
    let mut merged: Vec<(u64, u32)> = Vec::new();
    for (p, e) in out {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first twelve prime bases; deterministic below
/// 3.3 * 10^24 and probabilistic above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    for p in MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, m) = (2u64, 128u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn brent_big(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let one = BigInt::one();
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let m = 128u64;
        let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
        let (mut x, mut ys) = (BigInt::zero(), BigInt::zero());
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(n: &BigInt) {
        let f = factorize(n);
        assert_eq!(f.value(), n.abs(), "product mismatch for {n}");
        for (p, _) in f.pairs() {
            assert!(is_probable_prime(p), "{p} not prime");
        }
    }

    #[test]
    fn small_numbers_factor_correctly() {
        for n in 1i64..3000 {
            check(&BigInt::from(n));
        }
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(divisor_count(&BigInt::from(1)), BigInt::from(1));
        assert_eq!(divisor_count(&BigInt::from(65)), BigInt::from(4));
        assert_eq!(divisor_count(&BigInt::from(12)), BigInt::from(6));
    }

    #[test]
    fn semiprime_beyond_trial_limit() {
        // 1000003 * 1000033, both above the trial-division bound
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factorize(&n);
        assert_eq!(f.pairs().len(), 2);
        check(&n);
    }

    #[test]
    fn large_powers() {
        let n = BigInt::from(119).pow(41);
        let f = factorize(&n);
        assert_eq!(
            f.pairs(),
            &[(BigInt::from(7), 41), (BigInt::from(17), 41)]
        );
        // 2^31-1 times 2^89-1: exercises the big-integer rho path
        let p = (BigInt::one() << 31) - 1;
        let q = (BigInt::one() << 89) - 1;
        let f = factorize(&(&p * &q * 3));
        assert_eq!(f.pairs().len(), 3);
        check(&(&p * &q * 3));
    }

    #[test]
    fn square_divisors_enumerated() {
        let f = factorize(&BigInt::from(720)); // 2^4 3^2 5
        let gs: Vec<BigInt> = f.square_divisors().into_iter().map(|(g, _)| g).collect();
        let expected: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(gs, expected);
        for (g, rest) in f.square_divisors() {
            assert_eq!(&g * &g * rest.value(), BigInt::from(720));
        }
    }
}
