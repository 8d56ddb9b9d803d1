//! Bounded enumeration of representations `q(m, n) = k` and the brute-force
//! oracle it is tested against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, exact_sqrt_u128, gcd, isqrt};
use crate::error::{Error, Result};
use crate::forms::{FormClass, QuadForm};

/// A solution of `q(m, n) = k`; `g = gcd(m, n)`, zero only at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    pub m: BigInt,
    pub n: BigInt,
    pub k: BigInt,
    pub g: BigInt,
}

impl Representation {
    pub fn new(m: BigInt, n: BigInt, k: BigInt) -> Self {
        let g = gcd(&m, &n);
        Representation { m, n, k, g }
    }

    pub fn is_proper(&self) -> bool {
        self.g == BigInt::from(1)
    }
}

/// Sort key of the fixed enumeration order: `m = 1, -1, 2, -2, ...`,
/// then `n` ascending.
pub fn order_key(m: &BigInt, n: &BigInt) -> (BigInt, bool, BigInt) {
    (m.abs(), m.is_negative(), n.clone())
}

fn sort_reps(reps: &mut [Representation]) {
    reps.sort_by(|x, y| order_key(&x.m, &x.n).cmp(&order_key(&y.m, &y.n)));
}

/// The `m` values `1, -1, 2, -2, ..., M, -M`.
pub fn m_order(max_m: u64) -> impl Iterator<Item = i64> {
    (1..=max_m as i64).flat_map(|m| [m, -m])
}

/// Every `(m, n)` with `q(m, n) = k` and `1 <= |m| <= M`, solving the
/// quadratic in `n` exactly for each `m`.
pub fn enumerate_reps_bounded(q: &QuadForm, k: &BigInt, max_m: u64) -> Result<Vec<Representation>> {
    if q.b.is_zero() && q.c.is_zero() {
        return Err(Error::domain(format!(
            "form {q} does not involve n; every n solves it for suitable m"
        )));
    }
    let mut out = Vec::new();
    if let Some(fast) = FastSolver::new(q, k, max_m) {
        for m in m_order(max_m) {
            for n in fast.solve(m) {
                out.push(Representation::new(BigInt::from(m), BigInt::from(n), k.clone()));
            }
        }
        return Ok(out);
    }
    for m in m_order(max_m) {
        let m = BigInt::from(m);
        for n in solve_for_n(q, k, &m) {
            out.push(Representation::new(m.clone(), n, k.clone()));
        }
    }
    Ok(out)
}

/// All `n` with `q(m, n) = k` for a fixed `m`, ascending. Requires `b` or
/// `c` nonzero.
pub fn solve_for_n(q: &QuadForm, k: &BigInt, m: &BigInt) -> Vec<BigInt> {
    if q.c.is_zero() {
        // b m n = k - a m^2
        let den = &q.b * m;
        let num = k - &q.a * m * m;
        if den.is_zero() {
            return Vec::new();
        }
        let (quo, rem) = num.div_rem(&den);
        return if rem.is_zero() { vec![quo] } else { Vec::new() };
    }
    let disc = q.discriminant() * m * m + BigInt::from(4) * &q.c * k;
    let Some(s) = exact_sqrt(&disc) else {
        return Vec::new();
    };
    let two_c = &q.c * 2;
    let bm = &q.b * m;
    let mut ns = Vec::with_capacity(2);
    for num in [-&bm - &s, -&bm + &s] {
        let (quo, rem) = num.div_rem(&two_c);
        if rem.is_zero() {
            ns.push(quo);
        }
    }
    ns.sort();
    ns.dedup();
    ns
}

/// Machine-word solver used when `|Δ| M^2 + 4|c||k|` stays far from
/// overflow.
pub(crate) struct FastSolver {
    a: i128,
    b: i128,
    c: i128,
    k: i128,
    disc: i128,
}

impl FastSolver {
    pub(crate) fn new(q: &QuadForm, k: &BigInt, max_m: u64) -> Option<Self> {
        let [a, b, c] = q.to_i128()?;
        let k128 = k.to_i128()?;
        let disc = q.discriminant();
        let mm = BigInt::from(max_m);
        let worst = disc.abs() * &mm * &mm
            + BigInt::from(4) * q.c.abs() * k.abs()
            + (q.a.abs() + q.b.abs()) * &mm * &mm
            + k.abs();
        if worst.bits() > 120 {
            return None;
        }
        Some(FastSolver {
            a,
            b,
            c,
            k: k128,
            disc: disc.to_i128()?,
        })
    }

    pub(crate) fn solve(&self, m: i64) -> Vec<i64> {
        let m = m as i128;
        if self.c == 0 {
            let den = self.b * m;
            let num = self.k - self.a * m * m;
            if den == 0 || num % den != 0 {
                return Vec::new();
            }
            return vec![(num / den) as i64];
        }
        let d = self.disc * m * m + 4 * self.c * self.k;
        if d < 0 {
            return Vec::new();
        }
        let Some(s) = exact_sqrt_u128(d as u128) else {
            return Vec::new();
        };
        let s = s as i128;
        let two_c = 2 * self.c;
        let bm = self.b * m;
        let mut ns = Vec::with_capacity(2);
        for num in [-bm - s, -bm + s] {
            if num % two_c == 0 {
                ns.push((num / two_c) as i64);
            }
        }
        ns.sort_unstable();
        ns.dedup();
        ns
    }
}

/// Bound on `|n|` over all solutions with `|m| <= M` and `|k| <= K`.
pub fn n_bound(q: &QuadForm, max_k: &BigInt, max_m: u64) -> BigInt {
    let mm = BigInt::from(max_m);
    if q.c.is_zero() {
        if q.b.is_zero() {
            return BigInt::zero();
        }
        return (max_k.abs() + q.a.abs() * &mm * &mm) / q.b.abs() + 1;
    }
    let inner = q.discriminant().abs() * &mm * &mm + BigInt::from(4) * q.c.abs() * max_k.abs();
    (q.b.abs() * &mm + isqrt(&inner)) / (q.c.abs() * 2) + 1
}

/// Exhaustive scan of `|m| <= max_m`, `|n| <= max_n`, in enumeration order.
/// Includes `m = 0`.
pub fn brute_force_reps(q: &QuadForm, k: &BigInt, max_m: u64, max_n: u64) -> Vec<Representation> {
    let mut out = Vec::new();
    let (mm, nn) = (max_m as i64, max_n as i64);
    for m in -mm..=mm {
        let mb = BigInt::from(m);
        for n in -nn..=nn {
            let nb = BigInt::from(n);
            if q.eval(&mb, &nb) == *k {
                out.push(Representation::new(mb.clone(), nb, k.clone()));
            }
        }
    }
    sort_reps(&mut out);
    out
}

/// One exhaustive pass over the box `|m| <= max_m`, `|n| <= max_n`, bucketing
/// every point with `k_min <= q(m, n) <= k_max` by its value. Points are
/// listed as `(m, n)` in enumeration order.
pub fn brute_force_table(
    q: &QuadForm,
    k_min: i64,
    k_max: i64,
    max_m: u64,
    max_n: u64,
) -> Result<BTreeMap<i64, Vec<(i64, i64)>>> {
    let [a, b, c] = q
        .to_i128()
        .ok_or_else(|| Error::domain("brute_force_table needs machine-size coefficients"))?;
    let mut table: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    let (mm, nn) = (max_m as i128, max_n as i128);
    for m in -mm..=mm {
        let am2 = a * m * m;
        let bm = b * m;
        for n in -nn..=nn {
            let v = am2 + bm * n + c * n * n;
            if v >= k_min as i128 && v <= k_max as i128 {
                table.entry(v as i64).or_default().push((m as i64, n as i64));
            }
        }
    }
    for pts in table.values_mut() {
        pts.sort_by_key(|&(m, n)| (m.unsigned_abs(), m < 0, n));
    }
    Ok(table)
}

/// The solution set of `q(m, n) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroSet {
    OriginOnly,
    AllOfZ2,
    /// Union of the lattice lines spanned by these primitive directions.
    Lines(Vec<(BigInt, BigInt)>),
}

fn primitive_direction(x: BigInt, y: BigInt) -> (BigInt, BigInt) {
    let g = gcd(&x, &y);
    let (mut x, mut y) = (x / &g, y / &g);
    if x.is_negative() || (x.is_zero() && y.is_negative()) {
        x = -x;
        y = -y;
    }
    (x, y)
}

pub fn zero_representations(q: &QuadForm) -> ZeroSet {
    if q.is_zero() {
        return ZeroSet::AllOfZ2;
    }
    match q.classify() {
        FormClass::SquareDiscriminant { d } => {
            let mut dirs = if q.c.is_zero() {
                vec![
                    primitive_direction(BigInt::zero(), BigInt::from(1)),
                    primitive_direction(q.b.clone(), -&q.a),
                ]
            } else {
                let two_c: BigInt = &q.c * 2;
                vec![
                    primitive_direction(two_c.clone(), -&q.b + &d),
                    primitive_direction(two_c, -&q.b - &d),
                ]
            };
            dirs.sort();
            dirs.dedup();
            ZeroSet::Lines(dirs)
        }
        _ => ZeroSet::OriginOnly,
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c)
    }

    fn pairs(reps: &[Representation]) -> Vec<(i64, i64)> {
        reps.iter()
            .map(|r| (r.m.to_i64().unwrap(), r.n.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn enumeration_examples() {
        let r = enumerate_reps_bounded(&q(1, 0, 1), &BigInt::from(65), 8).unwrap();
        assert_eq!(r.len(), 16);
        let r = enumerate_reps_bounded(&q(1, 0, -2), &BigInt::from(1), 20).unwrap();
        assert_eq!(
            pairs(&r),
            vec![
                (1, 0),
                (-1, 0),
                (3, -2),
                (3, 2),
                (-3, -2),
                (-3, 2),
                (17, -12),
                (17, 12),
                (-17, -12),
                (-17, 12)
            ]
        );
        assert!(enumerate_reps_bounded(&q(1, 0, 1), &BigInt::from(-1), 100)
            .unwrap()
            .is_empty());
        assert!(enumerate_reps_bounded(&q(3, 0, 0), &BigInt::from(3), 5).is_err());
    }

    #[test]
    fn big_path_agrees_with_fast_path() {
        let f = q(3, 1, -5);
        let k = BigInt::from(-3);
        let fast = enumerate_reps_bounded(&f, &k, 300).unwrap();
        let mut slow = Vec::new();
        for m in m_order(300) {
            let m = BigInt::from(m);
            for n in solve_for_n(&f, &k, &m) {
                slow.push(Representation::new(m.clone(), n, k.clone()));
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_reps(&q(1, 0, 1), &BigInt::from(5), 10, 10).len(), 8);
        assert_eq!(brute_force_reps(&q(1, 1, 1), &BigInt::from(1), 5, 5).len(), 6);
        assert_eq!(
            pairs(&brute_force_reps(&q(1, 0, -2), &BigInt::zero(), 50, 50)),
            vec![(0, 0)]
        );
        let t = brute_force_table(&q(1, 0, 1), -5, 5, 3, 3).unwrap();
        assert_eq!(t[&5].len(), 8);
        assert_eq!(t[&0], vec![(0, 0)]);
    }

    #[test]
    fn zero_sets() {
        assert_eq!(zero_representations(&q(1, 0, 1)), ZeroSet::OriginOnly);
        assert_eq!(zero_representations(&q(1, 0, -2)), ZeroSet::OriginOnly);
        assert_eq!(zero_representations(&q(0, 0, 0)), ZeroSet::AllOfZ2);
        let b = |x: i64| BigInt::from(x);
        assert_eq!(
            zero_representations(&q(1, 3, 2)),
            ZeroSet::Lines(vec![(b(1), b(-1)), (b(2), b(-1))])
        );
        assert_eq!(
            zero_representations(&q(0, 1, 0)),
            ZeroSet::Lines(vec![(b(0), b(1)), (b(1), b(0))])
        );
    }
}
