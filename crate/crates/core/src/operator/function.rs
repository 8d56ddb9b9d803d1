//! Inputs of the operator: finitely supported functions, kernels and
//! exponents.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{inverse_power, ln_abs, CompensatedSum};
use crate::error::{Error, Result};

/// Weight `w(m)` applied to the `m`-th term of the operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// `|m|^(-λ)`.
    Power(f64),
    /// `log^(-r)(1 + |m|)`.
    LogPower(u32),
}

impl Kernel {
    pub fn power(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::domain(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Kernel::Power(lambda))
    }

    /// The weight at a nonzero `m`.
    pub fn weight(&self, m: &BigInt) -> f64 {
        match *self {
            Kernel::Power(lambda) => inverse_power(m, lambda),
            Kernel::LogPower(r) => {
                let l = match m.abs().to_u64() {
                    Some(v) if v < (1 << 52) => ((v + 1) as f64).ln(),
                    _ => ln_abs(&(m.abs() + 1)),
                };
                l.powi(-(r as i32))
            }
        }
    }

    pub fn weight_i64(&self, m: i64) -> f64 {
        let a = m.unsigned_abs() as f64;
        match *self {
            Kernel::Power(lambda) => a.powf(-lambda),
            Kernel::LogPower(r) => (a + 1.0).ln().powi(-(r as i32)),
        }
    }
}

/// Exponent of an `l^p` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpExponent {
    Finite(f64),
    Infinity,
}

impl FromStr for LpExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity") {
            return Ok(LpExponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::domain(format!("p must lie in [1, inf], got {s}")));
        }
        Ok(LpExponent::Finite(p))
    }
}

impl fmt::Display for LpExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpExponent::Finite(p) => write!(f, "{p}"),
            LpExponent::Infinity => write!(f, "inf"),
        }
    }
}

/// The counterexample families whose supports can be materialized on
/// demand.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyTag {
    /// `f((5*13*...)^j) = j^-2` on sums of two squares.
    Jacobi { primes: Vec<u64> },
    /// `f((7*17*...)^(2j+1)) = j^-2` for `m^2 - 2n^2`.
    IndefiniteLog { primes: Vec<u64> },
    /// `f(j^2) = j^(-1/p) log^(-(1+p)/2p) j` for `j >= 2`.
    LpSharpness { p: f64 },
    /// `f = δ_4` for `m^2 - 8n^2`.
    PellLog,
}

/// A finitely supported real function on the integers.
#[derive(Debug, Clone, Default)]
pub struct SparseFunction {
    entries: BTreeMap<BigInt, f64>,
    small: HashMap<i128, f64>,
    tag: Option<FamilyTag>,
}

impl SparseFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// The indicator of `k` scaled by `value`.
    pub fn delta(k: impl Into<BigInt>, value: f64) -> Self {
        let mut f = SparseFunction::new();
        f.insert(k.into(), value);
        f
    }

    /// Sets `f(k) = value`; zero values are dropped from the support.
    pub fn insert(&mut self, k: BigInt, value: f64) {
        if let Some(s) = k.to_i128() {
            if value == 0.0 {
                self.small.remove(&s);
            } else {
                self.small.insert(s, value);
            }
        }
        if value == 0.0 {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, value);
        }
    }

    /// The family materialized on indices `j <= count` (`2 <= j <= count`
    /// for the `l^p` family).
    pub fn from_family(tag: FamilyTag, count: u64) -> Self {
        let mut f = SparseFunction::new();
        match &tag {
            FamilyTag::Jacobi { primes } => {
                let base: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
                let mut k = BigInt::from(1);
                for j in 1..=count {
                    k *= &base;
                    f.insert(k.clone(), 1.0 / (j as f64 * j as f64));
                }
            }
            FamilyTag::IndefiniteLog { primes } => {
                let base: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
                let sq = &base * &base;
                let mut k = base.clone();
                for j in 1..=count {
                    k *= &sq;
                    f.insert(k.clone(), 1.0 / (j as f64 * j as f64));
                }
            }
            FamilyTag::LpSharpness { p } => {
                for j in 2..=count {
                    let jf = j as f64;
                    let v = jf.powf(-1.0 / p) * jf.ln().powf(-(1.0 + p) / (2.0 * p));
                    f.insert(BigInt::from(j) * BigInt::from(j), v);
                }
            }
            FamilyTag::PellLog => f.insert(BigInt::from(4), 1.0),
        }
        f.tag = Some(tag);
        f
    }

    /// Parses CSV lines `k,value`; blank lines and lines starting with `#`
    /// are skipped, as is a leading `k,value` header.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut f = SparseFunction::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((ks, vs)) = line.split_once(',') else {
                return Err(Error::Parse(format!("line {}: expected k,value", i + 1)));
            };
            if i == 0 && ks.trim() == "k" {
                continue;
            }
            let k: BigInt = ks
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad integer {ks:?}", i + 1)))?;
            let v: f64 = vs
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad value {vs:?}", i + 1)))?;
            if !v.is_finite() {
                return Err(Error::domain(format!("line {}: value must be finite", i + 1)));
            }
            f.insert(k, v);
        }
        Ok(f)
    }

    pub fn tag(&self) -> Option<&FamilyTag> {
        self.tag.as_ref()
    }

    pub fn get(&self, k: &BigInt) -> f64 {
        match k.to_i128() {
            Some(s) => self.get_i128(s),
            None => self.entries.get(k).copied().unwrap_or(0.0),
        }
    }

    pub fn get_i128(&self, k: i128) -> f64 {
        self.small.get(&k).copied().unwrap_or(0.0)
    }

    /// Support points in ascending order with their values.
    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, f64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| *v >= 0.0)
    }

    /// Largest `|k|` in the support.
    pub fn max_abs_k(&self) -> Option<BigInt> {
        self.entries.keys().map(|k| k.abs()).max()
    }

    pub fn norm(&self, p: LpExponent) -> f64 {
        match p {
            LpExponent::Infinity => self.entries.values().fold(0.0, |m, v| m.max(v.abs())),
            LpExponent::Finite(p) => {
                let s: CompensatedSum = self.entries.values().map(|v| v.abs().powf(p)).collect();
                s.value().powf(1.0 / p)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_parsing() {
        let f = SparseFunction::from_csv("k,value\n25,1.0\n# note\n\n-3,0.5\n").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.get(&BigInt::from(25)), 1.0);
        assert_eq!(f.get(&BigInt::from(-3)), 0.5);
        assert_eq!(f.get(&BigInt::from(4)), 0.0);
        assert!(SparseFunction::from_csv("1;2").is_err());
        assert!(SparseFunction::from_csv("x,2").is_err());
        assert!(SparseFunction::from_csv("1,nan").is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!("inf".parse::<LpExponent>().unwrap(), LpExponent::Infinity);
        assert_eq!("2".parse::<LpExponent>().unwrap(), LpExponent::Finite(2.0));
        assert!("0.5".parse::<LpExponent>().is_err());
    }

    #[test]
    fn families_materialize() {
        let f = SparseFunction::from_family(FamilyTag::Jacobi { primes: vec![5, 13] }, 3);
        assert_eq!(f.get(&BigInt::from(65 * 65)), 0.25);
        let f = SparseFunction::from_family(FamilyTag::IndefiniteLog { primes: vec![7, 17] }, 2);
        assert_eq!(f.get(&BigInt::from(119).pow(5)), 0.25);
        let f = SparseFunction::from_family(FamilyTag::LpSharpness { p: 2.0 }, 3);
        assert_eq!(f.len(), 2);
        assert!(f.tag().is_some());
    }

    #[test]
    fn norms_and_weights() {
        let mut f = SparseFunction::delta(3, -2.0);
        f.insert(BigInt::from(5), 1.0);
        assert_eq!(f.norm(LpExponent::Infinity), 2.0);
        assert!((f.norm(LpExponent::Finite(2.0)) - 5f64.sqrt()).abs() < 1e-15);
        let k = Kernel::power(1.0).unwrap();
        assert_eq!(k.weight(&BigInt::from(-4)), 0.25);
        assert!(Kernel::power(0.0).is_err());
        let l = Kernel::LogPower(2);
        assert!((l.weight(&BigInt::from(6)) - 7f64.ln().powi(-2)).abs() < 1e-15);
    }
}
