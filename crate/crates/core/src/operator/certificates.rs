//! Lower-bound certificates for the families on which the operator is
//! unbounded. Every term is backed by representations whose values are
//! re-checked by substitution when the term is recorded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::apply::{apply_kernel, Window};
use super::function::{FamilyTag, Kernel, SparseFunction};
use crate::arith::{divisor_count, harmonic, is_probable_prime, isqrt, ln_abs, CompensatedSum, Factorization};
use crate::error::{Error, Result};
use crate::forms::{FormClass, QuadForm};
use crate::pell::{automorph_group, AutomorphGroup};
use crate::representations::{
    class_from_proper_rep, enumerate_reps_bounded, gamma_prime_power, rep_classes,
    small_rep_for_class, AxisPolicy, RepClass,
};

/// One term of a certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateTerm {
    pub index: u64,
    /// The value `k` whose representations carry the term.
    pub k: BigInt,
    /// `f(k)`.
    pub weight: f64,
    /// Number of representations the term is built from.
    pub count: BigInt,
    /// An exact count of the representations available, when established.
    pub certified_count: Option<BigInt>,
    /// Representations checked by substitution.
    pub witnesses: Vec<(BigInt, BigInt)>,
    /// The lower bound contributed by this term.
    pub term: f64,
    pub partial_sum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Growth {
    pub description: String,
    /// Value of the growth model at the certificate index; `None` when the
    /// series converges.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceCertificate {
    pub family: &'static str,
    pub form: QuadForm,
    pub parameters: Vec<(String, String)>,
    /// `J`, or `M` for the `l^p` family.
    pub index: u64,
    pub partial_sum_lower_bound: f64,
    pub predicted_growth: Growth,
    /// Named auxiliary quantities, such as comparison sums.
    pub extras: Vec<(String, f64)>,
    pub terms: Vec<CertificateTerm>,
    pub notes: Vec<String>,
}

impl DivergenceCertificate {
    pub fn partial_sums(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.partial_sum).collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.terms.windows(2).all(|w| w[1].partial_sum > w[0].partial_sum)
    }

    pub fn extra(&self, name: &str) -> Option<f64> {
        self.extras.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Accumulates terms with their running compensated sums.
struct Ledger {
    sum: CompensatedSum,
    terms: Vec<CertificateTerm>,
}

struct TermInput {
    index: u64,
    k: BigInt,
    weight: f64,
    count: BigInt,
    certified_count: Option<BigInt>,
    witnesses: Vec<(BigInt, BigInt)>,
    term: f64,
}

impl Ledger {
    fn new() -> Self {
        Ledger {
            sum: CompensatedSum::new(),
            terms: Vec::new(),
        }
    }

    fn push(&mut self, t: TermInput) {
        self.sum.add(t.term);
        self.terms.push(CertificateTerm {
            index: t.index,
            k: t.k,
            weight: t.weight,
            count: t.count,
            certified_count: t.certified_count,
            witnesses: t.witnesses,
            term: t.term,
            partial_sum: self.sum.value(),
        });
    }
}

fn verify(q: &QuadForm, m: &BigInt, n: &BigInt, k: &BigInt) -> Result<()> {
    let v = q.eval(m, n);
    if &v == k {
        Ok(())
    } else {
        Err(Error::Invariant(format!("q({m}, {n}) = {v} for {q}, expected {k}")))
    }
}

fn need_positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        Err(Error::domain(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// First `count` primes `p` with `p mod modulus` in `residues`.
fn primes_in_classes(count: usize, modulus: u64, residues: &[u64]) -> Vec<u64> {
    (2u64..)
        .filter(|p| residues.contains(&(p % modulus)) && is_probable_prime(&BigInt::from(*p)))
        .take(count)
        .collect()
}

/// `Σ_{j <= J} j^(-λ)`.
fn power_harmonic(j_max: u64, lambda: f64) -> f64 {
    (1..=j_max).map(|j| (j as f64).powf(-lambda)).collect::<CompensatedSum>().value()
}

/// Points on a zero line of a form with square discriminant: the family
/// `(2cj, (d - b)j)` when `c != 0`, `(bj, -aj)` when `c = 0 != b`, and
/// `(1, j)` for `f = δ_a` when `b = c = 0`.
pub fn square_disc_zero_line(q: &QuadForm, lambda: f64, steps: u64) -> Result<DivergenceCertificate> {
    need_positive("J", steps)?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::domain(format!("lambda must be positive, got {lambda}")));
    }
    let FormClass::SquareDiscriminant { d } = q.classify() else {
        return Err(Error::domain(format!(
            "{q} has nonsquare discriminant {}",
            q.discriminant()
        )));
    };
    // direction, target value, and the scale s in the term |s j|^(-λ)
    let (dir, target, scale) = if !q.c.is_zero() {
        let two_c: BigInt = &q.c * 2;
        ((two_c.clone(), &d - &q.b), BigInt::zero(), two_c.abs())
    } else if !q.b.is_zero() {
        let two_b: BigInt = &q.b * 2;
        ((q.b.clone(), -&q.a), BigInt::zero(), two_b.abs())
    } else {
        ((BigInt::zero(), BigInt::one()), q.a.clone(), BigInt::zero())
    };
    let mut ledger = Ledger::new();
    for j in 1..=steps {
        let jb = BigInt::from(j);
        let (m, n) = if scale.is_zero() {
            (BigInt::one(), jb.clone())
        } else {
            (&dir.0 * &jb, &dir.1 * &jb)
        };
        verify(q, &m, &n, &target)?;
        let term = if scale.is_zero() {
            1.0
        } else {
            crate::arith::inverse_power(&(&scale * &jb), lambda)
        };
        ledger.push(TermInput {
            index: j,
            k: target.clone(),
            weight: 1.0,
            count: BigInt::one(),
            certified_count: None,
            witnesses: vec![(m, n)],
            term,
        });
    }
    let s = scale.to_f64().unwrap_or(f64::INFINITY);
    let predicted_growth = if scale.is_zero() {
        Growth {
            description: "J (equal unit terms)".into(),
            value: Some(steps as f64),
        }
    } else if lambda == 1.0 {
        Growth {
            description: format!("(ln J + euler_gamma) / {scale}"),
            value: Some(((steps as f64).ln() + 0.577_215_664_901_532_9) / s),
        }
    } else if lambda < 1.0 {
        Growth {
            description: format!("J^(1 - lambda) / ((1 - lambda) {scale}^lambda)"),
            value: Some((steps as f64).powf(1.0 - lambda) / ((1.0 - lambda) * s.powf(lambda))),
        }
    } else {
        Growth {
            description: "bounded: the series converges for lambda > 1".into(),
            value: None,
        }
    };
    let mut notes = vec!["one-sided family j = 1..J; each point is a zero of the form".to_string()];
    if q.c.is_zero() && !q.b.is_zero() {
        notes.push("terms use |2bj|^(-lambda), below the actual weight |bj|^(-lambda)".into());
    }
    if scale.is_zero() {
        notes.push("f is the indicator of a; every point (1, j) represents a".into());
    }
    Ok(DivergenceCertificate {
        family: "square-disc",
        form: q.clone(),
        parameters: vec![("lambda".into(), lambda.to_string())],
        index: steps,
        partial_sum_lower_bound: ledger.sum.value(),
        predicted_growth,
        extras: vec![("power_harmonic".into(), if scale.is_zero() { steps as f64 } else { power_harmonic(steps, lambda) / s.powf(lambda) })],
        terms: ledger.terms,
        notes,
    })
}

/// Largest `k_j` whose representations are enumerated outright.
const JACOBI_ENUMERATION_LIMIT: u64 = 2_000_000_000;

/// Gaussian integer product.
fn gauss_mul(x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// Product in `Z[sqrt 2]`.
fn root2_mul(x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&x.0 * &y.0 + &x.1 * &y.1 * 2, &x.0 * &y.1 + &x.1 * &y.0)
}

/// First column of a nonempty class witness: a proper representation.
fn prime_element(q: &QuadForm, p: u64) -> Result<(BigInt, BigInt)> {
    let classes = rep_classes(q, &BigInt::from(p))?;
    let w = classes
        .iter()
        .find_map(|c| c.witness.as_ref())
        .ok_or_else(|| Error::Invariant(format!("{p} is not represented by {q}")))?;
    let (a, g) = w.first_column();
    verify(q, a, g, &BigInt::from(p))?;
    Ok((a.clone(), g.clone()))
}

/// `q = m^2 + n^2`, `k_j = P^j` with `P` the product of the first `r + 1`
/// primes `1 mod 4`, `f(k_j) = j^-2`, kernel `log^(-r)(1 + |m|)`.
pub fn jacobi_family(r: u32, steps: u64) -> Result<DivergenceCertificate> {
    need_positive("r", r as u64)?;
    need_positive("J", steps)?;
    let q = QuadForm::new(1, 0, 1);
    let primes = primes_in_classes(r as usize + 1, 4, &[1]);
    let base: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let ln_base = ln_abs(&base);
    let elems = primes
        .iter()
        .map(|&p| prime_element(&q, p))
        .collect::<Result<Vec<_>>>()?;
    // z1 uses every prime element, z2 conjugates the first
    let step1 = elems.iter().skip(1).fold(elems[0].clone(), |acc, e| gauss_mul(&acc, e));
    let conj0 = (elems[0].0.clone(), -&elems[0].1);
    let step2 = elems.iter().skip(1).fold(conj0, |acc, e| gauss_mul(&acc, e));
    let f = SparseFunction::from_family(FamilyTag::Jacobi { primes: primes.clone() }, steps);
    let mut z1 = (BigInt::one(), BigInt::zero());
    let mut z2 = z1.clone();
    let mut k = BigInt::one();
    let mut ledger = Ledger::new();
    for j in 1..=steps {
        k *= &base;
        z1 = gauss_mul(&z1, &step1);
        z2 = gauss_mul(&z2, &step2);
        verify(&q, &z1.0, &z1.1, &k)?;
        verify(&q, &z2.0, &z2.1, &k)?;
        let fact = Factorization::from_pairs(
            primes.iter().map(|&p| (BigInt::from(p), j as u32)).collect(),
        );
        let d = fact.divisor_count();
        debug_assert_eq!(d, divisor_count(&k));
        // every prime is 1 mod 4, so r_2(k) = 4 d(k); drop the two m = 0
        // points when k is a square
        let square_pts = if j % 2 == 0 { 2 } else { 0 };
        let jacobi_count: BigInt = &d * 4 - square_pts;
        let certified = match k.to_u64() {
            Some(small) if small <= JACOBI_ENUMERATION_LIMIT => {
                let m_max = isqrt(&k).to_u64().expect("small");
                let exact = BigInt::from(enumerate_reps_bounded(&q, &k, m_max)?.len());
                if exact != jacobi_count {
                    return Err(Error::Invariant(format!(
                        "k = {k}: enumeration found {exact} points, the divisor count gives {jacobi_count}"
                    )));
                }
                exact
            }
            _ => jacobi_count,
        };
        let used: BigInt = &d * 2;
        let weight = f.get(&k);
        // |m| <= sqrt(k) gives log(1 + |m|) <= log k
        let ln_k = j as f64 * ln_base;
        let term = weight * used.to_f64().unwrap_or(f64::INFINITY) / ln_k.powi(r as i32);
        ledger.push(TermInput {
            index: j,
            k: k.clone(),
            weight,
            count: used,
            certified_count: Some(certified),
            witnesses: vec![z1.clone(), z2.clone()],
            term,
        });
    }
    let lead = 2.0 / ln_base.powi(r as i32);
    let offset: CompensatedSum = (1..=steps)
        .map(|j| {
            let jf = j as f64;
            (jf + 1.0).powi(r as i32 + 1) / jf.powi(r as i32 + 2) - 1.0 / jf
        })
        .collect();
    let h = harmonic(steps);
    Ok(DivergenceCertificate {
        family: "jacobi",
        form: q,
        parameters: vec![
            ("r".into(), r.to_string()),
            ("primes".into(), join(&primes)),
        ],
        index: steps,
        partial_sum_lower_bound: ledger.sum.value(),
        predicted_growth: Growth {
            description: format!("(2 / ln^{r} {base}) (H_J + c_J), c_J = sum (j+1)^(r+1)/j^(r+2) - 1/j"),
            value: Some(lead * (h + offset.value())),
        },
        extras: vec![
            ("harmonic_J".into(), h),
            ("leading_coefficient".into(), lead),
            ("offset_c_J".into(), offset.value()),
        ],
        terms: ledger.terms,
        notes: vec![
            format!("uses the first r+1 = {} primes 1 mod 4; for r > 1 this prime count is a chosen generalization", r + 1),
            "count = 2 d(k_j), below the certified #A_k = 4 d(k_j) - 2 [k_j square]".into(),
        ],
    })
}

fn join(v: &[u64]) -> String {
    v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// `q = m^2 - 8n^2`, `f = δ_4`: the representations `(t_j, u_j)` of 4 from
/// `(2, 0)` under the automorph `(3, 8; 1, 3)`, kernel `1 / log(1 + |m|)`.
pub fn pell_log_counterexample(steps: u64) -> Result<DivergenceCertificate> {
    need_positive("J", steps)?;
    let q = QuadForm::new(1, 0, -8);
    let four = BigInt::from(4);
    let AutomorphGroup::InfiniteCyclic { generator } = automorph_group(&q)? else {
        return Err(Error::Invariant("m^2 - 8n^2 has an infinite automorph group".into()));
    };
    let gen = if generator.trace().is_negative() { -generator } else { generator };
    // (2, 0) = 2 (1, 0), the class of the unit representation
    let (unit_class, _) = class_from_proper_rep(&q, &BigInt::one(), &BigInt::zero())?;
    let mut v = (BigInt::from(2), BigInt::zero());
    verify(&q, &v.0, &v.1, &four)?;
    let mut six_pow = BigInt::one();
    let mut ledger = Ledger::new();
    let kernel = Kernel::LogPower(1);
    for j in 1..=steps {
        v = gen.apply_to_vector(&v.0, &v.1);
        if v.0.is_negative() {
            v = (-&v.0, -&v.1);
        }
        six_pow *= 6;
        verify(&q, &v.0, &v.1, &four)?;
        if v.0 > &six_pow * 2 {
            return Err(Error::Invariant(format!("t_{j} = {} exceeds 2 6^{j}", v.0)));
        }
        ledger.push(TermInput {
            index: j,
            k: four.clone(),
            weight: 1.0,
            count: BigInt::one(),
            certified_count: None,
            witnesses: vec![v.clone()],
            term: kernel.weight(&v.0),
        });
    }
    // t_j <= 2 6^j gives log(1 + t_j) <= (j + 1) log 6
    let comparison = (harmonic(steps + 1) - 1.0) / 6f64.ln();
    Ok(DivergenceCertificate {
        family: "pell-log",
        form: q,
        parameters: vec![("generator".into(), gen.to_string())],
        index: steps,
        partial_sum_lower_bound: ledger.sum.value(),
        predicted_growth: Growth {
            description: "(H_{J+1} - 1) / ln 6".into(),
            value: Some(comparison),
        },
        extras: vec![("comparison_sum".into(), comparison)],
        terms: ledger.terms,
        notes: vec![format!(
            "the chain starts at 2 (1, 0); (1, 0) lies in the class u = {} of k = 1",
            unit_class.u
        )],
    })
}

/// `q = m^2 - 2n^2`, `k_j = P^(2j+1)` with `P` the product of the first
/// `r + 1` primes `±1 mod 8`, `f(k_j) = j^-2`, kernel `log^(-r)(1 + |m|)`.
/// One representative per congruence class, for every gcd stratum `g`.
pub fn indefinite_log_family(r: u32, steps: u64) -> Result<DivergenceCertificate> {
    need_positive("r", r as u64)?;
    need_positive("J", steps)?;
    let q = QuadForm::new(1, 0, -2);
    let eight = BigInt::from(8);
    let primes = primes_in_classes(r as usize + 1, 8, &[1, 7]);
    let base: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let nprimes = primes.len();
    let max_exp = 2 * steps as usize + 1;
    // powers[i][s][e] = (prime element i, conjugated when s = 1)^e
    let mut powers: Vec<[Vec<(BigInt, BigInt)>; 2]> = Vec::with_capacity(nprimes);
    let mut gammas: Vec<Vec<BigInt>> = Vec::with_capacity(nprimes);
    for &p in &primes {
        let e = prime_element(&q, p)?;
        let conj = (e.0.clone(), -&e.1);
        let mut pw = [vec![(BigInt::one(), BigInt::zero())], vec![(BigInt::one(), BigInt::zero())]];
        for _ in 0..max_exp {
            let next0 = root2_mul(pw[0].last().expect("nonempty"), &e);
            let next1 = root2_mul(pw[1].last().expect("nonempty"), &conj);
            pw[0].push(next0);
            pw[1].push(next1);
        }
        powers.push(pw);
        let pb = BigInt::from(p);
        gammas.push((0..=max_exp).map(|a| if a == 0 { BigInt::one() } else { gamma_prime_power(&eight, &pb, a as u32) }).collect());
    }
    let classes_per_stratum = 1usize << nprimes;
    let mut ledger = Ledger::new();
    let mut k = base.clone();
    let base_sq = &base * &base;
    let kernel = Kernel::LogPower(r);
    let f = SparseFunction::from_family(FamilyTag::IndefiniteLog { primes: primes.clone() }, steps);
    let ten = BigInt::from(10);
    for j in 1..=steps {
        k *= &base_sq;
        // exponent vectors of g, ordered by g ascending
        let mut strata: Vec<(BigInt, Vec<usize>)> = Vec::new();
        let total = (j as usize + 1).pow(nprimes as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut exps = Vec::with_capacity(nprimes);
            let mut g = BigInt::one();
            for &p in &primes {
                let e = rest % (j as usize + 1);
                rest /= j as usize + 1;
                g *= BigInt::from(p).pow(e as u32);
                exps.push(e);
            }
            strata.push((g, exps));
        }
        strata.sort();
        let results = strata
            .par_iter()
            .map(|(g, exps)| -> Result<(Vec<f64>, Vec<(BigInt, BigInt)>, BigInt)> {
                let a: Vec<usize> = exps.iter().map(|e| 2 * (j as usize - e) + 1).collect();
                let k_small: BigInt = k.div_floor(&(g * g));
                let gamma: BigInt = a.iter().enumerate().map(|(i, &ai)| gammas[i][ai].clone()).product();
                if gamma != BigInt::from(classes_per_stratum) {
                    return Err(Error::Invariant(format!(
                        "Gamma_8({k_small}) = {gamma}, expected {classes_per_stratum}"
                    )));
                }
                let mut us = Vec::with_capacity(classes_per_stratum);
                let mut weights = Vec::with_capacity(classes_per_stratum);
                let mut reps = Vec::with_capacity(classes_per_stratum);
                for mask in 0..classes_per_stratum {
                    let elem = (0..nprimes).fold((BigInt::one(), BigInt::zero()), |acc, i| {
                        root2_mul(&acc, &powers[i][(mask >> i) & 1][a[i]])
                    });
                    verify(&q, &elem.0, &elem.1, &k_small)?;
                    let (base_sol, w) = class_from_proper_rep(&q, &elem.0, &elem.1)?;
                    us.push(base_sol.u.clone());
                    let cls = RepClass {
                        g: g.clone(),
                        base: base_sol,
                        witness: Some(w),
                        orbit_anchor: None,
                    };
                    let bound = &ten * &k_small;
                    let rep = small_rep_for_class(&q, &cls, &bound, AxisPolicy::Exclude)?;
                    verify(&q, &rep.m, &rep.n, &k)?;
                    if !rep.m.is_positive() {
                        return Err(Error::Invariant(format!("representative {} is not positive", rep.m)));
                    }
                    weights.push(kernel.weight(&rep.m));
                    reps.push((rep.m, rep.n));
                }
                us.sort();
                us.dedup();
                if us.len() != classes_per_stratum {
                    return Err(Error::Invariant(format!(
                        "g = {g}: {} distinct classes among {classes_per_stratum} constructed representations",
                        us.len()
                    )));
                }
                Ok((weights, reps, gamma))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut inner = CompensatedSum::new();
        let mut solutions = BigInt::zero();
        for (weights, _, gamma) in &results {
            for w in weights {
                inner.add(*w);
            }
            solutions += gamma;
        }
        let first = results.first().and_then(|r| r.1.first().cloned());
        let last = results.last().and_then(|r| r.1.last().cloned());
        let witnesses: Vec<(BigInt, BigInt)> = first.into_iter().chain(last).collect();
        let weight = f.get(&k);
        ledger.push(TermInput {
            index: j,
            k: k.clone(),
            weight,
            count: solutions.clone(),
            certified_count: Some(solutions),
            witnesses,
            term: weight * inner.value(),
        });
    }
    let ln_base = ln_abs(&base);
    let h = harmonic(steps);
    let lead = (classes_per_stratum as f64) / ln_base.powi(r as i32);
    Ok(DivergenceCertificate {
        family: "indefinite-log",
        form: q,
        parameters: vec![
            ("r".into(), r.to_string()),
            ("primes".into(), join(&primes)),
        ],
        index: steps,
        partial_sum_lower_bound: ledger.sum.value(),
        predicted_growth: Growth {
            description: format!("about ({classes_per_stratum} / ln^{r} {base}) H_J"),
            value: Some(lead * h),
        },
        extras: vec![
            ("harmonic_J".into(), h),
            ("comparison_bound".into(), h / ln_base.powi(r as i32)),
        ],
        terms: ledger.terms,
        notes: vec![
            format!("uses the first r+1 = {} primes 1 or 7 mod 8; for r > 1 this prime count is a chosen generalization", r + 1),
            "one positive representative per congruence class and gcd stratum, each with first entry at most 10 k_j / g^2 before scaling by g".into(),
        ],
    })
}

/// `q = m^2 + n^2`, `λ = 1 - 1/p`, `f(j^2) = j^(-1/p) log^(-(1+p)/2p) j` for
/// `2 <= j <= M`: `f` stays in `l^p` while `I_λ f(0)` diverges.
pub fn lp_sharpness_family(p: f64, max_m: u64) -> Result<DivergenceCertificate> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::domain(format!("p must lie in (1, inf), got {p}")));
    }
    if max_m < 2 {
        return Err(Error::domain("M must be at least 2"));
    }
    let q = QuadForm::new(1, 0, 1);
    let lambda = 1.0 - 1.0 / p;
    let kernel = Kernel::power(lambda)?;
    let f = SparseFunction::from_family(FamilyTag::LpSharpness { p }, max_m);
    let mut ledger = Ledger::new();
    let mut norm = CompensatedSum::new();
    for m in 2..=max_m {
        let mb = BigInt::from(m);
        let k = &mb * &mb;
        verify(&q, &mb, &BigInt::zero(), &k)?;
        verify(&q, &-&mb, &BigInt::zero(), &k)?;
        let weight = f.get(&k);
        norm.add(weight.powf(p));
        ledger.push(TermInput {
            index: m,
            k,
            weight,
            count: BigInt::from(2),
            certified_count: None,
            witnesses: vec![(mb.clone(), BigInt::zero()), (-mb, BigInt::zero())],
            term: 2.0 * weight * kernel.weight_i64(m as i64),
        });
    }
    let lm = (max_m as f64).ln();
    // sum_{j > M} 1 / (j log^s j) <= integral from M, s = (1 + p) / 2
    let norm_tail = 2.0 * lm.powf((1.0 - p) / 2.0) / (p - 1.0);
    let mut extras = vec![
        ("norm_p_pow_partial".into(), norm.value()),
        ("norm_p_pow_tail_bound".into(), norm_tail),
    ];
    if max_m <= 100_000 {
        let v = apply_kernel(&q, &f, kernel, Window::single(0), max_m)?[0].1;
        let total = ledger.sum.value();
        if (v - total).abs() > 1e-12 * total.abs().max(1.0) {
            return Err(Error::Invariant(format!(
                "operator value {v} at 0 disagrees with the ledger sum {total}"
            )));
        }
        extras.push(("operator_value_at_0".into(), v));
    }
    let expo = (p - 1.0) / (2.0 * p);
    Ok(DivergenceCertificate {
        family: "lp-sharp",
        form: q,
        parameters: vec![("p".into(), p.to_string()), ("lambda".into(), lambda.to_string())],
        index: max_m,
        partial_sum_lower_bound: ledger.sum.value(),
        predicted_growth: Growth {
            description: format!("(4p / (p - 1)) (ln M)^{expo} + const"),
            value: Some(4.0 * p / (p - 1.0) * lm.powf(expo)),
        },
        extras,
        terms: ledger.terms,
        notes: vec!["lower bound for |I f(0)|; ||f||_p^p is the convergent comparison".into()],
    })
}
