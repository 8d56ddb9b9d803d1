//! Integral binary quadratic forms `a m^2 + b mn + c n^2` and the action of
//! unimodular substitutions on them.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, isqrt};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormClass {
    PositiveDefinite,
    NegativeDefinite,
    IndefiniteNonsquare,
    /// `Δ = d^2` with `d >= 0`; covers the zero form.
    SquareDiscriminant { d: BigInt },
}

impl FormClass {
    pub fn tag(&self) -> &'static str {
        match self {
            FormClass::PositiveDefinite => "PositiveDefinite",
            FormClass::NegativeDefinite => "NegativeDefinite",
            FormClass::IndefiniteNonsquare => "IndefiniteNonsquare",
            FormClass::SquareDiscriminant { .. } => "SquareDiscriminant",
        }
    }

    pub fn is_definite(&self) -> bool {
        matches!(self, FormClass::PositiveDefinite | FormClass::NegativeDefinite)
    }
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// `gcd(a, b, c)`; zero only for the zero form.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// The form divided by its content, together with the content.
    pub fn primitive_part(&self) -> Result<(QuadForm, BigInt)> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::unsupported(self, "zero form has no primitive part"));
        }
        Ok((
            QuadForm::new(&self.a / &g, &self.b / &g, &self.c / &g),
            g,
        ))
    }

    pub fn classify(&self) -> FormClass {
        let disc = self.discriminant();
        if disc.is_negative() {
            // Δ < 0 forces a != 0
            if self.a.is_positive() {
                FormClass::PositiveDefinite
            } else {
                FormClass::NegativeDefinite
            }
        } else if let Some(d) = exact_sqrt(&disc) {
            FormClass::SquareDiscriminant { d }
        } else {
            FormClass::IndefiniteNonsquare
        }
    }

    pub fn eval(&self, m: &BigInt, n: &BigInt) -> BigInt {
        &self.a * m * m + &self.b * m * n + &self.c * n * n
    }

    pub fn negate(&self) -> QuadForm {
        QuadForm::new(-&self.a, -&self.b, -&self.c)
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero()
    }

    /// The coefficients as `i128` when all three fit.
    pub fn to_i128(&self) -> Option<[i128; 3]> {
        Some([self.a.to_i128()?, self.b.to_i128()?, self.c.to_i128()?])
    }

    /// The form `Q(M, N) = q(αM + βN, γM + δN)`.
    pub fn apply_transform(&self, t: &UnimodularTransform) -> QuadForm {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (al, be, ga, de) = (&t.alpha, &t.beta, &t.gamma, &t.delta);
        let big_a = a * al * al + b * al * ga + c * ga * ga;
        let big_b = BigInt::from(2) * a * al * be + b * (al * de + be * ga) + BigInt::from(2) * c * ga * de;
        let big_c = a * be * be + b * be * de + c * de * de;
        QuadForm::new(big_a, big_b, big_c)
    }

    /// Whether the form satisfies the reduction inequalities of its class.
    ///
    /// Negative definite forms are judged through their negation.
    pub fn is_reduced(&self) -> bool {
        match self.classify() {
            FormClass::PositiveDefinite => definite_reduced(self),
            FormClass::NegativeDefinite => definite_reduced(&self.negate()),
            FormClass::IndefiniteNonsquare => {
                indefinite_reduced(self, &isqrt(&self.discriminant()))
            }
            FormClass::SquareDiscriminant { .. } => false,
        }
    }

    /// A reduced form properly equivalent to `self` and a witness `T`
    /// (`det T = 1`) with `self.apply_transform(T)` equal to it.
    pub fn reduce(&self) -> Result<(QuadForm, UnimodularTransform)> {
        match self.classify() {
            FormClass::PositiveDefinite => Ok(reduce_definite(self)),
            FormClass::NegativeDefinite => {
                let (r, t) = reduce_definite(&self.negate());
                Ok((r.negate(), t))
            }
            FormClass::IndefiniteNonsquare => Ok(reduce_indefinite(self)),
            FormClass::SquareDiscriminant { .. } => Err(square_error(self)),
        }
    }

    /// The cycle of reduced forms in the class of an indefinite form,
    /// starting at `self.reduce()` and following the ρ-step.
    pub fn cycle(&self) -> Result<Vec<CycleEntry>> {
        if self.classify() != FormClass::IndefiniteNonsquare {
            return Err(Error::unsupported(
                self,
                "cycles exist only for indefinite forms with nonsquare discriminant",
            ));
        }
        let disc = self.discriminant();
        let r = isqrt(&disc);
        let (start, t0) = reduce_indefinite(self);
        let mut out = vec![CycleEntry {
            form: start.clone(),
            witness: t0.clone(),
        }];
        let (mut cur, mut t) = (start.clone(), t0);
        loop {
            let (next, step) = rho(&cur, &disc, &r);
            t = &t * &step;
            if next == start {
                break;
            }
            out.push(CycleEntry {
                form: next.clone(),
                witness: t.clone(),
            });
            cur = next;
        }
        Ok(out)
    }

    /// A proper equivalence `T` with `self.apply_transform(T) == other`,
    /// or `None` when the forms are not properly equivalent.
    pub fn equivalent(&self, other: &QuadForm) -> Result<Option<UnimodularTransform>> {
        if self.discriminant() != other.discriminant() {
            return Ok(None);
        }
        ClassLocator::new(self)?.witness_to(other)
    }
}

fn square_error(q: &QuadForm) -> Error {
    if q.is_zero() {
        Error::unsupported(q, "the zero form has no reduction")
    } else {
        Error::unsupported(q, "square discriminant forms are outside reduction theory")
    }
}

fn definite_reduced(q: &QuadForm) -> bool {
    let (a, b, c) = (&q.a, &q.b, &q.c);
    b.abs() <= *a && a <= c && (!(b.abs() == *a || a == c) || !b.is_negative())
}

fn indefinite_reduced(q: &QuadForm, r: &BigInt) -> bool {
    let two_a = BigInt::from(2) * q.a.abs();
    q.b.is_positive() && q.b <= *r && (&two_a + &q.b) > *r && (&two_a - &q.b) <= *r
}

/// Gauss reduction of a positive definite form.
fn reduce_definite(q: &QuadForm) -> (QuadForm, UnimodularTransform) {
    let mut f = q.clone();
    let mut t = UnimodularTransform::identity();
    let s_mat = UnimodularTransform::s();
    loop {
        let two_a = BigInt::from(2) * &f.a;
        if !(f.b > -&f.a && f.b <= f.a) {
            let s = (&f.a - &f.b).div_floor(&two_a);
            let step = UnimodularTransform::translation(s);
            f = f.apply_transform(&step);
            t = &t * &step;
        }
        if f.a > f.c || (f.a == f.c && f.b.is_negative()) {
            f = f.apply_transform(&s_mat);
            t = &t * &s_mat;
            continue;
        }
        return (f, t);
    }
}

/// One ρ-step `(a, b, c) -> (c, b', (b'^2 - Δ)/4c)` with its matrix
/// `[0 -1; 1 s]`.
pub(crate) fn rho(q: &QuadForm, disc: &BigInt, r: &BigInt) -> (QuadForm, UnimodularTransform) {
    let c = &q.c;
    let abs_c = c.abs();
    let two_c = BigInt::from(2) * &abs_c;
    let minus_b = -&q.b;
    // b' = -b mod 2|c|, placed in the admissible window
    let low: BigInt = if abs_c > *r {
        -&abs_c + 1
    } else {
        r - &two_c + 1
    };
    let b_new = &low + (&minus_b - &low).mod_floor(&two_c);
    let s = (&b_new + &q.b) / (BigInt::from(2) * c);
    let c_new = (&b_new * &b_new - disc) / (BigInt::from(4) * c);
    let step = UnimodularTransform {
        alpha: BigInt::zero(),
        beta: -BigInt::one(),
        gamma: BigInt::one(),
        delta: s,
    };
    (QuadForm::new(c.clone(), b_new, c_new), step)
}

fn reduce_indefinite(q: &QuadForm) -> (QuadForm, UnimodularTransform) {
    let disc = q.discriminant();
    let r = isqrt(&disc);
    let mut f = q.clone();
    let mut t = UnimodularTransform::identity();
    while !indefinite_reduced(&f, &r) {
        let (next, step) = rho(&f, &disc, &r);
        f = next;
        t = &t * &step;
    }
    (f, t)
}

/// A reduced form of the cycle with the transform reaching it from the
/// form the cycle was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleEntry {
    pub form: QuadForm,
    pub witness: UnimodularTransform,
}

/// Precomputed class data for a fixed form, answering repeated proper
/// equivalence queries against it.
#[derive(Debug, Clone)]
pub struct ClassLocator {
    form: QuadForm,
    disc: BigInt,
    kind: LocatorKind,
}

#[derive(Debug, Clone)]
enum LocatorKind {
    Definite {
        positive: bool,
        reduced: QuadForm,
        witness: UnimodularTransform,
    },
    Indefinite {
        cycle: HashMap<QuadForm, UnimodularTransform>,
    },
}

impl ClassLocator {
    pub fn new(q: &QuadForm) -> Result<Self> {
        let kind = match q.classify() {
            FormClass::SquareDiscriminant { .. } => return Err(square_error(q)),
            FormClass::IndefiniteNonsquare => LocatorKind::Indefinite {
                cycle: q
                    .cycle()?
                    .into_iter()
                    .map(|e| (e.form, e.witness))
                    .collect(),
            },
            class => {
                let (reduced, witness) = q.reduce()?;
                LocatorKind::Definite {
                    positive: class == FormClass::PositiveDefinite,
                    reduced,
                    witness,
                }
            }
        };
        Ok(ClassLocator {
            form: q.clone(),
            disc: q.discriminant(),
            kind,
        })
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    /// `T` with `form.apply_transform(T) == other`, if one exists.
    pub fn witness_to(&self, other: &QuadForm) -> Result<Option<UnimodularTransform>> {
        if other.discriminant() != self.disc {
            return Ok(None);
        }
        match &self.kind {
            LocatorKind::Definite {
                positive,
                reduced,
                witness,
            } => {
                let other_class = other.classify();
                if (other_class == FormClass::PositiveDefinite) != *positive {
                    return Ok(None);
                }
                let (r2, t2) = other.reduce()?;
                Ok((r2 == *reduced).then(|| witness * &t2.inverse()))
            }
            LocatorKind::Indefinite { cycle } => {
                let (r2, t2) = other.reduce()?;
                Ok(cycle.get(&r2).map(|c| c * &t2.inverse()))
            }
        }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for QuadForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "form must be three comma-separated integers, got {s:?}"
            )));
        }
        let mut coeffs = Vec::with_capacity(3);
        for p in parts {
            let v: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {p:?} in form {s:?}")))?;
            coeffs.push(v);
        }
        let c = coeffs.pop().unwrap();
        let b = coeffs.pop().unwrap();
        let a = coeffs.pop().unwrap();
        Ok(QuadForm { a, b, c })
    }
}

/// A 2x2 integer matrix `[α β; γ δ]` of determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularTransform {
    alpha: BigInt,
    beta: BigInt,
    gamma: BigInt,
    delta: BigInt,
}

impl UnimodularTransform {
    pub fn new(
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
        gamma: impl Into<BigInt>,
        delta: impl Into<BigInt>,
    ) -> Result<Self> {
        let t = UnimodularTransform {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
            delta: delta.into(),
        };
        let det = t.det_raw();
        if det.abs().is_one() {
            Ok(t)
        } else {
            Err(Error::domain(format!(
                "matrix {t} has determinant {det}, expected +1 or -1"
            )))
        }
    }

    pub fn identity() -> Self {
        UnimodularTransform {
            alpha: BigInt::one(),
            beta: BigInt::zero(),
            gamma: BigInt::zero(),
            delta: BigInt::one(),
        }
    }

    /// `[0 -1; 1 0]`.
    pub fn s() -> Self {
        UnimodularTransform {
            alpha: BigInt::zero(),
            beta: -BigInt::one(),
            gamma: BigInt::one(),
            delta: BigInt::zero(),
        }
    }

    /// `[1 s; 0 1]`.
    pub fn translation(s: BigInt) -> Self {
        UnimodularTransform {
            alpha: BigInt::one(),
            beta: s,
            gamma: BigInt::zero(),
            delta: BigInt::one(),
        }
    }

    fn det_raw(&self) -> BigInt {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    pub fn det(&self) -> i32 {
        if self.det_raw().is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn beta(&self) -> &BigInt {
        &self.beta
    }

    pub fn gamma(&self) -> &BigInt {
        &self.gamma
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn trace(&self) -> BigInt {
        &self.alpha + &self.delta
    }

    pub fn inverse(&self) -> Self {
        let d = BigInt::from(self.det());
        UnimodularTransform {
            alpha: &d * &self.delta,
            beta: -&d * &self.beta,
            gamma: -&d * &self.gamma,
            delta: &d * &self.alpha,
        }
    }

    /// `self^e`, negative powers through the inverse.
    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = UnimodularTransform::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `T (m, n)^T`.
    pub fn apply_to_vector(&self, m: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
        (
            &self.alpha * m + &self.beta * n,
            &self.gamma * m + &self.delta * n,
        )
    }

    pub fn first_column(&self) -> (&BigInt, &BigInt) {
        (&self.alpha, &self.gamma)
    }
}

impl Mul for &UnimodularTransform {
    type Output = UnimodularTransform;

    fn mul(self, o: &UnimodularTransform) -> UnimodularTransform {
        UnimodularTransform {
            alpha: &self.alpha * &o.alpha + &self.beta * &o.gamma,
            beta: &self.alpha * &o.beta + &self.beta * &o.delta,
            gamma: &self.gamma * &o.alpha + &self.delta * &o.gamma,
            delta: &self.gamma * &o.beta + &self.delta * &o.delta,
        }
    }
}

impl Mul for UnimodularTransform {
    type Output = UnimodularTransform;

    fn mul(self, o: UnimodularTransform) -> UnimodularTransform {
        &self * &o
    }
}

impl Neg for &UnimodularTransform {
    type Output = UnimodularTransform;

    fn neg(self) -> UnimodularTransform {
        UnimodularTransform {
            alpha: -&self.alpha,
            beta: -&self.beta,
            gamma: -&self.gamma,
            delta: -&self.delta,
        }
    }
}

impl Neg for UnimodularTransform {
    type Output = UnimodularTransform;

    fn neg(self) -> UnimodularTransform {
        -&self
    }
}

impl fmt::Display for UnimodularTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {}; {} {}]",
            self.alpha, self.beta, self.gamma, self.delta
        )
    }
}
