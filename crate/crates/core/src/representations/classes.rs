//! Congruence classes of representations: each solution `u` of
//! `u^2 = Δ (mod 4|k/g^2|)` is one orbit of proper representations of
//! `k/g^2` under the automorph group, nonempty exactly when the form
//! `(k/g^2, u, v)` is properly equivalent to `q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::enumerate::Representation;
use super::gamma::{solve_factored, CongruenceSolution};
use crate::arith::{bigint_str, factorize};
use crate::error::{Error, Result};
use crate::forms::{ClassLocator, FormClass, QuadForm, UnimodularTransform};
use crate::pell::{automorph_group, AutomorphGroup};

/// One congruence class at gcd stratum `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepClass {
    #[serde(with = "bigint_str")]
    pub g: BigInt,
    /// Solution for the value `k / g^2`.
    pub base: CongruenceSolution,
    /// Takes the normalized form to `(k/g^2, u, v)`; `None` when the class
    /// has no representations.
    #[serde(with = "transform_opt")]
    pub witness: Option<UnimodularTransform>,
    /// Leftmost matrix of the automorph chains through `witness` whose first
    /// column lies in the open positive quadrant (diagonal forms with
    /// `a > 0 > c` only).
    #[serde(with = "transform_opt")]
    pub orbit_anchor: Option<UnimodularTransform>,
}

impl RepClass {
    pub fn is_empty(&self) -> bool {
        self.witness.is_none()
    }
}

/// The full class structure of `R_k` for a form, after normalization:
/// content divided out, negative definite forms negated.
#[derive(Debug, Clone)]
pub struct ClassDecomposition {
    /// Primitive form the classes refer to.
    pub form: QuadForm,
    /// Value represented by `form`.
    pub k: BigInt,
    pub automorphs: AutomorphGroup,
    /// Ordered by `g` ascending, then `u` ascending.
    pub classes: Vec<RepClass>,
}

/// `(q0, k0)` with `q0` primitive and not negative definite, and
/// `q(m, n) = k` iff `q0(m, n) = k0`; `None` when the content of `q` does
/// not divide `k`.
pub fn normalize_query(q: &QuadForm, k: &BigInt) -> Result<Option<(QuadForm, BigInt)>> {
    let (q0, content) = q.primitive_part()?;
    if !k.is_multiple_of(&content) {
        return Ok(None);
    }
    let k0 = k / &content;
    Ok(Some(if q0.classify() == FormClass::NegativeDefinite {
        (q0.negate(), -k0)
    } else {
        (q0, k0)
    }))
}

/// Class decomposition of the representations of `k != 0` by `q`.
/// `Ok(None)` when the content of `q` does not divide `k`.
pub fn decompose(q: &QuadForm, k: &BigInt) -> Result<Option<ClassDecomposition>> {
    if k.is_zero() {
        return Err(Error::domain(
            "k = 0 has no class structure; see zero_representations",
        ));
    }
    if let FormClass::SquareDiscriminant { .. } = q.classify() {
        return Err(Error::unsupported(
            q,
            "representation classes need a nonsquare discriminant",
        ));
    }
    let Some((q0, k0)) = normalize_query(q, k)? else {
        return Ok(None);
    };
    let automorphs = automorph_group(&q0)?;
    let locator = ClassLocator::new(&q0)?;
    let disc = q0.discriminant();
    let generator = match &automorphs {
        AutomorphGroup::InfiniteCyclic { generator } => Some(generator.clone()),
        AutomorphGroup::Finite(_) => None,
    };
    let anchored = generator.is_some() && q0.is_diagonal() && q0.a.is_positive();
    let sign = if k0.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut classes = Vec::new();
    for (g, rest) in factorize(&k0).square_divisors() {
        let kk = &sign * rest.value();
        for base in solve_factored(&disc, &kk, &rest) {
            let witness = locator.witness_to(&base.form())?;
            if let Some(w) = &witness {
                if q0.apply_transform(w) != base.form() || w.det() != 1 {
                    return Err(Error::Invariant(format!(
                        "witness {w} does not take {q0} to {}",
                        base.form()
                    )));
                }
            }
            let orbit_anchor = match (&witness, &generator) {
                (Some(w), Some(a)) if anchored => leftmost_in_chains(a, w),
                _ => None,
            };
            classes.push(RepClass {
                g: g.clone(),
                base,
                witness,
                orbit_anchor,
            });
        }
    }
    Ok(Some(ClassDecomposition {
        form: q0,
        k: k0,
        automorphs,
        classes,
    }))
}

/// The congruence classes of `q` at `k`; empty when the content of `q`
/// does not divide `k`. Classes refer to the normalized form of
/// [`normalize_query`].
pub fn rep_classes(q: &QuadForm, k: &BigInt) -> Result<Vec<RepClass>> {
    Ok(decompose(q, k)?.map(|d| d.classes).unwrap_or_default())
}

/// The class of a proper representation `(α, γ)`: its congruence solution
/// and a determinant-one matrix with first column `(α, γ)` taking `q` to
/// the companion form.
pub fn class_from_proper_rep(
    q: &QuadForm,
    alpha: &BigInt,
    gamma: &BigInt,
) -> Result<(CongruenceSolution, UnimodularTransform)> {
    let eg = alpha.extended_gcd(gamma);
    if !eg.gcd.abs().is_one() {
        return Err(Error::domain(format!(
            "({alpha}, {gamma}) is not a proper representation"
        )));
    }
    // α x + γ y = ±1; take δ = x, β = -y, flipping signs for det +1
    let (mut delta, mut beta) = (eg.x, -eg.y);
    if eg.gcd.is_negative() {
        delta = -delta;
        beta = -beta;
    }
    let w = UnimodularTransform::new(alpha.clone(), beta, gamma.clone(), delta)?;
    let f = q.apply_transform(&w);
    let k = f.a.clone();
    if k.is_zero() {
        return Err(Error::domain("representations of 0 have no congruence class"));
    }
    let two_k: BigInt = &k * 2;
    let u = f.b.mod_floor(&two_k.abs());
    let t = (&u - &f.b) / &two_k;
    let w = &w * &UnimodularTransform::translation(t);
    let shifted = q.apply_transform(&w);
    debug_assert_eq!(shifted.b, u);
    Ok((
        CongruenceSolution {
            k,
            u,
            v: shifted.c,
        },
        w,
    ))
}

fn positive_column(m: &UnimodularTransform) -> bool {
    m.alpha().is_positive() && m.gamma().is_positive()
}

/// Bound on walk lengths; orbit entries grow geometrically, so this is
/// never approached by inputs of representable size.
const WALK_LIMIT: usize = 100_000;

/// Leftmost `±A^j W` with positive first column, where `A` is an automorph
/// with nonnegative entries (diagonal form, `a > 0 > c`).
fn leftmost_in_chains(a: &UnimodularTransform, w: &UnimodularTransform) -> Option<UnimodularTransform> {
    let a_inv = a.inverse();
    let mut x = w.clone();
    let mut found = false;
    for _ in 0..WALK_LIMIT {
        if positive_column(&x) {
            found = true;
            break;
        }
        if x.alpha().is_negative() && x.gamma().is_negative() {
            x = -x;
            found = true;
            break;
        }
        x = a * &x;
    }
    if !found {
        return None;
    }
    loop {
        let prev = &a_inv * &x;
        if positive_column(&prev) {
            x = prev;
        } else {
            return Some(x);
        }
    }
}

fn diagonal_indefinite(q: &QuadForm) -> Result<UnimodularTransform> {
    if !(q.is_diagonal() && q.a.is_positive() && q.c.is_negative() && q.is_primitive()) {
        return Err(Error::domain(format!(
            "form {q} is not primitive diagonal with a > 0 > c"
        )));
    }
    match automorph_group(q)? {
        AutomorphGroup::InfiniteCyclic { generator } => Ok(generator),
        AutomorphGroup::Finite(_) => unreachable!("indefinite forms have infinite automorph groups"),
    }
}

/// For a primitive diagonal `q = (a, 0, c)` with `a > 0 > c` and a matrix
/// `W` taking `q` to some `(K, u, v)`: the leftmost member of the chains
/// `±A^j W` with both first-column entries positive.
pub fn leftmost_positive_matrix(
    q: &QuadForm,
    w: &UnimodularTransform,
) -> Result<Option<UnimodularTransform>> {
    let a = diagonal_indefinite(q)?;
    Ok(leftmost_in_chains(&a, w))
}

/// Whether representatives on the axis `n = 0` are acceptable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisPolicy {
    /// Open positive quadrant: `m > 0`, `n > 0`.
    Exclude,
    /// Also accept `m > 0`, `n = 0`.
    Include,
}

/// A representation `g (α, γ)` of the class with `0 < α <= bound`, where
/// `(α, γ)` is the smallest first column of the class in the region the
/// policy allows.
pub fn small_rep_for_class(
    q: &QuadForm,
    cls: &RepClass,
    bound: &BigInt,
    policy: AxisPolicy,
) -> Result<Representation> {
    let a = diagonal_indefinite(q)?;
    let w = cls
        .witness
        .as_ref()
        .ok_or_else(|| Error::domain("class has no representations"))?;
    let anchor = match &cls.orbit_anchor {
        Some(x) => x.clone(),
        None => leftmost_in_chains(&a, w)
            .ok_or_else(|| Error::domain("no positive matrix in the automorph chains"))?,
    };
    let mut pick = anchor;
    if policy == AxisPolicy::Include {
        let prev = &a.inverse() * &pick;
        if prev.alpha().is_positive() && prev.gamma().is_zero() {
            pick = prev;
        }
    }
    let (alpha, gamma) = pick.first_column();
    if alpha > bound {
        return Err(Error::domain(format!(
            "smallest admissible first entry {alpha} exceeds the bound {bound}"
        )));
    }
    let m = &cls.g * alpha;
    let n = &cls.g * gamma;
    let k = q.eval(&m, &n);
    let expected = &cls.base.k * &cls.g * &cls.g;
    if k != expected {
        return Err(Error::Invariant(format!(
            "representative ({m}, {n}) gives {k}, expected {expected}"
        )));
    }
    Ok(Representation::new(m, n, k))
}

mod transform_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::forms::UnimodularTransform;

    pub fn serialize<S: Serializer>(v: &Option<UnimodularTransform>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|t| t.entries().map(|e| e.to_string()))
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<UnimodularTransform>, D::Error> {
        let raw: Option<[String; 4]> = Option::deserialize(d)?;
        let Some(raw) = raw else {
            return Ok(None);
        };
        let mut e = Vec::with_capacity(4);
        for s in &raw {
            e.push(s.parse::<BigInt>().map_err(serde::de::Error::custom)?);
        }
        let [a, b, c, dd]: [BigInt; 4] = e.try_into().expect("four entries");
        UnimodularTransform::new(a, b, c, dd)
            .map(Some)
            .map_err(serde::de::Error::custom)
    }
}
