//! Integral binary quadratic forms `q(x, y) = a x^2 + b xy + c y^2`.
//!
//! Representability is decided in the sound-but-incomplete way: a sweep of
//! small moduli looks for a congruence obstruction, then a bounded box is
//! searched for a witness. Anything else is reported as unknown.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_MODULUS_SWEEP_MAX: u64 = 64;
pub const DEFAULT_SEARCH_BOX: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Self { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// The form `q(p x + q y, r x + s y)`.
    pub fn substitute(&self, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> Self {
        let two = BigInt::from(2);
        Self {
            a: &self.a * p * p + &self.b * p * r + &self.c * r * r,
            b: &two * &self.a * p * q + &self.b * (p * s + q * r) + &two * &self.c * r * s,
            c: &self.a * q * q + &self.b * q * s + &self.c * s * s,
        }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RepresentabilityVerdict {
    Represented {
        #[serde(serialize_with = "crate::report::ser_bigint")]
        x: BigInt,
        #[serde(serialize_with = "crate::report::ser_bigint")]
        y: BigInt,
    },
    /// `q(x, y) = target` has no solution modulo `modulus`.
    NotRepresented { modulus: u64 },
    /// Nothing decided within `|x|, |y| <= search_box`.
    Unknown { search_box: u64 },
}

impl RepresentabilityVerdict {
    pub fn is_not_represented(&self) -> bool {
        matches!(self, Self::NotRepresented { .. })
    }
}

/// Integer square root of a non-negative perfect square, `None` otherwise.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

fn residue(v: &BigInt, m: u64) -> u128 {
    v.mod_floor(&BigInt::from(m))
        .to_u128()
        .expect("residue is below the modulus")
}

/// Whether `q(x, y) = target` is solvable in `(Z/m)^2`.
pub fn congruence_solvable(form: &BinaryForm, target: &BigInt, m: u64) -> bool {
    if m <= 1 {
        return true;
    }
    let (a, b, c, t) = (
        residue(&form.a, m),
        residue(&form.b, m),
        residue(&form.c, m),
        residue(target, m),
    );
    let m = u128::from(m);
    (0..m).any(|x| {
        let ax2 = a * x % m * x % m;
        let bx = b * x % m;
        (0..m).any(|y| (ax2 + bx * y % m + c * y % m * y) % m == t)
    })
}

/// All `y` with `|y| <= bound` and `q(x, y) = target` for a fixed `x`.
fn solutions_for_x(form: &BinaryForm, target: &BigInt, x: &BigInt, bound: &BigInt) -> Vec<BigInt> {
    // c y^2 + (b x) y + (a x^2 - target) = 0
    let lin = &form.b * x;
    let constant = &form.a * x * x - target;
    let mut ys = Vec::new();
    if form.c.is_zero() {
        if lin.is_zero() {
            if constant.is_zero() {
                ys.push(BigInt::zero());
            }
        } else {
            let (y, rem) = (-&constant).div_rem(&lin);
            if rem.is_zero() {
                ys.push(y);
            }
        }
    } else {
        let disc = &lin * &lin - BigInt::from(4) * &form.c * &constant;
        if let Some(s) = exact_sqrt(&disc) {
            let den = BigInt::from(2) * &form.c;
            for num in [-&lin + &s, -&lin - &s] {
                let (y, rem) = num.div_rem(&den);
                if rem.is_zero() && !ys.contains(&y) {
                    ys.push(y);
                }
            }
        }
    }
    ys.retain(|y| y.abs() <= *bound);
    ys
}

/// Smallest witness of `q(x, y) = target` in the box, ordered by max-norm
/// and then preferring non-negative coordinates.
pub fn box_witness(
    form: &BinaryForm,
    target: &BigInt,
    search_box: u64,
) -> Option<(BigInt, BigInt)> {
    let bound = BigInt::from(search_box);
    let mut best: Option<(BigInt, BigInt)> = None;
    let key = |(x, y): &(BigInt, BigInt)| (x.abs().max(y.abs()), -x.clone(), -y.clone());
    let mut x = -bound.clone();
    while x <= bound {
        for y in solutions_for_x(form, target, &x, &bound) {
            let cand = (x.clone(), y);
            if best.as_ref().is_none_or(|b| key(&cand) < key(b)) {
                best = Some(cand);
            }
        }
        x += 1;
    }
    best
}

/// Sound representability check: a congruence obstruction modulo some
/// `m <= modulus_sweep_max`, else a witness with `|x|, |y| <= search_box`,
/// else unknown.
pub fn represents(
    form: &BinaryForm,
    target: &BigInt,
    modulus_sweep_max: u64,
    search_box: u64,
) -> RepresentabilityVerdict {
    if let Some(m) = (2..=modulus_sweep_max).find(|&m| !congruence_solvable(form, target, m)) {
        return RepresentabilityVerdict::NotRepresented { modulus: m };
    }
    match box_witness(form, target, search_box) {
        Some((x, y)) => RepresentabilityVerdict::Represented { x, y },
        None => RepresentabilityVerdict::Unknown { search_box },
    }
}

/// A nonzero integral zero of the form, if one exists.
pub fn isotropic_witness(form: &BinaryForm) -> Result<Option<(BigInt, BigInt)>> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    if form.a.is_zero() {
        return Ok(Some((1.into(), 0.into())));
    }
    if form.c.is_zero() {
        return Ok(Some((0.into(), 1.into())));
    }
    // a != 0: x/y = (-b + s) / 2a with s^2 = disc
    let Some(s) = exact_sqrt(&form.discriminant()) else {
        return Ok(None);
    };
    let x = -&form.b + s;
    let y = BigInt::from(2) * &form.a;
    let g = x.gcd(&y);
    Ok(Some((x / &g, y / g)))
}

pub fn isotropic_over_rationals(form: &BinaryForm) -> Result<bool> {
    Ok(isotropic_witness(form)?.is_some())
}
