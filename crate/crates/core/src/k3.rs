//! Rank-two K3 Picard lattices `Pic(S) = ZH + ZC` with Gram matrix
//! `[[2n, d], [d, 2g - 2]]`.
//!
//! Provides the nef and base-point-freeness criterion for `kH - C` and the
//! mod-4 obstruction to `(-2)`-classes that rules out rational curves.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{congruence_solvable, BinaryForm};
use crate::lattice::DivisorClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct K3LatticeData {
    /// `H^2 = 2n`
    pub n: u64,
    /// `C.H`
    pub d: u64,
    /// `C^2 = 2g - 2`
    pub g: u64,
}

impl K3LatticeData {
    pub fn new(n: u64, d: u64, g: u64) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidSetup(format!(
                "K3 lattice needs n >= 1 and d >= 1, got n = {n}, d = {d}"
            )));
        }
        Ok(Self { n, d, g })
    }

    /// Quartic surface (`H^2 = 4`) containing a curve of degree `d`, genus `g`.
    pub fn quartic(d: u64, g: u64) -> Result<Self> {
        Self::new(2, d, g)
    }

    pub fn gram(&self) -> [[BigInt; 2]; 2] {
        let d = BigInt::from(self.d);
        [
            [BigInt::from(2 * self.n), d.clone()],
            [d, BigInt::from(2 * self.g) - 2],
        ]
    }

    /// `(aH + bC)^2` as a binary form in `(a, b)`.
    pub fn gram_form(&self) -> BinaryForm {
        BinaryForm::new(
            BigInt::from(2 * self.n),
            BigInt::from(2 * self.d),
            BigInt::from(2 * self.g) - 2,
        )
    }
}

pub fn k3_self_intersection(lattice: &K3LatticeData, a: &BigInt, b: &BigInt) -> BigInt {
    lattice.gram_form().evaluate(a, b)
}

/// Which clause of the nef criterion decided the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NefReason {
    Nef,
    /// `2nk <= d`
    DegreeNotPositive,
    /// `nk^2 - dk + g - 1 < 0`
    NegativeSquare,
    /// `(2nk - d, nk^2 - dk + g) = (2n + 1, n + 1)`
    ExceptionalPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FreeReason {
    Free,
    NotNef(NefReason),
    /// `d^2 - 4n(g - 1) = 1` and `2nk - d - 1` or `2nk - d + 1` divides `2n`
    DivisibilityException,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Criterion<R> {
    pub holds: bool,
    pub reason: R,
}

fn check_k(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidSetup("k must be a positive integer".into()));
    }
    Ok(())
}

pub fn is_nef_kh_minus_c(lattice: &K3LatticeData, k: u64) -> Result<Criterion<NefReason>> {
    check_k(k)?;
    let (n, d, g, k) = (
        BigInt::from(lattice.n),
        BigInt::from(lattice.d),
        BigInt::from(lattice.g),
        BigInt::from(k),
    );
    let two_nk_minus_d = BigInt::from(2) * &n * &k - &d;
    let quad = &n * &k * &k - &d * &k + &g;
    let reason = if two_nk_minus_d <= BigInt::from(0) {
        NefReason::DegreeNotPositive
    } else if &quad - 1 < BigInt::from(0) {
        NefReason::NegativeSquare
    } else if two_nk_minus_d == BigInt::from(2) * &n + 1 && quad == &n + 1 {
        NefReason::ExceptionalPair
    } else {
        NefReason::Nef
    };
    Ok(Criterion {
        holds: reason == NefReason::Nef,
        reason,
    })
}

/// `m | x` for positive `m` only; non-positive `m` never divides.
fn positive_divides(m: &BigInt, x: &BigInt) -> bool {
    *m > BigInt::from(0) && (x % m) == BigInt::from(0)
}

pub fn is_free_kh_minus_c(lattice: &K3LatticeData, k: u64) -> Result<Criterion<FreeReason>> {
    let nef = is_nef_kh_minus_c(lattice, k)?;
    if !nef.holds {
        return Ok(Criterion {
            holds: false,
            reason: FreeReason::NotNef(nef.reason),
        });
    }
    let (n, d, g, k) = (
        BigInt::from(lattice.n),
        BigInt::from(lattice.d),
        BigInt::from(lattice.g),
        BigInt::from(k),
    );
    let two_n = BigInt::from(2) * &n;
    let discriminant_one = &d * &d - BigInt::from(4) * &n * (&g - 1) == BigInt::from(1);
    let base = &two_n * &k - &d;
    let divides = positive_divides(&(&base - 1), &two_n) || positive_divides(&(&base + 1), &two_n);
    if discriminant_one && divides {
        Ok(Criterion {
            holds: false,
            reason: FreeReason::DivisibilityException,
        })
    } else {
        Ok(Criterion {
            holds: true,
            reason: FreeReason::Free,
        })
    }
}

/// The coefficients `H^2`, `2H.C` and `C^2` of `(aH + bC)^2` all lie in
/// `4Z`, so every self-intersection is divisible by 4 and no `(-2)`-class
/// (hence no smooth rational curve) exists. `H.C` itself only needs to be even.
pub fn no_rational_curves_obstruction(lattice: &K3LatticeData) -> bool {
    let entries_in_4z = (2 * lattice.n).is_multiple_of(4)
        && (2 * lattice.d).is_multiple_of(4)
        && (2 * lattice.g) % 4 == 2;
    entries_in_4z && !congruence_solvable(&lattice.gram_form(), &BigInt::from(-2), 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SmallnessCertificate {
    SmallCertified,
    Unknown,
}

/// Certifies that the anticanonical morphism contracts no divisor.
///
/// `contracted` is the primitive class `aH + bE` on `X`; it is read as
/// `aH_S + bC` on the quartic. A square `<= -4` would force rational
/// components, which the 4Z obstruction forbids. Only the quartic route
/// through `P^3` (index 4) is certified.
pub fn smallness_certificate(
    lattice: &K3LatticeData,
    contracted: &DivisorClass,
    index: u32,
) -> Result<SmallnessCertificate> {
    if !contracted.is_primitive() {
        return Err(Error::NotPrimitive {
            h: contracted.h.to_string(),
            e: contracted.e.to_string(),
        });
    }
    let square = k3_self_intersection(lattice, &contracted.h, &contracted.e);
    if index == 4 && square <= BigInt::from(-4) && no_rational_curves_obstruction(lattice) {
        Ok(SmallnessCertificate::SmallCertified)
    } else {
        Ok(SmallnessCertificate::Unknown)
    }
}
