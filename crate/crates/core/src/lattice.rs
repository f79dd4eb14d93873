//! Intersection theory on the Picard lattice of `X = Bl_C(Y)`.
//!
//! `Y` is a smooth Fano threefold of Picard rank one with fundamental divisor
//! `H` and index `r`, so `-K_Y = rH`. Blowing up a smooth curve `C` of degree
//! `d = H.C` and genus `g` gives `Pic(X) = ZH + ZE`, and every triple product
//! on `X` comes from four numbers:
//!
//! ```text
//! H^3 = (-K_Y)^3 / r^3     H^2.E = 0     H.E^2 = -d     E^3 = 2 - 2g - r.d
//! ```
//!
//! All arithmetic is done in the integral `(H, E)` basis with big integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::BinaryForm;

/// A smooth Fano threefold of Picard rank one, described by its index and
/// anticanonical degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmbientFano {
    label: String,
    index: u32,
    anticanonical_degree: u64,
}

impl AmbientFano {
    /// Validates `1 <= r <= 4`, `(-K)^3 > 0` and `r^3 | (-K)^3`.
    pub fn new(label: impl Into<String>, index: u32, anticanonical_degree: u64) -> Result<Self> {
        let label = label.into();
        let invalid = |reason: String| Error::InvalidAmbient {
            label: label.clone(),
            reason,
        };
        if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(invalid(
                "label must be non-empty without spaces or commas".into(),
            ));
        }
        if !(1..=4).contains(&index) {
            return Err(invalid(format!("index {index} outside 1..=4")));
        }
        if anticanonical_degree == 0 {
            return Err(invalid("anticanonical degree must be positive".into()));
        }
        let r3 = u64::from(index).pow(3);
        if !anticanonical_degree.is_multiple_of(r3) {
            return Err(invalid(format!(
                "anticanonical degree {anticanonical_degree} is not divisible by r^3 = {r3}"
            )));
        }
        Ok(Self {
            label,
            index,
            anticanonical_degree,
        })
    }

    pub fn projective_space() -> Self {
        Self::new("P3", 4, 64).expect("P3 is a valid ambient")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn anticanonical_degree(&self) -> u64 {
        self.anticanonical_degree
    }

    /// `H^3 = (-K_Y)^3 / r^3`.
    pub fn fundamental_degree(&self) -> u64 {
        self.anticanonical_degree / u64::from(self.index).pow(3)
    }

    /// Index four characterises `P^3` among smooth Fano threefolds.
    pub fn is_projective_space(&self) -> bool {
        self.index == 4
    }
}

/// Ambient plus the degree and genus of the blown-up curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlowupSetup {
    ambient: AmbientFano,
    degree: u64,
    genus: u64,
}

impl BlowupSetup {
    pub fn new(ambient: AmbientFano, degree: u64, genus: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidSetup(
                "curve degree must be at least 1".into(),
            ));
        }
        Ok(Self {
            ambient,
            degree,
            genus,
        })
    }

    /// Curve of degree `d` and genus `g` in `P^3`.
    pub fn in_projective_space(degree: u64, genus: u64) -> Result<Self> {
        Self::new(AmbientFano::projective_space(), degree, genus)
    }

    pub fn ambient(&self) -> &AmbientFano {
        &self.ambient
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub(crate) fn r(&self) -> BigInt {
        BigInt::from(self.ambient.index)
    }

    pub(crate) fn d(&self) -> BigInt {
        BigInt::from(self.degree)
    }

    pub(crate) fn g(&self) -> BigInt {
        BigInt::from(self.genus)
    }
}

/// The class `h.H + e.E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub h: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub e: BigInt,
}

impl DivisorClass {
    pub fn new(h: impl Into<BigInt>, e: impl Into<BigInt>) -> Self {
        Self {
            h: h.into(),
            e: e.into(),
        }
    }

    pub fn hyperplane() -> Self {
        Self::new(1, 0)
    }

    pub fn exceptional() -> Self {
        Self::new(0, 1)
    }

    pub fn is_primitive(&self) -> bool {
        self.h.gcd(&self.e).is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            h: &self.h * k,
            e: &self.e * k,
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_negative() {
            write!(f, "{}H-{}E", self.h, -&self.e)
        } else {
            write!(f, "{}H+{}E", self.h, self.e)
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            h: &self.h + &rhs.h,
            e: &self.e + &rhs.e,
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            h: &self.h - &rhs.h,
            e: &self.e - &rhs.e,
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass {
            h: -&self.h,
            e: -&self.e,
        }
    }
}

impl Mul<&DivisorClass> for &BigInt {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// The four triple products `H^3, H^2E, HE^2, E^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTable {
    pub hhh: BigInt,
    pub hhe: BigInt,
    pub hee: BigInt,
    pub eee: BigInt,
}

impl IntersectionTable {
    /// Symmetric trilinear form expanded over the table.
    pub fn triple(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> BigInt {
        let hhh = &a.h * &b.h * &c.h;
        let hhe = &a.h * &b.h * &c.e + &a.h * &b.e * &c.h + &a.e * &b.h * &c.h;
        let hee = &a.h * &b.e * &c.e + &a.e * &b.h * &c.e + &a.e * &b.e * &c.h;
        let eee = &a.e * &b.e * &c.e;
        hhh * &self.hhh + hhe * &self.hhe + hee * &self.hee + eee * &self.eee
    }

    pub fn cube(&self, a: &DivisorClass) -> BigInt {
        self.triple(a, a, a)
    }
}

pub fn intersection_table(setup: &BlowupSetup) -> IntersectionTable {
    let r = setup.r();
    let d = setup.d();
    let g = setup.g();
    IntersectionTable {
        hhh: BigInt::from(setup.ambient.fundamental_degree()),
        hhe: BigInt::zero(),
        hee: -&d,
        eee: BigInt::from(2) - BigInt::from(2) * g - r * d,
    }
}

pub fn triple_product(
    a: &DivisorClass,
    b: &DivisorClass,
    c: &DivisorClass,
    setup: &BlowupSetup,
) -> BigInt {
    intersection_table(setup).triple(a, b, c)
}

/// `-K_X = rH - E`.
pub fn anticanonical_class(setup: &BlowupSetup) -> DivisorClass {
    DivisorClass::new(setup.r(), -1)
}

/// `(-K_X)^3 = (-K_Y)^3 - 2rd - 2 + 2g`.
pub fn anticanonical_cube(setup: &BlowupSetup) -> BigInt {
    let two = BigInt::from(2);
    BigInt::from(setup.ambient.anticanonical_degree) - &two * setup.r() * setup.d() - &two
        + two * setup.g()
}

/// `sigma = (-K_X)^2.E = rd + 2 - 2g`.
pub fn sigma(setup: &BlowupSetup) -> BigInt {
    setup.r() * setup.d() + 2 - BigInt::from(2) * setup.g()
}

/// `tau = (-K_X).E^2 = 2g - 2`.
pub fn tau(setup: &BlowupSetup) -> BigInt {
    BigInt::from(2) * setup.g() - 2
}

/// `q(x, y) = (-K_X).(xH + yE)^2 = r.H^3 x^2 + 2d xy + (2g - 2) y^2`.
pub fn anticanonical_quadratic_form(setup: &BlowupSetup) -> BinaryForm {
    BinaryForm::new(
        setup.r() * BigInt::from(setup.ambient.fundamental_degree()),
        BigInt::from(2) * setup.d(),
        tau(setup),
    )
}

/// The same form written in the `(-K_X, E)` basis: `q(r.a, b - a)`.
///
/// The `(-K_X, E)` sublattice has index `r` in `Pic(X)`, so representability
/// questions must be asked of [`anticanonical_quadratic_form`] instead.
pub fn anticanonical_form_in_canonical_basis(setup: &BlowupSetup) -> BinaryForm {
    anticanonical_quadratic_form(setup).substitute(
        &setup.r(),
        &BigInt::zero(),
        &BigInt::from(-1),
        &BigInt::one(),
    )
}

/// Rational `(alpha, beta)` with `class = alpha.(-K_X) + beta.E`.
pub fn canonical_basis_coordinates(
    class: &DivisorClass,
    setup: &BlowupSetup,
) -> (BigRational, BigRational) {
    let alpha = BigRational::new(class.h.clone(), setup.r());
    let beta = BigRational::from_integer(class.e.clone()) + &alpha;
    (alpha, beta)
}
