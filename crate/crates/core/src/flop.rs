//! Transport of divisor classes across the anticanonical flop `X --> X+`.
//!
//! Flopping curves are modelled as disjoint `(-1,-1)`-curves, so for the
//! strict transform `D~` of `D`
//!
//! ```text
//! D~^3 = D^3 - sum_i m_i (D.l_i)^3
//! ```
//!
//! while `(-K)^2.D` and `(-K).D^2` are unchanged. The defect of the flop is
//! `e = E^3 - E~^3 = sum_i m_i (E.l_i)^3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    anticanonical_class, intersection_table, BlowupSetup, DivisorClass, IntersectionTable,
};
use crate::secant::SecantProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FlopCurve {
    pub h_deg: i64,
    pub e_deg: i64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FlopData {
    pub curves: Vec<FlopCurve>,
}

impl FlopData {
    pub fn new(curves: Vec<FlopCurve>) -> Self {
        Self { curves }
    }

    pub fn uniform(h_deg: i64, e_deg: i64, multiplicity: u64) -> Self {
        Self::new(vec![FlopCurve {
            h_deg,
            e_deg,
            multiplicity,
        }])
    }

    /// One curve class per quadrisecant line, `None` for a negative count.
    pub fn from_profile(profile: &SecantProfile) -> Option<Self> {
        let count: u64 = profile.quadrisecant_count.clone().try_into().ok()?;
        let (h, e) = profile.curve_class_on_x;
        Some(if count == 0 {
            Self::default()
        } else {
            Self::uniform(h, e, count)
        })
    }

    pub fn curve_count(&self) -> u64 {
        self.curves.iter().map(|c| c.multiplicity).sum()
    }

    /// The flopped curves on `X+`, which pair with strict transforms with
    /// the opposite sign.
    pub fn reversed(&self) -> Self {
        Self::new(
            self.curves
                .iter()
                .map(|c| FlopCurve {
                    h_deg: -c.h_deg,
                    e_deg: -c.e_deg,
                    multiplicity: c.multiplicity,
                })
                .collect(),
        )
    }

    /// Disjoint union.
    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.curves.iter().chain(&other.curves).copied().collect())
    }

    pub fn check_k_trivial(&self, index: u32) -> Result<()> {
        for c in &self.curves {
            if i64::from(index) * c.h_deg != c.e_deg {
                return Err(Error::NotKTrivial {
                    h_deg: c.h_deg,
                    e_deg: c.e_deg,
                    index,
                });
            }
        }
        Ok(())
    }
}

/// `D.l = h (H.l) + e (E.l)`.
pub fn pairing_with_curve(class: &DivisorClass, curve: (i64, i64)) -> BigInt {
    &class.h * curve.0 + &class.e * curve.1
}

/// `cube - sum m (D.l)^3`: one crossing of the flop starting from a class
/// whose cube is already known.
pub fn transport_cube(cube: &BigInt, class: &DivisorClass, flop: &FlopData) -> BigInt {
    flop.curves.iter().fold(cube.clone(), |acc, c| {
        let p = pairing_with_curve(class, (c.h_deg, c.e_deg));
        acc - &p * &p * &p * BigInt::from(c.multiplicity)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlopSidePairings {
    /// `(-K)^2.D~`
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub k2_d: BigInt,
    /// `(-K).D~^2`
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub k_d2: BigInt,
    /// `D~^3`
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub cube: BigInt,
}

/// The intersection functional on `X+`, expressed in the `(H, E)`
/// coordinates of `X` through strict transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlopSideLattice {
    table: IntersectionTable,
    anticanonical: DivisorClass,
    flop: FlopData,
}

impl FlopSideLattice {
    pub fn new(setup: &BlowupSetup, flop: FlopData) -> Result<Self> {
        flop.check_k_trivial(setup.ambient().index())?;
        Ok(Self {
            table: intersection_table(setup),
            anticanonical: anticanonical_class(setup),
            flop,
        })
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    pub fn flop(&self) -> &FlopData {
        &self.flop
    }

    pub fn cube(&self, class: &DivisorClass) -> BigInt {
        transport_cube(&self.table.cube(class), class, &self.flop)
    }

    pub fn pairings(&self, class: &DivisorClass) -> FlopSidePairings {
        let k = &self.anticanonical;
        FlopSidePairings {
            k2_d: self.table.triple(k, k, class),
            k_d2: self.table.triple(k, class, class),
            cube: self.cube(class),
        }
    }
}

pub fn strict_transform_cube(
    class: &DivisorClass,
    setup: &BlowupSetup,
    flop: &FlopData,
) -> Result<BigInt> {
    Ok(FlopSideLattice::new(setup, flop.clone())?.cube(class))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Defect {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub e: BigInt,
    /// `e / r^3`
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub normalized: BigRational,
}

pub fn defect(setup: &BlowupSetup, flop: &FlopData) -> Result<Defect> {
    let exceptional = DivisorClass::exceptional();
    let lattice = FlopSideLattice::new(setup, flop.clone())?;
    let e = lattice.table().cube(&exceptional) - lattice.cube(&exceptional);
    let r3 = BigInt::from(setup.ambient().index()).pow(3);
    Ok(Defect {
        normalized: BigRational::new(e.clone(), r3),
        e,
    })
}

pub fn flop_side_pairings(
    class: &DivisorClass,
    setup: &BlowupSetup,
    flop: &FlopData,
) -> Result<FlopSidePairings> {
    Ok(FlopSideLattice::new(setup, flop.clone())?.pairings(class))
}
