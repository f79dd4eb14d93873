//! Quadrisecant lines of a general space curve.
//!
//! After blowing up `C` in `P^3`, a line meeting `C` four times has class
//! with `H.l = 1`, `E.l = 4`, so `-K_X.l = 4 - 4 = 0`: these lines are the
//! anticanonically trivial curves that get flopped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::BlowupSetup;

/// `(H.l, E.l)` of a quadrisecant line.
pub const QUADRISECANT_CLASS: (i64, i64) = (1, 4);

/// `(d-2)(d-3)^2(d-4)/12 - (d^2 - 7d + 13 - g)g/2` for a general curve.
pub fn quadrisecant_count(d: u64, g: u64) -> Result<BigInt> {
    if d < 5 {
        return Err(Error::SecantDomain { d });
    }
    let (dd, gg) = (BigInt::from(d), BigInt::from(g));
    let first: BigInt = (&dd - 2) * (&dd - 3) * (&dd - 3) * (&dd - 4);
    let second: BigInt = (&dd * &dd - BigInt::from(7) * &dd + 13 - &gg) * &gg;
    let (count, rem) = (first - BigInt::from(6) * second).div_rem(&BigInt::from(12));
    if !rem.is_zero() {
        return Err(Error::SecantIntegrality { d, g });
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecantProfile {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub quadrisecant_count: BigInt,
    pub curve_class_on_x: (i64, i64),
    pub anticanonical_degree_of_secant: i64,
}

/// Flopping-curve profile of `Bl_C(P^3)`, assuming `C` is general.
pub fn flopping_profile(setup: &BlowupSetup) -> Result<SecantProfile> {
    let ambient = setup.ambient();
    if !ambient.is_projective_space() {
        return Err(Error::UnsupportedAmbient(ambient.label().to_string()));
    }
    let count = quadrisecant_count(setup.degree(), setup.genus())?;
    let (h_deg, e_deg) = QUADRISECANT_CLASS;
    Ok(SecantProfile {
        quadrisecant_count: count,
        curve_class_on_x: QUADRISECANT_CLASS,
        anticanonical_degree_of_secant: i64::from(ambient.index()) * h_deg - e_deg,
    })
}
