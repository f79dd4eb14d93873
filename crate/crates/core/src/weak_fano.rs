//! Weak Fano gate for `X = Bl_C(Y)`: bigness from `(-K_X)^3`, nefness
//! through the quartic K3 containing `C`, non-ampleness from quadrisecants,
//! and the smallness certificate for the anticanonical morphism.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::k3::{self, FreeReason, K3LatticeData, SmallnessCertificate};
use crate::lattice::{
    anticanonical_class, anticanonical_cube, triple_product, BlowupSetup, DivisorClass,
};
use crate::secant::quadrisecant_count;

/// Assumptions a verdict depends on. Every certified claim lists the ones it used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Hypothesis {
    /// `C` lies on a smooth quartic K3 with `Pic(S) = ZH + ZC`.
    K3QuarticPicardRankTwo,
    /// `C` is general: finitely many quadrisecants, each a plain 4-secant line.
    GeneralCurve,
    /// Every flopping curve is a disjoint `(-1,-1)`-curve.
    SimpleFlops,
    /// Point-type contraction invariants come from the shipped table.
    PointTypeTable,
}

impl Hypothesis {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::K3QuarticPicardRankTwo => "K3_QUARTIC_PICARD_RANK_TWO",
            Self::GeneralCurve => "GENERAL_CURVE",
            Self::SimpleFlops => "SIMPLE_FLOPS",
            Self::PointTypeTable => "POINT_TYPE_TABLE",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which input hypotheses the caller is willing to assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assumptions {
    pub k3_quartic: bool,
    pub general_curve: bool,
}

impl Default for Assumptions {
    fn default() -> Self {
        Self {
            k3_quartic: true,
            general_curve: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NefVerdict {
    /// `|4H_S - C|` is free, hence `-K_X` is free and nef.
    Certified,
    /// `4H_S - C` is not nef, so neither is its restriction source `-K_X`.
    Refuted {
        reason: FreeReason,
    },
    Unknown {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AmpleVerdict {
    NotAmple {
        #[serde(serialize_with = "crate::report::ser_bigint")]
        quadrisecants: BigInt,
    },
    PossiblyAmple {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakFanoReport {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub anticanonical_cube: BigInt,
    pub big: bool,
    pub nef: NefVerdict,
    pub ample: AmpleVerdict,
    pub hypotheses: Vec<Hypothesis>,
    pub warnings: Vec<String>,
}

impl WeakFanoReport {
    /// Big, nef-certified, and witnessed non-ample.
    pub fn is_certified_weak_fano_not_fano(&self) -> bool {
        self.big
            && self.nef == NefVerdict::Certified
            && matches!(self.ample, AmpleVerdict::NotAmple { .. })
    }
}

pub fn assess_weak_fano(setup: &BlowupSetup, assumptions: Assumptions) -> WeakFanoReport {
    let cube = anticanonical_cube(setup);
    let big = cube.is_positive();
    let mut hypotheses = Vec::new();
    let mut warnings = Vec::new();
    let on_p3 = setup.ambient().is_projective_space();

    let nef = if !on_p3 {
        NefVerdict::Unknown {
            reason: format!("no nef certificate for ambient {}", setup.ambient().label()),
        }
    } else if !assumptions.k3_quartic {
        NefVerdict::Unknown {
            reason: "K3 quartic hypothesis not assumed".into(),
        }
    } else {
        let lattice = K3LatticeData::quartic(setup.degree(), setup.genus())
            .expect("setup degree is positive");
        let free = k3::is_free_kh_minus_c(&lattice, 4).expect("k = 4 is positive");
        hypotheses.push(Hypothesis::K3QuarticPicardRankTwo);
        match free.reason {
            FreeReason::Free => NefVerdict::Certified,
            FreeReason::NotNef(_) => NefVerdict::Refuted {
                reason: free.reason,
            },
            FreeReason::DivisibilityException => NefVerdict::Unknown {
                reason: "4H_S - C is nef but not free".into(),
            },
        }
    };

    let ample = if !on_p3 {
        AmpleVerdict::PossiblyAmple {
            reason: "quadrisecant witness only available on P3".into(),
        }
    } else if !assumptions.general_curve {
        AmpleVerdict::PossiblyAmple {
            reason: "general curve hypothesis not assumed".into(),
        }
    } else {
        match quadrisecant_count(setup.degree(), setup.genus()) {
            Ok(n) if n.is_positive() => {
                hypotheses.push(Hypothesis::GeneralCurve);
                AmpleVerdict::NotAmple { quadrisecants: n }
            }
            Ok(n) => AmpleVerdict::PossiblyAmple {
                reason: format!("quadrisecant count {n} gives no witness"),
            },
            Err(e) => {
                warnings.push(e.to_string());
                AmpleVerdict::PossiblyAmple {
                    reason: "quadrisecant formula outside its domain".into(),
                }
            }
        }
    };

    WeakFanoReport {
        anticanonical_cube: cube,
        big,
        nef,
        ample,
        hypotheses,
        warnings,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractedRay {
    pub class: DivisorClass,
    /// `(-K)^2.H`
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub sigma_h: BigInt,
    /// `(-K)^2.E`
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub sigma_e: BigInt,
}

/// Primitive `aH + bE` with `a > 0` and `(-K)^2.(aH + bE) = 0`.
pub fn contracted_ray_class(setup: &BlowupSetup) -> Result<ContractedRay> {
    let k = anticanonical_class(setup);
    let sigma_h = triple_product(&k, &k, &DivisorClass::hyperplane(), setup);
    let sigma_e = triple_product(&k, &k, &DivisorClass::exceptional(), setup);
    if sigma_h.is_zero() && sigma_e.is_zero() {
        return Err(Error::DegeneratePairing);
    }
    if sigma_e.is_zero() {
        return Err(Error::NoPositiveRay);
    }
    let g = sigma_h.gcd(&sigma_e);
    let (mut a, mut b) = (&sigma_e / &g, -(&sigma_h / &g));
    if a.is_negative() {
        a = -a;
        b = -b;
    }
    Ok(ContractedRay {
        class: DivisorClass::new(a, b),
        sigma_h,
        sigma_e,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallnessReport {
    pub contracted_class: Option<DivisorClass>,
    #[serde(serialize_with = "crate::report::ser_opt_bigint")]
    pub k3_square: Option<BigInt>,
    pub certificate: SmallnessCertificate,
}

/// Smallness certificate read on an explicit K3 lattice.
pub fn assess_smallness_on(
    setup: &BlowupSetup,
    lattice: &K3LatticeData,
    assumptions: Assumptions,
) -> Result<SmallnessReport> {
    let ray = contracted_ray_class(setup)?;
    let square = k3::k3_self_intersection(lattice, &ray.class.h, &ray.class.e);
    let certificate = if assumptions.k3_quartic {
        k3::smallness_certificate(lattice, &ray.class, setup.ambient().index())?
    } else {
        SmallnessCertificate::Unknown
    };
    Ok(SmallnessReport {
        contracted_class: Some(ray.class),
        k3_square: Some(square),
        certificate,
    })
}

/// Smallness certificate through the quartic K3 containing `C`.
pub fn assess_smallness(setup: &BlowupSetup, assumptions: Assumptions) -> Result<SmallnessReport> {
    let lattice = K3LatticeData::quartic(setup.degree(), setup.genus())?;
    assess_smallness_on(setup, &lattice, assumptions)
}
