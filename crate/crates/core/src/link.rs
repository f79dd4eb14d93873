//! Closing the two-ray game.
//!
//! After the flop `X --> X+`, the second extremal contraction `X+ -> Y+` is
//! one of: a conic bundle, a del Pezzo fibration, a point-type divisorial
//! contraction (E2, E3/E4, E5), or a curve blowdown (E1). Each of the first
//! five leaves a numerical fingerprint on the strict transform `T` of some
//! divisor of `X+`, which we pull back to `X` and rule out by integer
//! arithmetic. The surviving E1 possibilities are then enumerated.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::flop::{defect, Defect, FlopData, FlopSideLattice, FlopSidePairings};
use crate::forms::{
    self, congruence_solvable, exact_sqrt, BinaryForm, RepresentabilityVerdict,
    DEFAULT_MODULUS_SWEEP_MAX, DEFAULT_SEARCH_BOX,
};
use crate::k3::SmallnessCertificate;
use crate::lattice::{
    anticanonical_class, anticanonical_cube, anticanonical_quadratic_form,
    canonical_basis_coordinates, AmbientFano, BlowupSetup, DivisorClass,
};
use crate::secant::flopping_profile;
use crate::weak_fano::{
    assess_smallness, assess_weak_fano, AmpleVerdict, Assumptions, Hypothesis, NefVerdict,
    SmallnessReport, WeakFanoReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ContractionFamily {
    #[serde(rename = "CONIC_BUNDLE")]
    ConicBundle,
    #[serde(rename = "DEL_PEZZO")]
    DelPezzo,
    E2,
    #[serde(rename = "E3_E4")]
    E3E4,
    E5,
}

impl ContractionFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ConicBundle => "CONIC_BUNDLE",
            Self::DelPezzo => "DEL_PEZZO",
            Self::E2 => "E2",
            Self::E3E4 => "E3_E4",
            Self::E5 => "E5",
        }
    }
}

impl fmt::Display for ContractionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `((-K)^2.E, (-K).E^2, E^3)` of the exceptional divisor of a point-type
/// divisorial contraction, from adjunction on `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointTypeInvariants {
    pub family: ContractionFamily,
    pub k2_e: i64,
    pub k_e2: i64,
    pub e3: i64,
}

pub fn default_point_types() -> Vec<PointTypeInvariants> {
    vec![
        // E ~ P^2, normal bundle O(-1)
        PointTypeInvariants {
            family: ContractionFamily::E2,
            k2_e: 4,
            k_e2: -2,
            e3: 1,
        },
        // E ~ quadric, normal bundle O(-1)
        PointTypeInvariants {
            family: ContractionFamily::E3E4,
            k2_e: 2,
            k_e2: -2,
            e3: 2,
        },
        // E ~ P^2, normal bundle O(-2)
        PointTypeInvariants {
            family: ContractionFamily::E5,
            k2_e: 1,
            k_e2: -2,
            e3: 4,
        },
    ]
}

/// Why an exclusion holds (or fails).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Evidence {
    /// Outcome of asking whether `q(x, y) = target`.
    Representability {
        form: [String; 3],
        #[serde(serialize_with = "crate::report::ser_bigint")]
        target: BigInt,
        verdict: RepresentabilityVerdict,
    },
    /// `q` has a nonzero rational zero iff its discriminant is a square.
    Discriminant {
        form: [String; 3],
        #[serde(serialize_with = "crate::report::ser_bigint")]
        discriminant: BigInt,
        isotropic_witness: Option<DivisorClass>,
    },
    /// `(-K)^2.T = s` has no integral solution: `gcd` does not divide `s`.
    LinearObstruction {
        #[serde(serialize_with = "crate::report::ser_bigint")]
        gcd: BigInt,
        #[serde(serialize_with = "crate::report::ser_bigint")]
        target: BigInt,
    },
    /// Every integral `T` with the prescribed `(-K)^2.T` and `(-K).T^2`,
    /// listed exhaustively, fails the cube condition.
    ExhaustedSlice {
        candidates: Vec<DivisorClass>,
    },
    /// A class realising all three invariants.
    Witness {
        class: DivisorClass,
    },
    Inconclusive {
        note: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionResult {
    pub contraction_family: ContractionFamily,
    pub excluded: bool,
    pub evidence: Evidence,
}

fn form_strings(form: &BinaryForm) -> [String; 3] {
    [form.a.to_string(), form.b.to_string(), form.c.to_string()]
}

/// Diophantine bounds shared by every search in the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub modulus_sweep_max: u64,
    pub search_box: u64,
    pub partner_box: u64,
    pub partner_d_max: u64,
    pub partner_g_max: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            modulus_sweep_max: DEFAULT_MODULUS_SWEEP_MAX,
            search_box: DEFAULT_SEARCH_BOX,
            partner_box: 64,
            partner_d_max: 64,
            partner_g_max: 64,
        }
    }
}

/// A conic bundle has a surface-pullback `D` with `-K_{X+}.D^2 = 2`; that
/// number is flop-invariant, so `q` would have to represent 2.
pub fn exclude_conic_bundle(setup: &BlowupSetup, bounds: &SearchBounds) -> ExclusionResult {
    let form = anticanonical_quadratic_form(setup);
    let target = BigInt::from(2);
    let verdict = forms::represents(&form, &target, bounds.modulus_sweep_max, bounds.search_box);
    ExclusionResult {
        contraction_family: ContractionFamily::ConicBundle,
        excluded: verdict.is_not_represented(),
        evidence: Evidence::Representability {
            form: form_strings(&form),
            target,
            verdict,
        },
    }
}

/// A del Pezzo fibration has a fibre class with `-K_{X+}.D^2 = 0`, i.e. a
/// nonzero rational zero of `q`.
pub fn exclude_del_pezzo(setup: &BlowupSetup) -> ExclusionResult {
    let form = anticanonical_quadratic_form(setup);
    // q always has a = r.H^3 > 0, so the zero-form error cannot occur
    let witness = forms::isotropic_witness(&form).expect("anticanonical form is nonzero");
    ExclusionResult {
        contraction_family: ContractionFamily::DelPezzo,
        excluded: witness.is_none(),
        evidence: Evidence::Discriminant {
            form: form_strings(&form),
            discriminant: form.discriminant(),
            isotropic_witness: witness.map(|(x, y)| DivisorClass::new(x, y)),
        },
    }
}

/// Integral `T = base + t.step` solving `(-K)^2.T = target`, or the gcd
/// obstruction.
fn anticanonical_slice(
    setup: &BlowupSetup,
    target: &BigInt,
) -> std::result::Result<Option<(DivisorClass, DivisorClass)>, BigInt> {
    let k = anticanonical_class(setup);
    let lattice_h = crate::lattice::triple_product(&k, &k, &DivisorClass::hyperplane(), setup);
    let lattice_e = crate::lattice::triple_product(&k, &k, &DivisorClass::exceptional(), setup);
    let ext = lattice_h.extended_gcd(&lattice_e);
    let g = ext.gcd;
    if g.is_zero() {
        return if target.is_zero() { Ok(None) } else { Err(g) };
    }
    let (q, rem) = target.div_rem(&g);
    if !rem.is_zero() {
        return Err(g);
    }
    let base = DivisorClass::new(&ext.x * &q, &ext.y * &q);
    let step = DivisorClass::new(&lattice_e / &g, -(&lattice_h / &g));
    Ok(Some((base, step)))
}

/// Integer roots of `a t^2 + b t + c`, which is not identically zero.
fn integer_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let mut roots = Vec::new();
    if a.is_zero() {
        if !b.is_zero() {
            let (t, rem) = (-c).div_rem(b);
            if rem.is_zero() {
                roots.push(t);
            }
        }
        return roots;
    }
    let disc = b * b - BigInt::from(4) * a * c;
    if let Some(s) = exact_sqrt(&disc) {
        let den = BigInt::from(2) * a;
        for num in [-b + &s, -b - &s] {
            let (t, rem) = num.div_rem(&den);
            if rem.is_zero() && !roots.contains(&t) {
                roots.push(t);
            }
        }
    }
    roots.sort();
    roots
}

/// Decide whether some integral class `T` on `X` has flop-side invariants
/// `(s, t, c)`.
///
/// A congruence obstruction on `q(T) = t` settles it first. Otherwise the
/// linear condition `(-K)^2.T = s` cuts out a line `base + u.step`, along
/// which `q` is a quadratic in `u`; its integer roots are the only
/// candidates, and each is tested against the cube on `X+`.
pub fn find_class_with_invariants(
    setup: &BlowupSetup,
    flop_side: &FlopSideLattice,
    invariants: (i64, i64, i64),
    bounds: &SearchBounds,
) -> (bool, Evidence) {
    let (s, t, c) = (
        BigInt::from(invariants.0),
        BigInt::from(invariants.1),
        BigInt::from(invariants.2),
    );
    let form = anticanonical_quadratic_form(setup);
    if let Some(m) = (2..=bounds.modulus_sweep_max).find(|&m| !congruence_solvable(&form, &t, m)) {
        return (
            true,
            Evidence::Representability {
                form: form_strings(&form),
                target: t,
                verdict: RepresentabilityVerdict::NotRepresented { modulus: m },
            },
        );
    }
    let (base, step) = match anticanonical_slice(setup, &s) {
        Err(gcd) => return (true, Evidence::LinearObstruction { gcd, target: s }),
        Ok(None) => {
            return (
                false,
                Evidence::Inconclusive {
                    note: "(-K)^2 pairs trivially with the whole lattice".into(),
                },
            )
        }
        Ok(Some(line)) => line,
    };
    // q(base + u.step) = A u^2 + B u + C
    let a = form.evaluate(&step.h, &step.e);
    let b = form.evaluate(&(&base.h + &step.h), &(&base.e + &step.e))
        - form.evaluate(&base.h, &base.e)
        - &a;
    let c0 = form.evaluate(&base.h, &base.e) - &t;
    let at = |u: &BigInt| &base + &step.scale(u);

    if a.is_zero() && b.is_zero() {
        if !c0.is_zero() {
            return (
                true,
                Evidence::ExhaustedSlice {
                    candidates: Vec::new(),
                },
            );
        }
        // q is constant on the whole line: fall back to a bounded scan
        let bound = BigInt::from(bounds.search_box);
        let mut u = -bound.clone();
        while u <= bound {
            let class = at(&u);
            if flop_side.cube(&class) == c {
                return (false, Evidence::Witness { class });
            }
            u += 1;
        }
        return (
            false,
            Evidence::Inconclusive {
                note: format!("no witness on the isotropic slice within |u| <= {bound}"),
            },
        );
    }

    let candidates: Vec<DivisorClass> = integer_roots(&a, &b, &c0).iter().map(at).collect();
    for class in &candidates {
        if flop_side.cube(class) == c {
            return (
                false,
                Evidence::Witness {
                    class: class.clone(),
                },
            );
        }
    }
    (true, Evidence::ExhaustedSlice { candidates })
}

pub fn exclude_point_type(
    setup: &BlowupSetup,
    flop_side: &FlopSideLattice,
    point_types: &[PointTypeInvariants],
    bounds: &SearchBounds,
) -> Vec<ExclusionResult> {
    point_types
        .iter()
        .map(|p| {
            let (excluded, evidence) =
                find_class_with_invariants(setup, flop_side, (p.k2_e, p.k_e2, p.e3), bounds);
            ExclusionResult {
                contraction_family: p.family,
                excluded,
                evidence,
            }
        })
        .collect()
}

/// Numerical E1 partner: `X+` is the blowup of a curve of degree `d_plus`
/// and genus `g_plus` in `partner_ambient`, with exceptional divisor whose
/// strict transform on `X` is `partner_exceptional`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkCandidate {
    pub partner_ambient: String,
    pub partner_index: u32,
    pub partner_anticanonical_degree: u64,
    pub d_plus: u64,
    pub g_plus: u64,
    pub partner_exceptional: DivisorClass,
    /// Coordinates of the partner exceptional class in the `(-K_X, E)` basis.
    #[serde(serialize_with = "crate::report::ser_rational_pair")]
    pub alpha_beta: (BigRational, BigRational),
    /// `(-K + T) / r+` when integral: the pulled-back hyperplane of `Y+`.
    pub partner_hyperplane: Option<DivisorClass>,
    pub pairings: FlopSidePairings,
}

impl LinkCandidate {
    pub fn is_symmetric_to(&self, setup: &BlowupSetup) -> bool {
        self.partner_ambient == setup.ambient().label()
            && self.d_plus == setup.degree()
            && self.g_plus == setup.genus()
    }
}

pub fn e1_partner_search(
    setup: &BlowupSetup,
    flop: &FlopData,
    catalog: &[AmbientFano],
    bounds: &SearchBounds,
) -> Result<Vec<LinkCandidate>> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let flop_side = FlopSideLattice::new(setup, flop.clone())?;
    let k = anticanonical_class(setup);
    let k3 = anticanonical_cube(setup);
    let radius = i64::try_from(bounds.partner_box).unwrap_or(i64::MAX);
    let (d_max, g_max) = (
        BigInt::from(bounds.partner_d_max),
        BigInt::from(bounds.partner_g_max),
    );
    let table = flop_side.table();
    let mut out = Vec::new();

    for x in -radius..=radius {
        for y in -radius..=radius {
            let class = DivisorClass::new(x, y);
            let k2_t = table.triple(&k, &k, &class);
            let k_t2 = table.triple(&k, &class, &class);
            // (-K).T^2 = 2g+ - 2
            let (g_plus, rem) = (&k_t2 + BigInt::from(2)).div_rem(&BigInt::from(2));
            if !rem.is_zero() || g_plus.is_negative() || g_plus > g_max {
                continue;
            }
            let mut cube = None;
            for ambient in catalog {
                let r = BigInt::from(ambient.index());
                // (-K)^2.T = r+ d+ + 2 - 2g+
                let (d_plus, rem) = (&k2_t + &k_t2).div_rem(&r);
                if !rem.is_zero() || !d_plus.is_positive() || d_plus > d_max {
                    continue;
                }
                let fano = BigInt::from(ambient.anticanonical_degree())
                    - BigInt::from(2) * &r * &d_plus
                    - 2
                    + BigInt::from(2) * &g_plus;
                if fano != k3 {
                    continue;
                }
                let cube = cube.get_or_insert_with(|| flop_side.cube(&class));
                if *cube != BigInt::from(2) - BigInt::from(2) * &g_plus - &r * &d_plus {
                    continue;
                }
                let sum = &k + &class;
                let partner_hyperplane = (sum.h.is_multiple_of(&r) && sum.e.is_multiple_of(&r))
                    .then(|| DivisorClass::new(&sum.h / &r, &sum.e / &r));
                out.push(LinkCandidate {
                    partner_ambient: ambient.label().to_string(),
                    partner_index: ambient.index(),
                    partner_anticanonical_degree: ambient.anticanonical_degree(),
                    d_plus: d_plus.try_into().expect("bounded by d_max"),
                    g_plus: g_plus.clone().try_into().expect("bounded by g_max"),
                    alpha_beta: canonical_basis_coordinates(&class, setup),
                    partner_hyperplane,
                    pairings: FlopSidePairings {
                        k2_d: k2_t.clone(),
                        k_d2: k_t2.clone(),
                        cube: cube.clone(),
                    },
                    partner_exceptional: class.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    #[serde(rename = "E1_E1")]
    E1E1 {
        partner: Box<LinkCandidate>,
    },
    /// The second contraction is divisorial but not pinned to a unique E1 partner.
    #[serde(rename = "E1_OTHER")]
    E1Other {
        candidates: Vec<LinkCandidate>,
    },
    NotWeakFano {
        reason: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn code(&self) -> &'static str {
        match self {
            Self::E1E1 { .. } => "E1_E1",
            Self::E1Other { .. } => "E1_OTHER",
            Self::NotWeakFano { .. } => "NOT_WEAK_FANO",
            Self::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Self::Inconclusive { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetupEcho {
    pub ambient: String,
    pub index: u32,
    pub anticanonical_degree: u64,
    pub d: u64,
    pub g: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlopSummary {
    pub data: FlopData,
    pub curve_count: u64,
    pub defect: Defect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkClassification {
    pub setup: SetupEcho,
    pub weak_fano: WeakFanoReport,
    pub smallness: Option<SmallnessReport>,
    pub flop: Option<FlopSummary>,
    pub exclusions: Vec<ExclusionResult>,
    pub partners: Vec<LinkCandidate>,
    pub verdict: Verdict,
    pub hypotheses: Vec<Hypothesis>,
    pub bounds: SearchBounds,
}

impl LinkClassification {
    pub fn exclusion(&self, family: ContractionFamily) -> Option<&ExclusionResult> {
        self.exclusions
            .iter()
            .find(|e| e.contraction_family == family)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub assumptions: Assumptions,
    pub bounds: SearchBounds,
    pub catalog: Vec<AmbientFano>,
    pub point_types: Vec<PointTypeInvariants>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            assumptions: Assumptions::default(),
            bounds: SearchBounds::default(),
            catalog: catalog::builtin_catalog(),
            point_types: default_point_types(),
        }
    }
}

pub fn classify(setup: &BlowupSetup, options: &ClassifyOptions) -> LinkClassification {
    let weak_fano = assess_weak_fano(setup, options.assumptions);
    let mut hypotheses = weak_fano.hypotheses.clone();
    let mut record = LinkClassification {
        setup: SetupEcho {
            ambient: setup.ambient().label().to_string(),
            index: setup.ambient().index(),
            anticanonical_degree: setup.ambient().anticanonical_degree(),
            d: setup.degree(),
            g: setup.genus(),
        },
        weak_fano,
        smallness: None,
        flop: None,
        exclusions: Vec::new(),
        partners: Vec::new(),
        verdict: Verdict::Inconclusive {
            reason: String::new(),
        },
        hypotheses: Vec::new(),
        bounds: options.bounds,
    };
    let verdict = run_pipeline(setup, options, &mut record, &mut hypotheses);
    hypotheses.sort();
    hypotheses.dedup();
    record.hypotheses = hypotheses;
    record.verdict = verdict;
    record
}

fn inconclusive(reason: impl Into<String>) -> Verdict {
    Verdict::Inconclusive {
        reason: reason.into(),
    }
}

fn run_pipeline(
    setup: &BlowupSetup,
    options: &ClassifyOptions,
    record: &mut LinkClassification,
    hypotheses: &mut Vec<Hypothesis>,
) -> Verdict {
    let wf = &record.weak_fano;
    if !wf.big {
        return Verdict::NotWeakFano {
            reason: format!("(-K_X)^3 = {} is not positive", wf.anticanonical_cube),
        };
    }
    match &wf.nef {
        NefVerdict::Certified => {}
        NefVerdict::Refuted { .. } => {
            return Verdict::NotWeakFano {
                reason: "4H_S - C is not nef on the quartic, so -K_X is not nef".into(),
            }
        }
        NefVerdict::Unknown { reason } => {
            return inconclusive(format!("nefness unknown: {reason}"))
        }
    }
    if let AmpleVerdict::PossiblyAmple { reason } = &wf.ample {
        return inconclusive(format!("no flopping curves witnessed: {reason}"));
    }

    let smallness = match assess_smallness(setup, options.assumptions) {
        Ok(s) => s,
        Err(e) => return inconclusive(format!("smallness: {e}")),
    };
    let small = smallness.certificate == SmallnessCertificate::SmallCertified;
    record.smallness = Some(smallness);
    if !small {
        return inconclusive("anticanonical morphism not certified small");
    }

    let flop = match flopping_profile(setup) {
        Ok(p) => match FlopData::from_profile(&p) {
            Some(f) => f,
            None => return inconclusive("negative quadrisecant count"),
        },
        Err(e) => return inconclusive(format!("flopping curves: {e}")),
    };
    hypotheses.push(Hypothesis::SimpleFlops);
    let flop_side = match FlopSideLattice::new(setup, flop.clone()) {
        Ok(f) => f,
        Err(e) => return inconclusive(e.to_string()),
    };
    let defect = match defect(setup, &flop) {
        Ok(d) => d,
        Err(e) => return inconclusive(e.to_string()),
    };
    record.flop = Some(FlopSummary {
        curve_count: flop.curve_count(),
        data: flop.clone(),
        defect,
    });

    let bounds = &options.bounds;
    record.exclusions.push(exclude_conic_bundle(setup, bounds));
    record.exclusions.push(exclude_del_pezzo(setup));
    if !options.point_types.is_empty() {
        hypotheses.push(Hypothesis::PointTypeTable);
    }
    record.exclusions.extend(exclude_point_type(
        setup,
        &flop_side,
        &options.point_types,
        bounds,
    ));

    record.partners = match e1_partner_search(setup, &flop, &options.catalog, bounds) {
        Ok(p) => p,
        Err(e) => return inconclusive(format!("partner search: {e}")),
    };

    let excluded = |f: ContractionFamily| record.exclusion(f).is_some_and(|e| e.excluded);
    let fibre_types_excluded =
        excluded(ContractionFamily::ConicBundle) && excluded(ContractionFamily::DelPezzo);
    let point_types_excluded = [
        ContractionFamily::E2,
        ContractionFamily::E3E4,
        ContractionFamily::E5,
    ]
    .into_iter()
    .all(excluded);

    if !fibre_types_excluded {
        return inconclusive("a fibre-type second contraction was not excluded");
    }
    if point_types_excluded && record.partners.len() == 1 {
        return Verdict::E1E1 {
            partner: Box::new(record.partners[0].clone()),
        };
    }
    if record.partners.is_empty() && point_types_excluded {
        return inconclusive(format!(
            "no E1 partner within |x|, |y| <= {}",
            bounds.partner_box
        ));
    }
    Verdict::E1Other {
        candidates: record.partners.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(d: u64, g: u64) -> BlowupSetup {
        BlowupSetup::in_projective_space(d, g).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn conic_bundle_exclusions() {
        let b = SearchBounds::default();
        let r = exclude_conic_bundle(&p3(8, 5), &b);
        assert!(r.excluded);
        assert!(matches!(
            r.evidence,
            Evidence::Representability {
                verdict: RepresentabilityVerdict::NotRepresented { modulus: 4 },
                ..
            }
        ));
        let r = exclude_conic_bundle(&p3(6, 3), &b);
        assert_eq!(
            anticanonical_quadratic_form(&p3(6, 3)),
            BinaryForm::from_i64(4, 12, 4)
        );
        assert!(r.excluded);
    }

    #[test]
    fn del_pezzo_exclusions() {
        let r = exclude_del_pezzo(&p3(8, 5));
        assert!(r.excluded);
        assert!(
            matches!(r.evidence, Evidence::Discriminant { ref discriminant, .. } if *discriminant == big(128))
        );
        let r = exclude_del_pezzo(&p3(10, 11));
        assert!(r.excluded);
        assert!(
            matches!(r.evidence, Evidence::Discriminant { ref discriminant, .. } if *discriminant == big(80))
        );
    }

    #[test]
    fn point_types_excluded_mod_four() {
        for (d, g, n) in [(8, 5, 10), (10, 11, 20)] {
            let s = p3(d, g);
            let side = FlopSideLattice::new(&s, FlopData::uniform(1, 4, n)).unwrap();
            let r = exclude_point_type(&s, &side, &default_point_types(), &SearchBounds::default());
            assert_eq!(r.len(), 3);
            for e in r {
                assert!(e.excluded);
                assert!(matches!(
                    e.evidence,
                    Evidence::Representability {
                        verdict: RepresentabilityVerdict::NotRepresented { modulus: 4 },
                        ..
                    }
                ));
            }
        }
    }

    #[test]
    fn point_type_witness_is_found() {
        // ask for the invariants of an actual class: T = 24H - 7E at (8, 5)
        let s = p3(8, 5);
        let side = FlopSideLattice::new(&s, FlopData::uniform(1, 4, 10)).unwrap();
        let (excluded, ev) =
            find_class_with_invariants(&s, &side, (24, 8, -40), &SearchBounds::default());
        assert!(!excluded);
        assert_eq!(
            ev,
            Evidence::Witness {
                class: DivisorClass::new(24, -7)
            }
        );
        // same first two invariants, wrong cube: both slice points rejected
        let (excluded, ev) =
            find_class_with_invariants(&s, &side, (24, 8, -41), &SearchBounds::default());
        assert!(excluded);
        assert!(matches!(ev, Evidence::ExhaustedSlice { ref candidates } if candidates.len() == 2));
    }

    #[test]
    fn linear_obstruction() {
        // at (8, 5) the pairing (-K)^2.T = 8x + 24y is always divisible by 8
        let s = p3(8, 5);
        let side = FlopSideLattice::new(&s, FlopData::uniform(1, 4, 10)).unwrap();
        let bounds = SearchBounds {
            modulus_sweep_max: 1,
            ..SearchBounds::default()
        };
        let (excluded, ev) = find_class_with_invariants(&s, &side, (4, 8, 0), &bounds);
        assert!(excluded);
        assert_eq!(
            ev,
            Evidence::LinearObstruction {
                gcd: big(8),
                target: big(4)
            }
        );
    }

    #[test]
    fn partner_for_case_99() {
        let s = p3(8, 5);
        let flop = FlopData::uniform(1, 4, 10);
        let found = e1_partner_search(
            &s,
            &flop,
            &catalog::builtin_catalog(),
            &SearchBounds::default(),
        )
        .unwrap();
        assert_eq!(found.len(), 1);
        let c = &found[0];
        assert_eq!(
            (c.partner_ambient.as_str(), c.d_plus, c.g_plus),
            ("P3", 8, 5)
        );
        assert_eq!(c.partner_exceptional, DivisorClass::new(24, -7));
        assert_eq!(
            c.alpha_beta,
            (
                BigRational::from_integer(big(6)),
                BigRational::from_integer(big(-1))
            )
        );
        assert_eq!(c.partner_hyperplane, Some(DivisorClass::new(7, -2)));
    }

    #[test]
    fn no_index_two_partner_for_case_99() {
        let s = p3(8, 5);
        let flop = FlopData::uniform(1, 4, 10);
        let index_two: Vec<_> = catalog::builtin_catalog()
            .into_iter()
            .filter(|a| a.index() == 2)
            .collect();
        assert_eq!(index_two.len(), 5);
        assert!(
            e1_partner_search(&s, &flop, &index_two, &SearchBounds::default())
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            e1_partner_search(&s, &flop, &[], &SearchBounds::default()),
            Err(Error::EmptyCatalog)
        );
    }

    #[test]
    fn classify_case_99() {
        let c = classify(&p3(8, 5), &ClassifyOptions::default());
        let Verdict::E1E1 { partner } = &c.verdict else {
            panic!("expected E1_E1, got {:?}", c.verdict);
        };
        assert!(partner.is_symmetric_to(&p3(8, 5)));
        assert_eq!(c.flop.as_ref().unwrap().curve_count, 10);
        assert_eq!(c.exclusions.len(), 5);
        assert!(c.exclusions.iter().all(|e| e.excluded));
    }

    #[test]
    fn classify_negative_controls() {
        let c = classify(&p3(9, 5), &ClassifyOptions::default());
        assert_eq!(c.verdict.code(), "NOT_WEAK_FANO");
        let mut o = ClassifyOptions::default();
        o.assumptions.k3_quartic = false;
        let c = classify(&p3(8, 5), &o);
        assert_eq!(c.verdict.code(), "INCONCLUSIVE");
        assert!(!c.hypotheses.contains(&Hypothesis::K3QuarticPicardRankTwo));
    }
}
