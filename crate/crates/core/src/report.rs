//! Machine records, text reports and (d, g) grid scans.
//!
//! Integers are emitted as exact JSON numbers of any size; rationals as
//! `"p/q"` strings (or `"p"` when integral). Object keys are sorted, so a
//! record re-serialized after parsing is byte-identical.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::k3::SmallnessCertificate;
use crate::lattice::{AmbientFano, BlowupSetup};
use crate::link::{classify, ClassifyOptions, LinkClassification, Verdict};
use crate::secant::quadrisecant_count;
use crate::weak_fano::{AmpleVerdict, NefVerdict};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "d,g,anticanonical_cube,quadrisecants,small,verdict,partner_d,partner_g,defect_normalized,hypotheses";

fn number(v: &BigInt) -> serde_json::Number {
    v.to_string()
        .parse()
        .expect("decimal integers are JSON numbers")
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    number(v).serialize(s)
}

pub(crate) fn ser_opt_bigint<S: Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(number).serialize(s)
}

pub(crate) fn ser_rational<S: Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_rational_pair<S: Serializer>(
    v: &(BigRational, BigRational),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [v.0.to_string(), v.1.to_string()].serialize(s)
}

#[derive(Serialize)]
struct Versioned<'a, T> {
    schema_version: u32,
    #[serde(flatten)]
    body: &'a T,
}

fn to_sorted_value<T: Serialize>(body: &T) -> Value {
    serde_json::to_value(Versioned {
        schema_version: SCHEMA_VERSION,
        body,
    })
    .expect("records serialize")
}

/// Pretty JSON for one classification, with `schema_version` and sorted keys.
pub fn classification_json(c: &LinkClassification) -> String {
    let mut out = serde_json::to_string_pretty(&to_sorted_value(c)).expect("values serialize");
    out.push('\n');
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn classification_text(c: &LinkClassification) -> String {
    let mut s = String::new();
    let w = &c.weak_fano;
    let _ = writeln!(
        s,
        "X = Bl_C {} with C of degree d={} and genus g={}",
        c.setup.ambient, c.setup.d, c.setup.g
    );
    let _ = writeln!(s, "(-K_X)^3 = {}", w.anticanonical_cube);
    let _ = writeln!(s, "big: {}", yes_no(w.big));
    let nef = match &w.nef {
        NefVerdict::Certified => "certified".to_string(),
        NefVerdict::Refuted { reason } => format!("refuted ({reason:?})"),
        NefVerdict::Unknown { reason } => format!("unknown ({reason})"),
    };
    let _ = writeln!(s, "nef: {nef}");
    match &w.ample {
        AmpleVerdict::NotAmple { quadrisecants } => {
            let _ = writeln!(s, "ample: no ({quadrisecants} quadrisecant lines)");
        }
        AmpleVerdict::PossiblyAmple { reason } => {
            let _ = writeln!(s, "ample: undecided ({reason})");
        }
    }
    if let Some(sm) = &c.smallness {
        let class = sm
            .contracted_class
            .as_ref()
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        let cert = match sm.certificate {
            SmallnessCertificate::SmallCertified => "SMALL_CERTIFIED",
            SmallnessCertificate::Unknown => "UNKNOWN",
        };
        let _ = writeln!(s, "contracted class: {class}, {cert}");
    }
    if let Some(f) = &c.flop {
        let _ = writeln!(s, "flopping curves: {}", f.curve_count);
        let _ = writeln!(
            s,
            "defect: e = {}, e/r^3 = {}",
            f.defect.e, f.defect.normalized
        );
    }
    for e in &c.exclusions {
        let _ = writeln!(
            s,
            "{:<12} {}",
            e.contraction_family.as_str(),
            if e.excluded {
                "excluded"
            } else {
                "not excluded"
            }
        );
    }
    match &c.verdict {
        Verdict::E1E1 { partner } => {
            let symmetric = partner.partner_ambient == c.setup.ambient
                && (partner.d_plus, partner.g_plus) == (c.setup.d, c.setup.g);
            let kind = if symmetric { "symmetric " } else { "" };
            let _ = writeln!(s, "verdict: {kind}E1-E1 link");
            let _ = writeln!(
                s,
                "partner d={} g={} in {}, exceptional {} = {}(-K_X) {} {}E",
                partner.d_plus,
                partner.g_plus,
                partner.partner_ambient,
                partner.partner_exceptional,
                partner.alpha_beta.0,
                if partner.alpha_beta.1.is_negative() {
                    '-'
                } else {
                    '+'
                },
                partner.alpha_beta.1.abs()
            );
            if let Some(h) = &partner.partner_hyperplane {
                let _ = writeln!(s, "partner hyperplane: {h}");
            }
        }
        Verdict::E1Other { candidates } => {
            let _ = writeln!(s, "verdict: E1-other ({} E1 candidates)", candidates.len());
            for p in candidates {
                let _ = writeln!(
                    s,
                    "  candidate d={} g={} in {}, exceptional {}",
                    p.d_plus, p.g_plus, p.partner_ambient, p.partner_exceptional
                );
            }
        }
        Verdict::NotWeakFano { reason } => {
            let _ = writeln!(s, "verdict: NOT_WEAK_FANO ({reason})");
        }
        Verdict::Inconclusive { reason } => {
            let _ = writeln!(s, "verdict: INCONCLUSIVE ({reason})");
        }
    }
    let hyps: Vec<&str> = c.hypotheses.iter().map(|h| h.as_str()).collect();
    let _ = writeln!(
        s,
        "hypotheses: {}",
        if hyps.is_empty() {
            "none".to_string()
        } else {
            hyps.join(", ")
        }
    );
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanStrategy {
    Serial,
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRequest {
    pub d_min: u64,
    pub d_max: u64,
    pub g_min: u64,
    pub g_max: u64,
    pub ambient: AmbientFano,
}

impl ScanRequest {
    pub fn new(
        d_min: u64,
        d_max: u64,
        g_min: u64,
        g_max: u64,
        ambient: AmbientFano,
    ) -> Result<Self> {
        if d_min < 5 {
            return Err(Error::InvalidScan(format!("d_min = {d_min} is below 5")));
        }
        if d_min > d_max {
            return Err(Error::InvalidScan(format!(
                "empty degree range {d_min}..{d_max}"
            )));
        }
        if g_min > g_max {
            return Err(Error::InvalidScan(format!(
                "empty genus range {g_min}..{g_max}"
            )));
        }
        Ok(Self {
            d_min,
            d_max,
            g_min,
            g_max,
            ambient,
        })
    }

    /// Grid points in lexicographic order.
    pub fn points(&self) -> Vec<(u64, u64)> {
        (self.d_min..=self.d_max)
            .flat_map(|d| (self.g_min..=self.g_max).map(move |g| (d, g)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub d: u64,
    pub g: u64,
    #[serde(serialize_with = "ser_bigint")]
    pub anticanonical_cube: BigInt,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub quadrisecants: Option<BigInt>,
    pub small: Option<SmallnessCertificate>,
    pub verdict: String,
    pub partner_d: Option<u64>,
    pub partner_g: Option<u64>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub defect_normalized: Option<BigRational>,
    pub hypotheses: Vec<String>,
}

fn ser_opt_rational<S: Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|r| r.to_string()).serialize(s)
}

impl ScanRow {
    pub fn from_classification(c: &LinkClassification) -> Self {
        let quadrisecants = (c.setup.index == 4)
            .then(|| quadrisecant_count(c.setup.d, c.setup.g).ok())
            .flatten();
        let (partner_d, partner_g) = match &c.verdict {
            Verdict::E1E1 { partner } => (Some(partner.d_plus), Some(partner.g_plus)),
            _ => (None, None),
        };
        Self {
            d: c.setup.d,
            g: c.setup.g,
            anticanonical_cube: c.weak_fano.anticanonical_cube.clone(),
            quadrisecants,
            small: c.smallness.as_ref().map(|s| s.certificate),
            verdict: c.verdict.code().to_string(),
            partner_d,
            partner_g,
            defect_normalized: c.flop.as_ref().map(|f| f.defect.normalized.clone()),
            hypotheses: c
                .hypotheses
                .iter()
                .map(|h| h.as_str().to_string())
                .collect(),
        }
    }

    pub fn csv_line(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(String::new, T::to_string)
        }
        let small = match self.small {
            Some(SmallnessCertificate::SmallCertified) => "SMALL_CERTIFIED",
            Some(SmallnessCertificate::Unknown) => "UNKNOWN",
            None => "",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.g,
            self.anticanonical_cube,
            opt(&self.quadrisecants),
            small,
            self.verdict,
            opt(&self.partner_d),
            opt(&self.partner_g),
            opt(&self.defect_normalized),
            self.hypotheses.join(";")
        )
    }
}

fn classify_point(request: &ScanRequest, options: &ClassifyOptions, (d, g): (u64, u64)) -> ScanRow {
    let setup = BlowupSetup::new(request.ambient.clone(), d, g).expect("d >= 5 by construction");
    ScanRow::from_classification(&classify(&setup, options))
}

/// Classifies every grid point. Rows come back in lexicographic `(d, g)`
/// order whatever the strategy.
pub fn scan(
    request: &ScanRequest,
    options: &ClassifyOptions,
    strategy: ScanStrategy,
) -> Vec<ScanRow> {
    let points = request.points();
    match strategy {
        ScanStrategy::Serial => points
            .into_iter()
            .map(|p| classify_point(request, options, p))
            .collect(),
        ScanStrategy::Parallel => points
            .into_par_iter()
            .map(|p| classify_point(request, options, p))
            .collect(),
    }
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ScanRecord<'a> {
    ambient: &'a str,
    rows: &'a [ScanRow],
}

pub fn scan_json(request: &ScanRequest, rows: &[ScanRow]) -> String {
    let record = ScanRecord {
        ambient: request.ambient.label(),
        rows,
    };
    let mut out =
        serde_json::to_string_pretty(&to_sorted_value(&record)).expect("values serialize");
    out.push('\n');
    out
}

pub fn scan_text(rows: &[ScanRow]) -> String {
    let mut out = format!(
        "{:>4} {:>4} {:>8} {:>10} {:>16} {:>14} {:>4} {:>4} {:>6}\n",
        "d", "g", "(-K)^3", "4-secants", "small", "verdict", "d+", "g+", "e/r^3"
    );
    let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
    for r in rows {
        let small = match r.small {
            Some(SmallnessCertificate::SmallCertified) => "SMALL_CERTIFIED",
            Some(SmallnessCertificate::Unknown) => "UNKNOWN",
            None => "-",
        };
        let _ = writeln!(
            out,
            "{:>4} {:>4} {:>8} {:>10} {:>16} {:>14} {:>4} {:>4} {:>6}",
            r.d,
            r.g,
            r.anticanonical_cube.to_string(),
            opt(&r.quadrisecants.as_ref().map(ToString::to_string)),
            small,
            r.verdict,
            opt(&r.partner_d.map(|v| v.to_string())),
            opt(&r.partner_g.map(|v| v.to_string())),
            opt(&r.defect_normalized.as_ref().map(ToString::to_string)),
        );
    }
    out
}
