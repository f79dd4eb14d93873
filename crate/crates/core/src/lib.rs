//! Exact numerical classification of Sarkisov links starting from the blowup
//! `X = Bl_C Y` of a smooth curve `C` of degree `d` and genus `g` in a Fano
//! threefold `Y` of Picard rank one (by default `P^3`).
//!
//! The pipeline: intersection numbers on `Pic X = ZH + ZE`, a weak Fano gate
//! on a K3 quartic through `C`, the quadrisecant flop, then arithmetic
//! exclusion of every second contraction except E1 and a search for the E1
//! partner.
//!
//! ```
//! use sarkisov_core::{classify, BlowupSetup, ClassifyOptions};
//!
//! let setup = BlowupSetup::in_projective_space(8, 5).unwrap();
//! let c = classify(&setup, &ClassifyOptions::default());
//! assert_eq!(c.verdict.code(), "E1_E1");
//! ```

pub mod catalog;
pub mod error;
pub mod expr;
pub mod flop;
pub mod forms;
pub mod k3;
pub mod lattice;
pub mod link;
pub mod report;
pub mod secant;
pub mod weak_fano;

pub use error::{Error, Result};
pub use lattice::{AmbientFano, BlowupSetup, DivisorClass};
pub use link::{classify, ClassifyOptions, LinkClassification, SearchBounds, Verdict};
