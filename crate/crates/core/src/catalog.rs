//! Ambient Fano catalog.
//!
//! File format: one record per line, `label, index, anticanonical_degree`
//! (commas and/or whitespace separate fields). Blank lines are skipped and
//! `#` starts a comment.
//!
//! ```text
//! # label  index  (-K)^3
//! P3, 4, 64
//! Q3, 3, 54
//! ```

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::AmbientFano;

/// Environment variable naming a catalog file that replaces the built-in one.
pub const CATALOG_ENV: &str = "SARKISOV_CATALOG";

/// `P3`, the quadric `Q3`, del Pezzo threefolds `V1..V5` and prime Fano
/// threefolds `X2..X22` of index one (there is none of degree 20).
pub fn builtin_catalog() -> Vec<AmbientFano> {
    let mut entries = vec![("P3".to_string(), 4, 64), ("Q3".to_string(), 3, 54)];
    entries.extend((1..=5).map(|k| (format!("V{k}"), 2, 8 * k)));
    entries.extend(
        (2..=22)
            .step_by(2)
            .filter(|&m| m != 20)
            .map(|m| (format!("X{m}"), 1, m)),
    );
    entries
        .into_iter()
        .map(|(label, r, deg)| AmbientFano::new(label, r, deg).expect("built-in entries are valid"))
        .collect()
}

pub fn parse_catalog(text: &str) -> Result<Vec<AmbientFano>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        let [label, index, degree] = fields[..] else {
            return Err(Error::CatalogParse {
                line,
                reason: format!("expected 3 fields, found {}", fields.len()),
            });
        };
        let index: u32 = index.parse().map_err(|_| Error::CatalogParse {
            line,
            reason: format!("index `{index}` is not an integer"),
        })?;
        let degree: u64 = degree.parse().map_err(|_| Error::CatalogParse {
            line,
            reason: format!("anticanonical degree `{degree}` is not an integer"),
        })?;
        let ambient = AmbientFano::new(label, index, degree).map_err(|e| Error::CatalogParse {
            line,
            reason: e.to_string(),
        })?;
        if !seen.insert(label.to_string()) {
            return Err(Error::CatalogParse {
                line,
                reason: format!("duplicate label `{label}`"),
            });
        }
        out.push(ambient);
    }
    if out.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    Ok(out)
}

pub fn load_catalog(path: &Path) -> Result<Vec<AmbientFano>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_catalog(&text)
}

/// The catalog named by `SARKISOV_CATALOG`, or the built-in one.
pub fn catalog_from_env() -> Result<Vec<AmbientFano>> {
    match std::env::var_os(CATALOG_ENV) {
        Some(path) if !path.is_empty() => load_catalog(Path::new(&path)),
        _ => Ok(builtin_catalog()),
    }
}

pub fn lookup<'a>(catalog: &'a [AmbientFano], label: &str) -> Result<&'a AmbientFano> {
    catalog
        .iter()
        .find(|a| a.label() == label)
        .ok_or_else(|| Error::UnknownAmbient(label.to_string()))
}

/// Renders a catalog in the file format accepted by [`parse_catalog`].
pub fn render_catalog(catalog: &[AmbientFano]) -> String {
    let mut out = String::from("# label, index, anticanonical_degree\n");
    for a in catalog {
        out.push_str(&format!(
            "{}, {}, {}\n",
            a.label(),
            a.index(),
            a.anticanonical_degree()
        ));
    }
    out
}
