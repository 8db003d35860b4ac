//! Loading of the bundled data, root systems and root-order override files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use sylowchar_core::rootsys::RootOrder;
use sylowchar_core::tabulate::{
    bundled, parse_claimed_deltas, parse_families, parse_regime_tables, ClaimedDelta, FamilyRecord, Regime,
    RegimeTable,
};
use sylowchar_core::{CartanType, RootSystem};

use crate::error::{Error, Result};

/// Directory holding replacement copies of the data files.
pub const DATA_DIR_ENV: &str = "SYLOWCHAR_DATA_DIR";

/// File names inside a data directory.
pub const FAMILIES_FILE: &str = "families.txt";
pub const REGIME_TABLES_FILE: &str = "regime_tables.txt";
pub const CLAIMED_DELTAS_FILE: &str = "claimed_deltas.txt";

/// Parsed family data, regime tables and claimed deltas.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub families: Vec<FamilyRecord>,
    pub tables: BTreeMap<Regime, RegimeTable>,
    pub claims: Vec<ClaimedDelta>,
    /// `bundled` or the directory the files were read from.
    pub source: String,
}

impl Bundle {
    /// The data compiled into the binary.
    pub fn bundled() -> Result<Bundle> {
        Bundle::from_texts(bundled::FAMILIES, bundled::REGIME_TABLES, bundled::CLAIMED_DELTAS, "bundled")
    }

    /// Reads the directory named by [`DATA_DIR_ENV`] if set, the compiled data otherwise.
    ///
    /// Files missing from the directory fall back to the compiled copies.
    pub fn load() -> Result<Bundle> {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) => Bundle::from_dir(Path::new(&dir)),
            None => Bundle::bundled(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Bundle> {
        let read = |name: &str, fallback: &'static str| -> Result<String> {
            let path = dir.join(name);
            if path.exists() {
                fs::read_to_string(&path).map_err(|source| Error::Io { path, source })
            } else {
                Ok(fallback.to_string())
            }
        };
        let f = read(FAMILIES_FILE, bundled::FAMILIES)?;
        let t = read(REGIME_TABLES_FILE, bundled::REGIME_TABLES)?;
        let c = read(CLAIMED_DELTAS_FILE, bundled::CLAIMED_DELTAS)?;
        Bundle::from_texts(&f, &t, &c, &dir.display().to_string())
    }

    pub fn from_texts(families: &str, tables: &str, claims: &str, source: &str) -> Result<Bundle> {
        let wrap = |name: &str| {
            let path = format!("{source}/{name}");
            move |e| Error::Data { path, source: e }
        };
        Ok(Bundle {
            families: parse_families(families).map_err(wrap(FAMILIES_FILE))?,
            tables: parse_regime_tables(tables).map_err(wrap(REGIME_TABLES_FILE))?,
            claims: parse_claimed_deltas(claims).map_err(wrap(CLAIMED_DELTAS_FILE))?,
            source: source.to_string(),
        })
    }

    /// Regimes with tables for a type.
    pub fn regimes_of(&self, ty: &str) -> Vec<Regime> {
        self.tables.keys().filter(|r| r.ty == ty).cloned().collect()
    }

    /// True iff family records exist for the type.
    pub fn has_families(&self, ty: &str) -> bool {
        self.families.iter().any(|f| f.ty == ty)
    }
}

/// Parses a root-order file: whitespace or comma separated 1-based labels in
/// the default numbering, giving the root at each new position. Lines
/// starting with `#` are ignored.
pub fn parse_root_order(text: &str) -> Result<RootOrder> {
    let mut labels = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            labels.push(tok.parse().map_err(|_| Error::Input(format!("bad root label '{tok}' in order file")))?);
        }
    }
    Ok(RootOrder::Permutation(labels))
}

/// Builds a root system, applying an order file when given.
pub fn root_system(ty: &str, order_file: Option<&PathBuf>) -> Result<RootSystem> {
    let ct = CartanType::parse(ty)?;
    match order_file {
        None => Ok(RootSystem::build(ct)),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
            Ok(RootSystem::build_with_order(ct, &parse_root_order(&text)?)?)
        }
    }
}
