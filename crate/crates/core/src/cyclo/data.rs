//! The shipped table file: `Ch_N` rows and the exceptional list, frozen as JSON
//! with a SHA-256 checksum over the canonical serialization.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ch::{ch_table, ChEntry};
use super::exceptional::{derive_exceptional_list, ExceptionalEntry};
use crate::error::{Error, Result};

pub const TABLES_VERSION: u32 = 1;
pub const SHIPPED: &str = include_str!("../../data/cyclo_tables.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloTables {
    pub version: u32,
    pub ch_table: Vec<ChEntry>,
    pub exceptional: Vec<ExceptionalEntry>,
}

#[derive(Serialize, Deserialize)]
struct DataFile {
    sha256: String,
    tables: CycloTables,
}

pub fn checksum(t: &CycloTables) -> String {
    let canon = serde_json::to_string(t).expect("tables serialize");
    hex::encode(Sha256::digest(canon.as_bytes()))
}

/// Recomputes every table from its definition.
pub fn derive_tables() -> CycloTables {
    CycloTables { version: TABLES_VERSION, ch_table: ch_table(), exceptional: derive_exceptional_list() }
}

pub fn render(t: &CycloTables) -> String {
    let file = DataFile { sha256: checksum(t), tables: t.clone() };
    serde_json::to_string_pretty(&file).expect("tables serialize") + "\n"
}

/// Parses a table file and checks its checksum and version.
pub fn parse(s: &str) -> Result<CycloTables> {
    let file: DataFile = serde_json::from_str(s)?;
    if file.tables.version != TABLES_VERSION {
        return Err(Error::Data(format!("table version {} (expected {TABLES_VERSION})", file.tables.version)));
    }
    let sum = checksum(&file.tables);
    if sum != file.sha256 {
        return Err(Error::Data(format!("checksum mismatch: file says {}, contents hash to {sum}", file.sha256)));
    }
    Ok(file.tables)
}

/// Differences between a table file and freshly derived tables; empty means they agree.
pub fn diff(s: &str) -> Result<Vec<String>> {
    let shipped = parse(s)?;
    let fresh = derive_tables();
    let mut out = Vec::new();
    if shipped.ch_table.len() != fresh.ch_table.len() {
        out.push(format!("Ch rows: {} shipped, {} derived", shipped.ch_table.len(), fresh.ch_table.len()));
    }
    for (a, b) in shipped.ch_table.iter().zip(&fresh.ch_table) {
        if a != b {
            out.push(format!("Ch_{}: shipped {} / derived {}", a.n, a.poly, b.poly));
        }
    }
    if shipped.exceptional.len() != fresh.exceptional.len() {
        out.push(format!("exceptional: {} shipped, {} derived", shipped.exceptional.len(), fresh.exceptional.len()));
    }
    for (a, b) in shipped.exceptional.iter().zip(&fresh.exceptional) {
        if a != b {
            out.push(format!("{}: shipped entry differs from derivation", a.label));
        }
    }
    Ok(out)
}

fn shipped() -> &'static CycloTables {
    static T: OnceLock<CycloTables> = OnceLock::new();
    T.get_or_init(|| parse(SHIPPED).expect("shipped table file is valid"))
}

pub fn exceptional_list() -> &'static [ExceptionalEntry] {
    &shipped().exceptional
}

pub fn ch_entries() -> &'static [ChEntry] {
    &shipped().ch_table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_matches_derivation() {
        assert_eq!(diff(SHIPPED).unwrap(), Vec::<String>::new());
        assert_eq!(exceptional_list().len(), 19);
        assert_eq!(ch_entries().len(), 16);
    }

    #[test]
    fn tampering_is_detected() {
        let bad = SHIPPED.replacen("673", "674", 1);
        assert!(matches!(parse(&bad), Err(Error::Data(_))));
    }

    #[test]
    #[ignore = "rewrites the shipped table file"]
    fn regenerate_shipped_file() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/cyclo_tables.json");
        std::fs::write(path, render(&derive_tables())).unwrap();
    }
}
