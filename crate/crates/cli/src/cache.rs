//! On-disk cache of exact coefficient polynomials.
//!
//! The file starts with a versioned header line, followed by one record per
//! polynomial:
//!
//! ```text
//! nicholson-coefficient-cache v1
//! B 2 -1/20 0 1/2
//! ```
//!
//! i.e. the kind, n, and the coefficients of κ⁰, κ¹, … as decimal
//! `numerator/denominator` (or plain integers).  The file is read on first
//! use only, and rewritten atomically when new polynomials were computed.
//! A file with a different header (an older or foreign format) is ignored
//! and replaced; a malformed record under the current header is an error.

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::BigRational;

use nicholson_core::exact::{coeff, insert_cached, CoeffKind, CoeffPolynomial};

use crate::error::{CliError, Result};

/// First line of every cache file.
pub const CACHE_HEADER: &str = "nicholson-coefficient-cache v1";

type Key = (char, usize);

fn key(kind: CoeffKind, n: usize) -> Key {
    (kind_char(kind), n)
}

fn kind_char(kind: CoeffKind) -> char {
    match kind {
        CoeffKind::B => 'B',
        CoeffKind::D => 'D',
    }
}

/// A lazily loaded coefficient cache bound to one file.
#[derive(Debug)]
pub struct CoeffCache {
    path: PathBuf,
    stored: OnceCell<BTreeMap<Key, CoeffPolynomial>>,
    requested: RefCell<BTreeSet<Key>>,
}

impl CoeffCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into(), stored: OnceCell::new(), requested: RefCell::new(BTreeSet::new()) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Cache { path: self.path.display().to_string(), message: message.into() }
    }

    fn load(&self) -> Result<&BTreeMap<Key, CoeffPolynomial>> {
        if let Some(s) = self.stored.get() {
            return Ok(s);
        }
        let map = match fs::read_to_string(&self.path) {
            Ok(text) => parse(&text).map_err(|m| self.error(m))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(self.error(e.to_string())),
        };
        for p in map.values() {
            insert_cached(p.clone());
        }
        Ok(self.stored.get_or_init(|| map))
    }

    /// Makes B_k or D_k for k ≤ n available, seeding the library memo from
    /// the file on first use.
    pub fn ensure(&self, kind: CoeffKind, n: usize) -> Result<()> {
        self.load()?;
        let mut req = self.requested.borrow_mut();
        for k in 0..=n {
            req.insert(key(kind, k));
        }
        Ok(())
    }

    /// Number of polynomials read from the file.
    pub fn stored_len(&self) -> usize {
        self.stored.get().map_or(0, BTreeMap::len)
    }

    /// Writes the file if polynomials were requested that it did not hold.
    /// Returns whether anything was written.
    pub fn persist(&self) -> Result<bool> {
        let Some(stored) = self.stored.get() else {
            return Ok(false);
        };
        let req = self.requested.borrow();
        if req.iter().all(|k| stored.contains_key(k)) {
            return Ok(false);
        }
        let mut all: BTreeMap<Key, CoeffPolynomial> = stored.clone();
        for &(c, n) in req.iter() {
            let kind = if c == 'B' { CoeffKind::B } else { CoeffKind::D };
            all.entry((c, n)).or_insert_with(|| (*coeff(kind, n)).clone());
        }
        let mut text = String::with_capacity(64 * all.len());
        text.push_str(CACHE_HEADER);
        text.push('\n');
        for ((c, n), p) in &all {
            text.push_str(&format!("{c} {n}"));
            for q in &p.coeffs {
                text.push(' ');
                text.push_str(&q.to_string());
            }
            text.push('\n');
        }
        let dir = self.path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let tmp = dir.join(format!(
            ".{}.tmp",
            self.path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "cache".into())
        ));
        let mut f = fs::File::create(&tmp).map_err(|e| self.error(e.to_string()))?;
        f.write_all(text.as_bytes()).map_err(|e| self.error(e.to_string()))?;
        f.sync_all().map_err(|e| self.error(e.to_string()))?;
        fs::rename(&tmp, &self.path).map_err(|e| self.error(e.to_string()))?;
        Ok(true)
    }
}

/// Parses a cache file; an unrecognised header yields an empty map, a
/// malformed record a human-readable message.
pub fn parse(text: &str) -> std::result::Result<BTreeMap<Key, CoeffPolynomial>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CACHE_HEADER => {}
        _ => return Ok(BTreeMap::new()),
    }
    let mut map = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| format!("line {}: {what}", i + 2);
        let mut fields = line.split_ascii_whitespace();
        let kind = match fields.next() {
            Some("B") => CoeffKind::B,
            Some("D") => CoeffKind::D,
            _ => return Err(bad("expected kind B or D")),
        };
        let n: usize = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("expected index n"))?;
        let coeffs = fields
            .map(|s| s.parse::<BigRational>().map_err(|_| bad(&format!("bad rational '{s}'"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.len() != n + 1 {
            return Err(bad(&format!("expected {} coefficients, found {}", n + 1, coeffs.len())));
        }
        map.insert(key(kind, n), CoeffPolynomial { kind, n, coeffs });
    }
    Ok(map)
}
