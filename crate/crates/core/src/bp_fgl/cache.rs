//! On-disk cache of formal group law coefficients.
//!
//! One JSON document per `(p, D, K)`. Coefficients are decimal strings
//! (`"n"` or `"n/d"`), entries are listed in monomial order and object keys
//! are sorted, so writing the same law twice gives identical bytes. Writes
//! go to a temporary file in the cache directory followed by a rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::fgl::FglContext;
use super::series::TruncSeries;
use super::vpoly::{fmt_rational, parse_rational, VMono, VPoly};
use crate::error::{Error, Result};
use crate::report::to_json;

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Entry {
    x: Vec<u32>,
    v: Vec<u32>,
    c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CacheDocument {
    format_version: u32,
    p: u64,
    max_degree: u32,
    k: usize,
    log: Vec<Entry>,
    exp: Vec<Entry>,
    law: Vec<Entry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Built,
    Disabled,
}

fn entries(s: &TruncSeries) -> Vec<Entry> {
    s.terms()
        .iter()
        .flat_map(|(e, c)| {
            c.terms().iter().map(move |(m, q)| Entry {
                x: e.clone(),
                v: m.exponents().to_vec(),
                c: fmt_rational(q),
            })
        })
        .collect()
}

fn series(names: &[&str], max_degree: u32, es: &[Entry]) -> Result<TruncSeries> {
    let mut s = TruncSeries::zero(names, max_degree);
    for e in es {
        if e.x.len() != names.len() {
            return Err(Error::Io(format!(
                "cache entry has {} variable exponents, expected {}",
                e.x.len(),
                names.len()
            )));
        }
        let q = parse_rational(&e.c)
            .ok_or_else(|| Error::Io(format!("bad coefficient {:?} in cache", e.c)))?;
        s.add_term(e.x.clone(), VPoly::term(VMono::new(e.v.clone()), q));
    }
    Ok(s)
}

pub fn cache_file_name(p: u64, max_degree: u32, k: usize) -> String {
    format!("fgl-p{p}-d{max_degree}-k{k}.json")
}

pub fn to_document(ctx: &FglContext) -> String {
    to_json(&CacheDocument {
        format_version: CACHE_FORMAT_VERSION,
        p: ctx.p,
        max_degree: ctx.max_degree,
        k: ctx.k,
        log: entries(&ctx.log),
        exp: entries(&ctx.exp),
        law: entries(&ctx.fgl),
    })
}

/// Parses a cache document and re-checks every law invariant on the loaded
/// coefficients, without rerunning the construction.
pub fn from_document(text: &str) -> Result<FglContext> {
    let doc: CacheDocument =
        serde_json::from_str(text).map_err(|e| Error::Io(format!("unreadable cache: {e}")))?;
    if doc.format_version != CACHE_FORMAT_VERSION {
        return Err(Error::Io(format!(
            "cache format {} is not supported",
            doc.format_version
        )));
    }
    let d = doc.max_degree;
    let ctx = FglContext {
        p: doc.p,
        max_degree: d,
        k: doc.k,
        log: series(&["x"], d, &doc.log)?,
        exp: series(&["x"], d, &doc.exp)?,
        fgl: series(&["x", "y"], d, &doc.law)?,
    };
    ctx.verify()?;
    Ok(ctx)
}

pub fn write_cache(ctx: &FglContext, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(ctx.p, ctx.max_degree, ctx.k));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(to_document(ctx).as_bytes())?;
    tmp.flush()?;
    tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(path)
}

pub fn load_cache(path: &Path) -> Result<FglContext> {
    from_document(&fs::read_to_string(path)?)
}

/// Loads the law for `(p, D, K)` from `dir` if present and valid, otherwise
/// builds it and writes the cache. With `dir = None` the cache is skipped.
pub fn load_or_build(
    dir: Option<&Path>,
    p: u64,
    max_degree: u32,
    k: usize,
) -> Result<(FglContext, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((super::build_fgl(p, max_degree, k)?, CacheStatus::Disabled));
    };
    let path = dir.join(cache_file_name(p, max_degree, k));
    if path.exists() {
        match load_cache(&path) {
            Ok(ctx) if ctx.p == p && ctx.max_degree == max_degree && ctx.k == k => {
                log::debug!("fgl cache hit: {}", path.display());
                return Ok((ctx, CacheStatus::Hit));
            }
            Ok(_) => log::warn!(
                "cache {} holds other parameters; rebuilding",
                path.display()
            ),
            Err(e) => log::warn!("ignoring cache {}: {e}", path.display()),
        }
    }
    let ctx = super::build_fgl(p, max_degree, k)?;
    write_cache(&ctx, dir)?;
    log::debug!("fgl cache written: {}", path.display());
    Ok((ctx, CacheStatus::Built))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp_fgl::build_fgl;

    #[test]
    fn round_trip_is_byte_identical() {
        let ctx = build_fgl(5, 8, 2).unwrap();
        let doc = to_document(&ctx);
        let back = from_document(&doc).unwrap();
        assert_eq!(back, ctx);
        assert_eq!(to_document(&back), doc);
    }

    #[test]
    fn corrupted_cache_is_rejected() {
        let ctx = build_fgl(5, 8, 2).unwrap();
        let doc = to_document(&ctx).replacen("\"-1\"", "\"-2\"", 1);
        assert!(from_document(&doc).is_err());
        assert!(from_document("{}").is_err());
    }

    #[test]
    fn load_or_build_uses_the_directory() {
        let dir = tempfile::tempdir().unwrap();
        let (a, s1) = load_or_build(Some(dir.path()), 5, 8, 2).unwrap();
        let (b, s2) = load_or_build(Some(dir.path()), 5, 8, 2).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Built, CacheStatus::Hit));
        assert_eq!(a, b);
        let path = dir.path().join(cache_file_name(5, 8, 2));
        let first = fs::read(&path).unwrap();
        write_cache(&b, dir.path()).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
    }
}
