//! On-disk cache of built KR crystals plus an in-process memo.
//!
//! File layout (little endian): magic `KRCC`, format version, family, n, r, s,
//! vertex count, packed vertex keys, component index per vertex, zero-map tag
//! and permutation(s), then a SHA-256 of everything before it. Arrows are not
//! stored; they are recomputed from the words.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use super::crystal::{KrCrystal, ZeroMap};
use super::spec::{AlgebraSpec, Family, KrSpec};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"KRCC";
pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "KRC_CACHE_DIR";

/// `$KRC_CACHE_DIR`, else `$XDG_CACHE_HOME/krc`, else `~/.cache/krc`.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("krc"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("krc"))
}

pub fn file_name(spec: KrSpec) -> String {
    format!("{}-n{}-r{}-s{}.krc", spec.alg.family, spec.alg.n, spec.r, spec.s)
}

fn put_u32s(buf: &mut Vec<u8>, xs: &[u32]) {
    for x in xs {
        buf.extend_from_slice(&x.to_le_bytes());
    }
}

pub fn encode_crystal(kr: &KrCrystal) -> Vec<u8> {
    let spec = kr.spec();
    let n = kr.len();
    let mut buf = Vec::with_capacity(64 + n * 25);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&[spec.alg.family.code(), spec.alg.n, spec.r, spec.s]);
    buf.extend_from_slice(&(n as u64).to_le_bytes());
    for k in kr.keys() {
        buf.extend_from_slice(&k.to_le_bytes());
    }
    buf.extend_from_slice(kr.shape_indices());
    match kr.zero_map() {
        ZeroMap::Sigma(s) => {
            buf.push(0);
            put_u32s(&mut buf, s);
        }
        ZeroMap::Promotion { pr, pr_inv } => {
            buf.push(1);
            put_u32s(&mut buf, pr);
            put_u32s(&mut buf, pr_inv);
        }
    }
    let digest = Sha256::digest(&buf);
    buf.extend_from_slice(&digest);
    buf
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Cache("truncated file".into()))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32s(&mut self, n: usize) -> Result<Vec<u32>> {
        let raw = self.take(n.checked_mul(4).ok_or_else(|| Error::Cache("bad length".into()))?)?;
        Ok(raw.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect())
    }
}

/// Parses a cache file, checking magic, version, checksum and spec.
pub fn decode_crystal(bytes: &[u8], expect: Option<KrSpec>) -> Result<KrCrystal> {
    if bytes.len() < 32 + 20 {
        return Err(Error::Cache("file too short".into()));
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    let mut r = Reader { buf: body, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let version = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(Error::Cache(format!("format version {version}, expected {FORMAT_VERSION}")));
    }
    let head = r.take(4)?;
    let family = Family::from_code(head[0]).ok_or_else(|| Error::Cache("bad family".into()))?;
    let spec = AlgebraSpec::new(family, head[1] as usize)?.kr(head[2] as usize, head[3] as usize)?;
    if expect.is_some_and(|e| e != spec) {
        return Err(Error::Cache(format!("file holds {spec}")));
    }
    let n = u64::from_le_bytes(r.take(8)?.try_into().unwrap()) as usize;
    let keys: Vec<u128> = r
        .take(n.checked_mul(16).ok_or_else(|| Error::Cache("bad length".into()))?)?
        .chunks_exact(16)
        .map(|c| u128::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let shape_of = r.take(n)?.to_vec();
    let zero = match r.take(1)?[0] {
        0 => ZeroMap::Sigma(r.u32s(n)?),
        1 => {
            let pr = r.u32s(n)?;
            ZeroMap::Promotion { pr, pr_inv: r.u32s(n)? }
        }
        t => return Err(Error::Cache(format!("unknown zero-map tag {t}"))),
    };
    if r.pos != body.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    Ok(KrCrystal::from_parts(spec, keys, shape_of, zero))
}

pub fn save(dir: &Path, kr: &KrCrystal) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(file_name(kr.spec()));
    let tmp = dir.join(format!(".{}.{}.tmp", file_name(kr.spec()), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode_crystal(kr))?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// `Ok(None)` when absent; corrupt files are reported as `Error::Cache`.
pub fn load(dir: &Path, spec: KrSpec) -> Result<Option<KrCrystal>> {
    let path = dir.join(file_name(spec));
    match fs::read(&path) {
        Ok(bytes) => decode_crystal(&bytes, Some(spec)).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub bytes: u64,
    pub valid: bool,
}

pub fn list(dir: &Path) -> Result<Vec<CacheEntry>> {
    let mut out = Vec::new();
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(e.into()),
    };
    for entry in entries {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if !name.ends_with(".krc") {
            continue;
        }
        let bytes = fs::read(entry.path())?;
        out.push(CacheEntry {
            file: name,
            bytes: bytes.len() as u64,
            valid: decode_crystal(&bytes, None).is_ok(),
        });
    }
    out.sort_by(|a, b| a.file.cmp(&b.file));
    Ok(out)
}

/// Removes cache files; returns how many were deleted.
pub fn clear(dir: &Path) -> Result<usize> {
    let mut removed = 0;
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(e.into()),
    };
    for entry in entries {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.ends_with(".krc") || name.ends_with(".tmp") {
            fs::remove_file(entry.path())?;
            removed += 1;
        }
    }
    Ok(removed)
}

/// Shared source of KR crystals: memory first, then disk, then a fresh build.
#[derive(Debug, Default)]
pub struct Session {
    cache_dir: Option<PathBuf>,
    memo: Mutex<HashMap<KrSpec, Arc<KrCrystal>>>,
}

impl Session {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Session { cache_dir, memo: Mutex::default() }
    }

    /// No disk cache.
    pub fn in_memory() -> Self {
        Self::new(None)
    }

    pub fn from_env() -> Self {
        Self::new(default_cache_dir())
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn crystal(&self, spec: KrSpec) -> Result<Arc<KrCrystal>> {
        let mut memo = self.memo.lock().expect("memo poisoned");
        if let Some(kr) = memo.get(&spec) {
            return Ok(kr.clone());
        }
        let kr = match &self.cache_dir {
            Some(dir) => match load(dir, spec) {
                Ok(Some(kr)) => kr,
                Ok(None) | Err(Error::Cache(_)) => {
                    let kr = KrCrystal::build(spec)?;
                    // a read-only cache directory is not fatal
                    let _ = save(dir, &kr);
                    kr
                }
                Err(e) => return Err(e),
            },
            None => KrCrystal::build(spec)?,
        };
        let kr = Arc::new(kr);
        memo.insert(spec, kr.clone());
        Ok(kr)
    }
}
