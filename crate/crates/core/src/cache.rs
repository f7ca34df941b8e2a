//! On-disk cache of overlap graphs.
//!
//! Little-endian layout: `"OMGA"`, version `u32`, `n` `u32`, vertex count
//! `u64`, edge count `u64`, row offsets `u64 x (V+1)`, neighbour ids
//! `u32 x 2E`, then an FNV-1a 64 checksum of the offset and neighbour bytes.

use std::fs;
use std::hash::Hasher;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use fnv::FnvHasher;

use crate::cycles::enumerate_cycles;
use crate::error::{Error, Result};
use crate::overlap::{BuildMethod, OverlapGraph};

pub const MAGIC: &[u8; 4] = b"OMGA";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 4 + 8 + 8;

pub fn cache_file_name(n: usize) -> String {
    format!("omega_{n}.bin")
}

pub fn cache_save(omega: &OverlapGraph, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut out = BufWriter::new(fs::File::create(path)?);
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&(omega.n() as u32).to_le_bytes())?;
    out.write_all(&(omega.vertex_count() as u64).to_le_bytes())?;
    out.write_all(&omega.edge_count().to_le_bytes())?;
    let mut hash = FnvHasher::default();
    for &o in omega.offsets() {
        let b = o.to_le_bytes();
        hash.write(&b);
        out.write_all(&b)?;
    }
    for &x in omega.neighbor_array() {
        let b = x.to_le_bytes();
        hash.write(&b);
        out.write_all(&b)?;
    }
    out.write_all(&hash.finish().to_le_bytes())?;
    out.flush()?;
    Ok(())
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

pub fn cache_load(path: &Path) -> Result<OverlapGraph> {
    let bytes = fs::read(path)?;
    if bytes.len() < HEADER_LEN {
        return Err(Error::CacheFormat("truncated header".into()));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::CacheFormat("bad magic bytes".into()));
    }
    let version = u32_at(&bytes, 4);
    if version != VERSION {
        return Err(Error::CacheFormat(format!("unsupported version {version}")));
    }
    let n = u32_at(&bytes, 8) as usize;
    let v = u64_at(&bytes, 12);
    let e = u64_at(&bytes, 20);
    let payload_len = (v as u128 + 1) * 8 + e as u128 * 2 * 4;
    if bytes.len() as u128 != HEADER_LEN as u128 + payload_len + 8 {
        return Err(Error::CacheFormat(format!(
            "expected {} bytes for {v} vertices and {e} edges, found {}",
            HEADER_LEN as u128 + payload_len + 8,
            bytes.len()
        )));
    }
    let payload_end = HEADER_LEN + payload_len as usize;
    let payload = &bytes[HEADER_LEN..payload_end];
    let mut hash = FnvHasher::default();
    hash.write(payload);
    let computed = hash.finish();
    let stored = u64_at(&bytes, payload_end);
    if stored != computed {
        return Err(Error::CacheChecksum { stored, computed });
    }
    let catalog = enumerate_cycles(n)?;
    if catalog.len() as u64 != v {
        return Err(Error::CacheFormat(format!("{v} vertices stored, K_{n} has {} cycles", catalog.len())));
    }
    let split = (v as usize + 1) * 8;
    let offsets = payload[..split].chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
    let neighbors = payload[split..].chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
    let g = OverlapGraph::from_parts(catalog, offsets, neighbors)?;
    if g.edge_count() != e {
        return Err(Error::CacheFormat("edge count disagrees with the rows".into()));
    }
    Ok(g)
}

/// Loads `dir/omega_{n}.bin` if present and valid, otherwise builds the
/// graph and writes it there.
pub fn load_or_build(dir: &Path, n: usize, method: BuildMethod) -> Result<(OverlapGraph, bool)> {
    let path: PathBuf = dir.join(cache_file_name(n));
    if path.exists() {
        if let Ok(g) = cache_load(&path) {
            if g.n() == n {
                return Ok((g, true));
            }
        }
    }
    let g = OverlapGraph::build(n, method)?;
    cache_save(&g, &path)?;
    Ok((g, false))
}
