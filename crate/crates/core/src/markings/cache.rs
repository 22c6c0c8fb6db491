//! Binary ball cache. Layout: magic, version, then per marking its bound,
//! slopes (length-prefixed text) and BFS depth, then adjacency lists.
//! Writes go to a temporary file that is renamed into place.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{Marking, MarkingBall, MarkingError, MarkingGraphConfig};
use crate::farey::Slope;
use crate::metric::FiniteGraph;

pub const BALL_CACHE_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"PGFMBALL";

/// Content address of a ball: surface, bounds, generators, center, radius.
pub fn ball_cache_key(cfg: &MarkingGraphConfig, center: &Marking, radius: u64) -> String {
    let mut h = Sha256::new();
    h.update(format!("v{BALL_CACHE_VERSION}|{}|R={}|E={}|", cfg.surface, cfg.r, cfg.e));
    for g in &cfg.generators {
        h.update(format!("{g};"));
    }
    h.update(format!("|{center}|{radius}"));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn path_for(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("ball-{key}.bin"))
}

fn cache_err(e: impl std::fmt::Display) -> MarkingError {
    MarkingError::Cache(e.to_string())
}

fn put_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, x: u64) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn put_marking(out: &mut Vec<u8>, m: &Marking) {
    put_u64(out, m.r());
    put_u32(out, m.slopes().len() as u32);
    for s in m.slopes() {
        let t = s.to_string();
        put_u32(out, t.len() as u32);
        out.extend_from_slice(t.as_bytes());
    }
}

fn encode(ball: &MarkingBall) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    put_u32(&mut out, BALL_CACHE_VERSION);
    put_marking(&mut out, &ball.center);
    put_u64(&mut out, ball.radius);
    put_u64(&mut out, ball.markings.len() as u64);
    for (m, d) in ball.markings.iter().zip(&ball.depth) {
        put_marking(&mut out, m);
        put_u64(&mut out, *d);
    }
    for v in 0..ball.markings.len() {
        let ns = ball.graph.neighbors(v);
        put_u32(&mut out, ns.len() as u32);
        for &n in ns {
            put_u32(&mut out, n as u32);
        }
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> io::Result<&[u8]> {
        if self.buf.len() < n {
            return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "truncated cache file"));
        }
        let (head, rest) = self.buf.split_at(n);
        self.buf = rest;
        Ok(head)
    }

    fn u32(&mut self) -> io::Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> io::Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn marking(&mut self) -> Result<Marking, MarkingError> {
        let r = self.u64().map_err(cache_err)?;
        let n = self.u32().map_err(cache_err)?;
        let mut slopes = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let len = self.u32().map_err(cache_err)? as usize;
            let text = std::str::from_utf8(self.take(len).map_err(cache_err)?).map_err(cache_err)?;
            slopes.push(text.parse::<Slope>().map_err(cache_err)?);
        }
        Ok(Marking::from_sorted(slopes, r))
    }
}

fn decode(bytes: &[u8]) -> Result<Option<MarkingBall>, MarkingError> {
    let mut r = Reader { buf: bytes };
    if r.take(8).map_err(cache_err)? != MAGIC {
        return Err(MarkingError::Cache("bad magic".into()));
    }
    if r.u32().map_err(cache_err)? != BALL_CACHE_VERSION {
        return Ok(None);
    }
    let center = r.marking()?;
    let radius = r.u64().map_err(cache_err)?;
    let n = r.u64().map_err(cache_err)? as usize;
    let mut markings = Vec::with_capacity(n);
    let mut depth = Vec::with_capacity(n);
    for _ in 0..n {
        markings.push(r.marking()?);
        depth.push(r.u64().map_err(cache_err)?);
    }
    let mut edges = Vec::new();
    for v in 0..n {
        let deg = r.u32().map_err(cache_err)?;
        for _ in 0..deg {
            let w = r.u32().map_err(cache_err)? as usize;
            if v < w {
                edges.push((v, w));
            }
        }
    }
    let graph = FiniteGraph::from_edges(n, edges).map_err(cache_err)?;
    Ok(Some(MarkingBall {
        center,
        radius,
        markings,
        depth,
        graph,
    }))
}

/// `Ok(None)` when absent or written by another cache version.
pub fn load_ball(dir: &Path, key: &str) -> Result<Option<MarkingBall>, MarkingError> {
    let path = path_for(dir, key);
    let mut file = match fs::File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(cache_err(e)),
    };
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes).map_err(cache_err)?;
    decode(&bytes)
}

pub fn store_ball(dir: &Path, key: &str, ball: &MarkingBall) -> Result<(), MarkingError> {
    fs::create_dir_all(dir).map_err(cache_err)?;
    let path = path_for(dir, key);
    let tmp = dir.join(format!(".ball-{key}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(cache_err)?;
    f.write_all(&encode(ball)).map_err(cache_err)?;
    f.sync_all().map_err(cache_err)?;
    fs::rename(&tmp, &path).map_err(cache_err)
}
