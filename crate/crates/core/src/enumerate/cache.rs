//! On-disk disc cache: `<root>/n<N>/v<V>/<signature>.disc` in the surface
//! text format, plus an `index` file listing signatures and boundary words.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::braid::BraidWord;
use crate::foliation::{write_surface, TiledSurface};

use super::{Complexity, DiscSignature, EnumeratedDisc};

/// Bumped whenever the signature encoding or file layout changes.
pub const CACHE_FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O: {0}")]
    Io(#[from] io::Error),
    #[error("cache index {path}: {msg}")]
    Corrupt { path: PathBuf, msg: String },
}

fn layer_dir(root: &Path, c: Complexity) -> PathBuf {
    root.join(format!("n{}", c.n)).join(format!("v{}", c.v))
}

/// Writes one layer; the index is written last, so a layer with an index
/// is complete.
pub fn write_layer(
    root: &Path,
    c: Complexity,
    discs: &[EnumeratedDisc],
) -> Result<PathBuf, CacheError> {
    let dir = layer_dir(root, c);
    fs::create_dir_all(&dir)?;
    for d in discs {
        let fs_ = TiledSurface::from_skeleton(&d.skeleton).map_err(|e| CacheError::Corrupt {
            path: dir.clone(),
            msg: format!("disc {} does not trace: {e}", d.signature),
        })?;
        fs::write(
            dir.join(format!("{}.disc", d.signature)),
            write_surface(&fs_),
        )?;
    }
    let index = dir.join("index");
    let tmp = dir.join("index.tmp");
    {
        let mut f = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(f, "format {CACHE_FORMAT}")?;
        writeln!(f, "n {} v {} count {}", c.n, c.v, discs.len())?;
        for d in discs {
            writeln!(f, "{}\t{}", d.signature, d.word)?;
        }
        f.flush()?;
    }
    fs::rename(&tmp, &index)?;
    Ok(dir)
}

/// Reads a complete layer back, or `None` if it has not been written (or
/// was written in another format).
pub fn read_layer(root: &Path, c: Complexity) -> Result<Option<Vec<EnumeratedDisc>>, CacheError> {
    let path = layer_dir(root, c).join("index");
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let corrupt = |msg: String| CacheError::Corrupt {
        path: path.clone(),
        msg,
    };
    let mut lines = text.lines();
    if lines.next() != Some(format!("format {CACHE_FORMAT}").as_str()) {
        return Ok(None);
    }
    let header = lines
        .next()
        .ok_or_else(|| corrupt("missing header".into()))?;
    let want = format!("n {} v {} count ", c.n, c.v);
    let count: usize = header
        .strip_prefix(&want)
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| corrupt(format!("bad header {header:?}")))?;
    let mut out = Vec::with_capacity(count);
    for l in lines {
        let (sig, word) = l
            .split_once('\t')
            .ok_or_else(|| corrupt(format!("bad line {l:?}")))?;
        let signature: DiscSignature = sig.parse().map_err(|e| corrupt(format!("{e}")))?;
        let skeleton = signature
            .to_skeleton()
            .ok_or_else(|| corrupt(format!("undecodable signature {sig}")))?;
        let word: BraidWord = word.parse().map_err(|e| corrupt(format!("{e}")))?;
        out.push(EnumeratedDisc {
            complexity: c,
            signature,
            skeleton,
            word,
        });
    }
    if out.len() != count {
        return Err(corrupt(format!(
            "expected {count} entries, found {}",
            out.len()
        )));
    }
    Ok(Some(out))
}
