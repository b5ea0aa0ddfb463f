//! On-disk cache of enumerated partition families, one file per `(kind, k)`.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::partition::{count, enumerate, FamilyKind, Partition};

#[derive(Clone, Debug, Serialize)]
pub struct CacheOutcome {
    #[serde(skip)]
    pub partitions: Vec<Partition>,
    /// Served from a valid cache file.
    pub hit: bool,
    /// Set when a cache file existed but was rejected.
    pub warning: Option<String>,
}

pub fn cache_path(dir: &Path, kind: FamilyKind, k: usize) -> PathBuf {
    dir.join(format!("{}_{k}.txt", kind.tag()))
}

fn header(kind: FamilyKind, k: usize, n: usize) -> String {
    format!("qgv-partitions v1 {} {k} {n}", kind.tag())
}

fn read_cache(path: &Path, kind: FamilyKind, k: usize) -> std::result::Result<Vec<Partition>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("unreadable: {e}"))?;
    let mut lines = text.lines();
    let head = lines.next().ok_or("empty file")?;
    let fields: Vec<&str> = head.split(' ').collect();
    let declared: usize = match fields.as_slice() {
        ["qgv-partitions", "v1", tag, kk, n] if *tag == kind.tag() && *kk == k.to_string() => {
            n.parse().map_err(|_| format!("bad count in header '{head}'"))?
        }
        _ => return Err(format!("unexpected header '{head}'")),
    };
    let expected = count(kind, k).map_err(|e| e.to_string())?;
    if declared as u128 != expected {
        return Err(format!("header count {declared}, expected {expected}"));
    }
    let items: Vec<Partition> = lines
        .map(|l| l.parse::<Partition>().map_err(|e| format!("bad line '{l}': {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if items.len() != declared {
        return Err(format!("{} entries, header says {declared}", items.len()));
    }
    if items.iter().any(|p| p.points() != k || !kind.admits(p)) {
        return Err("entry outside the family".into());
    }
    if items.windows(2).any(|w| w[0] >= w[1]) {
        return Err("entries not in canonical order".into());
    }
    Ok(items)
}

fn write_cache(path: &Path, kind: FamilyKind, k: usize, items: &[Partition]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("cache"),
        std::process::id()
    ));
    {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        writeln!(f, "{}", header(kind, k, items.len()))?;
        for p in items {
            writeln!(f, "{}", p.encoding())?;
        }
        f.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// `enumerate(kind, k)`, served from `cache_dir` when a valid file exists.
/// A rejected file is recomputed and rewritten, with a warning.
pub fn load_or_enumerate(kind: FamilyKind, k: usize, cache_dir: Option<&Path>) -> Result<CacheOutcome> {
    let Some(dir) = cache_dir else {
        return Ok(CacheOutcome { partitions: enumerate(kind, k)?, hit: false, warning: None });
    };
    let path = cache_path(dir, kind, k);
    let mut warning = None;
    if path.exists() {
        match read_cache(&path, kind, k) {
            Ok(partitions) => return Ok(CacheOutcome { partitions, hit: true, warning: None }),
            Err(why) => warning = Some(format!("cache file {} rejected ({why}); recomputed", path.display())),
        }
    }
    let partitions = enumerate(kind, k)?;
    write_cache(&path, kind, k, &partitions)?;
    Ok(CacheOutcome { partitions, hit: false, warning })
}
