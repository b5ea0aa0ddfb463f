use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{QgvError, Result};
use crate::linalg::{RankMethod, RankOptions, DEFAULT_DENSE_LIMIT};

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub prime_count: usize,
    /// Certify non-full modular ranks exactly.
    pub bareiss_escalation: bool,
    pub dense_limit: u64,
    pub cache_dir: Option<PathBuf>,
    pub float_tol: f64,
    pub k_range: KRange,
    pub parallelism: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime_count: 3,
            bareiss_escalation: true,
            dense_limit: DEFAULT_DENSE_LIMIT,
            cache_dir: None,
            float_tol: 1e-10,
            k_range: KRange { lo: 0, hi: 4 },
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: RankOptions::default().seed,
        }
    }
}

/// Inclusive range of tensor degrees, written `k` or `lo..hi` / `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KRange {
    pub lo: usize,
    pub hi: usize,
}

impl KRange {
    pub fn single(k: usize) -> Self {
        KRange { lo: k, hi: k }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl std::str::FromStr for KRange {
    type Err = QgvError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || QgvError::Parse(format!("'{s}' is not a degree or degree range"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let r = match s.split_once("..") {
            Some((lo, hi)) => KRange { lo: num(lo)?, hi: num(hi.strip_prefix('=').unwrap_or(hi))? },
            None => KRange::single(num(s)?),
        };
        if r.lo > r.hi {
            return Err(QgvError::Parameter(format!("empty degree range {s}")));
        }
        Ok(r)
    }
}

impl std::fmt::Display for KRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(QgvError::Parse(format!("{key}={v} is not a boolean"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| QgvError::Parse(format!("{key}={v} is not a valid number")))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "prime_count" | "primes" => self.prime_count = parse_num(key, v)?,
            "bareiss_escalation" => self.bareiss_escalation = parse_bool(key, v)?,
            "dense_limit" => self.dense_limit = parse_num(key, v)?,
            "cache_dir" => self.cache_dir = if v.is_empty() { None } else { Some(PathBuf::from(v)) },
            "float_tol" => self.float_tol = parse_num(key, v)?,
            "k_range" => self.k_range = v.parse()?,
            "parallelism" | "workers" => self.parallelism = parse_num(key, v)?,
            "seed" => self.seed = parse_num(key, v)?,
            other => return Err(QgvError::Parse(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(QgvError::Parse(format!("config line {}: expected key=value", no + 1)));
            };
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        self.apply_text(&std::fs::read_to_string(path)?)
    }

    /// `QGV_CACHE_DIR` and `QGV_WORKERS`, read through `get`.
    pub fn apply_env(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<()> {
        if let Some(dir) = get("QGV_CACHE_DIR") {
            self.set("cache_dir", &dir)?;
        }
        if let Some(w) = get("QGV_WORKERS") {
            self.set("parallelism", &w)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.prime_count < 2 {
            return Err(QgvError::Parameter("prime_count must be at least 2".into()));
        }
        if self.dense_limit < 16 {
            return Err(QgvError::Parameter("dense_limit must be at least 16".into()));
        }
        if self.parallelism == 0 {
            return Err(QgvError::Parameter("parallelism must be at least 1".into()));
        }
        if !(self.float_tol > 0.0) {
            return Err(QgvError::Parameter("float_tol must be positive".into()));
        }
        Ok(())
    }

    pub fn rank_options(&self) -> RankOptions {
        RankOptions {
            method: RankMethod::Modular,
            prime_count: self.prime_count,
            seed: self.seed,
            certify: self.bareiss_escalation,
        }
    }

    /// SHA-256 over the settings that can change a report's contents.
    pub fn digest(&self) -> String {
        let text = format!(
            "prime_count={}\nbareiss_escalation={}\ndense_limit={}\nfloat_tol={:e}\nseed={}\n",
            self.prime_count, self.bareiss_escalation, self.dense_limit, self.float_tol, self.seed
        );
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}
