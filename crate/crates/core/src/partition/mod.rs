//! Set partitions of `{1..k}` with optional block colors.
//!
//! A [`Partition`] is always stored in canonical form: blocks sorted by their
//! minimum, elements ascending inside each block. Points are 1-based.

mod enumerate;

pub use enumerate::{colorings, count, enumerate, FamilyKind};

use std::fmt;
use std::str::FromStr;

use crate::error::{param, QgvError, Result};

/// A set partition of `{1..points}`, optionally carrying one color id per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    points: usize,
    blocks: Vec<Vec<usize>>,
    colors: Option<Vec<u32>>,
}

impl Partition {
    /// Builds a partition from arbitrary blocks, validating that they cover
    /// `{1..points}` exactly once, and canonicalizes the block order.
    pub fn new(points: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; points];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            for &x in b {
                if x == 0 || x > points {
                    return param(format!("point {x} outside 1..={points}"));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return param(format!("point {x} appears in two blocks"));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return param(format!("point {} is not covered", missing + 1));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { points, blocks, colors: None })
    }

    /// Builds a partition from a per-point block label (restricted growth strings
    /// and the like). Labels only need to be equal for points in the same block.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index_of: Vec<(usize, usize)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match index_of.iter().find(|(lab, _)| *lab == l) {
                Some(&(_, bi)) => blocks[bi].push(i + 1),
                None => {
                    index_of.push((l, blocks.len()));
                    blocks.push(vec![i + 1]);
                }
            }
        }
        // first occurrence order already sorts blocks by minimum
        Partition { points: labels.len(), blocks, colors: None }
    }

    /// Pair partition from a list of 1-based pairs.
    pub fn from_pairs(points: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(points, pairs.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    /// Attaches one color per block (in canonical block order).
    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.blocks.len() {
            return param(format!(
                "{} colors given for {} blocks",
                colors.len(),
                self.blocks.len()
            ));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn uncolored(&self) -> Partition {
        Partition { points: self.points, blocks: self.blocks.clone(), colors: None }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn is_colored(&self) -> bool {
        self.colors.is_some()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Singleton points in ascending order.
    pub fn singletons(&self) -> Vec<usize> {
        self.blocks.iter().filter(|b| b.len() == 1).map(|b| b[0]).collect()
    }

    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    /// Every block has exactly two points.
    pub fn is_pairing(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Block index of every point (0-based point order).
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.points];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                labels[x - 1] = bi;
            }
        }
        labels
    }

    /// No two blocks interleave as `a < b < c < d` with `a, c` in one block and
    /// `b, d` in another. Singletons can never take part in a crossing.
    pub fn is_noncrossing(&self) -> bool {
        let labels = self.block_labels();
        for b in &self.blocks {
            for w in b.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                for x in lo + 1..hi {
                    let other = &self.blocks[labels[x - 1]];
                    if other[0] < lo || other[other.len() - 1] > hi {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every two-point block joins an odd point to an even point.
    pub fn connects_even_odd(&self) -> bool {
        self.blocks
            .iter()
            .filter(|b| b.len() == 2)
            .all(|b| (b[0] + b[1]) % 2 == 1)
    }

    /// Canonical text form, e.g. `12|34`, `1,10|2,3,...` when `points > 9`,
    /// `12:1|34:2` for colored blocks. The empty partition encodes as `""`.
    pub fn encoding(&self) -> String {
        let sep = if self.points > 9 { "," } else { "" };
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut s = b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep);
                if let Some(c) = &self.colors {
                    s.push(':');
                    s.push_str(&c[i].to_string());
                }
                s
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl FromStr for Partition {
    type Err = QgvError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Partition::new(0, vec![]);
        }
        if s.contains(',') {
            return parse_blocks(s, true);
        }
        // without commas, "1|2|...|10" is only readable as whole numbers
        parse_blocks(s, false).or_else(|e| parse_blocks(s, true).map_err(|_| e))
    }
}

fn parse_blocks(s: &str, whole_numbers: bool) -> Result<Partition> {
    let mut blocks = Vec::new();
    let mut colors = Vec::new();
    for part in s.split('|') {
        let (body, color) = match part.split_once(':') {
            Some((b, c)) => {
                let c = c
                    .parse::<u32>()
                    .map_err(|_| QgvError::Parse(format!("bad color in {part:?}")))?;
                (b, Some(c))
            }
            None => (part, None),
        };
        let elems: Option<Vec<usize>> = if whole_numbers {
            body.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let elems = elems.ok_or_else(|| QgvError::Parse(format!("bad block {part:?}")))?;
        if elems.is_empty() {
            return Err(QgvError::Parse(format!("empty block in {s:?}")));
        }
        blocks.push((elems, color));
    }
    let points = blocks.iter().flat_map(|(b, _)| b.iter()).copied().max().unwrap_or(0);
    let any_color = blocks.iter().any(|(_, c)| c.is_some());
    if any_color && blocks.iter().any(|(_, c)| c.is_none()) {
        return Err(QgvError::Parse(format!("mixed colored/uncolored blocks in {s:?}")));
    }
    blocks.sort_by_key(|(b, _)| *b.iter().min().unwrap());
    let mut plain = Vec::new();
    for (b, c) in blocks {
        plain.push(b);
        if let Some(c) = c {
            colors.push(c);
        }
    }
    let p = Partition::new(points, plain).map_err(|e| QgvError::Parse(e.to_string()))?;
    if any_color {
        p.with_colors(colors)
    } else {
        Ok(p)
    }
}

/// Number of blocks of the join `p ∨ q` in the partition lattice. For pairings
/// this is the number of closed loops obtained by stacking `p` on `q`.
pub fn join_block_count(p: &Partition, q: &Partition) -> Result<usize> {
    if p.points != q.points {
        return param(format!("point counts differ: {} vs {}", p.points, q.points));
    }
    if p.is_colored() || q.is_colored() {
        return param("join_block_count expects uncolored partitions");
    }
    let mut parent: Vec<usize> = (0..p.points).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = p.points;
    for b in p.blocks.iter().chain(q.blocks.iter()) {
        for w in b.windows(2) {
            let (ra, rb) = (find(&mut parent, w[0] - 1), find(&mut parent, w[1] - 1));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
    }
    Ok(components)
}
