use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::counting;
use crate::error::{param, QgvError, Result};

/// Largest family `enumerate` will materialize.
const MAX_ENUMERATION: u128 = 5_000_000;

/// The partition families used throughout the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Non-crossing pairings.
    NC2,
    /// All pairings (Brauer diagrams).
    P2,
    /// Non-crossing partitions with blocks of size one or two.
    NC21,
    /// `NC21` with exactly `s` singletons.
    NC21S(usize),
    /// All set partitions.
    SetPartitions,
    /// Non-crossing pairings joining odd points to even points.
    EvenOddNC,
    /// All pairings joining odd points to even points.
    EvenOddAll,
    /// Non-crossing pairings with every block colored from `1..=c`.
    ColoredNC2(u32),
}

impl FamilyKind {
    /// Tag used in cache headers and reports.
    pub fn tag(&self) -> String {
        match self {
            FamilyKind::NC2 => "NC2".into(),
            FamilyKind::P2 => "P2".into(),
            FamilyKind::NC21 => "NC21".into(),
            FamilyKind::NC21S(s) => format!("NC21_S{s}"),
            FamilyKind::SetPartitions => "SET_PARTITIONS".into(),
            FamilyKind::EvenOddNC => "EVENODD_NC".into(),
            FamilyKind::EvenOddAll => "EVENODD_ALL".into(),
            FamilyKind::ColoredNC2(c) => format!("COLORED_NC2_{c}"),
        }
    }

    /// Structural predicate every member of `enumerate(self, k)` satisfies.
    pub fn admits(&self, p: &Partition) -> bool {
        let uncolored_ok = |p: &Partition| !p.is_colored();
        match *self {
            FamilyKind::NC2 => uncolored_ok(p) && p.is_pairing() && p.is_noncrossing(),
            FamilyKind::P2 => uncolored_ok(p) && p.is_pairing(),
            FamilyKind::NC21 => uncolored_ok(p) && p.max_block_size() <= 2 && p.is_noncrossing(),
            FamilyKind::NC21S(s) => {
                uncolored_ok(p)
                    && p.max_block_size() <= 2
                    && p.is_noncrossing()
                    && p.singleton_count() == s
            }
            FamilyKind::SetPartitions => uncolored_ok(p),
            FamilyKind::EvenOddNC => {
                uncolored_ok(p) && p.is_pairing() && p.is_noncrossing() && p.connects_even_odd()
            }
            FamilyKind::EvenOddAll => uncolored_ok(p) && p.is_pairing() && p.connects_even_odd(),
            FamilyKind::ColoredNC2(c) => {
                p.is_pairing()
                    && p.is_noncrossing()
                    && p.colors()
                        .map(|cs| cs.iter().all(|&x| x >= 1 && x <= c))
                        .unwrap_or(false)
            }
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for FamilyKind {
    type Err = QgvError;

    /// Accepts the tags (`NC21_S2`) as well as CLI spellings (`nc21s:2`,
    /// `evenodd-nc`, `colored-nc2:3`, `set`).
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | ':' | '(' | ')' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        let num = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| QgvError::Parse(format!("bad family kind {s:?}")))
        };
        Ok(match norm.as_str() {
            "NC2" => FamilyKind::NC2,
            "P2" => FamilyKind::P2,
            "NC21" => FamilyKind::NC21,
            "SET" | "SETPARTITIONS" => FamilyKind::SetPartitions,
            "EVENODDNC" => FamilyKind::EvenOddNC,
            "EVENODDALL" => FamilyKind::EvenOddAll,
            _ if norm.starts_with("NC21S") => FamilyKind::NC21S(num(&norm[5..])?),
            _ if norm.starts_with("COLOREDNC2") => FamilyKind::ColoredNC2(num(&norm[10..])? as u32),
            _ => return Err(QgvError::Parse(format!("unknown family kind {s:?}"))),
        })
    }
}

/// Cardinality of `enumerate(kind, k)`, from closed counting formulas.
pub fn count(kind: FamilyKind, k: usize) -> Result<u128> {
    validate(kind, k)?;
    let even = k % 2 == 0;
    Ok(match kind {
        FamilyKind::NC2 | FamilyKind::EvenOddNC => {
            if even {
                counting::catalan(k / 2)
            } else {
                0
            }
        }
        FamilyKind::P2 => {
            if even {
                counting::double_factorial_odd(k / 2)
            } else {
                0
            }
        }
        FamilyKind::NC21 => counting::motzkin(k),
        FamilyKind::NC21S(s) => counting::binomial(k, s) * counting::catalan((k - s) / 2),
        FamilyKind::SetPartitions => counting::bell(k),
        FamilyKind::EvenOddAll => {
            if even {
                counting::factorial(k / 2)
            } else {
                0
            }
        }
        FamilyKind::ColoredNC2(c) => {
            if even {
                counting::catalan(k / 2) * (c as u128).pow((k / 2) as u32)
            } else {
                0
            }
        }
    })
}

fn validate(kind: FamilyKind, k: usize) -> Result<()> {
    match kind {
        FamilyKind::NC21S(s) if s > k => param(format!("NC21_S({s}) needs s <= k = {k}")),
        FamilyKind::NC21S(s) if (k - s) % 2 == 1 => {
            param(format!("NC21_S({s}) needs k - s even, got k = {k}"))
        }
        FamilyKind::ColoredNC2(0) => param("COLORED_NC2 needs at least one color"),
        _ => Ok(()),
    }
}

/// All partitions of `kind` on `k` points, sorted by canonical block form.
pub fn enumerate(kind: FamilyKind, k: usize) -> Result<Vec<Partition>> {
    let expected = count(kind, k)?;
    if expected > MAX_ENUMERATION {
        return Err(QgvError::Resource(format!(
            "{kind} on {k} points has {expected} members (limit {MAX_ENUMERATION})"
        )));
    }
    let points: Vec<usize> = (1..=k).collect();
    let mut out: Vec<Partition> = match kind {
        FamilyKind::NC2 | FamilyKind::EvenOddNC => from_blocks(k, nc2_blocks(&points)),
        FamilyKind::P2 => from_blocks(k, p2_blocks(&points)),
        FamilyKind::NC21 => from_blocks(k, nc21_blocks(&points)),
        FamilyKind::NC21S(s) => from_blocks(k, nc21_blocks(&points))
            .into_iter()
            .filter(|p| p.singleton_count() == s)
            .collect(),
        FamilyKind::SetPartitions => set_partitions(k),
        FamilyKind::EvenOddAll => even_odd_all(k),
        FamilyKind::ColoredNC2(c) => {
            let mut v = Vec::new();
            for p in from_blocks(k, nc2_blocks(&points)) {
                v.extend(colorings(&p, c)?);
            }
            v
        }
    };
    if kind == FamilyKind::EvenOddNC {
        out.retain(Partition::connects_even_odd);
    }
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// Every coloring of the blocks of `p` by `1..=num_colors`, first block most
/// significant.
pub fn colorings(p: &Partition, num_colors: u32) -> Result<Vec<Partition>> {
    if num_colors < 1 {
        return param("num_colors must be at least 1");
    }
    if p.is_colored() {
        return param("colorings expects an uncolored partition");
    }
    let b = p.num_blocks();
    let mut out = Vec::new();
    let mut digits = vec![1u32; b];
    loop {
        out.push(p.clone().with_colors(digits.clone())?);
        let mut i = b;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if digits[i] < num_colors {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
        }
    }
}

fn from_blocks(k: usize, sets: Vec<Vec<Vec<usize>>>) -> Vec<Partition> {
    sets.into_iter()
        .map(|b| Partition::new(k, b).expect("enumerator produced an invalid cover"))
        .collect()
}

fn nc2_blocks(pts: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if pts.is_empty() {
        return vec![vec![]];
    }
    if pts.len() % 2 == 1 {
        return vec![];
    }
    let mut out = Vec::new();
    for j in (1..pts.len()).step_by(2) {
        let inner = nc2_blocks(&pts[1..j]);
        let outer = nc2_blocks(&pts[j + 1..]);
        for a in &inner {
            for b in &outer {
                let mut blocks = vec![vec![pts[0], pts[j]]];
                blocks.extend(a.iter().cloned());
                blocks.extend(b.iter().cloned());
                out.push(blocks);
            }
        }
    }
    out
}

// First point is either a singleton or paired with some later point; arcs
// never interact with singletons nested under them.
fn nc21_blocks(pts: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if pts.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in nc21_blocks(&pts[1..]) {
        let mut blocks = vec![vec![pts[0]]];
        blocks.extend(rest);
        out.push(blocks);
    }
    for j in 1..pts.len() {
        let inner = nc21_blocks(&pts[1..j]);
        let outer = nc21_blocks(&pts[j + 1..]);
        for a in &inner {
            for b in &outer {
                let mut blocks = vec![vec![pts[0], pts[j]]];
                blocks.extend(a.iter().cloned());
                blocks.extend(b.iter().cloned());
                out.push(blocks);
            }
        }
    }
    out
}

fn p2_blocks(pts: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if pts.is_empty() {
        return vec![vec![]];
    }
    if pts.len() % 2 == 1 {
        return vec![];
    }
    let mut out = Vec::new();
    for j in 1..pts.len() {
        let rest: Vec<usize> = pts[1..].iter().copied().filter(|&x| x != pts[j]).collect();
        for r in p2_blocks(&rest) {
            let mut blocks = vec![vec![pts[0], pts[j]]];
            blocks.extend(r);
            out.push(blocks);
        }
    }
    out
}

fn set_partitions(k: usize) -> Vec<Partition> {
    // restricted growth strings a[0] = 0, a[i] <= 1 + max(a[..i])
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rgs.len() {
            out.push(Partition::from_labels(rgs));
            return;
        }
        for v in 0..=max + 1 {
            rgs[i] = v;
            rec(i + 1, max.max(v), rgs, out);
        }
    }
    if k == 0 {
        out.push(Partition::from_labels(&[]));
    } else {
        rec(1, 0, &mut rgs, &mut out);
    }
    out
}

fn even_odd_all(k: usize) -> Vec<Partition> {
    if k % 2 == 1 {
        return vec![];
    }
    let m = k / 2;
    let odd: Vec<usize> = (0..m).map(|i| 2 * i + 1).collect();
    let even: Vec<usize> = (0..m).map(|i| 2 * i + 2).collect();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    permutations(&mut perm, 0, &mut |perm| {
        let pairs: Vec<(usize, usize)> = (0..m).map(|i| (odd[i], even[perm[i]])).collect();
        out.push(Partition::from_pairs(k, &pairs).expect("valid matching"));
    });
    out
}

fn permutations(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}
