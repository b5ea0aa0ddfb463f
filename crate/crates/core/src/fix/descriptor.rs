use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{param, QgvError, Result};

/// Which subgroup of `O_N⁺` a fixed-point space belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    /// `O_N⁺` itself.
    FreeOrth,
    /// The classical orthogonal group `O_N`.
    ClassOrth,
    /// The symmetric group `S_N` (permutation matrices).
    SymGroup,
    /// Stabilizer of a unit vector `ξ`.
    StabXi(Vec<BigRational>),
    /// `O⁺` acting on the coordinates in `B`, trivially on the rest.
    CoordStab(Vec<usize>),
    /// The free product of `O_a⁺` and `O_b⁺` on complementary coordinate blocks.
    FreeProdBlocks { a: usize, b: usize },
    /// The classical unitary group `U_N`.
    UnitaryClass,
    /// Free product of `U_a⁺` and `U_b⁺` on complementary blocks.
    UnitaryFreeProd { a: usize, b: usize },
}

/// A subgroup together with the ambient dimension `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupDescriptor {
    n: usize,
    kind: SubgroupKind,
}

impl SubgroupDescriptor {
    pub fn new(n: usize, kind: SubgroupKind) -> Result<Self> {
        let d = SubgroupDescriptor { n, kind };
        d.validate()?;
        Ok(d)
    }

    pub fn free_orth(n: usize) -> Result<Self> {
        Self::new(n, SubgroupKind::FreeOrth)
    }

    pub fn class_orth(n: usize) -> Result<Self> {
        Self::new(n, SubgroupKind::ClassOrth)
    }

    pub fn sym_group(n: usize) -> Result<Self> {
        Self::new(n, SubgroupKind::SymGroup)
    }

    pub fn stab_xi(xi: Vec<BigRational>) -> Result<Self> {
        Self::new(xi.len(), SubgroupKind::StabXi(xi))
    }

    /// Stabilizer of the basis vector `e_j` (1-based).
    pub fn stab_basis(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return param(format!("e{j} is not a basis vector of R^{n}"));
        }
        let mut xi = vec![BigRational::zero(); n];
        xi[j - 1] = BigRational::one();
        Self::stab_xi(xi)
    }

    pub fn coord_stab(n: usize, block: Vec<usize>) -> Result<Self> {
        Self::new(n, SubgroupKind::CoordStab(block))
    }

    pub fn free_prod(a: usize, b: usize) -> Result<Self> {
        Self::new(a + b, SubgroupKind::FreeProdBlocks { a, b })
    }

    pub fn unitary_class(n: usize) -> Result<Self> {
        Self::new(n, SubgroupKind::UnitaryClass)
    }

    pub fn unitary_free_prod(a: usize, b: usize) -> Result<Self> {
        Self::new(a + b, SubgroupKind::UnitaryFreeProd { a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    /// True for the unitary descriptors, whose degree-`k` spaces live on
    /// alternating `u, ū` legs.
    pub fn is_unitary(&self) -> bool {
        matches!(self.kind, SubgroupKind::UnitaryClass | SubgroupKind::UnitaryFreeProd { .. })
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return param("N must be at least 1");
        }
        match &self.kind {
            SubgroupKind::StabXi(xi) => {
                if xi.len() != n {
                    return param(format!("xi has {} coordinates, N = {n}", xi.len()));
                }
                let norm: BigRational = xi.iter().map(|x| x * x).sum();
                if !norm.is_one() {
                    return param(format!("xi must have unit norm, |xi|^2 = {norm}"));
                }
            }
            SubgroupKind::CoordStab(b) => {
                if b.is_empty() {
                    return param("B must be nonempty");
                }
                if b.windows(2).any(|w| w[0] >= w[1]) {
                    return param("B must be strictly increasing");
                }
                if b.iter().any(|&i| i == 0 || i > n) {
                    return param(format!("B must lie in 1..={n}"));
                }
                if b.len() == n {
                    return param("B must be a proper subset of the coordinates");
                }
            }
            SubgroupKind::FreeProdBlocks { a, b } | SubgroupKind::UnitaryFreeProd { a, b } => {
                if *a == 0 || *b == 0 {
                    return param("block sizes a, b must be at least 1");
                }
                if a + b != n {
                    return param(format!("a + b = {} but N = {n}", a + b));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn basis_index(xi: &[BigRational]) -> Option<usize> {
    let ones: Vec<usize> = (0..xi.len()).filter(|&i| !xi[i].is_zero()).collect();
    match ones.as_slice() {
        [i] if xi[*i].is_one() => Some(i + 1),
        _ => None,
    }
}

fn format_set(b: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let mut j = i;
        while j + 1 < b.len() && b[j + 1] == b[j] + 1 {
            j += 1;
        }
        parts.push(if j == i { b[i].to_string() } else { format!("{}-{}", b[i], b[j]) });
        i = j + 1;
    }
    parts.join(",")
}

impl fmt::Display for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match &self.kind {
            SubgroupKind::FreeOrth => write!(f, "on+:N={n}"),
            SubgroupKind::ClassOrth => write!(f, "on:N={n}"),
            SubgroupKind::SymGroup => write!(f, "sn:N={n}"),
            SubgroupKind::StabXi(xi) => match basis_index(xi) {
                Some(j) => write!(f, "stab:N={n},xi=e{j}"),
                None => {
                    let parts: Vec<String> = xi.iter().map(ToString::to_string).collect();
                    write!(f, "stab:N={n},xi={}", parts.join(","))
                }
            },
            SubgroupKind::CoordStab(b) => write!(f, "coordstab:N={n},B={}", format_set(b)),
            SubgroupKind::FreeProdBlocks { a, b } => write!(f, "fp:N={n},a={a},b={b}"),
            SubgroupKind::UnitaryClass => write!(f, "un:N={n}"),
            SubgroupKind::UnitaryFreeProd { a, b } => write!(f, "ufp:N={n},a={a},b={b}"),
        }
    }
}

impl Serialize for SubgroupDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(QgvError::Parse(msg.into()))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim().parse().map_err(|_| QgvError::Parse(format!("{key}={v} is not a non-negative integer")))
}

fn parse_rational(v: &str) -> Result<BigRational> {
    let v = v.trim();
    let bad = || QgvError::Parse(format!("'{v}' is not a rational number"));
    match v.split_once('/') {
        Some((a, b)) => {
            let d: num_bigint::BigInt = b.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a.parse().map_err(|_| bad())?, d))
        }
        None => Ok(BigRational::from_integer(v.parse().map_err(|_| bad())?)),
    }
}

/// Parses "1-3", "1,3,4" or "1-2,5" into a sorted index list.
fn parse_set(v: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in v.split(',') {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (parse_usize("B", lo)?, parse_usize("B", hi)?);
                if lo > hi {
                    return perr(format!("empty range {part} in B"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse_usize("B", part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl FromStr for SubgroupDescriptor {
    type Err = QgvError;

    /// Grammar: `<family>:<key>=<value>,...`, where a token without `=`
    /// continues the previous value (so `xi=3/5,4/5,0,0` and `B=1,3` work).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((head, rest)) = s.split_once(':') else {
            return perr(format!("descriptor '{s}' lacks a ':' before its parameters"));
        };
        let mut params: Vec<(String, String)> = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.split_once('=') {
                Some((k, v)) => {
                    if params.iter().any(|(pk, _)| pk == k.trim()) {
                        return perr(format!("parameter {k} given twice in '{s}'"));
                    }
                    params.push((k.trim().to_string(), v.trim().to_string()));
                }
                None => match params.last_mut() {
                    Some((_, v)) => {
                        v.push(',');
                        v.push_str(tok);
                    }
                    None => return perr(format!("token '{tok}' in '{s}' has no key")),
                },
            }
        }
        let get = |key: &str| params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let allowed: &[&str] = match head.trim().to_ascii_lowercase().as_str() {
            "stab" => &["N", "xi"],
            "coordstab" => &["N", "B"],
            "fp" | "ufp" => &["N", "a", "b"],
            _ => &["N"],
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return perr(format!("unknown parameter '{k}' for '{head}'"));
        }
        let Some(n) = get("N") else {
            return perr(format!("descriptor '{s}' lacks N=<n>"));
        };
        let n = parse_usize("N", n)?;
        let need = |key: &str| get(key).ok_or_else(|| QgvError::Parse(format!("descriptor '{s}' lacks {key}=")));

        let kind = match head.trim().to_ascii_lowercase().as_str() {
            "on+" => SubgroupKind::FreeOrth,
            "on" => SubgroupKind::ClassOrth,
            "sn" => SubgroupKind::SymGroup,
            "un" => SubgroupKind::UnitaryClass,
            "stab" => {
                let v = need("xi")?;
                let xi = match v.strip_prefix('e') {
                    Some(j) => {
                        let j = parse_usize("xi", j)?;
                        if j == 0 || j > n {
                            return param(format!("e{j} is not a basis vector of R^{n}"));
                        }
                        (1..=n)
                            .map(|i| if i == j { BigRational::one() } else { BigRational::zero() })
                            .collect()
                    }
                    None => v.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?,
                };
                SubgroupKind::StabXi(xi)
            }
            "coordstab" => SubgroupKind::CoordStab(parse_set(need("B")?)?),
            "fp" | "ufp" => {
                let a = parse_usize("a", need("a")?)?;
                let b = parse_usize("b", need("b")?)?;
                if head.trim().eq_ignore_ascii_case("fp") {
                    SubgroupKind::FreeProdBlocks { a, b }
                } else {
                    SubgroupKind::UnitaryFreeProd { a, b }
                }
            }
            other => return perr(format!("unknown subgroup family '{other}'")),
        };
        SubgroupDescriptor::new(n, kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trips() {
        for s in [
            "on+:N=4",
            "on:N=4",
            "sn:N=4",
            "stab:N=4,xi=e1",
            "stab:N=4,xi=3/5,4/5,0,0",
            "coordstab:N=5,B=1-3",
            "fp:N=4,a=2,b=2",
            "un:N=4",
            "ufp:N=4,a=2,b=2",
        ] {
            let d: SubgroupDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        let d: SubgroupDescriptor = "coordstab:N=5,B=1,2,4".parse().unwrap();
        assert_eq!(d.kind(), &SubgroupKind::CoordStab(vec![1, 2, 4]));
        assert_eq!(d.to_string(), "coordstab:N=5,B=1-2,4");
    }

    #[test]
    fn invalid_descriptors() {
        let kind = |s: &str| s.parse::<SubgroupDescriptor>().unwrap_err().kind();
        assert_eq!(kind("stab:N=4,xi=1,1,0,0"), "parameter");
        assert_eq!(kind("stab:N=3,xi=e4"), "parameter");
        assert_eq!(kind("coordstab:N=3,B=1-3"), "parameter");
        assert_eq!(kind("fp:N=4,a=0,b=4"), "parameter");
        assert_eq!(kind("fp:N=5,a=2,b=2"), "parameter");
        assert_eq!(kind("on+"), "parse");
        assert_eq!(kind("xx:N=3"), "parse");
        assert_eq!(kind("on:N=x"), "parse");
        assert_eq!(kind("on:N=3,a=1"), "parse");
    }
}
