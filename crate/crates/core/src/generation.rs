//! Degree-by-degree generation checks and the rank reports behind them.

use std::time::Instant;

use serde::Serialize;

use crate::counting::{catalan, motzkin};
use crate::error::{param, Result};
use crate::fix::{filled_members, generator_family, target_family, GeneratorFamily, SubgroupDescriptor};
use crate::linalg::{family_rank, intersection, RankMethod, RankOptions, RankResult};
use crate::partition::{count, enumerate, FamilyKind};
use crate::tensor::{apply_partition_map, sym_tensor, RangeSpec, SparseTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    GeneratedAtK,
    ObstructedAtK,
}

/// How the ranks in a report were obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arithmetic {
    /// "modular", "fraction_free" or "mixed".
    pub mode: String,
    pub primes: Vec<u64>,
    pub certified: bool,
}

impl Arithmetic {
    pub fn from_results<'a>(results: impl IntoIterator<Item = &'a RankResult>) -> Self {
        let (mut modular, mut ff, mut certified) = (false, false, true);
        let mut primes: Vec<u64> = Vec::new();
        for r in results {
            match r.method {
                RankMethod::Modular => modular = true,
                RankMethod::FractionFree => ff = true,
            }
            certified &= r.certified;
            for p in &r.primes_used {
                if !primes.contains(p) {
                    primes.push(*p);
                }
            }
        }
        let mode = match (modular, ff) {
            (true, true) => "mixed",
            (false, true) => "fraction_free",
            _ => "modular",
        };
        Arithmetic { mode: mode.into(), primes, certified }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub a: SubgroupDescriptor,
    pub b: SubgroupDescriptor,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_intersection: usize,
    pub dim_fix: usize,
    pub verdict: Verdict,
    pub arithmetic: Arithmetic,
    pub elapsed_ms: u64,
}

/// Compares `Fix_k^A ∩ Fix_k^B` with `Fix_k` of the ambient free group.
/// Unitary descriptors are compared with the even-odd non-crossing family.
pub fn check_generation(
    a: &SubgroupDescriptor,
    b: &SubgroupDescriptor,
    k: usize,
    opts: &RankOptions,
) -> Result<GenerationReport> {
    let start = Instant::now();
    if a.n() != b.n() {
        return param(format!("descriptors disagree on N: {a} vs {b}"));
    }
    if a.is_unitary() != b.is_unitary() {
        return param(format!("cannot compare a unitary and an orthogonal descriptor: {a} vs {b}"));
    }
    let fa = generator_family(a, k)?;
    let fb = generator_family(b, k)?;
    let inter = intersection(&fa, &fb, opts)?;
    let fix = family_rank(&target_family(a, k)?, opts)?;
    let verdict = if inter.dimension == fix.rank { Verdict::GeneratedAtK } else { Verdict::ObstructedAtK };
    Ok(GenerationReport {
        a: a.clone(),
        b: b.clone(),
        n: a.n(),
        k,
        dim_a: inter.rank_a,
        dim_b: inter.rank_b,
        dim_intersection: inter.dimension,
        dim_fix: fix.rank,
        verdict,
        arithmetic: Arithmetic::from_results(inter.arithmetic.iter().chain([&fix])),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Rank of a named family against the size it would have if independent.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub label: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub expected_count: u128,
    pub computed_rank: usize,
    pub full_rank: bool,
    pub arithmetic: Arithmetic,
    pub elapsed_ms: u64,
}

fn rank_report(label: String, fam: &GeneratorFamily, expected: u128, opts: &RankOptions, start: Instant) -> Result<RankReport> {
    let r = family_rank(fam, opts)?;
    Ok(RankReport {
        label,
        n: fam.dim(),
        k: fam.legs(),
        expected_count: expected,
        computed_rank: r.rank,
        full_rank: r.rank as u128 == expected,
        arithmetic: Arithmetic::from_results([&r]),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// The vectors `x_p = T_p(S(e_1 ⊗ ... ⊗ e_1 ⊗ e_2))` over `p ∈ NC₂,₁(k)` with
/// at least one singleton, `S` the unnormalized symmetrizer.
pub fn prop_diff_family(n: usize, k: usize) -> Result<GeneratorFamily> {
    let full = RangeSpec::full(n);
    let e1 = SparseTensor::basis(n, 1)?;
    let e2 = SparseTensor::basis(n, 2)?;
    let mut fam = GeneratorFamily::empty(format!("x_p N={n} k={k}"), n, k);
    for p in enumerate(FamilyKind::NC21, k)? {
        let s = p.singleton_count();
        if s == 0 {
            continue;
        }
        let mut args = vec![e1.clone(); s - 1];
        args.push(e2.clone());
        let x = apply_partition_map(&p, n, &sym_tensor(&args)?, &full)?;
        fam.push(p.encoding(), x, None)?;
    }
    Ok(fam)
}

pub fn prop_diff_condition3(n: usize, k: usize, opts: &RankOptions) -> Result<RankReport> {
    let start = Instant::now();
    if n < 3 {
        return param(format!("N = {n}: the independence statement needs N >= 3"));
    }
    if k < 1 {
        return param("k must be at least 1");
    }
    let fam = prop_diff_family(n, k)?;
    let expected = motzkin(k) - if k % 2 == 0 { catalan(k / 2) } else { 0 };
    rank_report("prop_diff_condition3".into(), &fam, expected, opts, start)
}

/// `{T_p(e_1) : p ∈ NC₂,₁(k) with one singleton}` for odd `k`.
pub fn one_singleton_rank(n: usize, k: usize, opts: &RankOptions) -> Result<RankReport> {
    let start = Instant::now();
    if n < 2 {
        return param("N must be at least 2");
    }
    if k % 2 == 0 {
        return param(format!("k = {k}: the one-singleton family is only defined for odd k"));
    }
    let e1 = SparseTensor::basis(n, 1)?;
    let full = RangeSpec::full(n);
    let mut fam = GeneratorFamily::empty(format!("T_p(e1) N={n} k={k}"), n, k);
    for p in enumerate(FamilyKind::NC21S(1), k)? {
        let v = apply_partition_map(&p, n, &e1, &full)?;
        fam.push(p.encoding(), v, None)?;
    }
    let expected = k as u128 * catalan((k - 1) / 2);
    rank_report("one_singleton_rank".into(), &fam, expected, opts, start)
}

/// `y_{p,i} = T_p(e_{i_1} ⊗ ... ⊗ e_{i_s})` with strings over `{3..N}` and
/// singletons filled from `{e_1, e_2}`.
pub fn ygram_family(n: usize, k: usize) -> Result<GeneratorFamily> {
    let mut fam = GeneratorFamily::empty(format!("y_(p,i) N={n} k={k}"), n, k);
    for (label, v, _) in filled_members(n, k, &RangeSpec::starting_at(3, n), &[1, 2])? {
        fam.push(label, v, None)?;
    }
    Ok(fam)
}

pub fn ygram_check(n: usize, k: usize, opts: &RankOptions) -> Result<RankReport> {
    let start = Instant::now();
    if n < 4 {
        return param(format!("N = {n}: the y-family needs N >= 4"));
    }
    let fam = ygram_family(n, k)?;
    let mut expected = 0u128;
    for s in (k % 2..=k).step_by(2) {
        expected += count(FamilyKind::NC21S(s), k)? << s;
    }
    rank_report("ygram_check".into(), &fam, expected, opts, start)
}

/// Ranks of the full-range and restricted-range stabilizer families and of
/// their union.
#[derive(Clone, Debug, Serialize)]
pub struct TriangularityReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub rank_full_range: usize,
    pub rank_restricted: usize,
    pub rank_union: usize,
    pub spans_equal: bool,
    pub arithmetic: Arithmetic,
    pub elapsed_ms: u64,
}

/// `{T_p(e_1^{⊗s})}` with strings over `{1..N}` against the same family with
/// strings over `{2..N}`, for `p ∈ NC₂,₁(k)`.
pub fn stabilizer_triangularity_check(n: usize, k: usize, opts: &RankOptions) -> Result<TriangularityReport> {
    let start = Instant::now();
    if n < 3 {
        return param(format!("N = {n}: the stabilizer family needs N >= 3"));
    }
    let family = |range: RangeSpec, name: &str| -> Result<GeneratorFamily> {
        let mut fam = GeneratorFamily::empty(name, n, k);
        for (label, v, _) in filled_members(n, k, &range, &[1])? {
            fam.push(label, v, None)?;
        }
        Ok(fam)
    };
    let one = family(RangeSpec::full(n), "T1")?;
    let two = family(RangeSpec::starting_at(2, n), "T2")?;
    let inter = intersection(&one, &two, opts)?;
    Ok(TriangularityReport {
        n,
        k,
        rank_full_range: inter.rank_a,
        rank_restricted: inter.rank_b,
        rank_union: inter.rank_union,
        spans_equal: inter.rank_a == inter.rank_union && inter.rank_b == inter.rank_union,
        arithmetic: Arithmetic::from_results(&inter.arithmetic),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
