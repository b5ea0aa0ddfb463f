//! The acceptance battery behind `qgverify suite`.

use std::time::Instant;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::RunConfig;
use crate::counting::{bell, catalan, double_factorial_odd, factorial, motzkin};
use crate::dynamics::{alternating_projection_run, run_dense, two_lines};
use crate::error::{param, Result};
use crate::fix::{generator_family, sn_average_oracle, SubgroupDescriptor, DEFAULT_SN_BUDGET};
use crate::generation::{
    check_generation, one_singleton_rank, prop_diff_condition3, stabilizer_triangularity_check, ygram_check, Verdict,
};
use crate::linalg::{family_rank, gram, gram_by_sparse_dots, intersection_dimension};
use crate::partition::{enumerate, FamilyKind};
use crate::tensor::SparseTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Ci,
    Extended,
}

impl std::str::FromStr for Profile {
    type Err = crate::error::QgvError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ci" => Ok(Profile::Ci),
            "extended" => Ok(Profile::Extended),
            _ => Err(crate::error::QgvError::Parse(format!("unknown profile '{s}' (ci, extended)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Ran without error; the verdict is recorded but not enforced.
    Exploratory,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub detail: Value,
    pub elapsed_ms: u64,
}

struct Check {
    passed: bool,
    detail: Value,
}

fn d(s: &str) -> Result<SubgroupDescriptor> {
    s.parse()
}

fn counting(_: &RunConfig) -> Result<Check> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut push = |kind: FamilyKind, k: usize, expected: u128| -> Result<()> {
        let got = enumerate(kind, k)?.len() as u128;
        ok &= got == expected;
        rows.push(json!({"kind": kind.tag(), "k": k, "count": got, "expected": expected}));
        Ok(())
    };
    for m in 0..=8 {
        push(FamilyKind::NC2, 2 * m, catalan(m))?;
    }
    for k in 0..=14 {
        push(FamilyKind::NC21, k, motzkin(k))?;
    }
    for m in 0..=6 {
        push(FamilyKind::P2, 2 * m, double_factorial_odd(m))?;
    }
    for k in 0..=10 {
        push(FamilyKind::SetPartitions, k, bell(k))?;
    }
    for m in 0..=6 {
        push(FamilyKind::EvenOddAll, 2 * m, factorial(m))?;
    }
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn tl_independence(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        for k in (2..=10).step_by(2) {
            let r = family_rank(&generator_family(&SubgroupDescriptor::free_orth(n)?, k)?, &opts)?;
            ok &= r.rank as u128 == catalan(k / 2) && r.certified;
            rows.push(json!({"N": n, "k": k, "rank": r.rank, "expected": catalan(k / 2)}));
        }
    }
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn gram_cross_validation(_: &RunConfig) -> Result<Check> {
    let mut checked = 0usize;
    let mut ok = true;
    for n in 1..=4 {
        for k in (0..=8).step_by(2) {
            let fam = generator_family(&SubgroupDescriptor::class_orth(n)?, k)?;
            let fast = gram(&fam)?.to_qmatrix();
            let slow = gram_by_sparse_dots(&fam)?;
            ok &= fast == slow;
            checked += fam.len() * fam.len();
        }
    }
    Ok(Check { passed: ok, detail: json!({"entries_compared": checked}) })
}

fn stabilizer(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 3..=4 {
        for k in 0..=8 {
            let r = family_rank(&generator_family(&SubgroupDescriptor::stab_basis(n, 1)?, k)?, &opts)?;
            let t = stabilizer_triangularity_check(n, k, &opts)?;
            ok &= r.rank as u128 == motzkin(k) && t.spans_equal;
            rows.push(json!({"N": n, "k": k, "rank": r.rank, "expected": motzkin(k), "triangular": t.spans_equal}));
        }
    }
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn generation_rows(a: &str, b: &str, ks: impl Iterator<Item = usize>, cfg: &RunConfig) -> Result<(bool, Vec<Value>)> {
    let opts = cfg.rank_options();
    let (a, b) = (d(a)?, d(b)?);
    let mut ok = true;
    let mut rows = Vec::new();
    for k in ks {
        let r = check_generation(&a, &b, k, &opts)?;
        let expected_fix = if k % 2 == 0 { catalan(k / 2) } else { 0 };
        ok &= r.verdict == Verdict::GeneratedAtK && r.dim_intersection as u128 == expected_fix;
        rows.push(json!({
            "a": a.to_string(), "b": b.to_string(), "k": k,
            "dim_intersection": r.dim_intersection, "dim_fix": r.dim_fix, "verdict": r.verdict,
        }));
    }
    Ok((ok, rows))
}

fn on_vs_stabilizer(cfg: &RunConfig) -> Result<Check> {
    let (ok4, mut rows) = generation_rows("on:N=4", "stab:N=4,xi=e1", 0..=8, cfg)?;
    let (ok5, rows5) = generation_rows("on:N=5", "stab:N=5,xi=e1", 0..=6, cfg)?;
    rows.extend(rows5);
    Ok(Check { passed: ok4 && ok5, detail: json!(rows) })
}

fn two_stabilizers(cfg: &RunConfig) -> Result<Check> {
    let (ok, rows) = generation_rows("stab:N=4,xi=e1", "stab:N=4,xi=3/5,4/5,0,0", 0..=6, cfg)?;
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn prop_diff_equivalence(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let (on, stab1, stab2) = (d("on:N=4")?, d("stab:N=4,xi=e1")?, d("stab:N=4,xi=3/5,4/5,0,0")?);
    let mut ok = true;
    let mut rows = Vec::new();
    for k in 1..=8 {
        let c1 = check_generation(&on, &stab1, k, &opts)?.verdict == Verdict::GeneratedAtK;
        let c2 = check_generation(&stab1, &stab2, k, &opts)?.verdict == Verdict::GeneratedAtK;
        let r3 = prop_diff_condition3(4, k, &opts)?;
        ok &= c1 == c2 && c2 == r3.full_rank && r3.full_rank;
        rows.push(json!({
            "k": k, "condition1": c1, "condition2": c2, "condition3": r3.full_rank,
            "rank": r3.computed_rank, "expected": r3.expected_count,
        }));
    }
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn sym_vs_free_product(k_max: usize) -> impl Fn(&RunConfig) -> Result<Check> {
    move |cfg| {
        let (ok, rows) = generation_rows("sn:N=4", "fp:N=4,a=2,b=2", 0..=k_max, cfg)?;
        Ok(Check { passed: ok, detail: json!(rows) })
    }
}

fn unitary_free_product(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let (ufp, un) = (d("ufp:N=4,a=2,b=2")?, d("un:N=4")?);
    let mut ok = true;
    let mut rows = Vec::new();
    for k in 0..=4 {
        let dim = intersection_dimension(&generator_family(&ufp, 2 * k)?, &generator_family(&un, 2 * k)?, &opts)?;
        ok &= dim as u128 == catalan(k);
        rows.push(json!({"points": 2 * k, "dim_intersection": dim, "expected": catalan(k)}));
    }
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn y_family(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let mut ok = true;
    let mut rows = Vec::new();
    for k in 0..=6 {
        let r = ygram_check(4, k, &opts)?;
        ok &= r.full_rank;
        rows.push(json!({"k": k, "rank": r.computed_rank, "expected": r.expected_count}));
    }
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn one_singleton(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let mut all_full = true;
    let mut rows = Vec::new();
    for n in 2..=3 {
        for k in (1..=9).step_by(2) {
            let r = one_singleton_rank(n, k, &opts)?;
            all_full &= r.full_rank;
            rows.push(json!({"N": n, "k": k, "rank": r.computed_rank, "expected": r.expected_count}));
        }
    }
    Ok(Check { passed: all_full, detail: json!(rows) })
}

fn coordinate_stabilizer(cfg: &RunConfig) -> Result<Check> {
    let (ok, rows) = generation_rows("on:N=5", "coordstab:N=5,B=1-3", 0..=4, cfg)?;
    Ok(Check { passed: ok, detail: json!(rows) })
}

fn dynamics(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let r = alternating_projection_run(&d("on:N=4")?, &d("stab:N=4,xi=e1")?, 4, 200, cfg.float_tol, cfg.dense_limit, &opts)?;
    let monotone = r.run.is_monotone(10.0 * f64::EPSILON);
    let bounded = r.run.within_two_subspace_bound(1e-10);
    let (p1, p2, p) = two_lines(std::f64::consts::FRAC_PI_4);
    let lines = run_dense(&p1, &p2, &p, 60, 1e-14)?;
    let rate_ok = (lines.estimated_rate - 0.5).abs() <= 0.05 * 0.5;
    let passed = r.run.limit_rank == r.exact_intersection_dimension
        && r.exact_intersection_dimension == 2
        && r.run.converged
        && monotone
        && bounded
        && rate_ok;
    Ok(Check {
        passed,
        detail: json!({
            "limit_rank": r.run.limit_rank,
            "exact_intersection_dimension": r.exact_intersection_dimension,
            "limit_trace": r.run.limit_trace,
            "iterations": r.run.iterations.len(),
            "monotone": monotone,
            "within_bound": bounded,
            "friedrichs_cos": r.run.friedrichs_cos,
            "synthetic_rate": lines.estimated_rate,
        }),
    })
}

fn sym_span(cfg: &RunConfig) -> Result<Check> {
    let opts = cfg.rank_options();
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 2..=4 {
        for k in 0..=4 {
            let p = sn_average_oracle(n, k, DEFAULT_SN_BUDGET)?;
            let fam = generator_family(&SubgroupDescriptor::sym_group(n)?, k)?;
            let inside = fam.members().iter().all(|v| fixed_by(&p, v));
            let range_dim = p.trace().to_integer().to_usize().unwrap_or(usize::MAX);
            let rank = family_rank(&fam, &opts)?.rank;
            ok &= inside && rank == range_dim;
            rows.push(json!({"N": n, "k": k, "rank": rank, "oracle_dim": range_dim, "members_fixed": inside}));
        }
    }
    Ok(Check { passed: ok, detail: json!(rows) })
}

/// `P v == v` for a dense projection `P`.
pub(crate) fn fixed_by(p: &crate::linalg::QMatrix, v: &SparseTensor) -> bool {
    let dense = v.to_dense();
    match p.apply(&dense) {
        Ok(pv) => pv.iter().zip(&dense).all(|(a, b)| a == b),
        Err(_) => false,
    }
}

type Runner = Box<dyn Fn(&RunConfig) -> Result<Check>>;

struct Criterion {
    id: u32,
    name: &'static str,
    exploratory: bool,
    run: Runner,
}

fn criteria(profile: Profile) -> Vec<Criterion> {
    let c = |id, name, run: Runner| Criterion { id, name, exploratory: false, run };
    let k8 = if profile == Profile::Extended { 8 } else { 6 };
    vec![
        c(1, "enumeration counts", Box::new(counting)),
        c(2, "non-crossing pairings independent", Box::new(tl_independence)),
        c(3, "lattice Gram equals sparse Gram", Box::new(gram_cross_validation)),
        c(4, "stabilizer family rank and triangularity", Box::new(stabilizer)),
        c(5, "O_N with a vector stabilizer", Box::new(on_vs_stabilizer)),
        c(6, "two vector stabilizers", Box::new(two_stabilizers)),
        c(7, "three generation conditions agree", Box::new(prop_diff_equivalence)),
        c(8, "S_4 with a free product of two O_2+", Box::new(sym_vs_free_product(k8))),
        c(9, "unitary free product meets U_4", Box::new(unitary_free_product)),
        c(10, "y-family independent", Box::new(y_family)),
        Criterion { id: 11, name: "one-singleton family rank", exploratory: true, run: Box::new(one_singleton) },
        c(12, "O_5 with a coordinate-block subgroup", Box::new(coordinate_stabilizer)),
        c(13, "alternating projection dynamics", Box::new(dynamics)),
        c(14, "S_N span matches the averaging oracle", Box::new(sym_span)),
    ]
}

/// Runs the battery, optionally restricted to the ids in `only`.
pub fn run_suite(profile: Profile, only: Option<&[u32]>, cfg: &RunConfig) -> Result<Vec<CriterionOutcome>> {
    let all = criteria(profile);
    if let Some(ids) = only {
        if let Some(bad) = ids.iter().find(|id| !all.iter().any(|c| c.id == **id)) {
            return param(format!("no criterion with id {bad}"));
        }
    }
    let mut out = Vec::new();
    for c in all.into_iter().filter(|c| only.map_or(true, |ids| ids.contains(&c.id))) {
        let start = Instant::now();
        let (status, detail) = match (c.run)(cfg) {
            Ok(check) if c.exploratory => (Status::Exploratory, json!({"all_full_rank": check.passed, "rows": check.detail})),
            Ok(check) => (if check.passed { Status::Pass } else { Status::Fail }, check.detail),
            Err(e) => (Status::Error, json!({"error": e.kind(), "detail": e.to_string()})),
        };
        out.push(CriterionOutcome {
            id: c.id,
            name: c.name,
            status,
            detail,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok(out)
}
