//! Alternating projections `(P₁P₂)^m → P` in floating point.
//!
//! Projections are built exactly and converted to `f64` afterwards, so the
//! iteration runs on matrices that are idempotent to machine precision.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{param, Result};
use crate::fix::{generator_family, GeneratorFamily, SubgroupDescriptor};
use crate::linalg::{check_dense, intersection_dimension, intersection_family, projection_matrix, RankOptions};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Iteration {
    pub m: usize,
    pub distance: f64,
}

/// The numbers produced by iterating a pair of dense projections.
#[derive(Clone, Debug, Serialize)]
pub struct DenseRun {
    pub iterations: Vec<Iteration>,
    /// Per-step contraction factor from a log-linear fit over the tail.
    pub estimated_rate: f64,
    pub friedrichs_cos: f64,
    pub converged: bool,
    /// Singular values of the last iterate above 1/2.
    pub limit_rank: usize,
    pub limit_trace: f64,
}

impl DenseRun {
    /// Distances never grow by more than `slack`.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.iterations.windows(2).all(|w| w[1].distance <= w[0].distance + slack)
    }

    /// `‖(P₁P₂)^m − P‖ ≤ c^{2m−1} + slack` at every recorded `m`.
    pub fn within_two_subspace_bound(&self, slack: f64) -> bool {
        let c = self.friedrichs_cos;
        self.iterations.iter().all(|it| it.distance <= c.powi(2 * it.m as i32 - 1) + slack)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,distance\n");
        for it in &self.iterations {
            s.push_str(&format!("{},{:e}\n", it.m, it.distance));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DynamicsReport {
    pub a: SubgroupDescriptor,
    pub b: SubgroupDescriptor,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub exact_intersection_dimension: usize,
    #[serde(flatten)]
    pub run: DenseRun,
}

fn op_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

fn geometric_rate(iters: &[Iteration]) -> f64 {
    // points above the noise floor, last half of them
    let pts: Vec<(f64, f64)> =
        iters.iter().filter(|it| it.distance > 1e-13).map(|it| (it.m as f64, it.distance.ln())).collect();
    let tail = &pts[pts.len() / 2..];
    if tail.len() < 2 {
        return 0.0;
    }
    let n = tail.len() as f64;
    let mx = tail.iter().map(|p| p.0).sum::<f64>() / n;
    let my = tail.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = tail.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = tail.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxy / sxx).exp().clamp(0.0, 1.0)
}

/// `‖P₁P₂ − P‖`, the cosine of the Friedrichs angle for projections `p1`,
/// `p2` and `p` onto their intersection.
pub fn friedrichs_cos_dense(p1: &DMatrix<f64>, p2: &DMatrix<f64>, p: &DMatrix<f64>) -> f64 {
    op_norm(&(p1 * p2 - p)).min(1.0)
}

/// Iterates `(P₁P₂)^m` for `m = 1..=max_iter`, stopping once the distance to
/// `p` drops below `tol`.
pub fn run_dense(p1: &DMatrix<f64>, p2: &DMatrix<f64>, p: &DMatrix<f64>, max_iter: usize, tol: f64) -> Result<DenseRun> {
    let n = p1.nrows();
    if [p1.ncols(), p2.nrows(), p2.ncols(), p.nrows(), p.ncols()].iter().any(|&d| d != n) {
        return param("projections must be square of one size");
    }
    if !(tol > 0.0) {
        return param("tol must be positive");
    }
    if max_iter == 0 {
        return param("max_iter must be at least 1");
    }
    let t = p1 * p2;
    let mut power = t.clone();
    let mut iterations = Vec::new();
    let mut converged = false;
    for m in 1..=max_iter {
        let distance = op_norm(&(&power - p));
        iterations.push(Iteration { m, distance });
        if distance < tol {
            converged = true;
            break;
        }
        power = &power * &t;
    }
    let limit_rank = if n == 0 { 0 } else { power.clone().singular_values().iter().filter(|&&s| s > 0.5).count() };
    Ok(DenseRun {
        estimated_rate: geometric_rate(&iterations),
        friedrichs_cos: friedrichs_cos_dense(p1, p2, p),
        converged,
        limit_rank,
        limit_trace: power.trace(),
        iterations,
    })
}

fn float_projection(fam: &GeneratorFamily, dense_limit: u64) -> Result<DMatrix<f64>> {
    let size = check_dense(fam, dense_limit)? as usize;
    if fam.is_empty() {
        return Ok(DMatrix::zeros(size, size));
    }
    Ok(projection_matrix(fam, dense_limit)?.to_f64())
}

fn projections(
    fa: &GeneratorFamily,
    fb: &GeneratorFamily,
    dense_limit: u64,
) -> Result<(DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)> {
    let inter = intersection_family(fa, fb)?;
    Ok((float_projection(fa, dense_limit)?, float_projection(fb, dense_limit)?, float_projection(&inter, dense_limit)?))
}

/// `‖P_A P_B − P_{A∩B}‖` for two families.
pub fn friedrichs_cos(fa: &GeneratorFamily, fb: &GeneratorFamily, dense_limit: u64) -> Result<f64> {
    let (p1, p2, p) = projections(fa, fb, dense_limit)?;
    Ok(friedrichs_cos_dense(&p1, &p2, &p))
}

pub fn alternating_projection_run(
    a: &SubgroupDescriptor,
    b: &SubgroupDescriptor,
    k: usize,
    max_iter: usize,
    tol: f64,
    dense_limit: u64,
    opts: &RankOptions,
) -> Result<DynamicsReport> {
    if a.n() != b.n() {
        return param(format!("descriptors disagree on N: {a} vs {b}"));
    }
    let fa = generator_family(a, k)?;
    let fb = generator_family(b, k)?;
    check_dense(&fa, dense_limit)?;
    let (p1, p2, p) = projections(&fa, &fb, dense_limit)?;
    Ok(DynamicsReport {
        a: a.clone(),
        b: b.clone(),
        n: a.n(),
        k,
        exact_intersection_dimension: intersection_dimension(&fa, &fb, opts)?,
        run: run_dense(&p1, &p2, &p, max_iter, tol)?,
    })
}

/// Projections onto two lines of the plane at angle `theta`, and onto their
/// (trivial) intersection.
pub fn two_lines(theta: f64) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let line = |t: f64| {
        let (s, c) = t.sin_cos();
        DMatrix::from_row_slice(2, 2, &[c * c, c * s, c * s, s * s])
    };
    (line(0.0), line(theta), DMatrix::zeros(2, 2))
}
