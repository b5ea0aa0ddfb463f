//! Spans of families: intersection dimensions, membership, projections.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::gram::gram_unchecked;
use super::rank::{RankOptions, RankResult};
use super::QMatrix;
use crate::error::{param, QgvError, Result};
use crate::fix::GeneratorFamily;
use crate::tensor::SparseTensor;

/// Default cap on the ambient dimension `N^k` for dense matrices.
pub const DEFAULT_DENSE_LIMIT: u64 = 4096;

/// The three ranks behind an intersection dimension.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionRanks {
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_union: usize,
    pub dimension: usize,
    /// Rank results for `A`, `B` and `A ∪ B`, in that order.
    #[serde(skip)]
    pub arithmetic: Vec<RankResult>,
}

fn check_same_space(a: &GeneratorFamily, b: &GeneratorFamily) -> Result<()> {
    if a.dim() != b.dim() || a.legs() != b.legs() {
        return param(format!(
            "families live in different spaces: {}^{} vs {}^{}",
            a.dim(),
            a.legs(),
            b.dim(),
            b.legs()
        ));
    }
    Ok(())
}

fn empty_rank(opts: &RankOptions) -> RankResult {
    RankResult { rank: 0, method: opts.method, primes_used: vec![], certified: true }
}

/// `rank(A) + rank(B) - rank(A ∪ B)`, using one Gram matrix for the union and
/// its two diagonal blocks for `A` and `B`. Empty families have rank 0.
pub fn intersection(a: &GeneratorFamily, b: &GeneratorFamily, opts: &RankOptions) -> Result<IntersectionRanks> {
    check_same_space(a, b)?;
    let union = a.union(b)?;
    let (ra, rb, ru) = if union.is_empty() {
        (empty_rank(opts), empty_rank(opts), empty_rank(opts))
    } else {
        let g = gram_unchecked(&union)?;
        let ia: Vec<usize> = (0..a.len()).collect();
        let ib: Vec<usize> = (a.len()..union.len()).collect();
        let ra = if a.is_empty() { empty_rank(opts) } else { g.principal_rank(&ia, opts) };
        let rb = if b.is_empty() { empty_rank(opts) } else { g.principal_rank(&ib, opts) };
        (ra, rb, g.rank(opts))
    };
    Ok(IntersectionRanks {
        rank_a: ra.rank,
        rank_b: rb.rank,
        rank_union: ru.rank,
        dimension: ra.rank + rb.rank - ru.rank,
        arithmetic: vec![ra, rb, ru],
    })
}

pub fn intersection_dimension(a: &GeneratorFamily, b: &GeneratorFamily, opts: &RankOptions) -> Result<usize> {
    Ok(intersection(a, b, opts)?.dimension)
}

/// Rank of a family's span (0 for the empty family).
pub fn family_rank(fam: &GeneratorFamily, opts: &RankOptions) -> Result<RankResult> {
    if fam.is_empty() {
        return Ok(empty_rank(opts));
    }
    Ok(gram_unchecked(fam)?.rank(opts))
}

/// Whether `v` lies in the span of `fam`.
pub fn span_contains(fam: &GeneratorFamily, v: &SparseTensor, opts: &RankOptions) -> Result<bool> {
    let mut single = GeneratorFamily::empty("v", fam.dim(), fam.legs());
    single.push("v".into(), v.clone(), None)?;
    Ok(intersection(&single, fam, opts)?.dimension == single_rank(v))
}

fn single_rank(v: &SparseTensor) -> usize {
    usize::from(!v.is_zero())
}

/// Reduced row echelon form over `Q`; returns pivot columns and the reduced
/// matrix.
pub fn rref(m: &QMatrix) -> (Vec<usize>, QMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, QMatrix::from_rows(a).expect("rectangular"))
}

/// Basis of the right kernel of `m`, one vector per free column.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<BigRational>> {
    let (pivots, red) = rref(m);
    (0..m.cols())
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![BigRational::zero(); m.cols()];
            x[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -red.get(i, f).clone();
            }
            x
        })
        .collect()
}

fn inverse(m: &QMatrix) -> QMatrix {
    let n = m.rows();
    let mut aug = QMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, BigRational::one());
    }
    let (_, red) = rref(&aug);
    let rows = (0..n).map(|i| red.row(i)[n..].to_vec()).collect();
    QMatrix::from_rows(rows).expect("square")
}

pub(crate) fn check_dense(fam: &GeneratorFamily, dense_limit: u64) -> Result<u64> {
    let size = (fam.dim() as u64).checked_pow(fam.legs() as u32).unwrap_or(u64::MAX);
    if size > dense_limit {
        return Err(QgvError::Resource(format!(
            "dense size {}^{} = {size} exceeds the limit {dense_limit}",
            fam.dim(),
            fam.legs()
        )));
    }
    Ok(size)
}

/// Orthogonal projection onto the span of `fam`, as a dense `N^k x N^k`
/// matrix `V (VᵀV)⁻¹ Vᵀ` over a maximal independent subfamily `V`.
pub fn projection_matrix(fam: &GeneratorFamily, dense_limit: u64) -> Result<QMatrix> {
    if fam.is_empty() {
        return param("projection onto the span of an empty family");
    }
    let size = check_dense(fam, dense_limit)? as usize;
    let g = gram_unchecked(fam)?.to_qmatrix();
    let (independent, _) = rref(&g);
    let r = independent.len();
    if r == 0 {
        return Ok(QMatrix::zeros(size, size));
    }
    let sub = QMatrix::from_rows(
        independent.iter().map(|&i| independent.iter().map(|&j| g.get(i, j).clone()).collect()).collect(),
    )?;
    let ginv = inverse(&sub);

    // dense V, size x r
    let mut v = vec![vec![BigRational::zero(); r]; size];
    for (c, &i) in independent.iter().enumerate() {
        for (key, coef) in fam.members()[i].raw_entries() {
            v[*key as usize][c] = coef.clone();
        }
    }
    let w: Vec<Vec<BigRational>> = v
        .iter()
        .map(|row| {
            (0..r)
                .map(|j| row.iter().enumerate().fold(BigRational::zero(), |acc, (l, x)| acc + x * ginv.get(l, j)))
                .collect()
        })
        .collect();
    let mut p = QMatrix::zeros(size, size);
    for x in 0..size {
        if w[x].iter().all(Zero::is_zero) {
            continue;
        }
        for y in 0..size {
            let s = w[x].iter().zip(&v[y]).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
            if !s.is_zero() {
                p.set(x, y, s);
            }
        }
    }
    Ok(p)
}

/// A spanning family of `span(A) ∩ span(B)`, read off the kernel of the union
/// Gram matrix: `Σ α_i a_i + Σ β_j b_j = 0` gives `Σ α_i a_i` in both spans.
pub fn intersection_family(a: &GeneratorFamily, b: &GeneratorFamily) -> Result<GeneratorFamily> {
    check_same_space(a, b)?;
    let mut out = GeneratorFamily::empty(format!("{} ∩ {}", a.name(), b.name()), a.dim(), a.legs());
    if a.is_empty() || b.is_empty() {
        return Ok(out);
    }
    let union = a.union(b)?;
    let g = gram_unchecked(&union)?.to_qmatrix();
    for (n, z) in kernel_basis(&g).into_iter().enumerate() {
        let mut acc = SparseTensor::zero(a.dim(), a.legs())?;
        for (coef, m) in z[..a.len()].iter().zip(a.members()) {
            if !coef.is_zero() {
                acc = acc.add_scaled(m, coef)?;
            }
        }
        if !acc.is_zero() {
            out.push(format!("w{}", n + 1), acc, None)?;
        }
    }
    Ok(out)
}
