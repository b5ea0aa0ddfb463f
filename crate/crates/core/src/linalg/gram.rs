use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::rank::{rank_int, RankOptions, RankResult};
use super::{IntMatrix, QMatrix};
use crate::error::{param, Result};
use crate::fix::GeneratorFamily;
use crate::partition::join_block_count;
use crate::tensor::{denominator_lcm, SparseTensor};

/// Gram matrix of a family, held as the integer Gram `W` of the
/// denominator-cleared members `w_i = d_i v_i`, so that
/// `G[i][j] = W[i][j] / (d_i d_j)`. Rank is read off `W`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    scaled: IntMatrix,
    scales: Vec<BigInt>,
    provenance: String,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.scales.len()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.scaled.get(i, j), &self.scales[i] * &self.scales[j])
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let n = self.size();
        let rows = (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect();
        QMatrix::from_rows(rows).expect("square")
    }

    /// Integer Gram of the rescaled members; same rank as the Gram matrix.
    pub fn scaled(&self) -> &IntMatrix {
        &self.scaled
    }

    pub fn rank(&self, opts: &RankOptions) -> RankResult {
        rank_int(&self.scaled, opts)
    }

    /// Rank of the sub-family `idx` (a principal submatrix).
    pub fn principal_rank(&self, idx: &[usize], opts: &RankOptions) -> RankResult {
        rank_int(&self.scaled.principal(idx), opts)
    }
}

struct ScaledVec {
    keys: Vec<u64>,
    small: Option<Vec<i64>>,
    big: Vec<BigInt>,
    scale: BigInt,
}

impl ScaledVec {
    fn new(v: &SparseTensor) -> Self {
        let scale = denominator_lcm(v);
        let big: Vec<BigInt> = v.raw_entries().iter().map(|(_, c)| c.numer() * (&scale / c.denom())).collect();
        let small: Option<Vec<i64>> = big.iter().map(ToPrimitive::to_i64).collect();
        ScaledVec {
            keys: v.raw_entries().iter().map(|e| e.0).collect(),
            big: if small.is_some() { vec![] } else { big },
            small,
            scale,
        }
    }

    fn dot_small(&self, other: &ScaledVec) -> Option<i128> {
        let (a, b) = (self.small.as_ref()?, other.small.as_ref()?);
        let (mut i, mut j, mut acc) = (0, 0, 0i128);
        while i < self.keys.len() && j < other.keys.len() {
            match self.keys[i].cmp(&other.keys[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.checked_add(a[i] as i128 * b[j] as i128)?;
                    i += 1;
                    j += 1;
                }
            }
        }
        Some(acc)
    }

    fn coef(&self, i: usize) -> BigInt {
        match &self.small {
            Some(s) => BigInt::from(s[i]),
            None => self.big[i].clone(),
        }
    }

    fn dot_big(&self, other: &ScaledVec) -> BigInt {
        let (mut i, mut j, mut acc) = (0, 0, BigInt::zero());
        while i < self.keys.len() && j < other.keys.len() {
            match self.keys[i].cmp(&other.keys[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += self.coef(i) * other.coef(j);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

/// Gram matrix of `family`. Pairs of plain diagram members use
/// `⟨T_p, T_q⟩ = N^{#blocks(p ∨ q)}`; every other pair is a sparse dot product.
pub fn gram(family: &GeneratorFamily) -> Result<GramMatrix> {
    if family.is_empty() {
        return param("gram of an empty family");
    }
    gram_unchecked(family)
}

pub(crate) fn gram_unchecked(family: &GeneratorFamily) -> Result<GramMatrix> {
    let n = family.len();
    let dim = family.dim() as i128;
    let vecs: Vec<ScaledVec> = family.members().par_iter().map(ScaledVec::new).collect();
    let diagrams = family.diagrams();

    let fast = |i: usize, j: usize| -> Option<Result<i128>> {
        let (p, q) = (diagrams[i].as_ref()?, diagrams[j].as_ref()?);
        Some(join_block_count(p, q).map(|c| dim.checked_pow(c as u32).unwrap_or(i128::MAX)))
    };

    let small_rows: Vec<Option<Vec<i64>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    let v = match fast(i, j) {
                        Some(Ok(v)) if v != i128::MAX => Some(v),
                        Some(Ok(_)) => None,
                        Some(Err(_)) => None,
                        None => vecs[i].dot_small(&vecs[j]),
                    }?;
                    i64::try_from(v).ok()
                })
                .collect()
        })
        .collect();

    let scales: Vec<BigInt> = vecs.iter().map(|v| v.scale.clone()).collect();
    let scaled = if small_rows.iter().all(Option::is_some) {
        let mut data = vec![0i64; n * n];
        for (i, row) in small_rows.into_iter().enumerate() {
            for (off, v) in row.unwrap().into_iter().enumerate() {
                let j = i + off;
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        IntMatrix::from_i64(n, n, data)
    } else {
        let rows: Vec<Vec<BigInt>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (i..n)
                    .map(|j| match fast(i, j) {
                        Some(Ok(_)) => {
                            let c = join_block_count(diagrams[i].as_ref().unwrap(), diagrams[j].as_ref().unwrap())
                                .expect("checked above");
                            num_traits::pow(BigInt::from(family.dim()), c)
                        }
                        _ => vecs[i].dot_big(&vecs[j]),
                    })
                    .collect()
            })
            .collect();
        let mut data = vec![BigInt::zero(); n * n];
        for (i, row) in rows.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + off;
                data[j * n + i] = v.clone();
                data[i * n + j] = v;
            }
        }
        IntMatrix::from_big(n, n, data)
    };
    Ok(GramMatrix { scaled, scales, provenance: family.name().to_string() })
}

/// Gram matrix computed by sparse dot products only (no lattice shortcut).
pub fn gram_by_sparse_dots(family: &GeneratorFamily) -> Result<QMatrix> {
    let n = family.len();
    let m = family.members();
    let rows: Result<Vec<Vec<BigRational>>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| crate::tensor::inner_product(&m[i], &m[j])).collect())
        .collect();
    QMatrix::from_rows(rows?)
}
