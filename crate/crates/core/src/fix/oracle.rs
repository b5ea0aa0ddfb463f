use num_bigint::BigInt;
use num_rational::BigRational;

use super::GeneratorFamily;
use crate::error::{param, QgvError, Result};
use crate::linalg::QMatrix;
use crate::tensor::{lie_derivation, rotation_generator};

/// Default work budget `N! · N^k` for the permutation average (`N = 4, k = 6`).
pub const DEFAULT_SN_BUDGET: u64 = 24 * 4096;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// The averaging projection `(1/N!) Σ_σ σ^{⊗k}` onto the permutation-invariant
/// vectors of `(R^N)^{⊗k}`, built by brute force over all permutations.
pub fn sn_average_oracle(n: usize, k: usize, budget: u64) -> Result<QMatrix> {
    if n == 0 {
        return param("N must be at least 1");
    }
    let size = (n as u64).checked_pow(k as u32);
    let fact: u64 = (1..=n as u64).product();
    let work = size.and_then(|s| s.checked_mul(fact));
    let (Some(size), Some(work)) = (size, work) else {
        return Err(QgvError::Resource(format!("N={n}, k={k} overflows the permutation budget")));
    };
    if work > budget {
        return Err(QgvError::Resource(format!("N! * N^k = {work} exceeds the budget {budget}")));
    }
    let size = size as usize;
    let mut counts = vec![0u64; size * size];
    for sigma in permutations(n) {
        for y in 0..size {
            // digits of y, first leg most significant, mapped through sigma
            let (mut rem, mut x, mut w) = (y, 0, 1);
            for _ in 0..k {
                x += sigma[rem % n] * w;
                rem /= n;
                w *= n;
            }
            counts[x * size + y] += 1;
        }
    }
    let mut p = QMatrix::zeros(size, size);
    for (i, &c) in counts.iter().enumerate() {
        if c != 0 {
            p.set(i / size, i % size, BigRational::new(BigInt::from(c), BigInt::from(fact)));
        }
    }
    Ok(p)
}

/// Whether every member is annihilated by the rotation generators
/// `E_ij - E_ji` of `so(N)`, or of `so(a) ⊕ so(b)` when `block_split` is
/// `(a, b)`.
pub fn so_invariance_check(fam: &GeneratorFamily, block_split: Option<(usize, usize)>) -> Result<bool> {
    let n = fam.dim();
    let blocks: Vec<(usize, usize)> = match block_split {
        None => vec![(1, n)],
        Some((a, b)) => {
            if a + b != n {
                return param(format!("block split {a}+{b} does not match N = {n}"));
            }
            vec![(1, a), (a + 1, n)]
        }
    };
    for (lo, hi) in blocks {
        for i in lo..=hi {
            for j in i + 1..=hi {
                let x = rotation_generator(n, i, j);
                for v in fam.members() {
                    if !lie_derivation(&x, v)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fix::generator_family;
    use crate::tensor::SparseTensor;

    #[test]
    fn oracle_examples() {
        let p = sn_average_oracle(2, 1, DEFAULT_SN_BUDGET).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert!((0..2).all(|i| (0..2).all(|j| *p.get(i, j) == half)));
        let p = sn_average_oracle(2, 2, DEFAULT_SN_BUDGET).unwrap();
        assert_eq!(p.trace(), BigRational::from_integer(2.into()));
        assert_eq!(sn_average_oracle(3, 0, DEFAULT_SN_BUDGET).unwrap(), QMatrix::identity(1));
        assert_eq!(sn_average_oracle(4, 7, DEFAULT_SN_BUDGET).unwrap_err().kind(), "resource");
    }

    #[test]
    fn invariance_examples() {
        let f = generator_family(&"on:N=3".parse().unwrap(), 4).unwrap();
        assert!(so_invariance_check(&f, None).unwrap());
        let f = GeneratorFamily::from_members("e1", vec![SparseTensor::basis(2, 1).unwrap()]).unwrap();
        assert!(!so_invariance_check(&f, None).unwrap());
        let f = generator_family(&"fp:N=4,a=2,b=2".parse().unwrap(), 4).unwrap();
        assert!(so_invariance_check(&f, Some((2, 2))).unwrap());
        assert!(!so_invariance_check(&f, None).unwrap());
    }
}
