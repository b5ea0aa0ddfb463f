//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own counting or elimination code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qgverify::{Partition, SparseTensor};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn catalan(m: usize) -> u128 {
    let mut c = vec![1u128; m + 1];
    for n in 1..=m {
        c[n] = (0..n).map(|i| c[i] * c[n - 1 - i]).sum();
    }
    c[m]
}

pub fn motzkin(n: usize) -> u128 {
    let mut m = vec![1u128; n + 1];
    for k in 2..=n {
        m[k] = m[k - 1] + (0..=k - 2).map(|i| m[i] * m[k - 2 - i]).sum::<u128>();
    }
    m[n]
}

pub fn bell(n: usize) -> u128 {
    // B_{n+1} = Σ C(n,i) B_i
    let mut b = vec![1u128];
    for m in 0..n {
        let mut binom = 1u128;
        let mut next = 0u128;
        for i in 0..=m {
            next += binom * b[i];
            binom = binom * (m - i) as u128 / (i + 1) as u128;
        }
        b.push(next);
    }
    b[n]
}

pub fn double_factorial(m: usize) -> u128 {
    (1..=m as u128).map(|i| 2 * i - 1).product()
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// All set partitions of `{1..k}` as label vectors, by canonicalizing every
/// function `{1..k} → {1..k}`.
pub fn brute_set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let total = k.pow(k as u32).max(1);
    for code in 0..total {
        let mut labels = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            labels.push(c % k.max(1));
            c /= k.max(1);
        }
        let mut map = Vec::new();
        let canon: Vec<usize> = labels
            .iter()
            .map(|l| match map.iter().position(|m| m == l) {
                Some(i) => i,
                None => {
                    map.push(*l);
                    map.len() - 1
                }
            })
            .collect();
        seen.insert(canon);
    }
    seen.into_iter().collect()
}

pub fn blocks_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let nb = labels.iter().max().map_or(0, |m| m + 1);
    (0..nb).map(|b| (1..=labels.len()).filter(|&i| labels[i - 1] == b).collect()).collect()
}

/// Crossing test over all quadruples `a < b < c < d`.
pub fn brute_noncrossing(blocks: &[Vec<usize>]) -> bool {
    let owner = |x: usize| blocks.iter().position(|b| b.contains(&x)).unwrap();
    let k: usize = blocks.iter().map(Vec::len).sum();
    for a in 1..=k {
        for b in a + 1..=k {
            for c in b + 1..=k {
                for d in c + 1..=k {
                    let (oa, ob, oc, od) = (owner(a), owner(b), owner(c), owner(d));
                    if oa == oc && ob == od && oa != ob {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Brute-force family: filter all set partitions by a predicate on blocks.
pub fn brute_family(k: usize, keep: impl Fn(&[Vec<usize>]) -> bool) -> BTreeSet<Partition> {
    brute_set_partitions(k)
        .into_iter()
        .map(|l| blocks_of(&l))
        .filter(|b| keep(b))
        .map(|b| Partition::new(k, b).unwrap())
        .collect()
}

pub fn is_pairing(b: &[Vec<usize>]) -> bool {
    b.iter().all(|x| x.len() == 2)
}

pub fn even_odd(b: &[Vec<usize>]) -> bool {
    b.iter().all(|x| x.len() == 2 && (x[0] + x[1]) % 2 == 1)
}

/// Diagram tensor by direct summation over all multi-indices.
pub fn brute_diagram_tensor(blocks: &[Vec<usize>], k: usize, n: usize) -> Vec<BigRational> {
    let size = n.pow(k as u32);
    let mut out = vec![BigRational::zero(); size];
    for (key, slot) in out.iter_mut().enumerate() {
        let mut idx = vec![0; k];
        let mut c = key;
        for r in (0..k).rev() {
            idx[r] = c % n;
            c /= n;
        }
        if blocks.iter().all(|b| b.iter().all(|&x| idx[x - 1] == idx[b[0] - 1])) {
            *slot = BigRational::one();
        }
    }
    out
}

/// Rank over `Q` by textbook Gaussian elimination.
pub fn dense_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[rank][c];
            for j in c..cols {
                let v = &f * &a[rank][j];
                a[r][j] -= v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense_rank_of(vectors: &[SparseTensor]) -> usize {
    let rows: Vec<Vec<BigRational>> = vectors.iter().map(SparseTensor::to_dense).collect();
    dense_rank(&rows)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
