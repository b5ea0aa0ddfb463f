//! Fraction-free Gaussian elimination (Bareiss) over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;

/// Exact rank of an integer matrix. Every intermediate entry is a minor of the
/// input, so the divisions below are exact.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pv * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    rank
}
