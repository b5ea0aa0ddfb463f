//! Closed counting formulas for the partition families.

/// `C_m`, the number of non-crossing pairings of `2m` points.
pub fn catalan(m: usize) -> u128 {
    // C_{i+1} = C_i * 2(2i+1) / (i+2)
    (0..m).fold(1u128, |c, i| c * (2 * (2 * i as u128 + 1)) / (i as u128 + 2))
}

/// `M_k`, the number of non-crossing partitions of `k` points into singletons and pairs.
pub fn motzkin(k: usize) -> u128 {
    (0..=k).filter(|s| (k - s) % 2 == 0).map(|s| binomial(k, s) * catalan((k - s) / 2)).sum()
}

/// Bell number via the Bell triangle.
pub fn bell(k: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..k {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// `(2m-1)!!`, the number of pairings of `2m` points.
pub fn double_factorial_odd(m: usize) -> u128 {
    (1..=m as u128).map(|i| 2 * i - 1).product()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!((0..8).map(catalan).collect::<Vec<_>>(), [1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!((0..9).map(motzkin).collect::<Vec<_>>(), [1, 1, 2, 4, 9, 21, 51, 127, 323]);
        assert_eq!((0..7).map(bell).collect::<Vec<_>>(), [1, 1, 2, 5, 15, 52, 203]);
        assert_eq!(double_factorial_odd(3), 15);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(factorial(5), 120);
    }
}
