//! Arithmetic modulo word-sized primes: prime selection, elimination, and the
//! CRT / rational-reconstruction steps used to lift kernel vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRIME_LO: u64 = 1 << 30;
const PRIME_HI: u64 = 1 << 31;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reproducible stream of distinct random primes in `(2^30, 2^31)`.
pub struct PrimeStream {
    rng: ChaCha8Rng,
    issued: Vec<u64>,
}

impl PrimeStream {
    pub fn new(seed: u64) -> Self {
        PrimeStream { rng: ChaCha8Rng::seed_from_u64(seed), issued: Vec::new() }
    }

    pub fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.rng.gen_range(PRIME_LO + 1..PRIME_HI) | 1;
            if is_prime(c) && !self.issued.contains(&c) {
                self.issued.push(c);
                return c;
            }
        }
    }

    pub fn take(&mut self, n: usize) -> Vec<u64> {
        (0..n).map(|_| self.next_prime()).collect()
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank of a row-major `rows x cols` matrix over `F_p`; consumes the buffer.
pub fn rank_mod(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for j in c..cols {
            a[rank * cols + j] = mul_mod(a[rank * cols + j], inv, p);
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        tail.chunks_mut(cols).for_each(|row| {
            let f = row[c];
            if f != 0 {
                let neg = p - f;
                for j in c..cols {
                    row[j] = (row[j] + neg * pivot_row[j]) % p;
                }
            }
        });
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over `F_p`. Returns the pivot columns and the
/// first `rank` reduced rows.
pub fn rref_mod(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> (Vec<usize>, Vec<u64>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for j in c..cols {
            a[rank * cols + j] = mul_mod(a[rank * cols + j], inv, p);
        }
        let pivot_row: Vec<u64> = a[rank * cols..(rank + 1) * cols].to_vec();
        for (r, row) in a.chunks_mut(cols).enumerate() {
            if r == rank {
                continue;
            }
            let f = row[c];
            if f != 0 {
                let neg = p - f;
                for j in c..cols {
                    row[j] = (row[j] + neg * pivot_row[j]) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    a.truncate(rank * cols);
    (pivots, a)
}

/// Kernel basis read off a reduced row echelon form: one vector per free
/// column `f`, with `x_f = 1` and `x_{pivot_i} = -R[i][f]`.
pub fn kernel_from_rref(pivots: &[usize], reduced: &[u64], cols: usize, p: u64) -> Vec<(usize, Vec<u64>)> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.into_iter()
        .map(|f| {
            let mut x = vec![0u64; cols];
            x[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = reduced[i * cols + f];
                x[pc] = (p - v) % p;
            }
            (f, x)
        })
        .collect()
}

/// Combines `x ≡ r_i (mod m_i)` into a residue modulo `Π m_i`.
pub fn crt(residues: &[u64], moduli: &[u64]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &p) in residues.iter().zip(moduli) {
        let bp = BigInt::from(p);
        // x + m * t ≡ r (mod p)
        let xm = x.mod_floor(&bp);
        let mm = m.mod_floor(&bp);
        let diff = (BigInt::from(r) - xm).mod_floor(&bp);
        let inv = BigInt::from(inv_mod(
            u64::try_from(mm).expect("residue fits"),
            p,
        ));
        let t = (diff * inv).mod_floor(&bp);
        x += &m * t;
        m *= bp;
    }
    (x, m)
}

/// Finds `n/d ≡ a (mod m)` with `|n|, d <= sqrt(m/2)`, if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
