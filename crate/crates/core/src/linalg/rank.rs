//! Certified exact rank.
//!
//! The modular route computes the rank modulo several seeded random primes.
//! Each such rank is a lower bound for the rational rank. A full-rank result is
//! therefore already a certificate. Otherwise, with certification enabled, an
//! upper bound is established either by Bareiss elimination (low rank) or by
//! lifting the mod-p kernel to rational vectors and checking `M x = 0` exactly.
//! A failed lift falls back to Bareiss.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bareiss::bareiss_rank;
use super::modular::{crt, kernel_from_rref, rank_mod, rational_reconstruction, rref_mod, PrimeStream};
use super::{IntMatrix, QMatrix};

/// Ranks at or below this go straight to Bareiss when certifying; the cost is
/// `rows * cols * rank` on entries of `O(rank)` words.
const BAREISS_RANK_CUTOFF: usize = 48;
/// Extra primes drawn when lifting a kernel before giving up on the lift.
const MAX_LIFT_PRIMES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    FractionFree,
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOptions {
    pub method: RankMethod,
    /// Number of primes for the modular route (at least 2).
    pub prime_count: usize,
    pub seed: u64,
    /// Certify non-full modular ranks (kernel lift or Bareiss).
    pub certify: bool,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { method: RankMethod::Modular, prime_count: 3, seed: 0x5eed_0001, certify: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub primes_used: Vec<u64>,
    pub certified: bool,
}

/// Exact rank of a rational matrix (rows are cleared of denominators first).
pub fn rank_q(m: &QMatrix, opts: &RankOptions) -> RankResult {
    rank_int(&IntMatrix::from_rational_rows(m), opts)
}

pub fn rank_int(m: &IntMatrix, opts: &RankOptions) -> RankResult {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return RankResult { rank: 0, method: opts.method, primes_used: vec![], certified: true };
    }
    if opts.method == RankMethod::FractionFree {
        return fraction_free(m, vec![]);
    }

    let mut stream = PrimeStream::new(opts.seed);
    let primes = stream.take(opts.prime_count.max(2));
    let ranks: Vec<usize> = primes.iter().map(|&p| rank_mod(m.reduce_mod(p), rows, cols, p)).collect();
    let best = *ranks.iter().max().unwrap();
    let agree = ranks.iter().all(|&r| r == best);
    let mut result = RankResult { rank: best, method: RankMethod::Modular, primes_used: primes, certified: false };

    if best == rows.min(cols) {
        result.certified = true;
        return result;
    }
    if !opts.certify {
        return result;
    }
    if best <= BAREISS_RANK_CUTOFF || !agree {
        return fraction_free(m, result.primes_used);
    }
    if certify_by_kernel(m, best, &mut result.primes_used, &mut stream) {
        result.certified = true;
        return result;
    }
    fraction_free(m, result.primes_used)
}

fn fraction_free(m: &IntMatrix, primes_used: Vec<u64>) -> RankResult {
    RankResult { rank: bareiss_rank(m), method: RankMethod::FractionFree, primes_used, certified: true }
}

/// Shows `rank(m) <= rank` by exhibiting `cols - rank` independent rational
/// kernel vectors, each checked exactly.
fn certify_by_kernel(m: &IntMatrix, rank: usize, primes_used: &mut Vec<u64>, stream: &mut PrimeStream) -> bool {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots: Option<Vec<usize>> = None;
    let mut moduli: Vec<u64> = Vec::new();
    // per free column, per prime: residue vector
    let mut residues: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut candidates: Vec<u64> = primes_used.clone();
    let mut extra = 0;

    loop {
        for p in candidates.drain(..) {
            let (piv, red) = rref_mod(m.reduce_mod(p), rows, cols, p);
            if piv.len() != rank {
                continue;
            }
            match &pivots {
                None => {
                    residues = vec![Vec::new(); cols - rank];
                    pivots = Some(piv.clone());
                }
                Some(existing) if *existing != piv => continue,
                Some(_) => {}
            }
            for (slot, (_, x)) in residues.iter_mut().zip(kernel_from_rref(&piv, &red, cols, p)) {
                slot.push(x);
            }
            moduli.push(p);
        }
        if !moduli.is_empty() && lift_and_verify(m, &residues, &moduli) {
            return true;
        }
        if extra >= MAX_LIFT_PRIMES {
            return false;
        }
        let p = stream.next_prime();
        primes_used.push(p);
        candidates.push(p);
        extra += 1;
    }
}

fn lift_and_verify(m: &IntMatrix, residues: &[Vec<Vec<u64>>], moduli: &[u64]) -> bool {
    let cols = m.cols();
    residues.iter().all(|per_prime| {
        let mut coords: Vec<BigRational> = Vec::with_capacity(cols);
        for j in 0..cols {
            let rs: Vec<u64> = per_prime.iter().map(|x| x[j]).collect();
            let (a, modulus) = crt(&rs, moduli);
            match rational_reconstruction(&a, &modulus) {
                Some(q) => coords.push(q),
                None => return false,
            }
        }
        let l = coords.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let z: Vec<BigInt> = coords.iter().map(|q| q.numer() * (&l / q.denom())).collect();
        !z.iter().all(Zero::is_zero) && m.annihilates(&z)
    })
}
