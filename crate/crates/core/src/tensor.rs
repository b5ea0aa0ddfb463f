//! Exact sparse tensors in `(R^N)^{⊗k}` and the diagram tensors built from
//! partitions.
//!
//! Multi-indices are stored as a mixed-radix key (first leg most significant),
//! so the sorted entry list iterates in lexicographic index order. Public
//! indices are 1-based, matching the basis `e_1..e_N`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{param, Result};
use crate::linalg::QMatrix;
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    dim: usize,
    legs: usize,
    entries: Vec<(u64, BigRational)>,
}

fn radix_weights(dim: usize, legs: usize) -> Result<Vec<u64>> {
    let total = (dim as u64).checked_pow(legs as u32);
    if dim == 0 || total.is_none() {
        return param(format!("index space {dim}^{legs} does not fit a 64-bit key"));
    }
    let mut w = vec![1u64; legs];
    for r in (0..legs.saturating_sub(1)).rev() {
        w[r] = w[r + 1] * dim as u64;
    }
    Ok(w)
}

impl SparseTensor {
    pub fn zero(dim: usize, legs: usize) -> Result<Self> {
        radix_weights(dim, legs)?;
        Ok(SparseTensor { dim, legs, entries: Vec::new() })
    }

    /// Degree-0 tensor holding a single scalar.
    pub fn scalar(dim: usize, c: BigRational) -> Self {
        let entries = if c.is_zero() { vec![] } else { vec![(0, c)] };
        SparseTensor { dim, legs: 0, entries }
    }

    /// Basis vector `e_i` of `R^dim`, `i` in `1..=dim`.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return param(format!("basis index {i} outside 1..={dim}"));
        }
        Ok(SparseTensor { dim, legs: 1, entries: vec![((i - 1) as u64, BigRational::one())] })
    }

    /// Degree-1 tensor from its coordinates.
    pub fn vector(coords: &[BigRational]) -> Self {
        let entries = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64, c.clone()))
            .collect();
        SparseTensor { dim: coords.len(), legs: 1, entries }
    }

    /// The all-ones vector `e_1 + ... + e_dim`.
    pub fn ones(dim: usize) -> Self {
        Self::vector(&vec![BigRational::one(); dim])
    }

    /// Builds a tensor from 1-based multi-indices; repeated indices accumulate.
    pub fn from_entries<I>(dim: usize, legs: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, BigRational)>,
    {
        let w = radix_weights(dim, legs)?;
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (idx, c) in items {
            if idx.len() != legs || idx.iter().any(|&i| i == 0 || i > dim) {
                return param(format!("multi-index {idx:?} invalid for {dim}^{legs}"));
            }
            let key = idx.iter().zip(&w).map(|(&i, &wr)| (i as u64 - 1) * wr).sum();
            *acc.entry(key).or_insert_with(BigRational::zero) += c;
        }
        Ok(Self::from_map(dim, legs, acc))
    }

    /// Dense coordinates in key order, length `dim^legs`.
    pub fn from_dense(dim: usize, legs: usize, values: &[BigRational]) -> Result<Self> {
        let w = radix_weights(dim, legs)?;
        let total = if legs == 0 { 1 } else { w[0] * dim as u64 };
        if values.len() as u64 != total {
            return param("dense length does not match dim^legs");
        }
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64, c.clone()))
            .collect();
        Ok(SparseTensor { dim, legs, entries })
    }

    fn from_map(dim: usize, legs: usize, map: BTreeMap<u64, BigRational>) -> Self {
        let entries = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SparseTensor { dim, legs, entries }
    }

    fn from_unsorted(dim: usize, legs: usize, mut entries: Vec<(u64, BigRational)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u64, BigRational)> = Vec::with_capacity(entries.len());
        for (k, c) in entries {
            match merged.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        SparseTensor { dim, legs, entries: merged }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Raw `(key, coefficient)` pairs in ascending key order.
    pub fn raw_entries(&self) -> &[(u64, BigRational)] {
        &self.entries
    }

    /// Dense length `dim^legs`.
    pub fn space_size(&self) -> u64 {
        (self.dim as u64).pow(self.legs as u32)
    }

    pub fn decode(&self, key: u64) -> Vec<usize> {
        let mut idx = vec![0; self.legs];
        let mut k = key;
        for r in (0..self.legs).rev() {
            idx[r] = (k % self.dim as u64) as usize + 1;
            k /= self.dim as u64;
        }
        idx
    }

    /// `(1-based multi-index, coefficient)` pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &BigRational)> + '_ {
        self.entries.iter().map(move |(k, c)| (self.decode(*k), c))
    }

    pub fn get(&self, idx: &[usize]) -> BigRational {
        let Ok(w) = radix_weights(self.dim, self.legs) else {
            return BigRational::zero();
        };
        if idx.len() != self.legs || idx.iter().any(|&i| i == 0 || i > self.dim) {
            return BigRational::zero();
        }
        let key: u64 = idx.iter().zip(&w).map(|(&i, &wr)| (i as u64 - 1) * wr).sum();
        match self.entries.binary_search_by_key(&key, |e| e.0) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.space_size() as usize];
        for (k, c) in &self.entries {
            out[*k as usize] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SparseTensor {
        if c.is_zero() {
            return SparseTensor { dim: self.dim, legs: self.legs, entries: vec![] };
        }
        SparseTensor {
            dim: self.dim,
            legs: self.legs,
            entries: self.entries.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseTensor, c: &BigRational) -> Result<SparseTensor> {
        self.check_shape(other)?;
        let mut all = self.entries.clone();
        all.extend(other.entries.iter().map(|(k, x)| (*k, x * c)));
        Ok(Self::from_unsorted(self.dim, self.legs, all))
    }

    /// Outer product `self ⊗ other`.
    pub fn tensor(&self, other: &SparseTensor) -> Result<SparseTensor> {
        if self.dim != other.dim {
            return param("tensor factors live in different dimensions");
        }
        radix_weights(self.dim, self.legs + other.legs)?;
        let shift = other.space_size();
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (ka, a) in &self.entries {
            for (kb, b) in &other.entries {
                entries.push((ka * shift + kb, a * b));
            }
        }
        // keys are produced in ascending order
        Ok(SparseTensor { dim: self.dim, legs: self.legs + other.legs, entries })
    }

    fn check_shape(&self, other: &SparseTensor) -> Result<()> {
        if self.dim != other.dim || self.legs != other.legs {
            return param(format!(
                "shape mismatch: {}^{} vs {}^{}",
                self.dim, self.legs, other.dim, other.legs
            ));
        }
        Ok(())
    }
}

/// Index ranges for the strings of a diagram: a default range for uncolored
/// blocks and optional per-color ranges. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeSpec {
    pub default_range: Vec<usize>,
    pub per_color_range: BTreeMap<u32, Vec<usize>>,
}

impl RangeSpec {
    pub fn full(n: usize) -> Self {
        Self::new((1..=n).collect())
    }

    pub fn new(default_range: Vec<usize>) -> Self {
        RangeSpec { default_range, per_color_range: BTreeMap::new() }
    }

    /// Range `from..=n`, as used for strings that avoid the first coordinates.
    pub fn starting_at(from: usize, n: usize) -> Self {
        Self::new((from..=n).collect())
    }

    pub fn with_color(mut self, color: u32, range: Vec<usize>) -> Self {
        self.per_color_range.insert(color, range);
        self
    }

    /// Two colors: `1` ranges over `1..=a`, `2` over `a+1..=a+b`.
    pub fn block_split(a: usize, b: usize) -> Self {
        Self::full(a + b)
            .with_color(1, (1..=a).collect())
            .with_color(2, (a + 1..=a + b).collect())
    }

    pub fn is_full(&self, n: usize) -> bool {
        self.per_color_range.is_empty() && self.default_range == (1..=n).collect::<Vec<_>>()
    }

    fn validate(&self, n: usize) -> Result<()> {
        for r in std::iter::once(&self.default_range).chain(self.per_color_range.values()) {
            if r.is_empty() {
                return param("index ranges must be nonempty");
            }
            if r.iter().any(|&i| i == 0 || i > n) {
                return param(format!("index range {r:?} leaves 1..={n}"));
            }
        }
        Ok(())
    }
}

/// The linear map `T_p : H^{⊗s} → H^{⊗k}` applied to a degree-`s` input,
/// where `s` is the number of singletons of `p`. Every block of size at least
/// two carries one shared index drawn from its range; the `i`-th singleton (by
/// position) receives the `i`-th input leg.
pub fn apply_partition_map(
    p: &Partition,
    n: usize,
    input: &SparseTensor,
    range: &RangeSpec,
) -> Result<SparseTensor> {
    range.validate(n)?;
    let singles = p.singletons();
    if input.dim != n {
        return param(format!("input lives in dimension {}, expected {n}", input.dim));
    }
    if input.legs != singles.len() {
        return param(format!(
            "partition {p} has {} singletons but the input has degree {}",
            singles.len(),
            input.legs
        ));
    }
    let k = p.points();
    let w = radix_weights(n, k)?;

    // (key weight of the block, index range) for every non-singleton block
    let mut strings: Vec<(u64, &[usize])> = Vec::new();
    for (bi, b) in p.blocks().iter().enumerate() {
        if b.len() < 2 {
            continue;
        }
        let r: &[usize] = match p.colors() {
            Some(cs) => match range.per_color_range.get(&cs[bi]) {
                Some(r) => r,
                None => return param(format!("no index range for color {}", cs[bi])),
            },
            None => &range.default_range,
        };
        strings.push((b.iter().map(|&x| w[x - 1]).sum(), r));
    }
    let single_w: Vec<u64> = singles.iter().map(|&x| w[x - 1]).collect();

    let mut string_keys: Vec<u64> = vec![0];
    for (bw, r) in &strings {
        let mut next = Vec::with_capacity(string_keys.len() * r.len());
        for &base in &string_keys {
            for &i in r.iter() {
                next.push(base + (i as u64 - 1) * bw);
            }
        }
        string_keys = next;
    }

    let mut entries = Vec::with_capacity(string_keys.len() * input.nnz());
    for (key_in, c) in &input.entries {
        let idx = input.decode(*key_in);
        let base: u64 = idx.iter().zip(&single_w).map(|(&i, &wr)| (i as u64 - 1) * wr).sum();
        for &sk in &string_keys {
            entries.push((base + sk, c.clone()));
        }
    }
    Ok(SparseTensor::from_unsorted(n, k, entries))
}

/// `T_p(args[0] ⊗ ... ⊗ args[s-1])` with one degree-1 argument per singleton.
pub fn tensor_of_partition(
    p: &Partition,
    n: usize,
    singleton_args: &[SparseTensor],
    range: &RangeSpec,
) -> Result<SparseTensor> {
    if singleton_args.len() != p.singleton_count() {
        return param(format!(
            "partition {p} has {} singletons, {} arguments given",
            p.singleton_count(),
            singleton_args.len()
        ));
    }
    let input = elementary(n, singleton_args)?;
    apply_partition_map(p, n, &input, range)
}

/// Plain diagram tensor `T_p` over the full range, with every singleton block
/// treated as a free index (the all-ones vector).
pub fn diagram_tensor(p: &Partition, n: usize) -> Result<SparseTensor> {
    let ones: Vec<SparseTensor> = (0..p.singleton_count()).map(|_| SparseTensor::ones(n)).collect();
    tensor_of_partition(p, n, &ones, &RangeSpec::full(n))
}

fn elementary(n: usize, args: &[SparseTensor]) -> Result<SparseTensor> {
    let mut acc = SparseTensor::scalar(n, BigRational::one());
    for a in args {
        if a.dim != n || a.legs != 1 {
            return param(format!("argument must be a vector of R^{n}"));
        }
        acc = acc.tensor(a)?;
    }
    Ok(acc)
}

/// Sum over all orderings of the elementary tensor of `args`, without
/// normalization.
pub fn sym_tensor(args: &[SparseTensor]) -> Result<SparseTensor> {
    let Some(first) = args.first() else {
        return param("sym_tensor needs at least one argument");
    };
    let n = first.dim;
    let l = args.len();
    let mut entries: Vec<(u64, BigRational)> = Vec::new();
    let mut order: Vec<usize> = (0..l).collect();
    let mut err = None;
    heap_permutations(&mut order, l, &mut |ord| {
        let permuted: Vec<SparseTensor> = ord.iter().map(|&i| args[i].clone()).collect();
        match elementary(n, &permuted) {
            Ok(t) => entries.extend(t.entries),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(SparseTensor::from_unsorted(n, l, entries))
}

fn heap_permutations(v: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(v);
        return;
    }
    heap_permutations(v, k - 1, f);
    for i in 0..k - 1 {
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
        heap_permutations(v, k - 1, f);
    }
}

/// Standard inner product on `(R^N)^{⊗k}`.
pub fn inner_product(x: &SparseTensor, y: &SparseTensor) -> Result<BigRational> {
    x.check_shape(y)?;
    let (mut i, mut j) = (0, 0);
    let mut acc = BigRational::zero();
    while i < x.entries.len() && j < y.entries.len() {
        let (ka, a) = &x.entries[i];
        let (kb, b) = &y.entries[j];
        match ka.cmp(kb) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += a * b;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(acc)
}

/// `Σ_r (1 ⊗ .. ⊗ X ⊗ .. ⊗ 1) v`, the action of the Lie algebra element `X`
/// on `v`, with `X e_i = Σ_j X[j][i] e_j`.
pub fn lie_derivation(x: &QMatrix, v: &SparseTensor) -> Result<SparseTensor> {
    if x.rows() != v.dim || x.cols() != v.dim {
        return param(format!(
            "{}x{} matrix cannot act on R^{}",
            x.rows(),
            x.cols(),
            v.dim
        ));
    }
    let n = v.dim;
    let w = radix_weights(n, v.legs)?;
    // column i of X as sparse (j, X[j][i])
    let columns: Vec<Vec<(usize, BigRational)>> = (0..n)
        .map(|i| (0..n).filter(|&j| !x.get(j, i).is_zero()).map(|j| (j, x.get(j, i).clone())).collect())
        .collect();
    let mut entries = Vec::new();
    for (key, c) in &v.entries {
        let idx = v.decode(*key);
        for r in 0..v.legs {
            let i = idx[r] - 1;
            let base = key - i as u64 * w[r];
            for (j, xji) in &columns[i] {
                entries.push((base + *j as u64 * w[r], c * xji));
            }
        }
    }
    Ok(SparseTensor::from_unsorted(n, v.legs, entries))
}

/// The generator `E_ij - E_ji` of `so(N)` (1-based `i`, `j`).
pub fn rotation_generator(n: usize, i: usize, j: usize) -> QMatrix {
    let mut x = QMatrix::zeros(n, n);
    x.set(i - 1, j - 1, BigRational::one());
    x.set(j - 1, i - 1, -BigRational::one());
    x
}

/// Least common multiple of the coefficient denominators.
pub fn denominator_lcm(v: &SparseTensor) -> BigInt {
    use num_integer::Integer;
    v.entries.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}
