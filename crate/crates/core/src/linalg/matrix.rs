//! Dense exact matrices.
//!
//! [`QMatrix`] holds arbitrary rationals and is used for projections, oracles
//! and dumps. [`IntMatrix`] is the integer form every rank computation runs on;
//! it keeps entries in `i64` while they fit.

use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{param, QgvError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return param("ragged matrix rows");
        }
        Ok(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), c, "ragged matrix rows");
                r.iter().map(|&x| BigRational::from_integer(x.into()))
            })
            .collect();
        QMatrix { rows: rows.len(), cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return param(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector.
    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return param("vector length does not match matrix columns");
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_f64().unwrap_or(f64::NAN)
        })
    }

    /// Writes the nonzero entries as `i j numerator/denominator` lines (0-based
    /// indices) after a header `qgv-matrix v1 <rows> <cols> <nnz>`.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "qgv-matrix v1 {} {} {}", self.rows, self.cols, self.nnz())?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    writeln!(w, "{} {} {}/{}", i, j, v.numer(), v.denom())?;
                }
            }
        }
        Ok(())
    }

    pub fn read_triplets<R: BufRead>(r: R) -> Result<QMatrix> {
        let bad = |msg: &str| QgvError::Parse(format!("matrix dump: {msg}"));
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| bad("missing header"))??;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 5 || h[0] != "qgv-matrix" || h[1] != "v1" {
            return Err(bad("bad header"));
        }
        let dims: Vec<usize> = h[2..]
            .iter()
            .map(|t| t.parse().map_err(|_| bad("bad header numbers")))
            .collect::<Result<_>>()?;
        let mut m = QMatrix::zeros(dims[0], dims[1]);
        let mut seen = 0;
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad("bad triplet"));
            }
            let i: usize = t[0].parse().map_err(|_| bad("bad row"))?;
            let j: usize = t[1].parse().map_err(|_| bad("bad column"))?;
            let (n, d) = t[2].split_once('/').ok_or_else(|| bad("bad value"))?;
            let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
            if i >= m.rows || j >= m.cols || d.is_zero() {
                return Err(bad("entry out of range"));
            }
            m.set(i, j, BigRational::new(n, d));
            seen += 1;
        }
        if seen != dims[2] {
            return Err(bad("entry count does not match header"));
        }
        Ok(m)
    }
}

#[derive(Clone, Debug)]
enum Storage {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// Dense integer matrix; `i64` storage while every entry fits.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl IntMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, storage: Storage::Small(data) }
    }

    pub fn from_big(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let small: Option<Vec<i64>> = data.iter().map(ToPrimitive::to_i64).collect();
        let storage = match small {
            Some(s) => Storage::Small(s),
            None => Storage::Big(data),
        };
        IntMatrix { rows, cols, storage }
    }

    /// Clears denominators row by row; the row space (and rank) is unchanged.
    pub fn from_rational_rows(m: &QMatrix) -> Self {
        let mut data = Vec::with_capacity(m.rows * m.cols);
        for i in 0..m.rows {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            data.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        }
        Self::from_big(m.rows, m.cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match &self.storage {
            Storage::Small(d) => BigInt::from(d[i * self.cols + j]),
            Storage::Big(d) => d[i * self.cols + j].clone(),
        }
    }

    pub fn as_small(&self) -> Option<&[i64]> {
        match &self.storage {
            Storage::Small(d) => Some(d),
            Storage::Big(_) => None,
        }
    }

    /// Entries reduced into `[0, p)`, row-major.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        match &self.storage {
            Storage::Small(d) => d.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect(),
            Storage::Big(d) => {
                let bp = BigInt::from(p);
                d.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect()
            }
        }
    }

    /// Principal submatrix on the given (sorted or not) index list.
    pub fn principal(&self, idx: &[usize]) -> IntMatrix {
        let n = idx.len();
        match &self.storage {
            Storage::Small(d) => IntMatrix::from_i64(
                n,
                n,
                idx.iter().flat_map(|&i| idx.iter().map(move |&j| d[i * self.cols + j])).collect(),
            ),
            Storage::Big(d) => IntMatrix::from_big(
                n,
                n,
                idx.iter()
                    .flat_map(|&i| idx.iter().map(move |&j| d[i * self.cols + j].clone()))
                    .collect(),
            ),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    /// True iff `self * z == 0` exactly.
    pub fn annihilates(&self, z: &[BigInt]) -> bool {
        assert_eq!(z.len(), self.cols);
        let small_z: Option<Vec<i64>> = z.iter().map(ToPrimitive::to_i64).collect();
        if let (Storage::Small(d), Some(zs)) = (&self.storage, &small_z) {
            let support: Vec<usize> = (0..zs.len()).filter(|&j| zs[j] != 0).collect();
            let fast = (0..self.rows).try_fold((), |_, i| {
                let row = &d[i * self.cols..(i + 1) * self.cols];
                let mut acc: i128 = 0;
                for &j in &support {
                    acc = acc.checked_add((row[j] as i128).checked_mul(zs[j] as i128)?)?;
                }
                if acc == 0 {
                    Some(())
                } else {
                    None
                }
            });
            if fast.is_some() {
                return true;
            }
            // either a nonzero row product or an i128 overflow; settle it exactly
        }
        (0..self.rows).all(|i| {
            (0..self.cols)
                .filter(|&j| !z[j].is_zero())
                .fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &z[j])
                .is_zero()
        })
    }

    pub fn max_abs_bits(&self) -> u64 {
        match &self.storage {
            Storage::Small(d) => d.iter().map(|x| 64 - x.unsigned_abs().leading_zeros() as u64).max().unwrap_or(0),
            Storage::Big(d) => d.iter().map(|x| x.abs().bits()).max().unwrap_or(0),
        }
    }
}
