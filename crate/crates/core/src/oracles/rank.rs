//! Linear-algebra form of the divisibility test.
//!
//! `A` has `3p+3q+1` rows and `3p+3q−τ+1` columns; column `n` (1-based) is
//! the coefficient vector of `x^{n−1}(1 + x^τ)`. `b` is the coefficient
//! vector of `1 + x^{3p} + x^{3q} + x^{3p+3q}`. The divisor divides the
//! dividend iff `b` lies in the column space, i.e. `rank(A | b) = rank(A)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classifier::ReducedRational;
use crate::error::{Error, Result};
use crate::numtheory::tau;
use crate::oracles::polynomial::dividend_exponents;

/// 2^62 − 57, the prime used for [`modular_rank`].
pub const RANK_PRIME: u64 = 4_611_686_018_427_387_847;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientMatrix {
    pub p: u64,
    pub q: u64,
    pub ell: u32,
    pub tau: u64,
    pub rows: usize,
    pub cols: usize,
    /// Row-major `rows × cols`.
    entries: Vec<i64>,
    augmented: Vec<i64>,
}

impl CoefficientMatrix {
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.cols + col]
    }

    pub fn augmented_column(&self) -> &[i64] {
        &self.augmented
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    /// `A` as a list of rows.
    pub fn plain_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.cols).map(<[i64]>::to_vec).collect()
    }

    /// `(A | b)` as a list of rows.
    pub fn augmented_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.cols)
            .zip(&self.augmented)
            .map(|(row, &b)| {
                let mut r = row.to_vec();
                r.push(b);
                r
            })
            .collect()
    }
}

pub fn build_rank_instance(p: u64, q: u64, ell: u32) -> Result<CoefficientMatrix> {
    let t = ReducedRational::proper_reduced(p, q)?;
    let exps = dividend_exponents(t)?;
    let degree = exps[3];
    let tau = tau(ell)?;
    if tau > degree {
        return Err(Error::DivisorTooLarge { tau, degree });
    }
    let rows = usize::try_from(degree + 1).map_err(|_| Error::Overflow("matrix rows"))?;
    let cols = rows - tau as usize;
    rows.checked_mul(cols)
        .filter(|&n| n <= 1 << 28)
        .ok_or(Error::Overflow("matrix size"))?;

    let mut entries = vec![0i64; rows * cols];
    for n in 0..cols {
        entries[n * cols + n] = 1;
        entries[(n + tau as usize) * cols + n] = 1;
    }
    let mut augmented = vec![0i64; rows];
    for e in exps {
        augmented[e as usize] = 1;
    }
    Ok(CoefficientMatrix {
        p,
        q,
        ell,
        tau,
        rows,
        cols,
        entries,
        augmented,
    })
}

/// Integer arithmetic used by fraction-free elimination. `None` means the
/// representation overflowed.
trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `(a·d − b·c) / prev`, which is exact inside Bareiss elimination.
    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self>;
}

impl ExactRing for i128 {
    fn zero() -> Self {
        0
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        let num = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(num % prev, 0);
        Some(num / prev)
    }
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        Some((a * d - b * c) / prev)
    }
}

/// Bareiss elimination with row pivoting; columns without a pivot are skipped.
fn bareiss_rank<T: ExactRing>(mut m: Vec<Vec<T>>, one: T) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = one;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[c].clone();
        let pivot_is_prev = pv == prev;
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            if lead.is_zero() && pivot_is_prev {
                // (pv·x − 0) / prev = x
                continue;
            }
            for j in c + 1..cols {
                row[j] = T::cross_div(&pv, &row[j], &lead, &pivot[j], &prev)?;
            }
            row[c] = T::zero();
        }
        prev = pv;
        rank += 1;
    }
    Some(rank)
}

/// Exact rank over ℚ by fraction-free elimination. Runs in `i128` and
/// repeats in arbitrary precision if an intermediate minor overflows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let small: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    if let Some(rank) = bareiss_rank(small, 1i128) {
        return rank;
    }
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank(big, BigInt::one()).expect("arbitrary precision never overflows")
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = u128::from(m);
    let mut acc = 1u128;
    let mut b = u128::from(base) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Rank over `𝔽_prime`. Never exceeds [`integer_rank`]; useful as a quick check.
pub fn modular_rank(rows: &[Vec<i64>], prime: u64) -> usize {
    let m128 = u128::from(prime);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(prime as i64) as u64).collect())
        .collect();
    let n_rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..n_rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = pow_mod(m[rank][c], prime - 2, prime);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = (u128::from(row[c]) * u128::from(inv) % m128) as u64;
            for j in c..cols {
                let sub = (u128::from(f) * u128::from(pivot[j]) % m128) as u64;
                row[j] = ((u128::from(row[j]) + m128 - u128::from(sub)) % m128) as u64;
            }
        }
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankComparison {
    pub rank_a: usize,
    pub rank_augmented: usize,
}

impl RankComparison {
    pub fn equal(&self) -> bool {
        self.rank_a == self.rank_augmented
    }
}

pub fn compare_ranks(p: u64, q: u64, ell: u32) -> Result<RankComparison> {
    let m = build_rank_instance(p, q, ell)?;
    Ok(RankComparison {
        rank_a: integer_rank(&m.plain_rows()),
        rank_augmented: integer_rank(&m.augmented_rows()),
    })
}

/// `rank(A | b) = rank(A)`, computed exactly.
pub fn rank_equality_holds(p: u64, q: u64, ell: u32) -> Result<bool> {
    Ok(compare_ranks(p, q, ell)?.equal())
}
