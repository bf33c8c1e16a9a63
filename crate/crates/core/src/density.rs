//! Counting `W`, `Ŵ` and `W̃` inside `[1, N]²`.
//!
//! Direct enumeration is the ground truth. The divisor-sum formula for `Ŵ`
//! is exact (not asymptotic) and is kept as an independent validator.

use std::f64::consts::PI;
use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{factorize, in_gamma, totient_table};

/// `5 / (3π²)`, the density of `W`.
pub const LIMIT_W: f64 = 5.0 / (3.0 * PI * PI);
/// `4 / (3π²)`, the density of `Ŵ`.
pub const LIMIT_W_HAT: f64 = 4.0 / (3.0 * PI * PI);
/// `10 / (3π²)`, the density of `W̃`.
pub const LIMIT_W_TILDE: f64 = 10.0 / (3.0 * PI * PI);
/// `3 / π²`, the limit of `Σ_{n≤N} φ(n) / N²`.
pub const LIMIT_TOTIENT_SUM: f64 = 3.0 / (PI * PI);
/// `8 / π²`, the mean of `φ(2n−1)/(2n−1)`.
pub const LIMIT_ODD_TOTIENT_RATIO: f64 = 8.0 / (PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub n: u64,
    pub count_w: u64,
    pub count_w_hat: u64,
    pub count_w_tilde: u64,
    /// `Σ_{n ≤ N} φ(n)`.
    pub totient_sum: u64,
}

impl DensityReport {
    fn area(&self) -> f64 {
        (self.n as f64) * (self.n as f64)
    }

    pub fn ratio_w(&self) -> f64 {
        self.count_w as f64 / self.area()
    }

    pub fn ratio_w_hat(&self) -> f64 {
        self.count_w_hat as f64 / self.area()
    }

    pub fn ratio_w_tilde(&self) -> f64 {
        self.count_w_tilde as f64 / self.area()
    }

    pub fn ratio_totient(&self) -> f64 {
        self.totient_sum as f64 / self.area()
    }

    pub fn row(&self) -> DensityRow {
        DensityRow {
            n: self.n,
            count_w: self.count_w,
            count_w_hat: self.count_w_hat,
            count_w_tilde: self.count_w_tilde,
            totient_sum: self.totient_sum,
            ratio_w: self.ratio_w(),
            ratio_w_hat: self.ratio_w_hat(),
            ratio_w_tilde: self.ratio_w_tilde(),
            delta_w: self.ratio_w() - LIMIT_W,
            delta_w_hat: self.ratio_w_hat() - LIMIT_W_HAT,
            delta_w_tilde: self.ratio_w_tilde() - LIMIT_W_TILDE,
            delta_totient: self.ratio_totient() - LIMIT_TOTIENT_SUM,
        }
    }
}

/// Flat record used for CSV and JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityRow {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "count_W")]
    pub count_w: u64,
    #[serde(rename = "count_W_hat")]
    pub count_w_hat: u64,
    #[serde(rename = "count_W_tilde")]
    pub count_w_tilde: u64,
    pub totient_sum: u64,
    #[serde(rename = "ratio_W")]
    pub ratio_w: f64,
    #[serde(rename = "ratio_W_hat")]
    pub ratio_w_hat: f64,
    #[serde(rename = "ratio_W_tilde")]
    pub ratio_w_tilde: f64,
    #[serde(rename = "delta_W")]
    pub delta_w: f64,
    #[serde(rename = "delta_W_hat")]
    pub delta_w_hat: f64,
    #[serde(rename = "delta_W_tilde")]
    pub delta_w_tilde: f64,
    pub delta_totient: f64,
}

pub fn write_csv<W: Write>(reports: &[DensityReport], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r.row())?;
    }
    w.flush()
}

#[derive(Debug, Default, Clone, Copy)]
struct RowCounts {
    w: u64,
    w_hat: u64,
}

fn count_row(q: u64) -> RowCounts {
    let mut counts = RowCounts::default();
    let q_gamma = in_gamma(q);
    let q_even = q.is_multiple_of(2);
    for p in 1..q {
        // two evens are never coprime; this also drops every p, q ∈ Γ pair
        if q_even && p % 2 == 0 {
            continue;
        }
        if p.gcd(&q) != 1 {
            continue;
        }
        if q_gamma || in_gamma(p) {
            counts.w_hat += 1;
        } else {
            counts.w += 1;
        }
    }
    counts
}

/// Exact counts by iterating every coprime pair in `[1, N]²`. Rows are
/// processed on the current rayon pool; the result does not depend on how
/// they are split.
pub fn enumerate_counts(n: u64) -> Result<DensityReport> {
    if n == 0 {
        return Err(Error::NotPositive("N"));
    }
    let len = usize::try_from(n).map_err(|_| Error::Overflow("N"))?;
    let total = (2..=n)
        .into_par_iter()
        .map(count_row)
        .reduce(RowCounts::default, |a, b| RowCounts {
            w: a.w + b.w,
            w_hat: a.w_hat + b.w_hat,
        });
    let totient_sum = totient_table(len).iter().sum();
    Ok(DensityReport {
        n,
        count_w: total.w,
        count_w_hat: total.w_hat,
        // (p, q) and (q, p) both, plus the diagonal pair (1, 1)
        count_w_tilde: 2 * total.w + 1,
        totient_sum,
    })
}

/// `#{1 ≤ k ≤ N : gcd(k, m) = 1} = Σ_{d | m} μ(d)·⌊N/d⌋`.
pub fn coprime_count(n: u64, m: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::NotPositive("N"));
    }
    let primes: Vec<u64> = factorize(m)?.primes().collect();
    let mut total = 0i128;
    for mask in 0u32..(1 << primes.len()) {
        let mut d = 1u64;
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d = d.saturating_mul(p);
            }
        }
        let term = i128::from(n / d);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total as u64)
}

/// `k₁ = ⌊(N+2)/4⌋` and, for each `k ≤ k₁`, the largest `ℓ` with
/// `(2k−1)·2^(2ℓ−1) ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingSchedule {
    pub n: u64,
    pub k1: u64,
    /// `ell_k[k − 1]` for `k = 1..=k1`.
    pub ell_k: Vec<u32>,
}

impl CountingSchedule {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotPositive("N"));
        }
        let k1 = (n + 2) / 4;
        let ell_k = (1..=k1)
            .map(|k| {
                let odd = 2 * k - 1;
                let mut ell = 0;
                let mut value = odd * 2;
                while value <= n {
                    ell += 1;
                    match value.checked_mul(4) {
                        Some(v) => value = v,
                        None => break,
                    }
                }
                ell
            })
            .collect();
        Ok(Self { n, k1, ell_k })
    }

    /// All `(2k−1)·2^(2ℓ−1) ≤ N`, i.e. `Γ ∩ [1, N]`, in schedule order.
    pub fn gamma_elements(&self) -> impl Iterator<Item = u64> + '_ {
        self.ell_k.iter().enumerate().flat_map(|(i, &ell)| {
            let odd = 2 * i as u64 + 1;
            (1..=ell).map(move |l| odd << (2 * l - 1))
        })
    }
}

/// `#(Ŵ ∩ [1,N]²) = Σ_{k ≤ k₁} Σ_{ℓ ≤ ℓ_k} φ(N, (2k−1)·2^(2ℓ−1))`.
pub fn count_w_hat_by_formula(n: u64) -> Result<u64> {
    let schedule = CountingSchedule::new(n)?;
    schedule.gamma_elements().map(|m| coprime_count(n, m)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OddTotientAverage {
    pub n: u64,
    /// `(1/N)·Σ_{k=1}^{N} φ(2k−1)/(2k−1)` in lowest terms.
    #[serde(serialize_with = "serialize_ratio")]
    pub exact: BigRational,
    pub value: f64,
}

fn serialize_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn tree_sum(terms: &[BigRational]) -> BigRational {
    match terms {
        [] => BigRational::from_integer(BigInt::from(0)),
        [x] => x.clone(),
        _ => {
            let (a, b) = terms.split_at(terms.len() / 2);
            tree_sum(a) + tree_sum(b)
        }
    }
}

pub fn odd_totient_ratio_sum(n: u64) -> Result<OddTotientAverage> {
    if n == 0 {
        return Err(Error::NotPositive("N"));
    }
    let top = usize::try_from(2 * n - 1).map_err(|_| Error::Overflow("N"))?;
    let phi = totient_table(top);
    let terms: Vec<BigRational> = (1..=n as usize)
        .map(|k| {
            let m = 2 * k - 1;
            BigRational::new(BigInt::from(phi[m]), BigInt::from(m))
        })
        .collect();
    let exact = tree_sum(&terms) / BigInt::from(n);
    let value = exact.to_f64().ok_or(Error::Overflow("odd totient average"))?;
    Ok(OddTotientAverage { n, exact, value })
}
