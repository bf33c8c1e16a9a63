//! Divisibility of `1 + x^{3p} + x^{3q} + x^{3p+3q}` by `1 + x^τ`.
//!
//! Modulo `x^τ + 1` we have `x^e ≡ (−1)^⌊e/τ⌋ · x^(e mod τ)`, so the
//! remainder of a sparse polynomial is found by folding each exponent.

use std::collections::BTreeMap;

use crate::classifier::ReducedRational;
use crate::error::{Error, Result};
use crate::numtheory::tau;

/// Remainder of `Σ c·x^e` modulo `x^τ + 1`, as its nonzero coefficients.
pub fn reduce_negacyclic(terms: &[(u64, i64)], tau: u64) -> Result<BTreeMap<u64, i64>> {
    if tau == 0 {
        return Err(Error::NotPositive("tau"));
    }
    let mut rem = BTreeMap::new();
    for &(e, c) in terms {
        let signed = if (e / tau).is_multiple_of(2) { c } else { -c };
        let slot = rem.entry(e % tau).or_insert(0i64);
        *slot = slot
            .checked_add(signed)
            .ok_or(Error::Overflow("negacyclic fold"))?;
    }
    rem.retain(|_, c| *c != 0);
    Ok(rem)
}

/// Exponents of the dividend `(1 + x^{3p})(1 + x^{3q})`.
pub(crate) fn dividend_exponents(t: ReducedRational) -> Result<[u64; 4]> {
    let overflow = || Error::Overflow("dividend degree");
    let a = t.p().checked_mul(3).ok_or_else(overflow)?;
    let b = t.q().checked_mul(3).ok_or_else(overflow)?;
    Ok([0, a, b, a.checked_add(b).ok_or_else(overflow)?])
}

/// All `ℓ` with `τ_ℓ ≤ 3p + 3q`.
pub fn candidate_levels(t: ReducedRational) -> Result<Vec<u32>> {
    let degree = dividend_exponents(t)?[3];
    Ok((1..=32)
        .take_while(|&l| tau(l).is_ok_and(|x| x <= degree))
        .collect())
}

/// Whether `1 + x^{τ_ℓ}` divides `1 + x^{3p} + x^{3q} + x^{3p+3q}`.
pub fn check_polynomial_divisibility(p: u64, q: u64, ell: u32) -> Result<bool> {
    let t = ReducedRational::proper_reduced(p, q)?;
    let exps = dividend_exponents(t)?;
    let tau = tau(ell)?;
    if tau > exps[3] {
        return Err(Error::DivisorTooLarge { tau, degree: exps[3] });
    }
    let terms = exps.map(|e| (e, 1));
    Ok(reduce_negacyclic(&terms, tau)?.is_empty())
}

/// Smallest `ℓ` for which the divisibility holds; `C_{p/q}` then has no exact overlap.
pub fn no_overlap_by_divisibility(t: ReducedRational) -> Result<Option<u32>> {
    let t = ReducedRational::proper_reduced(t.p(), t.q())?;
    for ell in candidate_levels(t)? {
        if check_polynomial_divisibility(t.p(), t.q(), ell)? {
            return Ok(Some(ell));
        }
    }
    Ok(None)
}
