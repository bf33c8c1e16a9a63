//! Integer primitives: gcd, factorization, Euler's totient, Möbius, divisor
//! counts, 2-adic valuation and membership in
//! `Γ = {(2k − 1)·2^(2ℓ − 1) : k, ℓ ≥ 1}`.
//!
//! Everything here works on `u64` and reports overflow instead of wrapping.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

fn positive(n: u64, name: &'static str) -> Result<u64> {
    if n == 0 {
        Err(Error::NotPositive(name))
    } else {
        Ok(n)
    }
}

/// Greatest common divisor. `gcd(0, 0)` is rejected.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::GcdOfZeros);
    }
    Ok(a.gcd(&b))
}

/// Prime factorization `n = Π pᵢ^cᵢ` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, c)| c == 1)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, c)| {
            p.checked_pow(c)
                .and_then(|pc| acc.checked_mul(pc))
                .ok_or(Error::Overflow("factorization value"))
        })
    }
}

/// Deterministic trial division up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization> {
    let mut n = positive(n, "n")?;
    let mut factors = Vec::new();
    let mut push = |n: &mut u64, p: u64| {
        let mut c = 0;
        while n.is_multiple_of(p) {
            *n /= p;
            c += 1;
        }
        if c > 0 {
            factors.push((p, c));
        }
    };
    push(&mut n, 2);
    push(&mut n, 3);
    // 6k ± 1 wheel
    let mut p = 5u64;
    while p <= n / p {
        push(&mut n, p);
        push(&mut n, p + 2);
        p += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(Factorization { factors })
}

/// Euler's totient from the product formula `φ(n) = Π pᵢ^(cᵢ−1)(pᵢ − 1)`.
pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors.iter().map(|&(p, c)| p.pow(c - 1) * (p - 1)).product())
}

pub fn mobius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

pub fn divisor_count(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors.iter().map(|&(_, c)| u64::from(c) + 1).product())
}

pub fn two_adic_valuation(n: u64) -> Result<u32> {
    Ok(positive(n, "n")?.trailing_zeros())
}

/// `τ_ℓ = 2^(2ℓ − 1)`, the degree of the candidate divisor `1 + x^τ_ℓ`.
pub fn tau(ell: u32) -> Result<u64> {
    if ell == 0 {
        return Err(Error::NotPositive("ell"));
    }
    if ell > 32 {
        return Err(Error::Overflow("tau"));
    }
    Ok(1u64 << (2 * ell - 1))
}

/// The pair `(k, ℓ)` exhibiting `n = (2k − 1)·2^(2ℓ − 1) ∈ Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaWitness {
    pub k: u64,
    pub ell: u32,
}

impl GammaWitness {
    pub fn value(&self) -> Result<u64> {
        let odd = self
            .k
            .checked_mul(2)
            .map(|x| x - 1)
            .ok_or(Error::Overflow("gamma witness"))?;
        odd.checked_mul(tau(self.ell)?)
            .ok_or(Error::Overflow("gamma witness"))
    }
}

/// `Some((k, ℓ))` iff the 2-adic valuation of `n` is odd.
pub fn gamma_membership(n: u64) -> Result<Option<GammaWitness>> {
    let v = two_adic_valuation(n)?;
    if v % 2 == 0 {
        return Ok(None);
    }
    let odd = n >> v;
    Ok(Some(GammaWitness {
        k: odd / 2 + 1,
        ell: v.div_ceil(2),
    }))
}

/// Membership in `Γ_ℓ = {(2k − 1)·τ_ℓ : k ≥ 1}` for a fixed `ℓ`.
pub fn in_gamma_level(n: u64, ell: u32) -> Result<bool> {
    Ok(gamma_membership(n)?.is_some_and(|w| w.ell == ell))
}

/// Shorthand for `gamma_membership(n).is_some()` on a known-positive `n`.
#[inline]
pub(crate) fn in_gamma(n: u64) -> bool {
    n.trailing_zeros() % 2 == 1
}

/// `φ(0..=n)` by a linear sieve; index 0 holds 0.
pub fn totient_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    let mut primes = Vec::new();
    let mut composite = vec![false; n + 1];
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            phi[i] = i as u64 - 1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                phi[m] = phi[i] * p as u64;
                break;
            }
            phi[m] = phi[i] * (p as u64 - 1);
        }
    }
    phi
}
