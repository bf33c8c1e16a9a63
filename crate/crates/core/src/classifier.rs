//! Exact-overlap classification of `C_t` for rational `t = p/q`.
//!
//! `C_t` has an exact overlap iff, in lowest terms, neither `p` nor `q` lies
//! in `Γ`. For `t > 1` the set `C_t` is a scaled copy of `C_{1/t}`, so the
//! answer for `p/q` and `q/p` coincides; `t = 1` has an exact overlap
//! because two of its four maps are identical.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{gamma_membership, in_gamma, GammaWitness};

/// `t = p/q` with `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedRational {
    p: u64,
    q: u64,
}

impl ReducedRational {
    /// Reduces `a/b` to lowest terms.
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::NotPositive("numerator"));
        }
        if b == 0 {
            return Err(Error::NotPositive("denominator"));
        }
        let g = a.gcd(&b);
        Ok(Self { p: a / g, q: b / g })
    }

    /// Like [`ReducedRational::new`] but also requires `p < q`.
    pub fn proper(a: u64, b: u64) -> Result<Self> {
        let t = Self::new(a, b)?;
        if t.p >= t.q {
            return Err(Error::NotProperFraction { p: t.p, q: t.q });
        }
        Ok(t)
    }

    /// Accepts only pairs already in lowest terms with `p < q`.
    pub fn proper_reduced(p: u64, q: u64) -> Result<Self> {
        let t = Self::proper(p, q)?;
        if t.p != p {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(t)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn recip(&self) -> Self {
        Self { p: self.q, q: self.p }
    }

    pub fn regime(&self) -> Regime {
        match self.p.cmp(&self.q) {
            Ordering::Less => Regime::ProperFraction,
            Ordering::Equal => Regime::Unit,
            Ordering::Greater => Regime::Reciprocal,
        }
    }
}

impl fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    ProperFraction,
    Unit,
    Reciprocal,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::ProperFraction => "proper_fraction",
            Regime::Unit => "unit",
            Regime::Reciprocal => "reciprocal",
        })
    }
}

/// Result of [`classify`]. `p`, `q` echo the caller's input; the reduced
/// pair is what the decision is made on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapClassification {
    pub p: u64,
    pub q: u64,
    pub reduced_p: u64,
    pub reduced_q: u64,
    pub overlap: bool,
    pub gamma_p: Option<GammaWitness>,
    pub gamma_q: Option<GammaWitness>,
    pub regime: Regime,
}

impl OverlapClassification {
    pub fn t(&self) -> ReducedRational {
        ReducedRational {
            p: self.reduced_p,
            q: self.reduced_q,
        }
    }
}

/// Decides whether `C_{a/b}` has an exact overlap.
pub fn classify(a: u64, b: u64) -> Result<OverlapClassification> {
    let t = ReducedRational::new(a, b)?;
    let gamma_p = gamma_membership(t.p)?;
    let gamma_q = gamma_membership(t.q)?;
    // 1 ∉ Γ, so t = 1 falls out of the same rule.
    let overlap = gamma_p.is_none() && gamma_q.is_none();
    Ok(OverlapClassification {
        p: a,
        q: b,
        reduced_p: t.p,
        reduced_q: t.q,
        overlap,
        gamma_p,
        gamma_q,
        regime: t.regime(),
    })
}

/// The three coprime-pair index sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Coprime, `p < q`, exact overlap.
    W,
    /// Coprime, `p < q`, no exact overlap.
    WHat,
    /// Coprime, exact overlap, either order.
    WTilde,
}

pub fn membership_in_w(p: u64, q: u64, variant: Variant) -> Result<bool> {
    if p == 0 {
        return Err(Error::NotPositive("p"));
    }
    if q == 0 {
        return Err(Error::NotPositive("q"));
    }
    Ok(in_variant(p, q, variant))
}

#[inline]
pub(crate) fn in_variant(p: u64, q: u64, variant: Variant) -> bool {
    let clean = !in_gamma(p) && !in_gamma(q);
    match variant {
        Variant::W => p < q && clean && p.gcd(&q) == 1,
        Variant::WHat => p < q && !clean && p.gcd(&q) == 1,
        Variant::WTilde => clean && p.gcd(&q) == 1,
    }
}
