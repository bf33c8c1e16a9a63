//! Independent decision procedures for exact overlaps, and a sweep that
//! cross-checks them against the classifier.

pub mod polynomial;
pub mod rank;
pub mod witness;

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{classify, ReducedRational};
use crate::error::Result;

pub use polynomial::{
    candidate_levels, check_polynomial_divisibility, no_overlap_by_divisibility, reduce_negacyclic,
};
pub use rank::{
    build_rank_instance, compare_ranks, integer_rank, modular_rank, rank_equality_holds, CoefficientMatrix,
    RankComparison, RANK_PRIME,
};
pub use witness::{
    exhaustive_depth, find_overlap_witness, search_overlap, DigitSet, OverlapWitness, WitnessSearch,
};

/// Each procedure's answer to "does `C_{p/q}` have an exact overlap?".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdicts {
    pub p: u64,
    pub q: u64,
    pub classifier: bool,
    pub witness: bool,
    pub divisibility: bool,
    /// `None` when the rank oracle was not run.
    pub rank: Option<bool>,
}

impl OracleVerdicts {
    pub fn agree(&self) -> bool {
        let c = self.classifier;
        self.witness == c && self.divisibility == c && self.rank.is_none_or(|r| r == c)
    }
}

pub fn cross_check(t: ReducedRational, with_rank: bool) -> Result<OracleVerdicts> {
    let t = ReducedRational::proper_reduced(t.p(), t.q())?;
    let (p, q) = (t.p(), t.q());
    let classifier = classify(p, q)?.overlap;
    let witness = search_overlap(t, exhaustive_depth(t))?.witness.is_some();
    let divisibility = no_overlap_by_divisibility(t)?.is_none();
    let rank = if with_rank {
        let mut any_equal = false;
        for ell in candidate_levels(t)? {
            if rank_equality_holds(p, q, ell)? {
                any_equal = true;
                break;
            }
        }
        Some(!any_equal)
    } else {
        None
    };
    Ok(OracleVerdicts {
        p,
        q,
        classifier,
        witness,
        divisibility,
        rank,
    })
}

/// Coprime `p < q` with `p + q ≤ max_sum`, ordered by `(p + q, p)`.
pub fn coprime_pairs_by_sum(max_sum: u64) -> Vec<ReducedRational> {
    (3..=max_sum)
        .flat_map(|s| (1..=(s - 1) / 2).map(move |p| (p, s - p)))
        .filter(|&(p, q)| p < q && num_integer::gcd(p, q) == 1)
        .map(|(p, q)| ReducedRational::proper_reduced(p, q).expect("coprime and ordered"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_sum: u64,
    pub pairs_checked: usize,
    pub overlaps: usize,
    pub disagreements: Vec<OracleVerdicts>,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs [`cross_check`] on every pair from [`coprime_pairs_by_sum`] using the
/// current rayon pool. Disagreements are reported in canonical pair order.
pub fn verify_sweep(max_sum: u64, with_rank: bool) -> Result<SweepReport> {
    let pairs = coprime_pairs_by_sum(max_sum);
    let verdicts: Vec<OracleVerdicts> = pairs
        .par_iter()
        .map(|&t| cross_check(t, with_rank))
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        max_sum,
        pairs_checked: verdicts.len(),
        overlaps: verdicts.iter().filter(|v| v.classifier).count(),
        disagreements: verdicts.into_iter().filter(|v| !v.agree()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_order_is_canonical() {
        let pairs: Vec<(u64, u64)> = coprime_pairs_by_sum(7).iter().map(|t| (t.p(), t.q())).collect();
        assert_eq!(
            pairs,
            vec![(1, 2), (1, 3), (1, 4), (2, 3), (1, 5), (1, 6), (2, 5), (3, 4)]
        );
        assert!(coprime_pairs_by_sum(2).is_empty());
    }

    #[test]
    fn small_sweep_agrees_with_rank() {
        let report = verify_sweep(20, true).unwrap();
        assert!(report.all_agree(), "{:?}", report.disagreements);
        assert_eq!(report.pairs_checked, coprime_pairs_by_sum(20).len());
    }

    #[test]
    fn verdict_agreement_logic() {
        let mut v = OracleVerdicts {
            p: 1,
            q: 3,
            classifier: true,
            witness: true,
            divisibility: true,
            rank: None,
        };
        assert!(v.agree());
        v.rank = Some(false);
        assert!(!v.agree());
    }
}
