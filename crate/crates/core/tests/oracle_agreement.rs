use overlap_lab::classify;
use overlap_lab::numtheory::in_gamma_level;
use overlap_lab::oracles::{
    build_rank_instance, candidate_levels, compare_ranks, coprime_pairs_by_sum, cross_check, integer_rank,
    modular_rank, no_overlap_by_divisibility, verify_sweep, RANK_PRIME,
};

#[test]
fn four_oracles_agree_up_to_sum_60() {
    let report = verify_sweep(60, true).unwrap();
    assert_eq!(report.pairs_checked, 550);
    assert_eq!(report.overlaps, 305);
    assert!(report.all_agree(), "{:?}", report.disagreements);
}

#[test]
fn rank_condition_tracks_gamma_levels() {
    for t in coprime_pairs_by_sum(40) {
        for ell in candidate_levels(t).unwrap() {
            let cmp = compare_ranks(t.p(), t.q(), ell).unwrap();
            let member = in_gamma_level(t.p(), ell).unwrap() || in_gamma_level(t.q(), ell).unwrap();
            assert_eq!(cmp.equal(), member, "{t} at level {ell}: {cmp:?}");
            // the augmented rank can only grow by one
            assert!(cmp.rank_augmented == cmp.rank_a || cmp.rank_augmented == cmp.rank_a + 1);
        }
    }
}

#[test]
fn modular_rank_matches_integer_rank() {
    for t in coprime_pairs_by_sum(24) {
        for ell in candidate_levels(t).unwrap() {
            let m = build_rank_instance(t.p(), t.q(), ell).unwrap();
            for rows in [m.plain_rows(), m.augmented_rows()] {
                assert_eq!(
                    integer_rank(&rows),
                    modular_rank(&rows, RANK_PRIME),
                    "{t} level {ell}"
                );
            }
        }
    }
}

#[test]
fn divisibility_certificate_explains_every_non_overlap() {
    for t in coprime_pairs_by_sum(80) {
        let overlap = classify(t.p(), t.q()).unwrap().overlap;
        let certificate = no_overlap_by_divisibility(t).unwrap();
        assert_eq!(certificate.is_none(), overlap, "{t}");
        let v = cross_check(t, false).unwrap();
        assert!(v.agree(), "{v:?}");
    }
}
