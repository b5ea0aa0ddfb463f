mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use qgverify::partition::{colorings, count, enumerate, join_block_count, FamilyKind, Partition};

fn as_set(v: Vec<Partition>) -> BTreeSet<Partition> {
    v.into_iter().collect()
}

#[test]
fn families_match_brute_force_filters() {
    for k in 0..=7 {
        let nc2 = brute_family(k, |b| is_pairing(b) && brute_noncrossing(b));
        let p2 = brute_family(k, is_pairing);
        let nc21 = brute_family(k, |b| b.iter().all(|x| x.len() <= 2) && brute_noncrossing(b));
        let set = brute_family(k, |_| true);
        let eo_all = brute_family(k, even_odd);
        let eo_nc = brute_family(k, |b| even_odd(b) && brute_noncrossing(b));
        assert_eq!(as_set(enumerate(FamilyKind::NC2, k).unwrap()), nc2, "NC2 k={k}");
        assert_eq!(as_set(enumerate(FamilyKind::P2, k).unwrap()), p2, "P2 k={k}");
        assert_eq!(as_set(enumerate(FamilyKind::NC21, k).unwrap()), nc21, "NC21 k={k}");
        assert_eq!(as_set(enumerate(FamilyKind::SetPartitions, k).unwrap()), set, "set k={k}");
        assert_eq!(as_set(enumerate(FamilyKind::EvenOddAll, k).unwrap()), eo_all, "EO k={k}");
        assert_eq!(as_set(enumerate(FamilyKind::EvenOddNC, k).unwrap()), eo_nc, "EO NC k={k}");
        for s in (k % 2..=k).step_by(2) {
            let slice = brute_family(k, |b| {
                b.iter().all(|x| x.len() <= 2) && brute_noncrossing(b) && b.iter().filter(|x| x.len() == 1).count() == s
            });
            assert_eq!(as_set(enumerate(FamilyKind::NC21S(s), k).unwrap()), slice, "NC21_S({s}) k={k}");
        }
    }
}

#[test]
fn cardinalities_match_recursions() {
    for m in 0..=8 {
        assert_eq!(enumerate(FamilyKind::NC2, 2 * m).unwrap().len() as u128, catalan(m));
    }
    for m in 0..=6 {
        assert_eq!(enumerate(FamilyKind::P2, 2 * m).unwrap().len() as u128, double_factorial(m));
        assert_eq!(enumerate(FamilyKind::EvenOddAll, 2 * m).unwrap().len() as u128, factorial(m));
    }
    for k in 0..=12 {
        assert_eq!(enumerate(FamilyKind::NC21, k).unwrap().len() as u128, motzkin(k));
        assert_eq!(count(FamilyKind::NC21, k).unwrap(), motzkin(k));
    }
    for k in 0..=9 {
        assert_eq!(enumerate(FamilyKind::SetPartitions, k).unwrap().len() as u128, bell(k));
    }
}

#[test]
fn small_examples() {
    let nc2_4: Vec<String> = enumerate(FamilyKind::NC2, 4).unwrap().iter().map(Partition::encoding).collect();
    assert_eq!(nc2_4, ["12|34", "14|23"]);
    assert_eq!(enumerate(FamilyKind::NC2, 0).unwrap(), vec![Partition::new(0, vec![]).unwrap()]);
    assert!(enumerate(FamilyKind::NC2, 3).unwrap().is_empty());
    assert_eq!(enumerate(FamilyKind::P2, 6).unwrap().len(), 15);
    assert_eq!(enumerate(FamilyKind::NC21, 4).unwrap().len(), 9);
    assert_eq!(enumerate(FamilyKind::SetPartitions, 4).unwrap().len(), 15);
    assert_eq!(enumerate(FamilyKind::EvenOddAll, 6).unwrap().len(), 6);

    let p = |s: &str| s.parse::<Partition>().unwrap();
    assert!(p("12|34").is_noncrossing());
    assert!(!p("13|24").is_noncrossing());
    assert!(p("13|2").is_noncrossing());

    assert_eq!(join_block_count(&p("12"), &p("12")).unwrap(), 1);
    assert_eq!(join_block_count(&p("12|34"), &p("14|23")).unwrap(), 1);
    assert_eq!(join_block_count(&p("14|23"), &p("14|23")).unwrap(), 2);
    assert_eq!(join_block_count(&p("12"), &p("12|34")).unwrap_err().kind(), "parameter");

    assert_eq!(colorings(&p("12"), 2).unwrap().len(), 2);
    assert_eq!(colorings(&p("12|34"), 2).unwrap().len(), 4);
    assert_eq!(colorings(&p("12|34|56"), 2).unwrap().len(), 8);
    assert_eq!(colorings(&p("12"), 0).unwrap_err().kind(), "parameter");
}

#[test]
fn contradictory_parameters_are_errors() {
    assert_eq!(enumerate(FamilyKind::NC21S(5), 4).unwrap_err().kind(), "parameter");
    assert_eq!(enumerate(FamilyKind::NC21S(1), 4).unwrap_err().kind(), "parameter");
    assert_eq!(enumerate(FamilyKind::ColoredNC2(0), 4).unwrap_err().kind(), "parameter");
}

#[test]
fn slices_and_even_odd_agree_with_their_parents() {
    for k in 0..=10 {
        let total: usize = (k % 2..=k).step_by(2).map(|s| enumerate(FamilyKind::NC21S(s), k).unwrap().len()).sum();
        assert_eq!(total, enumerate(FamilyKind::NC21, k).unwrap().len());
        if k % 2 == 0 {
            assert_eq!(enumerate(FamilyKind::NC21S(0), k).unwrap(), enumerate(FamilyKind::NC2, k).unwrap());
            assert_eq!(enumerate(FamilyKind::EvenOddNC, k).unwrap(), enumerate(FamilyKind::NC2, k).unwrap());
        }
    }
}

#[test]
fn enumeration_is_sorted_and_repeatable() {
    for kind in [FamilyKind::NC21, FamilyKind::P2, FamilyKind::SetPartitions, FamilyKind::ColoredNC2(2)] {
        let a = enumerate(kind, 6).unwrap();
        assert_eq!(a, enumerate(kind, 6).unwrap());
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|p| kind.admits(p)));
    }
}

fn arb_set_partition(max_k: usize) -> impl Strategy<Value = Partition> {
    (0..=max_k).prop_flat_map(|k| proptest::collection::vec(0..k.max(1), k).prop_map(|l| Partition::from_labels(&l)))
}

proptest! {
    #[test]
    fn encoding_round_trips(p in arb_set_partition(12)) {
        let back: Partition = p.encoding().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn join_is_symmetric_and_bounded(labels in proptest::collection::vec((0usize..6, 0usize..6), 0..8)) {
        let a: Vec<usize> = labels.iter().map(|x| x.0).collect();
        let b: Vec<usize> = labels.iter().map(|x| x.1).collect();
        let (p, q) = (Partition::from_labels(&a), Partition::from_labels(&b));
        let j = join_block_count(&p, &q).unwrap();
        prop_assert_eq!(j, join_block_count(&q, &p).unwrap());
        prop_assert!(j <= p.num_blocks().min(q.num_blocks()));
        prop_assert_eq!(join_block_count(&p, &p).unwrap(), p.num_blocks());
    }

    #[test]
    fn noncrossing_matches_quadruple_scan(p in arb_set_partition(8)) {
        let only_pairs_matter: Vec<Vec<usize>> = p.blocks().to_vec();
        prop_assert_eq!(p.is_noncrossing(), brute_noncrossing(&only_pairs_matter));
    }
}
