mod common;

use common::*;
use num_rational::BigRational;
use proptest::prelude::*;
use qgverify::fix::{generator_family, GeneratorFamily, SubgroupDescriptor};
use qgverify::linalg::{
    bareiss_rank, gram, intersection_dimension, projection_matrix, rank_int, rank_q, span_contains, IntMatrix, QMatrix,
    RankMethod, RankOptions, DEFAULT_DENSE_LIMIT,
};
use qgverify::partition::Partition;
use qgverify::tensor::{diagram_tensor, tensor_of_partition, RangeSpec};
use qgverify::SparseTensor;

fn fam(members: Vec<SparseTensor>) -> GeneratorFamily {
    GeneratorFamily::from_members("t", members).unwrap()
}

fn t(s: &str, n: usize) -> SparseTensor {
    diagram_tensor(&s.parse::<Partition>().unwrap(), n).unwrap()
}

fn e(n: usize, idx: &[usize]) -> SparseTensor {
    idx.iter().fold(SparseTensor::scalar(n, q(1)), |acc, &i| acc.tensor(&SparseTensor::basis(n, i).unwrap()).unwrap())
}

fn opts() -> RankOptions {
    RankOptions::default()
}

#[test]
fn gram_examples() {
    let g = gram(&fam(vec![t("12|34", 2), t("14|23", 2)])).unwrap().to_qmatrix();
    assert_eq!(g, QMatrix::from_i64_rows(&[&[4, 2], &[2, 4]]));
    let g = gram(&fam(vec![t("12", 3)])).unwrap().to_qmatrix();
    assert_eq!(g, QMatrix::from_i64_rows(&[&[3]]));
    let g = gram(&fam(vec![t("12|34", 2), t("13|24", 2), t("14|23", 2)])).unwrap().to_qmatrix();
    assert_eq!(g, QMatrix::from_i64_rows(&[&[4, 2, 2], &[2, 4, 2], &[2, 2, 4]]));
    assert!(g.is_symmetric());
    let empty = GeneratorFamily::empty("none", 2, 2);
    assert_eq!(gram(&empty).unwrap_err().kind(), "parameter");
}

#[test]
fn rank_examples() {
    for method in [RankMethod::Modular, RankMethod::FractionFree] {
        let o = RankOptions { method, ..opts() };
        assert_eq!(rank_q(&QMatrix::from_i64_rows(&[&[4, 2], &[2, 4]]), &o).rank, 2);
        assert_eq!(rank_q(&QMatrix::zeros(3, 3), &o).rank, 0);
    }
    let nc2 = generator_family(&SubgroupDescriptor::free_orth(2).unwrap(), 6).unwrap();
    assert_eq!(gram(&nc2).unwrap().rank(&opts()).rank, 5);
    assert_eq!(dense_rank_of(nc2.members()), 5);
}

#[test]
fn gram_rank_matches_direct_elimination() {
    for n in 1..=3 {
        for k in 0..=5 {
            for d in ["on+", "on", "sn"] {
                let desc: SubgroupDescriptor = format!("{d}:N={n}").parse().unwrap();
                let f = generator_family(&desc, k).unwrap();
                if f.is_empty() {
                    continue;
                }
                let direct = dense_rank_of(f.members());
                assert_eq!(gram(&f).unwrap().rank(&opts()).rank, direct, "{desc} k={k}");
            }
        }
    }
    let stab = generator_family(&"stab:N=3,xi=3/5,4/5,0".parse().unwrap(), 4).unwrap();
    assert_eq!(gram(&stab).unwrap().rank(&opts()).rank, dense_rank_of(stab.members()));
}

#[test]
fn intersection_and_membership_examples() {
    let a = fam(vec![t("12", 3)]);
    assert_eq!(intersection_dimension(&a, &a, &opts()).unwrap(), 1);
    let a = fam(vec![e(2, &[1, 1])]);
    let b = fam(vec![e(2, &[2, 2])]);
    assert_eq!(intersection_dimension(&a, &b, &opts()).unwrap(), 0);
    assert_eq!(intersection_dimension(&a, &fam(vec![e(3, &[1, 1])]), &opts()).unwrap_err().kind(), "parameter");

    let brauer = generator_family(&"on:N=4".parse().unwrap(), 4).unwrap();
    let stab = generator_family(&"stab:N=4,xi=e1".parse().unwrap(), 4).unwrap();
    assert_eq!(intersection_dimension(&brauer, &stab, &opts()).unwrap(), catalan(2) as usize);

    assert!(span_contains(&fam(vec![t("12", 3)]), &t("12", 3).scale(&q(3)), &opts()).unwrap());
    assert!(!span_contains(&fam(vec![t("12", 2)]), &e(2, &[1, 1]), &opts()).unwrap());
    let colored: Vec<SparseTensor> = ["12:1", "12:2"]
        .iter()
        .map(|s| tensor_of_partition(&s.parse().unwrap(), 4, &[], &RangeSpec::block_split(2, 2)).unwrap())
        .collect();
    assert!(span_contains(&fam(colored), &t("12", 4), &opts()).unwrap());
}

fn assert_projection(p: &QMatrix, members: &[SparseTensor]) {
    assert!(p.is_symmetric());
    assert_eq!(&p.mul(p).unwrap(), p);
    for v in members {
        assert_eq!(p.apply(&v.to_dense()).unwrap(), v.to_dense());
    }
}

#[test]
fn projections_are_exact() {
    let half = BigRational::new(1.into(), 2.into());
    let line = e(2, &[1]).add_scaled(&e(2, &[2]), &q(1)).unwrap();
    let p = projection_matrix(&fam(vec![line.clone()]), DEFAULT_DENSE_LIMIT).unwrap();
    assert!((0..2).all(|i| (0..2).all(|j| *p.get(i, j) == half)));
    assert_projection(&p, &[line]);

    for desc in ["on:N=2", "stab:N=3,xi=e1", "fp:N=4,a=2,b=2", "sn:N=3"] {
        let f = generator_family(&desc.parse().unwrap(), 4).unwrap();
        let p = projection_matrix(&f, DEFAULT_DENSE_LIMIT).unwrap();
        assert_projection(&p, f.members());
        assert_eq!(p.trace(), q(dense_rank_of(f.members()) as i64), "{desc}");
    }
    let big = generator_family(&"on+:N=3".parse().unwrap(), 8).unwrap();
    assert_eq!(projection_matrix(&big, DEFAULT_DENSE_LIMIT).unwrap_err().kind(), "resource");
}

#[test]
fn modular_and_bareiss_agree_on_deficient_matrices() {
    // rank-r products A·B with A: n×r, B: r×n
    for (n, r) in [(10, 3), (30, 17), (64, 52)] {
        let a: Vec<i64> = (0..n * r).map(|i| ((i * 37 + 11) % 19) as i64 - 9).collect();
        let b: Vec<i64> = (0..r * n).map(|i| ((i * 53 + 5) % 23) as i64 - 11).collect();
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = (0..r).map(|l| a[i * r + l] * b[l * n + j]).sum();
            }
        }
        let m = IntMatrix::from_i64(n, n, data);
        let modular = rank_int(&m, &opts());
        assert!(modular.certified);
        assert_eq!(modular.rank, bareiss_rank(&m));
        let rows: Vec<Vec<BigRational>> = m.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
        assert_eq!(modular.rank, dense_rank(&rows));
    }
}

fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-4i64..=4, r * c)))
}

proptest! {
    #[test]
    fn rank_agrees_with_textbook_elimination((r, c, data) in arb_matrix()) {
        let rows: Vec<Vec<BigRational>> = data.chunks(c).map(|row| row.iter().map(|&x| q(x)).collect()).collect();
        let m = IntMatrix::from_i64(r, c, data.clone());
        let expected = dense_rank(&rows);
        prop_assert_eq!(rank_int(&m, &opts()).rank, expected);
        prop_assert_eq!(rank_int(&m, &RankOptions { method: RankMethod::FractionFree, ..opts() }).rank, expected);
    }

    #[test]
    fn family_rank_ignores_order_and_scaling(perm_seed in any::<u64>(), scales in proptest::collection::vec(1i64..=5, 9)) {
        let f = generator_family(&"stab:N=3,xi=e1".parse().unwrap(), 4).unwrap();
        let mut members: Vec<SparseTensor> = f.members().iter().zip(&scales)
            .map(|(v, &s)| v.scale(&BigRational::new(s.into(), 7.into()))).collect();
        let n = members.len();
        for i in (1..n).rev() {
            members.swap(i, (perm_seed as usize).wrapping_add(i * 31) % (i + 1));
        }
        let g = gram(&fam(members)).unwrap();
        prop_assert_eq!(g.rank(&opts()).rank, 9);
    }

    #[test]
    fn intersection_is_symmetric_and_bounded(k in 0usize..=4, pick in 0usize..4) {
        let names = ["on:N=3", "stab:N=3,xi=e1", "sn:N=3", "coordstab:N=3,B=1-2"];
        let a = generator_family(&names[pick].parse().unwrap(), k).unwrap();
        let b = generator_family(&names[(pick + 1) % 4].parse().unwrap(), k).unwrap();
        let ab = intersection_dimension(&a, &b, &opts()).unwrap();
        prop_assert_eq!(ab, intersection_dimension(&b, &a, &opts()).unwrap());
        prop_assert!(ab <= dense_rank_of(a.members()).min(dense_rank_of(b.members())));
    }
}

#[test]
fn triplet_dump_round_trips() {
    let g = gram(&generator_family(&"stab:N=3,xi=3/5,4/5,0".parse().unwrap(), 3).unwrap()).unwrap().to_qmatrix();
    let mut buf = Vec::new();
    g.write_triplets(&mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with(&format!("qgv-matrix v1 {} {} ", g.rows(), g.cols())));
    assert_eq!(QMatrix::read_triplets(&buf[..]).unwrap(), g);
}

#[test]
fn large_integer_grams_stay_exact() {
    // N^k beyond i64 forces the big-integer path
    let f = generator_family(&SubgroupDescriptor::free_orth(200).unwrap(), 0).unwrap();
    assert_eq!(gram(&f).unwrap().to_qmatrix(), QMatrix::from_i64_rows(&[&[1]]));
    let mut huge = GeneratorFamily::empty("huge", 2, 1);
    let c = BigRational::from_integer(num_bigint::BigInt::from(1u64 << 40));
    huge.push("a".into(), SparseTensor::vector(&[c.clone(), q(1)]), None).unwrap();
    huge.push("b".into(), SparseTensor::vector(&[q(1), c.clone()]), None).unwrap();
    let g = gram(&huge).unwrap().to_qmatrix();
    assert_eq!(*g.get(0, 0), &c * &c + q(1));
    assert_eq!(*g.get(0, 1), &c + &c);
    assert_eq!(gram(&huge).unwrap().rank(&opts()).rank, 2);
}
