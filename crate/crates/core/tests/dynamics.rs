use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use qgverify::dynamics::{alternating_projection_run, friedrichs_cos, friedrichs_cos_dense, run_dense, two_lines};
use qgverify::fix::{generator_family, GeneratorFamily, SubgroupDescriptor};
use qgverify::linalg::{RankOptions, DEFAULT_DENSE_LIMIT};

fn d(s: &str) -> SubgroupDescriptor {
    s.parse().unwrap()
}

/// Orthogonal projection onto the column span of the members, from an SVD of
/// the float member matrix.
fn float_projection(fam: &GeneratorFamily) -> DMatrix<f64> {
    let size = fam.dim().pow(fam.legs() as u32);
    let cols: Vec<f64> = fam.members().iter().flat_map(|v| v.to_dense().into_iter().map(|c| c.to_f64().unwrap())).collect();
    let m = DMatrix::from_column_slice(size, fam.len(), &cols);
    let svd = m.svd(true, false);
    let u = svd.u.unwrap();
    let top = svd.singular_values[0];
    let r = svd.singular_values.iter().filter(|&&s| s > 1e-9 * top).count();
    let ur = u.columns(0, r);
    &ur * ur.transpose()
}

#[test]
fn identical_families_converge_at_once() {
    let a = d("on:N=3");
    let rep = alternating_projection_run(&a, &a, 4, 50, 1e-12, DEFAULT_DENSE_LIMIT, &RankOptions::default()).unwrap();
    assert!(rep.run.converged);
    assert!(rep.run.iterations[0].distance < 1e-12);
    assert!(rep.run.friedrichs_cos < 1e-12);
    assert_eq!(rep.run.limit_rank, rep.exact_intersection_dimension);
}

#[test]
fn two_lines_follow_the_classical_rate() {
    for theta in [PI / 4.0, PI / 3.0, PI / 6.0, 0.3] {
        let (p1, p2, p) = two_lines(theta);
        let c = theta.cos();
        assert!((friedrichs_cos_dense(&p1, &p2, &p) - c).abs() < 1e-12);
        let run = run_dense(&p1, &p2, &p, 60, 1e-12).unwrap();
        assert!(((run.estimated_rate - c * c) / (c * c)).abs() < 0.05, "theta={theta} rate={}", run.estimated_rate);
        assert!(run.is_monotone(10.0 * f64::EPSILON));
        assert!(run.within_two_subspace_bound(1e-10));
        for it in &run.iterations {
            let exact = c.powi(2 * it.m as i32 - 1);
            assert!((it.distance - exact).abs() < 1e-12 || it.distance < 1e-12);
        }
    }
    let (p1, p2, p) = two_lines(PI / 2.0);
    assert!(friedrichs_cos_dense(&p1, &p2, &p) < 1e-15);
}

#[test]
fn orthogonal_and_stabilizer_at_degree_four() {
    let rep = alternating_projection_run(
        &d("on:N=4"),
        &d("stab:N=4,xi=e1"),
        4,
        400,
        1e-10,
        DEFAULT_DENSE_LIMIT,
        &RankOptions::default(),
    )
    .unwrap();
    assert_eq!(rep.exact_intersection_dimension, 2);
    assert!(rep.run.converged);
    assert_eq!(rep.run.limit_rank, 2);
    assert!((rep.run.limit_trace - 2.0).abs() < 1e-8);
    assert!(rep.run.is_monotone(10.0 * f64::EPSILON));
    assert!(rep.run.within_two_subspace_bound(1e-10));
    assert!((0.0..=1.0).contains(&rep.run.estimated_rate));

    // independent float projections give the same cosine
    let fa = generator_family(&d("on:N=4"), 4).unwrap();
    let fb = generator_family(&d("stab:N=4,xi=e1"), 4).unwrap();
    let pa = float_projection(&fa);
    let pb = float_projection(&fb);
    // the limit of (PaPb)^m, long enough to be the intersection projection
    let mut limit = &pa * &pb;
    for _ in 0..12 {
        limit = &limit * &limit;
    }
    assert!((limit.trace() - 2.0).abs() < 1e-8);
    let c = friedrichs_cos(&fa, &fb, DEFAULT_DENSE_LIMIT).unwrap();
    assert!((c - friedrichs_cos_dense(&pa, &pb, &limit)).abs() < 1e-8);
    assert!((0.0..1.0).contains(&c));
}

#[test]
fn more_configurations_match_exact_dimension() {
    let cases = [("on:N=3", "stab:N=3,xi=e1", 3), ("sn:N=3", "on:N=3", 4), ("on:N=4", "coordstab:N=4,B=1-2", 2)];
    for (a, b, k) in cases {
        let rep = alternating_projection_run(&d(a), &d(b), k, 400, 1e-10, DEFAULT_DENSE_LIMIT, &RankOptions::default()).unwrap();
        assert_eq!(rep.run.limit_rank, rep.exact_intersection_dimension, "{a} {b} k={k}");
        assert!(rep.run.is_monotone(10.0 * f64::EPSILON));
        assert!(rep.run.within_two_subspace_bound(1e-10));
    }
}

#[test]
fn csv_and_limits() {
    let (p1, p2, p) = two_lines(PI / 4.0);
    let run = run_dense(&p1, &p2, &p, 5, 1e-30).unwrap();
    assert!(!run.converged);
    assert_eq!(run.iterations.len(), 5);
    let csv = run.to_csv();
    assert_eq!(csv.lines().next(), Some("m,distance"));
    assert_eq!(csv.lines().count(), 6);
    let err = alternating_projection_run(&d("on:N=3"), &d("sn:N=3"), 8, 10, 1e-10, DEFAULT_DENSE_LIMIT, &RankOptions::default());
    assert_eq!(err.unwrap_err().kind(), "resource");
    let err = alternating_projection_run(&d("on:N=3"), &d("sn:N=4"), 2, 10, 1e-10, DEFAULT_DENSE_LIMIT, &RankOptions::default());
    assert_eq!(err.unwrap_err().kind(), "parameter");
}
