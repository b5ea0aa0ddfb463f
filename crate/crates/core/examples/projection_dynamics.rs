//! Alternating projections between two fixed spaces, and between two lines.

use std::f64::consts::PI;

use qgverify::dynamics::{alternating_projection_run, run_dense, two_lines};
use qgverify::linalg::{RankOptions, DEFAULT_DENSE_LIMIT};

fn main() -> qgverify::Result<()> {
    let a = "on:N=4".parse()?;
    let b = "stab:N=4,xi=e1".parse()?;
    let rep = alternating_projection_run(&a, &b, 4, 200, 1e-12, DEFAULT_DENSE_LIMIT, &RankOptions::default())?;
    println!("{a} / {b}, k=4");
    println!("  exact intersection dimension {}", rep.exact_intersection_dimension);
    println!("  limit rank {} trace {:.12}", rep.run.limit_rank, rep.run.limit_trace);
    println!("  cos {:.6}, fitted rate {:.6} (cos² = {:.6})", rep.run.friedrichs_cos, rep.run.estimated_rate, rep.run.friedrichs_cos.powi(2));
    for it in rep.run.iterations.iter().step_by(4) {
        println!("  m={:>3}  {:.3e}", it.m, it.distance);
    }

    for theta in [PI / 6.0, PI / 4.0, PI / 3.0] {
        let (p1, p2, p) = two_lines(theta);
        let run = run_dense(&p1, &p2, &p, 80, 1e-14)?;
        println!("lines at {:.4} rad: rate {:.5}, cos² {:.5}", theta, run.estimated_rate, theta.cos().powi(2));
    }
    Ok(())
}
