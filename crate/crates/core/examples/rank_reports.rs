//! The rank reports behind the generation arguments: the x_p family, the
//! one-singleton family, the y family and the stabilizer span identity.

use qgverify::generation::{one_singleton_rank, prop_diff_condition3, stabilizer_triangularity_check, ygram_check};
use qgverify::linalg::RankOptions;

fn main() -> qgverify::Result<()> {
    let o = RankOptions::default();
    println!("x_p family, N=4");
    for k in 1..=7 {
        let r = prop_diff_condition3(4, k, &o)?;
        println!("  k={k}: {}/{} full={}", r.computed_rank, r.expected_count, r.full_rank);
    }
    println!("one-singleton family (not asserted)");
    for n in [2, 3] {
        for k in (1..=7).step_by(2) {
            let r = one_singleton_rank(n, k, &o)?;
            println!("  N={n} k={k}: {}/{}", r.computed_rank, r.expected_count);
        }
    }
    println!("y family, N=4");
    for k in 0..=5 {
        let r = ygram_check(4, k, &o)?;
        println!("  k={k}: {}/{}", r.computed_rank, r.expected_count);
    }
    let t = stabilizer_triangularity_check(4, 5, &o)?;
    println!("stabilizer spans at N=4, k=5: {} and {}, equal={}", t.rank_full_range, t.rank_restricted, t.spans_equal);
    Ok(())
}
