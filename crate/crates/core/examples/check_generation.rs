//! Degree-by-degree generation checks for a pair of subgroups.
//!
//! cargo run --release --example check_generation -- on:N=4 stab:N=4,xi=e1 6

use qgverify::generation::check_generation;
use qgverify::linalg::RankOptions;
use qgverify::SubgroupDescriptor;

fn main() -> qgverify::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b, top) = match args.as_slice() {
        [a, b, k] => (a.parse()?, b.parse()?, k.parse().expect("k")),
        _ => ("sn:N=4".parse()?, "fp:N=4,a=2,b=2".parse()?, 6),
    };
    let (a, b): (SubgroupDescriptor, SubgroupDescriptor) = (a, b);
    println!("{a}  vs  {b}");
    println!(" k  dimA  dimB  dim∩  dimFix  verdict");
    for k in 0..=top {
        let r = check_generation(&a, &b, k, &RankOptions::default())?;
        println!(
            "{k:>2} {:>5} {:>5} {:>5} {:>7}  {}",
            r.dim_a,
            r.dim_b,
            r.dim_intersection,
            r.dim_fix,
            serde_json::to_value(r.verdict).unwrap().as_str().unwrap()
        );
    }
    Ok(())
}
