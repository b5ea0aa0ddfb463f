//! Gram matrices, exact ranks and the projection onto a span.
//!
//! cargo run --release --example gram_and_rank

use qgverify::counting::catalan;
use qgverify::fix::{generator_family, SubgroupDescriptor};
use qgverify::linalg::{gram, intersection, projection_matrix, RankMethod, RankOptions, DEFAULT_DENSE_LIMIT};

fn main() -> qgverify::Result<()> {
    let fam = generator_family(&SubgroupDescriptor::free_orth(2)?, 4)?;
    let g = gram(&fam)?;
    println!("Gram of {:?}:", fam.labels());
    for i in 0..g.size() {
        println!("  {:?}", g.to_qmatrix().row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }

    println!("\nNC2 independence, rank / Catalan:");
    for n in 2..=3 {
        for k in (2..=10).step_by(2) {
            let r = gram(&generator_family(&SubgroupDescriptor::free_orth(n)?, k)?)?.rank(&RankOptions::default());
            println!("  N={n} k={k:>2}: {:>3} / {:>3}  certified={} primes={:?}", r.rank, catalan(k / 2), r.certified, r.primes_used);
        }
    }

    // the Brauer family at N=2 is dependent from k=6 on
    let brauer = generator_family(&SubgroupDescriptor::class_orth(2)?, 6)?;
    for method in [RankMethod::Modular, RankMethod::FractionFree] {
        let r = gram(&brauer)?.rank(&RankOptions { method, ..Default::default() });
        println!("\nP2(6) at N=2 via {method:?}: rank {} of {}", r.rank, brauer.len());
    }

    let a = generator_family(&"on:N=3".parse()?, 4)?;
    let b = generator_family(&"stab:N=3,xi=e1".parse()?, 4)?;
    let ranks = intersection(&a, &b, &RankOptions::default())?;
    println!("\ndim span(on) = {}, dim span(stab) = {}, union {}, intersection {}", ranks.rank_a, ranks.rank_b, ranks.rank_union, ranks.dimension);

    let p = projection_matrix(&a, DEFAULT_DENSE_LIMIT)?;
    println!("projection onto span(on:N=3, k=4): {}x{}, trace {}", p.rows(), p.cols(), p.trace());
    Ok(())
}
