//! Lists the small partition families and checks their sizes.
//!
//! cargo run --example enumerate_partitions -- 6

use qgverify::counting::{catalan, motzkin};
use qgverify::partition::{colorings, enumerate, join_block_count, FamilyKind};

fn main() -> qgverify::Result<()> {
    let k: usize = std::env::args().nth(1).map_or(Ok(4), |s| s.parse()).expect("k must be a number");

    for kind in [FamilyKind::NC2, FamilyKind::NC21, FamilyKind::P2, FamilyKind::EvenOddAll, FamilyKind::SetPartitions] {
        let ps = enumerate(kind, k)?;
        let shown: Vec<String> = ps.iter().take(6).map(|p| p.to_string()).collect();
        let more = if ps.len() > 6 { ", ..." } else { "" };
        println!("{:<14} k={k}: {:>5}  [{}{more}]", kind.tag(), ps.len(), shown.join(", "));
    }
    if k % 2 == 0 {
        assert_eq!(enumerate(FamilyKind::NC2, k)?.len() as u128, catalan(k / 2));
    }
    assert_eq!(enumerate(FamilyKind::NC21, k)?.len() as u128, motzkin(k));

    // loops formed by stacking two pairings
    let nc = enumerate(FamilyKind::NC2, 4)?;
    for p in &nc {
        let row: Vec<usize> = nc.iter().map(|q| join_block_count(p, q).unwrap()).collect();
        println!("loops({p}, -) = {row:?}");
    }

    let two_colored = colorings(&"12|34".parse()?, 2)?;
    println!("2-colorings of 12|34: {}", two_colored.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("  "));
    Ok(())
}
