//! Generator families for every subgroup kind, with their ranks, and the
//! brute-force permutation average.

use qgverify::fix::{generator_family, sn_average_oracle, so_invariance_check, DEFAULT_SN_BUDGET};
use qgverify::linalg::{family_rank, projection_matrix, RankOptions, DEFAULT_DENSE_LIMIT};

fn main() -> qgverify::Result<()> {
    let opts = RankOptions::default();
    let descs = [
        "on+:N=4",
        "on:N=4",
        "sn:N=4",
        "stab:N=4,xi=e1",
        "stab:N=4,xi=3/5,4/5,0,0",
        "coordstab:N=4,B=1-2",
        "fp:N=4,a=2,b=2",
        "un:N=4",
        "ufp:N=4,a=2,b=2",
    ];
    println!("{:<26} {}", "family", (0..=4).map(|k| format!("k={k:<4}")).collect::<String>());
    for s in descs {
        let d = s.parse()?;
        let mut row = String::new();
        for k in 0..=4 {
            let fam = generator_family(&d, k)?;
            row += &format!("{:<6}", format!("{}/{}", family_rank(&fam, &opts)?.rank, fam.len()));
        }
        println!("{:<26} {row}", d.to_string());
    }

    let fam = generator_family(&"stab:N=4,xi=e1".parse()?, 3)?;
    println!("\nstab e1 killed by so(1)+so(3): {}", so_invariance_check(&fam, Some((1, 3)))?);
    println!("stab e1 killed by so(4):      {}", so_invariance_check(&fam, None)?);

    let sym = generator_family(&"sn:N=3".parse()?, 3)?;
    let same = projection_matrix(&sym, DEFAULT_DENSE_LIMIT)? == sn_average_oracle(3, 3, DEFAULT_SN_BUDGET)?;
    println!("S_3 span at k=3 equals the averaging projection: {same}");
    Ok(())
}
