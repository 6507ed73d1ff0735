// Local cohomology of `A/I` through Ext duality of a minimal resolution.
//
// ```bash
// cargo run --example local_cohomology
// ```

use cmreg::invariants::ExtOracle;
use cmreg::{Ideal, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::with_vars(&["x", "y", "z", "w"]);
    let samples = [
        ("line with an embedded point", Ideal::parse(&ring, &["x^2", "x*y", "x*z"])),
        ("skew lines", Ideal::parse(&ring, &["x*z", "x*w", "y*z", "y*w"])),
        ("twisted cubic", Ideal::parse(&ring, &["y^2 - x*z", "y*z - x*w", "z^2 - y*w"])),
    ];
    for (name, ideal) in &samples {
        let oracle = ExtOracle::new(ideal)?;
        let lengths: Vec<usize> = oracle.resolution().modules.iter().map(|m| m.degrees.len()).collect();
        println!("{name}: resolution ranks {lengths:?}");
        for i in 0..2 {
            let m = oracle.module(i, None);
            println!("  H^{i}_m(A/I): {:?} over window {:?}", m.dims, m.window);
        }
        let tops: Vec<String> = oracle
            .a_invariants()
            .iter()
            .map(|a| a.map_or("-inf".into(), |a| a.to_string()))
            .collect();
        println!("  a_i = [{}]; reg(A/I) = {}", tops.join(", "), oracle.regularity()?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
