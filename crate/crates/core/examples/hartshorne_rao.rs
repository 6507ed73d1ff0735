// Hartshorne–Rao modules of space curves from Koszul cohomology of a pair,
// checked against Ext duality.
//
// ```bash
// cargo run --example hartshorne_rao
// ```

use cmreg::hrao::{hartshorne_rao, PairMode};
use cmreg::{Ideal, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::with_vars(&["x", "y", "z", "w"]);
    let samples = [
        ("skew lines", Ideal::parse(&ring, &["x*z", "x*w", "y*z", "y*w"])),
        ("twisted cubic", Ideal::parse(&ring, &["y^2 - x*z", "y*z - x*w", "z^2 - y*w"])),
        ("quartic curve", Ideal::parse(&ring, &["y*z - x*w", "z^3 - y*w^2", "x*z^2 - y^2*w", "y^3 - x^2*z"])),
    ];
    for (name, ideal) in &samples {
        for mode in [PairMode::Linear, PairMode::Jacobian] {
            let h = hartshorne_rao(ideal, mode, 10)?;
            println!(
                "{name} ({mode:?} pair of degrees {:?}): Koszul {:?}, Ext {:?}, last nonzero degree {:?}, agree {}",
                h.pair_degrees, h.module.dims, h.oracle.dims, h.last_nonzero_degree, h.oracle_agreement
            );
        }
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
