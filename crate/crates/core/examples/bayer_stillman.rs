// `reg(I)` against `reg(in(I))` after random changes of coordinates.
//
// ```bash
// cargo run --example bayer_stillman
// ```

use cmreg::bounds::bayer_stillman_experiment;
use cmreg::{Ideal, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::with_vars(&["x", "y", "z", "w"]);
    // in these coordinates in(I) is far from generic
    let i = Ideal::parse(&ring, &["x*y", "x*w - z^2"]);
    let e = bayer_stillman_experiment(&i, 8)?;
    println!("reg(I) = {}; reg(in(I)) as given = {}", e.reg, e.reg_initial_given);
    for t in &e.trials {
        println!(
            "  trial {} (seed {}): deg-rev-lex {}, deg-lex {:?}",
            t.index, t.seed, t.reg_initial, t.reg_initial_deglex
        );
    }
    println!("inequality always: {}; equality attained: {}", e.inequality_always, e.equality_attained);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
