// Regularity bounds against computed values.
//
// ```bash
// cargo run --example bounds
// ```

use cmreg::bounds::{bound_cor28, bounds_report, check_taylor};
use cmreg::monomial_ideal::MonomialIdeal;
use cmreg::{Ideal, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::numbered(5);
    let ci = Ideal::parse(&ring, &["x0^2 + x1*x4", "x1^3 - x2*x3^2 + x4^3", "x2^4 + x3^4 - x0*x4^3"]);
    for r in bounds_report(&ci, 3)? {
        println!("{}", r.summary());
    }

    let cubes = Ideal::parse(&Ring::numbered(4), &["x0^3", "x1^3", "x2^3", "x3^3"]);
    let j: MonomialIdeal = cubes.initial_ideal();
    for r in check_taylor(&j, *cubes.ring().field()) {
        println!("cubes {}", r.summary());
    }

    // doubly exponential growth, exact
    for n in [3, 4, 6] {
        println!("cor-2.8 bound for degrees [4, 4, 4], n = {n}, r = 2: {}", bound_cor28(&[4, 4, 4], n, 2)?);
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
