// Betti tables and regularity, computed four ways.
//
// ```bash
// cargo run --example regularity
// ```

use cmreg::invariants::{
    betti_table, ceiling, quotient_regularity, reg_via_def1, regularity, regularity_via_koszul,
    regularity_via_truncation,
};
use cmreg::{Ideal, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::numbered(4);
    let samples = [
        ("complete intersection (2, 3)", Ideal::parse(&ring, &["x0^2 + x1*x2", "x2^3 - x3^2*x0 + x1^3"])),
        ("cubes", Ideal::parse(&ring, &["x0^3", "x1^3", "x2^3", "x3^3"])),
        ("skew lines", Ideal::parse(&ring, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"])),
    ];
    for (name, ideal) in &samples {
        let c = ceiling(ideal)?;
        println!("{name}: ceiling reg(in(I)) = {}, Taylor {}", c.ideal, c.taylor);
        print!("{}", betti_table(ideal, None)?.render());
        println!(
            "  reg(I) = {}; reg(A/I) by Betti {}, Koszul {}, truncation {}, local cohomology {}",
            regularity(ideal)?,
            quotient_regularity(ideal)?,
            regularity_via_koszul(ideal, None)?,
            regularity_via_truncation(ideal)?,
            reg_via_def1(ideal)?
        );
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
