// Hilbert function, series and polynomial of `A/I`.
//
// ```bash
// cargo run --example hilbert
// ```

use cmreg::invariants::hilbert_data;
use cmreg::{Ideal, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::with_vars(&["x", "y", "z", "w"]);
    let samples = [
        ("twisted cubic", Ideal::parse(&ring, &["y^2 - x*z", "y*z - x*w", "z^2 - y*w"])),
        ("skew lines", Ideal::parse(&ring, &["x*z", "x*w", "y*z", "y*w"])),
        ("plane cubic", Ideal::parse(&ring, &["w", "x^3 + y^3 + z^3"])),
        ("point", Ideal::parse(&ring, &["x", "y", "z"])),
    ];
    for (name, ideal) in &samples {
        let h = hilbert_data(ideal)?;
        let first: Vec<String> = h.values.values().take(6).map(|v| v.to_string()).collect();
        println!(
            "{name}: H = {}, ..; P(μ) = {}; degree {}; dim {}; reg(H) = {}",
            first.join(", "),
            h.polynomial_string(),
            h.scheme_degree,
            h.dim_proj,
            h.reg_h
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
