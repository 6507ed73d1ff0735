// The top-dimensional part `I_S` of an ideal via a regular sequence and a
// colon.
//
// ```bash
// cargo run --example top_dimensional
// ```

use cmreg::topdim::top_dimensional_part;
use cmreg::{Ideal, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::with_vars(&["x", "y", "z"]);
    let p4 = Ring::with_vars(&["a", "b", "c", "d"]);
    let samples = [
        ("line with embedded line", Ideal::parse(&ring, &["x^2", "x*y"])),
        ("line with embedded point", Ideal::parse(&ring, &["x^2", "x*y", "x*z"])),
        ("three points", Ideal::parse(&ring, &["x*y", "x*z", "y^3 - y*z^2"])),
        ("quartic curve", Ideal::parse(&p4, &["b*c - a*d", "c^3 - b*d^2", "a*c^2 - b^2*d", "b^3 - a^2*c"])),
    ];
    for (name, ideal) in &samples {
        let t = top_dimensional_part(ideal, 5)?;
        let g: Vec<String> = t.sequence.g.iter().map(|p| p.to_string()).collect();
        println!("{name}: I = {ideal}");
        println!("  regular sequence ({}), σ = {}", g.join(", "), t.sequence.sigma);
        match &t.h {
            Some(h) => println!("  h = {h} (degree {}), d_h = {}", t.h_degree.unwrap(), t.h_min_degree.unwrap()),
            None if t.via_linkage => println!("  no single h works, I_S = J : (J : I)"),
            None => println!("  complete intersection"),
        }
        println!("  I_S = {}; I : I_S = {}", t.i_s, t.residual);
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
