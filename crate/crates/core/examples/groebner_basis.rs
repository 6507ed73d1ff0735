// Reduced Gröbner bases under the three orders, initial ideals and the
// two colon backends.
//
// ```bash
// cargo run --example groebner_basis
// ```

use cmreg::groebner::{colon_ideal, colon_via_t_trick, saturate_irrelevant};
use cmreg::{Ideal, MonomialOrder, Ring};

pub fn run_example() -> cmreg::Result<()> {
    let ring = Ring::with_vars(&["x", "y", "z", "w"]);
    let cubic = Ideal::parse(&ring, &["y^2 - x*z", "y*z - x*w", "z^2 - y*w"]);
    for order in [MonomialOrder::DegRevLex, MonomialOrder::DegLex] {
        let i = cubic.with_ring(&ring.with_order(order));
        println!("{order}:");
        for g in i.groebner().elements() {
            println!("  {g}");
        }
        let lead: Vec<String> = i.initial_ideal().gens().iter().map(|m| format!("{m:?}")).collect();
        println!("  in(I) exponents: {}", lead.join(" "));
    }

    // (x^2, xy) : y = (x), by elimination and by the T-trick in k[x,y,z][T]
    let plane = Ring::with_vars(&["x", "y", "z"]);
    let j = Ideal::parse(&plane, &["x^2", "x*y"]);
    let y = plane.poly("y");
    let by_elimination = colon_ideal(&j, &y)?;
    let by_t = colon_via_t_trick(&j, &y)?;
    println!("(x^2, xy) : y = {by_elimination}");
    println!("T-trick basis degree {} gives {}", by_t.max_degree, by_t.colon);
    println!("saturation of (x^2, xy, xz) = {}", saturate_irrelevant(&Ideal::parse(&plane, &["x^2", "x*y", "x*z"])));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
